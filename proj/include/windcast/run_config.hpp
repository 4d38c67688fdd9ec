#ifndef WINDCAST_RUN_CONFIG_HPP
#define WINDCAST_RUN_CONFIG_HPP

#include <map>
#include <string>
#include <vector>

#include "windcast/calib.hpp"
#include "windcast/eval.hpp"
#include "windcast/synth.hpp"

namespace windcast {

/// Scalar or array value from a run-config file.
struct ConfigValue {
    enum class Type { boolean, number, string, array };
    Type type = Type::number;
    bool b = false;
    double num = 0.0;
    std::string str;
    std::vector<ConfigValue> items;
};

/// Minimal key-value config reader: `[section]` headers, `key = value` lines,
/// `#` comments. Values are integers/floats, booleans, double-quoted strings,
/// or flat arrays `[a, b, c]`. Keys are exposed flattened as "section.key".
class KvConfig {
  public:
    static KvConfig parse_file(const std::string& path);
    static KvConfig parse_text(const std::string& text, const std::string& origin = "<config>");

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    double number(const std::string& key) const;
    double number_or(const std::string& key, double fallback) const;
    std::string string_at(const std::string& key) const;
    std::string string_or(const std::string& key, const std::string& fallback) const;
    std::vector<double> numbers(const std::string& key) const;
    std::vector<std::string> strings(const std::string& key) const;

    const std::map<std::string, ConfigValue>& values() const { return values_; }

  private:
    const ConfigValue& at(const std::string& key) const;
    std::map<std::string, ConfigValue> values_;
    std::string origin_;
};

/// One experiment: data source, calibration, training hyperparameters, and
/// the (T, S, variant) sweep to run. schema_version is checked on load.
struct RunConfig {
    std::string site = "site";
    std::string out_dir = "run";
    std::uint64_t seed = 0;
    int threads = 1;

    // data source: exactly one of synth / windpack / csv
    std::string source = "synth";
    std::string synth_kind = "advective";
    std::uint64_t synth_seed = 0;  // defaults to the master seed
    std::int64_t hours = 3000;
    double mixture_weight = 0.5;
    int grid_n = 9;               // synthetic square grid size
    std::string windpack_path;
    std::string csv_dir;
    std::string grid_path;        // GridSpec JSON, required for csv

    AblParams abl;
    TrainConfig train;
    std::vector<int> T_set = {1, 3};
    std::vector<int> S_set = {1, 3};
    std::vector<Variant> variants = {Variant::cnn2d3d};

    static RunConfig from_file(const std::string& path);

    /// Rejects unknown sets, missing referenced paths, bad fractions.
    void validate() const;

    /// Resolves the data source into a series (reads or generates).
    WindFieldSeries load_series() const;

    /// Canonical text snapshot written into run directories.
    std::string snapshot_text() const;
};

}  // namespace windcast

#endif
