#include "windcast/run_config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "windcast/csv_ingest.hpp"
#include "windcast/errors.hpp"
#include "windcast/gridspec.hpp"
#include "windcast/sampling.hpp"
#include "windcast/windpack.hpp"

namespace windcast {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

ConfigValue parse_scalar(const std::string& raw, const std::string& where) {
    ConfigValue v;
    const std::string t = trim(raw);
    if (t.empty()) throw validation_error(where + ": empty value");
    if (t == "true" || t == "false") {
        v.type = ConfigValue::Type::boolean;
        v.b = t == "true";
        return v;
    }
    if (t.front() == '"') {
        if (t.size() < 2 || t.back() != '"') {
            throw validation_error(where + ": unterminated string " + t);
        }
        v.type = ConfigValue::Type::string;
        v.str = t.substr(1, t.size() - 2);
        return v;
    }
    char* end = nullptr;
    const double num = std::strtod(t.c_str(), &end);
    if (end == nullptr || *end != '\0') {
        throw validation_error(where + ": cannot parse value '" + t + "'");
    }
    v.type = ConfigValue::Type::number;
    v.num = num;
    return v;
}

ConfigValue parse_value(const std::string& raw, const std::string& where) {
    const std::string t = trim(raw);
    if (!t.empty() && t.front() == '[') {
        if (t.back() != ']') throw validation_error(where + ": unterminated array");
        ConfigValue v;
        v.type = ConfigValue::Type::array;
        const std::string inner = t.substr(1, t.size() - 2);
        std::string item;
        std::istringstream ss(inner);
        while (std::getline(ss, item, ',')) {
            if (trim(item).empty()) continue;
            v.items.push_back(parse_scalar(item, where));
        }
        return v;
    }
    return parse_scalar(t, where);
}

}  // namespace

KvConfig KvConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str(), path);
}

KvConfig KvConfig::parse_text(const std::string& text, const std::string& origin) {
    KvConfig cfg;
    cfg.origin_ = origin;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string where = origin + ":" + std::to_string(lineno);
        // strip comments outside strings
        bool in_str = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') in_str = !in_str;
            if (line[i] == '#' && !in_str) {
                line = line.substr(0, i);
                break;
            }
        }
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (t.front() == '[') {
            if (t.back() != ']') throw validation_error(where + ": bad section header");
            section = trim(t.substr(1, t.size() - 2));
            if (section.empty()) throw validation_error(where + ": empty section name");
            continue;
        }
        const std::size_t eq = t.find('=');
        if (eq == std::string::npos) {
            throw validation_error(where + ": expected key = value");
        }
        const std::string key = trim(t.substr(0, eq));
        if (key.empty()) throw validation_error(where + ": empty key");
        const std::string full = section.empty() ? key : section + "." + key;
        if (cfg.values_.count(full)) {
            throw validation_error(where + ": duplicate key '" + full + "'");
        }
        cfg.values_[full] = parse_value(t.substr(eq + 1), where);
    }
    return cfg;
}

const ConfigValue& KvConfig::at(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) {
        throw validation_error(origin_ + ": missing key '" + key + "'");
    }
    return it->second;
}

double KvConfig::number(const std::string& key) const {
    const ConfigValue& v = at(key);
    if (v.type != ConfigValue::Type::number) {
        throw validation_error(origin_ + ": key '" + key + "' is not a number");
    }
    return v.num;
}

double KvConfig::number_or(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
}

std::string KvConfig::string_at(const std::string& key) const {
    const ConfigValue& v = at(key);
    if (v.type != ConfigValue::Type::string) {
        throw validation_error(origin_ + ": key '" + key + "' is not a string");
    }
    return v.str;
}

std::string KvConfig::string_or(const std::string& key, const std::string& fallback) const {
    return has(key) ? string_at(key) : fallback;
}

std::vector<double> KvConfig::numbers(const std::string& key) const {
    const ConfigValue& v = at(key);
    if (v.type != ConfigValue::Type::array) {
        throw validation_error(origin_ + ": key '" + key + "' is not an array");
    }
    std::vector<double> out;
    for (const ConfigValue& item : v.items) {
        if (item.type != ConfigValue::Type::number) {
            throw validation_error(origin_ + ": key '" + key + "' has non-numeric items");
        }
        out.push_back(item.num);
    }
    return out;
}

std::vector<std::string> KvConfig::strings(const std::string& key) const {
    const ConfigValue& v = at(key);
    if (v.type != ConfigValue::Type::array) {
        throw validation_error(origin_ + ": key '" + key + "' is not an array");
    }
    std::vector<std::string> out;
    for (const ConfigValue& item : v.items) {
        if (item.type != ConfigValue::Type::string) {
            throw validation_error(origin_ + ": key '" + key + "' has non-string items");
        }
        out.push_back(item.str);
    }
    return out;
}

namespace {

const std::set<std::string> kKnownKeys = {
    "schema_version", "site",          "out",            "seed",
    "threads",        "data.source",   "data.kind",      "data.hours",
    "data.seed",      "data.mixture_weight",             "data.grid_n",
    "data.windpack",  "data.csv_dir",  "data.grid",      "abl.y0",
    "abl.y_ref",      "abl.y_target",  "train.lr",       "train.batch",
    "train.epochs",   "train.patience", "train.huber_delta",
    "sweep.T",        "sweep.S",       "sweep.variants"};

}  // namespace

RunConfig RunConfig::from_file(const std::string& path) {
    const KvConfig kv = KvConfig::parse_file(path);
    for (const auto& [key, value] : kv.values()) {
        if (!kKnownKeys.count(key)) {
            throw validation_error(path + ": unknown key '" + key + "'");
        }
    }
    const int version = static_cast<int>(kv.number("schema_version"));
    if (version != 1) {
        throw validation_error(path + ": unsupported schema_version " + std::to_string(version));
    }

    RunConfig rc;
    rc.site = kv.string_or("site", rc.site);
    rc.out_dir = kv.string_or("out", rc.out_dir);
    rc.seed = static_cast<std::uint64_t>(kv.number_or("seed", 0));
    rc.threads = static_cast<int>(kv.number_or("threads", 1));

    rc.source = kv.string_or("data.source", rc.source);
    rc.synth_kind = kv.string_or("data.kind", rc.synth_kind);
    rc.synth_seed = static_cast<std::uint64_t>(
        kv.number_or("data.seed", static_cast<double>(rc.seed)));
    rc.hours = static_cast<std::int64_t>(kv.number_or("data.hours", 3000));
    rc.mixture_weight = kv.number_or("data.mixture_weight", 0.5);
    rc.grid_n = static_cast<int>(kv.number_or("data.grid_n", 9));
    rc.windpack_path = kv.string_or("data.windpack", "");
    rc.csv_dir = kv.string_or("data.csv_dir", "");
    rc.grid_path = kv.string_or("data.grid", "");

    rc.abl.y0 = kv.number_or("abl.y0", rc.abl.y0);
    rc.abl.y_ref = kv.number_or("abl.y_ref", rc.abl.y_ref);
    rc.abl.y_target = kv.number_or("abl.y_target", rc.abl.y_target);

    rc.train.lr = kv.number_or("train.lr", rc.train.lr);
    rc.train.batch_size = static_cast<int>(kv.number_or("train.batch", rc.train.batch_size));
    rc.train.epochs = static_cast<int>(kv.number_or("train.epochs", rc.train.epochs));
    rc.train.patience = static_cast<int>(kv.number_or("train.patience", rc.train.patience));
    rc.train.huber_delta = kv.number_or("train.huber_delta", rc.train.huber_delta);

    if (kv.has("sweep.T")) {
        rc.T_set.clear();
        for (double t : kv.numbers("sweep.T")) rc.T_set.push_back(static_cast<int>(t));
    }
    if (kv.has("sweep.S")) {
        rc.S_set.clear();
        for (double s : kv.numbers("sweep.S")) rc.S_set.push_back(static_cast<int>(s));
    }
    if (kv.has("sweep.variants")) {
        rc.variants.clear();
        for (const std::string& v : kv.strings("sweep.variants")) {
            rc.variants.push_back(variant_from_name(v));
        }
    }
    rc.validate();
    return rc;
}

void RunConfig::validate() const {
    if (source != "synth" && source != "windpack" && source != "csv") {
        throw validation_error("RunConfig: data.source must be synth, windpack, or csv, got '" +
                               source + "'");
    }
    if (source == "synth") {
        synth_kind_from_name(synth_kind);
        if (grid_path.empty() && grid_n < 1) {
            throw validation_error("RunConfig: synth needs data.grid_n or data.grid");
        }
    }
    if (source == "windpack" && !std::filesystem::exists(windpack_path)) {
        throw validation_error("RunConfig: data.windpack path does not exist: " + windpack_path);
    }
    if (source == "csv") {
        if (!std::filesystem::is_directory(csv_dir)) {
            throw validation_error("RunConfig: data.csv_dir is not a directory: " + csv_dir);
        }
        if (!std::filesystem::exists(grid_path)) {
            throw validation_error("RunConfig: csv source needs data.grid, missing: " + grid_path);
        }
    }
    if (!grid_path.empty() && !std::filesystem::exists(grid_path)) {
        throw validation_error("RunConfig: data.grid path does not exist: " + grid_path);
    }
    abl.validate();
    for (int t : T_set) {
        if (!supported_T(t)) {
            throw validation_error("RunConfig: unsupported T=" + std::to_string(t));
        }
    }
    for (int s : S_set) {
        if (!supported_S(s)) {
            throw validation_error("RunConfig: unsupported S=" + std::to_string(s));
        }
    }
    if (T_set.empty() || S_set.empty() || variants.empty()) {
        throw validation_error("RunConfig: sweep sets must be non-empty");
    }
    if (threads < 1) throw validation_error("RunConfig: threads must be >= 1");
}

WindFieldSeries RunConfig::load_series() const {
    if (source == "windpack") return read_windpack(windpack_path);
    if (source == "csv") return ingest_csv(csv_dir, grid_from_json_file(grid_path));
    const GridSpec grid =
        grid_path.empty() ? GridSpec::synthetic(grid_n) : grid_from_json_file(grid_path);
    SynthParams params;
    params.mixture_weight = mixture_weight;
    return synth_field(synth_kind_from_name(synth_kind), grid, hours, synth_seed, params);
}

std::string RunConfig::snapshot_text() const {
    std::string s;
    char buf[256];
    s += "schema_version = 1\n";
    s += "site = \"" + site + "\"\n";
    s += "out = \"" + out_dir + "\"\n";
    s += "seed = " + std::to_string(seed) + "\n";
    s += "threads = " + std::to_string(threads) + "\n\n";
    s += "[data]\n";
    s += "source = \"" + source + "\"\n";
    if (source == "synth") {
        s += "kind = \"" + synth_kind + "\"\n";
        s += "seed = " + std::to_string(synth_seed) + "\n";
        s += "hours = " + std::to_string(hours) + "\n";
        std::snprintf(buf, sizeof buf, "mixture_weight = %.17g\n", mixture_weight);
        s += buf;
        s += "grid_n = " + std::to_string(grid_n) + "\n";
    }
    if (!windpack_path.empty()) s += "windpack = \"" + windpack_path + "\"\n";
    if (!csv_dir.empty()) s += "csv_dir = \"" + csv_dir + "\"\n";
    if (!grid_path.empty()) s += "grid = \"" + grid_path + "\"\n";
    std::snprintf(buf, sizeof buf, "\n[abl]\ny0 = %.17g\ny_ref = %.17g\ny_target = %.17g\n",
                  abl.y0, abl.y_ref, abl.y_target);
    s += buf;
    std::snprintf(buf, sizeof buf,
                  "\n[train]\nlr = %.17g\nbatch = %d\nepochs = %d\npatience = %d\n"
                  "huber_delta = %.17g\n",
                  train.lr, train.batch_size, train.epochs, train.patience, train.huber_delta);
    s += buf;
    s += "\n[sweep]\nT = [";
    for (std::size_t i = 0; i < T_set.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(T_set[i]);
    }
    s += "]\nS = [";
    for (std::size_t i = 0; i < S_set.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(S_set[i]);
    }
    s += "]\nvariants = [";
    for (std::size_t i = 0; i < variants.size(); ++i) {
        if (i) s += ", ";
        s += "\"" + to_string(variants[i]) + "\"";
    }
    s += "]\n";
    return s;
}

}  // namespace windcast
