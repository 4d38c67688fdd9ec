#ifndef WINDCAST_EVAL_HPP
#define WINDCAST_EVAL_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "windcast/stats.hpp"
#include "windcast/train.hpp"

namespace windcast {

/// `paper` computes the explained-variance ratio sum(yhat - ybar)^2 /
/// sum(y - ybar)^2 (which can exceed 1 for a predictor with excess
/// variance); `standard` computes 1 - sum(y - yhat)^2 / sum(y - ybar)^2.
/// ybar is always the mean of the ground truth.
enum class R2Mode { paper, standard };

double r2(std::span<const double> pred, std::span<const double> truth,
          R2Mode mode = R2Mode::paper);

struct EvalResult {
    double r2_u = 0.0;  // paper mode
    double r2_v = 0.0;
    double r2_u_std = 0.0;  // standard mode
    double r2_v_std = 0.0;
};

/// R-squared per component over de-standardized predictions against raw
/// targets for one split (normally test).
EvalResult evaluate(Model& model, const SampleSet& samples, Split split,
                    const StandardizeStats& stats);

/// Standardizes a calibrated series on its training range and windows it.
/// The fit range is derived from the split boundaries so validation/test
/// hours never leak into the statistics.
struct PreparedSamples {
    SampleSet set;
    StandardizeStats stats;
};
PreparedSamples prepare_samples(const WindFieldSeries& calibrated, int T, int S,
                                const SplitFractions& fractions = {});

struct SweepCell {
    int T = 0;
    int S = 0;
    bool ok = false;
    std::string error;
    EvalResult r2;
    std::uint64_t seed = 0;
    int epochs_run = 0;
};

struct SweepResult {
    std::string site;
    Variant variant = Variant::cnn2d3d;
    std::vector<SweepCell> cells;  // row-major over (T_set x S_set)
    std::uint64_t master_seed = 0;
    std::string config_hash;

    const SweepCell* cell(int T, int S) const;
    /// Mean over successful cells of (r2_u + r2_v)/2 in the given mode.
    double mean_r2(R2Mode mode) const;
};

struct SweepRequest {
    std::vector<int> T_set = {1, 3, 6, 12, 24};
    std::vector<int> S_set = {1, 3, 5, 7, 9, 11, 13};
    std::vector<Variant> variants = {Variant::cnn2d3d};
    std::uint64_t master_seed = 0;
    TrainConfig train;
    SplitFractions fractions;
    /// When set, each cell writes its history CSV and checkpoint here.
    std::string artifacts_dir;
};

/// Trains and evaluates every (variant, T, S) combination on the same
/// chronological splits. Each cell trains from scratch with its own seed
/// derived from (master seed, variant, T, S), so cells are independent and
/// the sweep is reproducible cell by cell; failures are recorded per cell.
/// `threads` > 1 runs cells in parallel without changing any result.
std::vector<SweepResult> sweep(const WindFieldSeries& calibrated, const std::string& site,
                               const SweepRequest& request, int threads = 1);

/// Tables-layout CSV for one component: header row of all supported S
/// columns, one row per supported T; cells that were not requested or failed
/// are empty. Byte-stable across reruns.
std::string sweep_csv(const SweepResult& result, char component, R2Mode mode = R2Mode::paper);

std::string sweep_to_json(const SweepResult& result);
SweepResult sweep_from_json(const std::string& text);

struct SiteJoin {
    std::string site;
    double max_std_u = 0.0;
    double max_std_v = 0.0;
    double mean_r2 = 0.0;
};

/// Joins sweep results with correlation reports by site name and checks the
/// headline claim: sites ordered by ascending ACC spread should equal sites
/// ordered by descending mean R-squared.
struct ComparisonSummary {
    std::vector<SiteJoin> rows;             // sorted by site name
    std::vector<std::string> by_spread;     // ascending avg max_std
    std::vector<std::string> by_r2;         // descending mean r2
    bool consistent = false;
};

ComparisonSummary compare_sites(const std::vector<SweepResult>& sweeps,
                                const std::vector<CorrelationReport>& reports,
                                R2Mode mode = R2Mode::standard);

std::string summary_to_json(const ComparisonSummary& summary);
std::string summary_text(const ComparisonSummary& summary);

}  // namespace windcast

#endif
