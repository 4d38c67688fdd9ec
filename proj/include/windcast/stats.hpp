#ifndef WINDCAST_STATS_HPP
#define WINDCAST_STATS_HPP

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "windcast/wind_series.hpp"

namespace windcast {

/// Autocorrelation curve at one grid point. acc[0] is exactly 1.
struct AccCurve {
    std::vector<int> lags;
    std::vector<double> acc;
    int row = 0;
    int col = 0;
};

/// Autocorrelation coefficients for lags 0..max_lag, computed against a
/// single global mean:
///   r_k = sum_{t=k+1..n} (y_t - ybar)(y_{t-k} - ybar) / sum_t (y_t - ybar)^2
AccCurve acc(std::span<const double> series, int max_lag, int row = 0, int col = 0);

/// Spatial spread of ACC across all grid points of one component. std is the
/// population standard deviation over grid points per lag; min/max are kept
/// as well since shaded-band plots can be drawn either way.
struct AccSpread {
    std::vector<int> lags;
    std::vector<double> mean;
    std::vector<double> std;
    std::vector<double> min;
    std::vector<double> max;
    double max_std = 0.0;
    std::vector<std::pair<int, int>> skipped;  // zero-variance points, not fatal
};

AccSpread acc_spread(const WindFieldSeries& series, char component, int max_lag = 24);

/// Pearson correlation coefficient of two equal-length series.
double pcc(std::span<const double> a, std::span<const double> b);

/// PCC of every grid point's series against the prediction point's series,
/// per component; entries at skipped (zero-variance) points are NaN.
/// avg_u/avg_v[i] is the mean PCC over the centered sizes[i] x sizes[i] crop
/// excluding the prediction point itself.
struct PccHeatmap {
    GridSpec grid;
    std::vector<double> pcc_u;  // [n_lat][n_lon]
    std::vector<double> pcc_v;
    std::vector<int> sizes;     // odd S = 3, 5, ... up to grid bounds
    std::vector<double> avg_u;
    std::vector<double> avg_v;
    std::vector<std::pair<int, int>> skipped;

    /// Mean of the u and v averages at crop size S; NaN when S is absent.
    double avg_at(int S) const;
};

PccHeatmap pcc_heatmap(const WindFieldSeries& series);

/// Full pre-training learnability analysis of one site.
struct CorrelationReport {
    std::string site;
    AccSpread acc_u;
    AccSpread acc_v;
    double max_std_u = 0.0;
    double max_std_v = 0.0;
    PccHeatmap pcc;
};

CorrelationReport analyze_site(const WindFieldSeries& series, const std::string& site,
                               int max_lag = 24);

/// Sites ordered from most learnable to least: ascending in the mean of
/// (max_std_u, max_std_v); ties broken by higher mean PCC at S=3, then by
/// site name.
std::vector<std::string> learnability_rank(const std::vector<CorrelationReport>& reports);

std::string report_to_json(const CorrelationReport& report);
CorrelationReport report_from_json(const std::string& text);

/// report.json plus heatmap_u.csv / heatmap_v.csv under dir.
void write_report_files(const CorrelationReport& report, const std::string& dir);

}  // namespace windcast

#endif
