#ifndef WINDCAST_CALIB_HPP
#define WINDCAST_CALIB_HPP

#include <string>
#include <utility>
#include <vector>

#include "windcast/wind_series.hpp"

namespace windcast {

/// Log-law height calibration parameters. y0 = 0.0002 m is the aerodynamic
/// roughness length of open sea.
struct AblParams {
    double y0 = 0.0002;
    double y_ref = 50.0;
    double y_target = 100.0;

    void validate() const;
};

/// Speed ratio between y_target and y_ref under the neutral log profile:
/// ln((y_target + y0)/y0) / ln((y_ref + y0)/y0). Greater than 1 whenever
/// y_target > y_ref.
double abl_factor(const AblParams& params);

/// Scales both components of every snapshot by abl_factor. Requires
/// series.altitude_m == params.y_ref; the result is stamped with y_target.
/// Pure scaling, so wind direction at every point is unchanged.
WindFieldSeries abl_calibrate(const WindFieldSeries& series, const AblParams& params);

/// Per-component mean/std used to standardize model inputs and to invert
/// predictions back to m/s.
struct StandardizeStats {
    double mu_u = 0.0;
    double mu_v = 0.0;
    double sigma_u = 1.0;
    double sigma_v = 1.0;

    void validate() const;
};

/// Fits mean and population standard deviation over all grid points and the
/// hour range [0, fit_hours). Pass the training-range hour count so that
/// validation/test data never leak into the statistics.
StandardizeStats fit_standardize(const WindFieldSeries& series, std::int64_t fit_hours);

/// Elementwise (x - mu) / sigma on both components.
WindFieldSeries apply_standardize(const WindFieldSeries& series, const StandardizeStats& stats);

std::pair<double, double> invert_standardize(double u_std, double v_std,
                                             const StandardizeStats& stats);

std::string stats_to_json(const StandardizeStats& stats);
StandardizeStats stats_from_json(const std::string& text);

}  // namespace windcast

#endif
