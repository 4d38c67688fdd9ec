#include "windcast/calib.hpp"

#include <cmath>

#include <json.hpp>

#include "windcast/errors.hpp"

namespace windcast {

void AblParams::validate() const {
    if (y0 <= 0.0 || y_ref <= 0.0 || y_target <= 0.0) {
        throw validation_error("AblParams: heights and roughness length must be positive");
    }
}

double abl_factor(const AblParams& params) {
    params.validate();
    return std::log((params.y_target + params.y0) / params.y0) /
           std::log((params.y_ref + params.y0) / params.y0);
}

WindFieldSeries abl_calibrate(const WindFieldSeries& series, const AblParams& params) {
    params.validate();
    if (std::fabs(series.altitude_m - params.y_ref) > 1e-9) {
        throw validation_error("abl_calibrate: series altitude " +
                               std::to_string(series.altitude_m) + " m does not match y_ref " +
                               std::to_string(params.y_ref) + " m");
    }
    const double f = abl_factor(params);
    WindFieldSeries out = series;
    for (double& x : out.u) x *= f;
    for (double& x : out.v) x *= f;
    out.altitude_m = params.y_target;
    return out;
}

void StandardizeStats::validate() const {
    if (!(sigma_u > 0.0) || !(sigma_v > 0.0)) {
        throw validation_error("StandardizeStats: sigma must be positive");
    }
    if (!std::isfinite(mu_u) || !std::isfinite(mu_v) || !std::isfinite(sigma_u) ||
        !std::isfinite(sigma_v)) {
        throw validation_error("StandardizeStats: non-finite statistics");
    }
}

namespace {

std::pair<double, double> mean_std(const std::vector<double>& x, std::size_t n) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += x[i];
    const double mu = sum / static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = x[i] - mu;
        ss += d * d;
    }
    return {mu, std::sqrt(ss / static_cast<double>(n))};
}

}  // namespace

StandardizeStats fit_standardize(const WindFieldSeries& series, std::int64_t fit_hours) {
    if (fit_hours < 1 || fit_hours > series.n_time) {
        throw validation_error("fit_standardize: fit range " + std::to_string(fit_hours) +
                               " outside series length " + std::to_string(series.n_time));
    }
    const std::size_t n = static_cast<std::size_t>(fit_hours) * series.grid.points();
    StandardizeStats st;
    std::tie(st.mu_u, st.sigma_u) = mean_std(series.u, n);
    std::tie(st.mu_v, st.sigma_v) = mean_std(series.v, n);
    if (st.sigma_u <= 0.0 || st.sigma_v <= 0.0) {
        throw validation_error("fit_standardize: degenerate data, component variance is zero");
    }
    return st;
}

WindFieldSeries apply_standardize(const WindFieldSeries& series, const StandardizeStats& stats) {
    stats.validate();
    WindFieldSeries out = series;
    for (double& x : out.u) x = (x - stats.mu_u) / stats.sigma_u;
    for (double& x : out.v) x = (x - stats.mu_v) / stats.sigma_v;
    return out;
}

std::pair<double, double> invert_standardize(double u_std, double v_std,
                                             const StandardizeStats& stats) {
    return {u_std * stats.sigma_u + stats.mu_u, v_std * stats.sigma_v + stats.mu_v};
}

std::string stats_to_json(const StandardizeStats& stats) {
    return nlohmann::json{{"mu_u", stats.mu_u},
                          {"mu_v", stats.mu_v},
                          {"sigma_u", stats.sigma_u},
                          {"sigma_v", stats.sigma_v}}
        .dump();
}

StandardizeStats stats_from_json(const std::string& text) {
    try {
        const nlohmann::json j = nlohmann::json::parse(text);
        StandardizeStats st{j.at("mu_u"), j.at("mu_v"), j.at("sigma_u"), j.at("sigma_v")};
        st.validate();
        return st;
    } catch (const nlohmann::json::exception& e) {
        throw validation_error(std::string("StandardizeStats JSON: ") + e.what());
    }
}

}  // namespace windcast
