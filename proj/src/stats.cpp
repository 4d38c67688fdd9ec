#include "windcast/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>

#include <json.hpp>

#include "windcast/errors.hpp"

namespace windcast {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double mean_of(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

}  // namespace

AccCurve acc(std::span<const double> series, int max_lag, int row, int col) {
    const std::size_t n = series.size();
    if (max_lag < 0 || static_cast<std::size_t>(max_lag) >= n) {
        throw validation_error("acc: max_lag " + std::to_string(max_lag) +
                               " must be < series length " + std::to_string(n));
    }
    const double ybar = mean_of(series);
    double denom = 0.0;
    for (double y : series) denom += (y - ybar) * (y - ybar);
    if (denom <= 0.0) throw validation_error("acc: series variance is zero");

    AccCurve curve;
    curve.row = row;
    curve.col = col;
    curve.lags.resize(static_cast<std::size_t>(max_lag) + 1);
    curve.acc.resize(static_cast<std::size_t>(max_lag) + 1);
    for (int k = 0; k <= max_lag; ++k) {
        double num = 0.0;
        for (std::size_t t = static_cast<std::size_t>(k); t < n; ++t) {
            num += (series[t] - ybar) * (series[t - k] - ybar);
        }
        curve.lags[static_cast<std::size_t>(k)] = k;
        curve.acc[static_cast<std::size_t>(k)] = num / denom;
    }
    return curve;
}

AccSpread acc_spread(const WindFieldSeries& series, char component, int max_lag) {
    if (series.grid.points() < 2) {
        throw validation_error("acc_spread: need at least 2 grid points");
    }
    const int n_lags = max_lag + 1;
    std::vector<std::vector<double>> per_lag(static_cast<std::size_t>(n_lags));

    AccSpread spread;
    for (int r = 0; r < series.grid.n_lat; ++r) {
        for (int c = 0; c < series.grid.n_lon; ++c) {
            const std::vector<double> pt = series.point_series(component, r, c);
            AccCurve curve;
            try {
                curve = acc(pt, max_lag, r, c);
            } catch (const validation_error&) {
                spread.skipped.emplace_back(r, c);  // zero-variance point
                continue;
            }
            for (int k = 0; k < n_lags; ++k) {
                per_lag[static_cast<std::size_t>(k)].push_back(
                    curve.acc[static_cast<std::size_t>(k)]);
            }
        }
    }
    if (per_lag[0].empty()) {
        throw validation_error("acc_spread: every grid point has zero variance");
    }

    spread.lags.resize(static_cast<std::size_t>(n_lags));
    spread.mean.resize(static_cast<std::size_t>(n_lags));
    spread.std.resize(static_cast<std::size_t>(n_lags));
    spread.min.resize(static_cast<std::size_t>(n_lags));
    spread.max.resize(static_cast<std::size_t>(n_lags));
    for (int k = 0; k < n_lags; ++k) {
        const std::vector<double>& vals = per_lag[static_cast<std::size_t>(k)];
        const double mu = mean_of(vals);
        double ss = 0.0;
        for (double v : vals) ss += (v - mu) * (v - mu);
        // population std: n is the number of spatial grid points
        const double sd = std::sqrt(ss / static_cast<double>(vals.size()));
        spread.lags[static_cast<std::size_t>(k)] = k;
        spread.mean[static_cast<std::size_t>(k)] = mu;
        spread.std[static_cast<std::size_t>(k)] = sd;
        spread.min[static_cast<std::size_t>(k)] = *std::min_element(vals.begin(), vals.end());
        spread.max[static_cast<std::size_t>(k)] = *std::max_element(vals.begin(), vals.end());
    }
    spread.max_std = *std::max_element(spread.std.begin(), spread.std.end());
    return spread;
}

double pcc(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw validation_error("pcc: length mismatch " + std::to_string(a.size()) + " vs " +
                               std::to_string(b.size()));
    }
    if (a.size() < 2) throw validation_error("pcc: need at least 2 points");
    const double abar = mean_of(a);
    const double bbar = mean_of(b);
    double num = 0.0, da2 = 0.0, db2 = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - abar;
        const double db = b[i] - bbar;
        num += da * db;
        da2 += da * da;
        db2 += db * db;
    }
    if (da2 <= 0.0 || db2 <= 0.0) throw validation_error("pcc: zero variance input");
    return num / (std::sqrt(da2) * std::sqrt(db2));
}

double PccHeatmap::avg_at(int S) const {
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] == S) return 0.5 * (avg_u[i] + avg_v[i]);
    }
    return kNan;
}

PccHeatmap pcc_heatmap(const WindFieldSeries& series) {
    series.grid.validate();
    if (series.n_time < 2) throw validation_error("pcc_heatmap: need at least 2 snapshots");

    const GridSpec& g = series.grid;
    PccHeatmap hm;
    hm.grid = g;
    hm.pcc_u.assign(static_cast<std::size_t>(g.points()), kNan);
    hm.pcc_v.assign(static_cast<std::size_t>(g.points()), kNan);

    const std::vector<double> ref_u = series.point_series('u', g.pred_row, g.pred_col);
    const std::vector<double> ref_v = series.point_series('v', g.pred_row, g.pred_col);

    for (int r = 0; r < g.n_lat; ++r) {
        for (int c = 0; c < g.n_lon; ++c) {
            const std::size_t flat = static_cast<std::size_t>(r) * g.n_lon + c;
            if (r == g.pred_row && c == g.pred_col) {
                hm.pcc_u[flat] = 1.0;  // self-correlation
                hm.pcc_v[flat] = 1.0;
                continue;
            }
            bool bad = false;
            try {
                hm.pcc_u[flat] = pcc(series.point_series('u', r, c), ref_u);
            } catch (const validation_error&) {
                bad = true;
            }
            try {
                hm.pcc_v[flat] = pcc(series.point_series('v', r, c), ref_v);
            } catch (const validation_error&) {
                bad = true;
            }
            if (bad) hm.skipped.emplace_back(r, c);
        }
    }

    for (int S = 3; S <= std::min(g.n_lat, g.n_lon); S += 2) {
        const int half = S / 2;
        if (g.pred_row - half < 0 || g.pred_row + half >= g.n_lat || g.pred_col - half < 0 ||
            g.pred_col + half >= g.n_lon) {
            break;
        }
        double su = 0.0, sv = 0.0;
        int nu = 0, nv = 0;
        for (int r = g.pred_row - half; r <= g.pred_row + half; ++r) {
            for (int c = g.pred_col - half; c <= g.pred_col + half; ++c) {
                if (r == g.pred_row && c == g.pred_col) continue;  // exclude prediction point
                const std::size_t flat = static_cast<std::size_t>(r) * g.n_lon + c;
                if (!std::isnan(hm.pcc_u[flat])) {
                    su += hm.pcc_u[flat];
                    ++nu;
                }
                if (!std::isnan(hm.pcc_v[flat])) {
                    sv += hm.pcc_v[flat];
                    ++nv;
                }
            }
        }
        hm.sizes.push_back(S);
        hm.avg_u.push_back(nu > 0 ? su / nu : kNan);
        hm.avg_v.push_back(nv > 0 ? sv / nv : kNan);
    }
    return hm;
}

CorrelationReport analyze_site(const WindFieldSeries& series, const std::string& site,
                               int max_lag) {
    CorrelationReport rep;
    rep.site = site;
    rep.acc_u = acc_spread(series, 'u', max_lag);
    rep.acc_v = acc_spread(series, 'v', max_lag);
    rep.max_std_u = rep.acc_u.max_std;
    rep.max_std_v = rep.acc_v.max_std;
    rep.pcc = pcc_heatmap(series);
    return rep;
}

std::vector<std::string> learnability_rank(const std::vector<CorrelationReport>& reports) {
    if (reports.size() < 2) {
        throw validation_error("learnability_rank: need at least 2 reports");
    }
    std::vector<std::size_t> order(reports.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double sa = 0.5 * (reports[a].max_std_u + reports[a].max_std_v);
        const double sb = 0.5 * (reports[b].max_std_u + reports[b].max_std_v);
        if (sa != sb) return sa < sb;
        double pa = reports[a].pcc.avg_at(3);
        double pb = reports[b].pcc.avg_at(3);
        if (std::isnan(pa)) pa = 0.0;
        if (std::isnan(pb)) pb = 0.0;
        if (pa != pb) return pa > pb;
        return reports[a].site < reports[b].site;
    });
    std::vector<std::string> names;
    names.reserve(order.size());
    for (std::size_t i : order) names.push_back(reports[i].site);
    return names;
}

namespace {

nlohmann::json spread_to_json(const AccSpread& s) {
    nlohmann::json sk = nlohmann::json::array();
    for (const auto& [r, c] : s.skipped) sk.push_back({r, c});
    return {{"lags", s.lags},   {"mean", s.mean},       {"std", s.std},  {"min", s.min},
            {"max", s.max},     {"max_std", s.max_std}, {"skipped", sk}};
}

AccSpread spread_from_json(const nlohmann::json& j) {
    AccSpread s;
    s.lags = j.at("lags").get<std::vector<int>>();
    s.mean = j.at("mean").get<std::vector<double>>();
    s.std = j.at("std").get<std::vector<double>>();
    s.min = j.at("min").get<std::vector<double>>();
    s.max = j.at("max").get<std::vector<double>>();
    s.max_std = j.at("max_std");
    for (const auto& p : j.at("skipped")) s.skipped.emplace_back(p[0], p[1]);
    return s;
}

// NaN is not representable in JSON; heatmap entries pass through null.
nlohmann::json doubles_to_json(const std::vector<double>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (double x : v) {
        if (std::isnan(x)) {
            a.push_back(nullptr);
        } else {
            a.push_back(x);
        }
    }
    return a;
}

std::vector<double> doubles_from_json(const nlohmann::json& a) {
    std::vector<double> v;
    v.reserve(a.size());
    for (const auto& x : a) v.push_back(x.is_null() ? kNan : x.get<double>());
    return v;
}

}  // namespace

std::string report_to_json(const CorrelationReport& report) {
    nlohmann::json sk = nlohmann::json::array();
    for (const auto& [r, c] : report.pcc.skipped) sk.push_back({r, c});
    const GridSpec& g = report.pcc.grid;
    nlohmann::json j{
        {"site", report.site},
        {"acc_u", spread_to_json(report.acc_u)},
        {"acc_v", spread_to_json(report.acc_v)},
        {"max_std_u", report.max_std_u},
        {"max_std_v", report.max_std_v},
        {"pcc",
         {{"grid",
           {{"lat_min", g.lat_min},
            {"lat_max", g.lat_max},
            {"lon_min", g.lon_min},
            {"lon_max", g.lon_max},
            {"d_lat", g.d_lat},
            {"d_lon", g.d_lon},
            {"prediction_point", {g.pred_row, g.pred_col}}}},
          {"pcc_u", doubles_to_json(report.pcc.pcc_u)},
          {"pcc_v", doubles_to_json(report.pcc.pcc_v)},
          {"sizes", report.pcc.sizes},
          {"avg_u", doubles_to_json(report.pcc.avg_u)},
          {"avg_v", doubles_to_json(report.pcc.avg_v)},
          {"skipped", sk}}}};
    return j.dump(2);
}

CorrelationReport report_from_json(const std::string& text) {
    try {
        const nlohmann::json j = nlohmann::json::parse(text);
        CorrelationReport rep;
        rep.site = j.at("site");
        rep.acc_u = spread_from_json(j.at("acc_u"));
        rep.acc_v = spread_from_json(j.at("acc_v"));
        rep.max_std_u = j.at("max_std_u");
        rep.max_std_v = j.at("max_std_v");
        const nlohmann::json& p = j.at("pcc");
        const nlohmann::json& g = p.at("grid");
        rep.pcc.grid = GridSpec::from_bounds(g.at("lat_min"), g.at("lat_max"), g.at("lon_min"),
                                             g.at("lon_max"), g.at("d_lat"), g.at("d_lon"),
                                             g.at("prediction_point")[0],
                                             g.at("prediction_point")[1]);
        rep.pcc.pcc_u = doubles_from_json(p.at("pcc_u"));
        rep.pcc.pcc_v = doubles_from_json(p.at("pcc_v"));
        rep.pcc.sizes = p.at("sizes").get<std::vector<int>>();
        rep.pcc.avg_u = doubles_from_json(p.at("avg_u"));
        rep.pcc.avg_v = doubles_from_json(p.at("avg_v"));
        for (const auto& q : p.at("skipped")) rep.pcc.skipped.emplace_back(q[0], q[1]);
        return rep;
    } catch (const nlohmann::json::exception& e) {
        throw validation_error(std::string("CorrelationReport JSON: ") + e.what());
    }
}

void write_report_files(const CorrelationReport& report, const std::string& dir) {
    std::filesystem::create_directories(dir);
    {
        std::ofstream out(dir + "/report.json");
        if (!out) throw io_error("cannot write " + dir + "/report.json");
        out << report_to_json(report) << "\n";
    }
    const GridSpec& g = report.pcc.grid;
    for (const char comp : {'u', 'v'}) {
        const std::vector<double>& m = comp == 'u' ? report.pcc.pcc_u : report.pcc.pcc_v;
        const std::string path = dir + "/heatmap_" + comp + ".csv";
        std::ofstream out(path);
        if (!out) throw io_error("cannot write " + path);
        for (int r = 0; r < g.n_lat; ++r) {
            for (int c = 0; c < g.n_lon; ++c) {
                if (c) out << ',';
                const double x = m[static_cast<std::size_t>(r) * g.n_lon + c];
                char buf[32];
                std::snprintf(buf, sizeof buf, "%.6f", x);
                out << (std::isnan(x) ? "nan" : buf);
            }
            out << '\n';
        }
    }
}

}  // namespace windcast
