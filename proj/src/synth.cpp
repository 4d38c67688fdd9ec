#include "windcast/synth.hpp"

#include <array>
#include <cmath>
#include <vector>

#include "windcast/errors.hpp"
#include "windcast/rng.hpp"
#include "windcast/timeutil.hpp"

namespace windcast {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Mode table shared by both components: temporal periods (h), spatial
// wavelengths (grid cells), relative amplitudes. Six modes means a single
// snapshot of a small crop cannot pin down all mode phases, while a few
// consecutive snapshots can; that is the property the forecaster exploits.
constexpr int kModes = 6;
constexpr std::array<double, kModes> kPeriods = {9.0, 14.0, 22.0, 34.0, 52.0, 120.0};
constexpr std::array<double, kModes> kWavelengths = {7.0, 9.0, 12.0, 16.0, 22.0, 29.0};
constexpr std::array<double, kModes> kAmps = {0.8, 0.8, 0.85, 0.9, 0.95, 1.0};

struct WaveMode {
    double kr, kc;   // radians per cell
    double omega;    // radians per hour
    double phase;
    double amp;
};

std::vector<WaveMode> draw_modes(Rng& rng) {
    std::vector<WaveMode> modes(kModes);
    for (int j = 0; j < kModes; ++j) {
        const double theta = rng.uniform(0.0, kTwoPi);
        const double k = kTwoPi / kWavelengths[j];
        modes[j].kr = k * std::sin(theta);
        modes[j].kc = k * std::cos(theta);
        modes[j].omega = kTwoPi / kPeriods[j];
        modes[j].phase = rng.uniform(0.0, kTwoPi);
        modes[j].amp = kAmps[j];
    }
    return modes;
}

// Fluctuation-only advective component field, written into out[t*points + p].
void fill_advective(std::vector<double>& out, const GridSpec& g, std::int64_t hours,
                    std::uint64_t stream_seed, const SynthParams& p) {
    Rng rng(stream_seed);
    const std::vector<WaveMode> modes = draw_modes(rng);
    const double season_phase = rng.uniform(0.0, kTwoPi);
    const std::size_t plane = static_cast<std::size_t>(g.points());
    for (std::int64_t t = 0; t < hours; ++t) {
        const double season =
            1.0 + p.seasonal_depth * std::sin(kTwoPi * static_cast<double>(t) /
                                                  p.seasonal_period_h + season_phase);
        for (int r = 0; r < g.n_lat; ++r) {
            for (int c = 0; c < g.n_lon; ++c) {
                double sum = 0.0;
                for (const WaveMode& m : modes) {
                    sum += m.amp * std::sin(m.kr * r + m.kc * c -
                                            m.omega * static_cast<double>(t) + m.phase);
                }
                out[static_cast<std::size_t>(t) * plane + static_cast<std::size_t>(r) * g.n_lon +
                    c] = p.wave_scale * season * sum;
            }
        }
    }
}

// AR(1) per grid point over spatially smoothed unit-variance innovations.
// The AR coefficient ramps from phi_min (one corner) to phi_max (opposite
// corner), so the temporal correlation structure differs across the grid.
void fill_noise(std::vector<double>& out, const GridSpec& g, std::int64_t hours,
                std::uint64_t stream_seed, const SynthParams& p) {
    Rng rng(stream_seed);
    const int nr = g.n_lat, nc = g.n_lon;
    const std::size_t plane = static_cast<std::size_t>(g.points());

    std::vector<double> phi(plane);
    for (int r = 0; r < nr; ++r) {
        for (int c = 0; c < nc; ++c) {
            const double fr = nr > 1 ? static_cast<double>(r) / (nr - 1) : 0.5;
            const double fc = nc > 1 ? static_cast<double>(c) / (nc - 1) : 0.5;
            phi[static_cast<std::size_t>(r) * nc + c] =
                p.noise_phi_min + (p.noise_phi_max - p.noise_phi_min) * 0.5 * (fr + fc);
        }
    }

    // 3x3 smoothing kernel on a torus: center 1, edges 0.5, corners 0.25;
    // normalized so the smoothed innovation keeps unit variance.
    const double norm = std::sqrt(1.0 + 4 * 0.25 + 4 * 0.0625);
    std::vector<double> raw(plane), smooth(plane), state(plane, 0.0);
    for (std::int64_t t = 0; t < hours; ++t) {
        for (std::size_t i = 0; i < plane; ++i) raw[i] = rng.normal();
        for (int r = 0; r < nr; ++r) {
            for (int c = 0; c < nc; ++c) {
                const int rm = (r + nr - 1) % nr, rp = (r + 1) % nr;
                const int cm = (c + nc - 1) % nc, cp = (c + 1) % nc;
                auto at = [&](int rr, int cc) {
                    return raw[static_cast<std::size_t>(rr) * nc + cc];
                };
                const double s = at(r, c) +
                                 0.5 * (at(rm, c) + at(rp, c) + at(r, cm) + at(r, cp)) +
                                 0.25 * (at(rm, cm) + at(rm, cp) + at(rp, cm) + at(rp, cp));
                smooth[static_cast<std::size_t>(r) * nc + c] = s / norm;
            }
        }
        for (std::size_t i = 0; i < plane; ++i) {
            // stationary start at t=0, then x <- phi x + sqrt(1-phi^2) s
            state[i] = t == 0 ? smooth[i]
                              : phi[i] * state[i] + std::sqrt(1.0 - phi[i] * phi[i]) * smooth[i];
            out[static_cast<std::size_t>(t) * plane + i] = p.noise_scale * state[i];
        }
    }
}

}  // namespace

SynthKind synth_kind_from_name(const std::string& name) {
    if (name == "advective") return SynthKind::advective;
    if (name == "noise") return SynthKind::noise;
    if (name == "mixture") return SynthKind::mixture;
    throw validation_error("unknown synthetic field kind: '" + name +
                           "' (expected advective, noise, or mixture)");
}

std::string to_string(SynthKind kind) {
    switch (kind) {
        case SynthKind::advective: return "advective";
        case SynthKind::noise: return "noise";
        case SynthKind::mixture: return "mixture";
    }
    return "?";
}

WindFieldSeries synth_field(SynthKind kind, const GridSpec& grid, std::int64_t hours,
                            std::uint64_t seed, const SynthParams& params) {
    grid.validate();
    if (hours < 25) {
        throw validation_error("synth_field: need at least 25 hours for T=24 windows, got " +
                               std::to_string(hours));
    }
    if (params.mixture_weight < 0.0 || params.mixture_weight > 1.0) {
        throw validation_error("synth_field: mixture weight must be in [0, 1], got " +
                               std::to_string(params.mixture_weight));
    }

    WindFieldSeries s;
    s.grid = grid;
    s.start_time = utc_timestamp(2012, 1, 1, 0);
    s.step_seconds = 3600;
    s.altitude_m = 50.0;
    s.resize(hours);

    const std::size_t n = s.u.size();
    const bool want_adv = kind != SynthKind::noise;
    const bool want_noise = kind != SynthKind::advective;
    const double w = kind == SynthKind::mixture ? params.mixture_weight
                     : kind == SynthKind::noise ? 1.0
                                                : 0.0;

    std::vector<double> adv_u, adv_v, noi_u, noi_v;
    if (want_adv) {
        adv_u.resize(n);
        adv_v.resize(n);
        fill_advective(adv_u, grid, hours, derive_seed(seed, {1, 'u'}), params);
        fill_advective(adv_v, grid, hours, derive_seed(seed, {1, 'v'}), params);
    }
    if (want_noise) {
        noi_u.resize(n);
        noi_v.resize(n);
        fill_noise(noi_u, grid, hours, derive_seed(seed, {2, 'u'}), params);
        fill_noise(noi_v, grid, hours, derive_seed(seed, {2, 'v'}), params);
    }

    for (std::size_t i = 0; i < n; ++i) {
        s.u[i] = params.base_u + (want_adv ? (1.0 - w) * adv_u[i] : 0.0) +
                 (want_noise ? w * noi_u[i] : 0.0);
        s.v[i] = params.base_v + (want_adv ? (1.0 - w) * adv_v[i] : 0.0) +
                 (want_noise ? w * noi_v[i] : 0.0);
    }
    return s;
}

}  // namespace windcast
