#ifndef WINDCAST_WIND_SERIES_HPP
#define WINDCAST_WIND_SERIES_HPP

#include <cstdint>
#include <vector>

#include "windcast/gridspec.hpp"

namespace windcast {

/// Hourly (u, v) snapshots on a GridSpec. u is the east-west component and v
/// the north-south component, in m/s, stored row-major as [time][lat][lon].
struct WindFieldSeries {
    GridSpec grid;
    std::int64_t start_time = 0;  // seconds since epoch, UTC
    std::int64_t step_seconds = 3600;
    double altitude_m = 50.0;
    std::int64_t n_time = 0;
    std::vector<double> u;
    std::vector<double> v;

    std::size_t idx(std::int64_t t, int r, int c) const {
        return static_cast<std::size_t>((t * grid.n_lat + r) * grid.n_lon + c);
    }
    double u_at(std::int64_t t, int r, int c) const { return u[idx(t, r, c)]; }
    double v_at(std::int64_t t, int r, int c) const { return v[idx(t, r, c)]; }
    double& u_ref(std::int64_t t, int r, int c) { return u[idx(t, r, c)]; }
    double& v_ref(std::int64_t t, int r, int c) { return v[idx(t, r, c)]; }

    std::int64_t time_at(std::int64_t t) const { return start_time + t * step_seconds; }

    /// One component's time series at a grid point.
    std::vector<double> point_series(char component, int r, int c) const;

    void resize(std::int64_t hours) {
        n_time = hours;
        u.assign(static_cast<std::size_t>(hours) * grid.points(), 0.0);
        v.assign(static_cast<std::size_t>(hours) * grid.points(), 0.0);
    }

    /// Shape consistency, time dimension >= 1, all values finite.
    void validate() const;
};

}  // namespace windcast

#endif
