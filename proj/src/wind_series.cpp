#include "windcast/wind_series.hpp"

#include <cmath>
#include <string>

#include "windcast/errors.hpp"

namespace windcast {

std::vector<double> WindFieldSeries::point_series(char component, int r, int c) const {
    const std::vector<double>& src = (component == 'u') ? u : v;
    std::vector<double> out(static_cast<std::size_t>(n_time));
    for (std::int64_t t = 0; t < n_time; ++t) out[static_cast<std::size_t>(t)] = src[idx(t, r, c)];
    return out;
}

void WindFieldSeries::validate() const {
    grid.validate();
    if (n_time < 1) throw validation_error("WindFieldSeries: time dimension must be >= 1");
    if (step_seconds <= 0) throw validation_error("WindFieldSeries: step must be positive");
    const std::size_t want = static_cast<std::size_t>(n_time) * grid.points();
    if (u.size() != want || v.size() != want) {
        throw validation_error("WindFieldSeries: component size " + std::to_string(u.size()) +
                               "/" + std::to_string(v.size()) + " does not match " +
                               std::to_string(want));
    }
    for (std::size_t i = 0; i < want; ++i) {
        if (!std::isfinite(u[i]) || !std::isfinite(v[i])) {
            throw validation_error("WindFieldSeries: non-finite value at flat index " +
                                   std::to_string(i));
        }
    }
}

}  // namespace windcast
