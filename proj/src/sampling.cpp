#include "windcast/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "windcast/errors.hpp"

namespace windcast {

bool supported_T(int T) {
    return std::find(kSupportedT.begin(), kSupportedT.end(), T) != kSupportedT.end();
}

bool supported_S(int S) {
    return std::find(kSupportedS.begin(), kSupportedS.end(), S) != kSupportedS.end();
}

std::vector<std::size_t> SampleSet::indices_of(Split s) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (split[i] == s) out.push_back(i);
    }
    return out;
}

void SampleSet::validate() const {
    if (samples.size() != split.size()) {
        throw validation_error("SampleSet: split labels do not match sample count");
    }
    if (n_train + n_val + n_test != samples.size()) {
        throw validation_error("SampleSet: split counts do not sum to sample count");
    }
    std::int64_t prev = INT64_MIN;
    int prev_rank = -1;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (samples[i].anchor_time <= prev) {
            throw validation_error("SampleSet: anchors not strictly increasing at index " +
                                   std::to_string(i));
        }
        prev = samples[i].anchor_time;
        const int rank = static_cast<int>(split[i]);
        if (rank < prev_rank) {
            throw validation_error(
                "SampleSet: split leakage, later anchor assigned to earlier split at index " +
                std::to_string(i));
        }
        prev_rank = rank;
    }
}

SampleSet make_samples(const WindFieldSeries& series, int T, int S,
                       const SplitFractions& fractions) {
    series.grid.validate();
    if (!supported_T(T)) {
        throw validation_error("make_samples: unsupported T=" + std::to_string(T) +
                               " (supported: 1, 3, 6, 12, 24)");
    }
    if (!supported_S(S)) {
        throw validation_error("make_samples: unsupported S=" + std::to_string(S) +
                               " (supported odd sizes 1..13)");
    }
    const double fsum = fractions.train + fractions.val + fractions.test;
    if (fractions.train < 0 || fractions.val < 0 || fractions.test < 0 ||
        std::fabs(fsum - 1.0) > 1e-9) {
        throw validation_error("make_samples: split fractions must be >= 0 and sum to 1");
    }

    const GridSpec& g = series.grid;
    const int half = S / 2;
    const int r0 = g.pred_row - half, r1 = g.pred_row + half;
    const int c0 = g.pred_col - half, c1 = g.pred_col + half;
    if (r0 < 0 || r1 >= g.n_lat || c0 < 0 || c1 >= g.n_lon) {
        throw validation_error("make_samples: " + std::to_string(S) + "x" + std::to_string(S) +
                               " crop centered on (" + std::to_string(g.pred_row) + "," +
                               std::to_string(g.pred_col) + ") exceeds grid " +
                               std::to_string(g.n_lat) + "x" + std::to_string(g.n_lon));
    }
    if (series.n_time < T + 1) {
        throw validation_error("make_samples: series length " + std::to_string(series.n_time) +
                               " too short for T=" + std::to_string(T) + " (need >= " +
                               std::to_string(T + 1) + ")");
    }

    const std::int64_t n_anchors = series.n_time - T;
    SampleSet set;
    set.samples.reserve(static_cast<std::size_t>(n_anchors));
    const std::size_t in_len = static_cast<std::size_t>(2) * T * S * S;

    for (std::int64_t a = T; a < series.n_time; ++a) {
        SampleWindow w;
        w.T = T;
        w.S = S;
        w.anchor_time = series.time_at(a);
        w.input.resize(in_len);
        std::size_t k = 0;
        for (int ch = 0; ch < 2; ++ch) {
            for (int dt = 0; dt < T; ++dt) {
                const std::int64_t t = a - T + dt;
                for (int r = r0; r <= r1; ++r) {
                    for (int c = c0; c <= c1; ++c) {
                        w.input[k++] = ch == 0 ? series.u_at(t, r, c) : series.v_at(t, r, c);
                    }
                }
            }
        }
        w.target_u = series.u_at(a, g.pred_row, g.pred_col);
        w.target_v = series.v_at(a, g.pred_row, g.pred_col);
        set.samples.push_back(std::move(w));
    }

    // Chronological boundaries: round(n*train) and round(n*(train+val)) keep
    // every fraction within one sample of its target share.
    const std::int64_t i1 = std::llround(static_cast<double>(n_anchors) * fractions.train);
    const std::int64_t i2 =
        std::llround(static_cast<double>(n_anchors) * (fractions.train + fractions.val));
    set.split.resize(static_cast<std::size_t>(n_anchors));
    for (std::int64_t i = 0; i < n_anchors; ++i) {
        set.split[static_cast<std::size_t>(i)] =
            i < i1 ? Split::train : (i < i2 ? Split::val : Split::test);
    }
    set.n_train = static_cast<std::size_t>(i1);
    set.n_val = static_cast<std::size_t>(i2 - i1);
    set.n_test = static_cast<std::size_t>(n_anchors - i2);
    set.train_hour_end = T + i1;  // last train target is series hour T + i1 - 1
    set.validate();
    return set;
}

}  // namespace windcast
