#ifndef WINDCAST_SAMPLING_HPP
#define WINDCAST_SAMPLING_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "windcast/wind_series.hpp"

namespace windcast {

constexpr std::array<int, 5> kSupportedT = {1, 3, 6, 12, 24};
constexpr std::array<int, 7> kSupportedS = {1, 3, 5, 7, 9, 11, 13};

bool supported_T(int T);
bool supported_S(int S);

enum class Split : std::uint8_t { train, val, test };

/// One training example: T consecutive hourly snapshots of the S x S crop
/// centered on the prediction point, both channels, plus the (u, v) target
/// at the prediction point one hour after the last input snapshot.
struct SampleWindow {
    int T = 0;
    int S = 0;
    std::vector<double> input;  // [2][T][S][S], channel 0 = u
    double target_u = 0.0;
    double target_v = 0.0;
    std::int64_t anchor_time = 0;  // timestamp of the target
};

struct SplitFractions {
    double train = 0.6;
    double val = 0.2;
    double test = 0.2;
};

/// Windowed samples with a chronological, contiguous train/val/test split.
struct SampleSet {
    std::vector<SampleWindow> samples;  // in anchor-time order
    std::vector<Split> split;           // parallel to samples
    std::size_t n_train = 0, n_val = 0, n_test = 0;

    /// One past the last series hour whose value belongs to the training
    /// range (covers every train input and target); standardization
    /// statistics must be fit on hours [0, train_hour_end).
    std::int64_t train_hour_end = 0;

    std::vector<std::size_t> indices_of(Split s) const;

    /// Asserts split contiguity and anchor ordering. Throws validation_error.
    void validate() const;
};

/// Builds one sample per eligible anchor (series hours T..L-1). Inputs are
/// taken from the series as-is; calibration/standardization happen upstream.
SampleSet make_samples(const WindFieldSeries& series, int T, int S,
                       const SplitFractions& fractions = {});

}  // namespace windcast

#endif
