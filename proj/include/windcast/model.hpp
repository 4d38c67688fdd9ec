#ifndef WINDCAST_MODEL_HPP
#define WINDCAST_MODEL_HPP

#include <memory>
#include <string>
#include <vector>

#include "windcast/calib.hpp"
#include "windcast/layers.hpp"

namespace windcast {

enum class Variant { cnn2d3d, fully3d };

Variant variant_from_name(const std::string& name);
std::string to_string(Variant v);

struct ModelConfig {
    Variant variant = Variant::cnn2d3d;
    int T = 3;
    int S = 3;
    std::vector<int> conv3d_channels = {8, 16};   // after the 2 input channels
    std::vector<int> conv2d_channels = {32, 32};  // cnn2d3d only
    int dense_hidden = 64;                        // cnn2d3d only
    std::uint64_t seed = 0;

    /// T/S must be supported; fully3d additionally requires S >= 7 and
    /// T in {6, 12, 24} (the comparison protocol's range).
    void validate() const;
};

/// Feed-forward stack assembled from LayerSpecs. Input [N][2][T][S][S],
/// output [N][2]: the standardized (u, v) at the prediction point one hour
/// after the last input snapshot.
class Model {
  public:
    explicit Model(const ModelConfig& config);

    Tensor forward(const Tensor& x, bool train);
    /// Backward for the most recent forward; returns grad wrt the input.
    Tensor backward(const Tensor& grad_out);

    std::vector<Tensor*> params();
    std::int64_t param_count() const;

    const ModelConfig& config() const { return cfg_; }
    const std::vector<LayerSpec>& specs() const { return specs_; }

    /// Full-precision copy of parameters and batchnorm running stats, for
    /// best-validation restore during training.
    struct Snapshot {
        std::vector<std::vector<double>> params;
        std::vector<std::vector<double>> state;
    };
    Snapshot snapshot() const;
    void restore(const Snapshot& snap);

  private:
    ModelConfig cfg_;
    std::vector<LayerSpec> specs_;
    std::vector<std::unique_ptr<Layer>> layers_;
};

Model build_cnn2d3d(const ModelConfig& config);
Model build_fully3d(const ModelConfig& config);
Model build_model(const ModelConfig& config);

/// Checkpoint file: JSON header (config, layer specs, standardization stats)
/// + float32 little-endian parameter and state payload in layer order.
void save_checkpoint(const Model& model, const StandardizeStats& stats, const std::string& path);
Model load_checkpoint(const std::string& path, StandardizeStats* stats_out = nullptr);

}  // namespace windcast

#endif
