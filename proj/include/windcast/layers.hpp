#ifndef WINDCAST_LAYERS_HPP
#define WINDCAST_LAYERS_HPP

#include <memory>
#include <string>
#include <vector>

#include "windcast/tensor.hpp"

namespace windcast {

enum class Padding { same, valid };

/// Declarative layer description; models are assembled from lists of these
/// and they are what checkpoint headers store.
struct LayerSpec {
    std::string kind;           // conv3d | conv2d | batchnorm | leaky_relu |
                                // flatten | dense | collapse_time
    std::vector<int> kernel;    // conv3d {kt,kh,kw}, conv2d {kh,kw}
    int channels_in = 0;        // conv/dense input width, batchnorm features
    int channels_out = 0;
    Padding padding = Padding::same;
    std::vector<int> stride;    // conv only; empty means all ones
    double alpha = 0.3;         // leaky_relu slope
    double momentum = 0.9;      // batchnorm running-stat update
    double eps = 1e-5;          // batchnorm variance epsilon
};

/// A layer owns its parameters and caches whatever the backward pass needs.
/// forward/backward calls must alternate on the same instance.
class Layer {
  public:
    virtual ~Layer() = default;

    virtual Tensor forward(const Tensor& x, bool train) = 0;

    /// Takes dLoss/dOutput, accumulates parameter gradients, returns
    /// dLoss/dInput.
    virtual Tensor backward(const Tensor& grad_out) = 0;

    virtual std::vector<Tensor*> params() { return {}; }

    /// Non-trainable buffers that still belong in snapshots/checkpoints
    /// (batchnorm running statistics).
    virtual std::vector<std::vector<double>*> state() { return {}; }

    virtual const LayerSpec& spec() const = 0;

    /// He-uniform initialization where the layer has weights.
    virtual void init(Rng&) {}
};

/// Cross-correlation (deep-learning convention, no kernel flip) over
/// [N][C][T][H][W]. `same` padding requires stride 1 and preserves T/H/W.
class Conv3d : public Layer {
  public:
    Conv3d(int c_in, int c_out, std::vector<int> kernel, Padding padding = Padding::same,
           std::vector<int> stride = {});
    Tensor forward(const Tensor& x, bool train) override;
    Tensor backward(const Tensor& grad_out) override;
    std::vector<Tensor*> params() override { return {&weight, &bias}; }
    const LayerSpec& spec() const override { return spec_; }
    void init(Rng& rng) override;

    Tensor weight;  // [c_out][c_in][kt][kh][kw]
    Tensor bias;    // [c_out]

  private:
    LayerSpec spec_;
    Tensor input_;
};

/// 2D analogue over [N][C][H][W]; internally runs the 3D core with a unit
/// time axis.
class Conv2d : public Layer {
  public:
    Conv2d(int c_in, int c_out, std::vector<int> kernel, Padding padding = Padding::same,
           std::vector<int> stride = {});
    Tensor forward(const Tensor& x, bool train) override;
    Tensor backward(const Tensor& grad_out) override;
    std::vector<Tensor*> params() override { return {&weight, &bias}; }
    const LayerSpec& spec() const override { return spec_; }
    void init(Rng& rng) override;

    Tensor weight;  // [c_out][c_in][kh][kw]
    Tensor bias;

  private:
    LayerSpec spec_;
    Tensor input_;
};

/// Per-channel batch normalization over dim 1 of an [N][C][...] tensor.
/// Train mode normalizes with batch statistics (population variance) and
/// updates running stats; eval mode uses the running stats.
class BatchNorm : public Layer {
  public:
    explicit BatchNorm(int channels, double momentum = 0.9, double eps = 1e-5);
    Tensor forward(const Tensor& x, bool train) override;
    Tensor backward(const Tensor& grad_out) override;
    std::vector<Tensor*> params() override { return {&gamma, &beta}; }
    std::vector<std::vector<double>*> state() override { return {&running_mean, &running_var}; }
    const LayerSpec& spec() const override { return spec_; }

    Tensor gamma;
    Tensor beta;
    std::vector<double> running_mean;
    std::vector<double> running_var;

  private:
    LayerSpec spec_;
    bool train_mode_ = true;
    Tensor xhat_;
    std::vector<double> inv_std_;
};

/// f(x) = max(alpha*x, x).
class LeakyRelu : public Layer {
  public:
    explicit LeakyRelu(double alpha = 0.3);
    Tensor forward(const Tensor& x, bool train) override;
    Tensor backward(const Tensor& grad_out) override;
    const LayerSpec& spec() const override { return spec_; }

  private:
    LayerSpec spec_;
    Tensor input_;
};

/// [N][...] -> [N][prod].
class Flatten : public Layer {
  public:
    Flatten();
    Tensor forward(const Tensor& x, bool train) override;
    Tensor backward(const Tensor& grad_out) override;
    const LayerSpec& spec() const override { return spec_; }

  private:
    LayerSpec spec_;
    std::vector<std::int64_t> in_shape_;
};

/// Mean over the time axis: [N][C][T][H][W] -> [N][C][H][W].
class CollapseTime : public Layer {
  public:
    CollapseTime();
    Tensor forward(const Tensor& x, bool train) override;
    Tensor backward(const Tensor& grad_out) override;
    const LayerSpec& spec() const override { return spec_; }

  private:
    LayerSpec spec_;
    std::vector<std::int64_t> in_shape_;
};

/// Fully connected [N][in] -> [N][out].
class Dense : public Layer {
  public:
    Dense(int in_features, int out_features);
    Tensor forward(const Tensor& x, bool train) override;
    Tensor backward(const Tensor& grad_out) override;
    std::vector<Tensor*> params() override { return {&weight, &bias}; }
    const LayerSpec& spec() const override { return spec_; }
    void init(Rng& rng) override;

    Tensor weight;  // [out][in]
    Tensor bias;    // [out]

  private:
    LayerSpec spec_;
    Tensor input_;
};

std::unique_ptr<Layer> make_layer(const LayerSpec& spec);

}  // namespace windcast

#endif
