#ifndef WINDCAST_ADAM_HPP
#define WINDCAST_ADAM_HPP

#include <cstdint>
#include <vector>

#include "windcast/tensor.hpp"

namespace windcast {

struct AdamConfig {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

/// Canonical Adam with bias correction. Moment buffers are allocated per
/// parameter tensor on construction; step() reads each tensor's grad buffer.
class Adam {
  public:
    explicit Adam(std::vector<Tensor*> params, AdamConfig config = {});

    void step();
    void zero_grad();
    std::int64_t steps() const { return t_; }

  private:
    std::vector<Tensor*> params_;
    std::vector<std::vector<double>> m_;
    std::vector<std::vector<double>> v_;
    AdamConfig cfg_;
    std::int64_t t_ = 0;
};

}  // namespace windcast

#endif
