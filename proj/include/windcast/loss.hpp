#ifndef WINDCAST_LOSS_HPP
#define WINDCAST_LOSS_HPP

#include "windcast/tensor.hpp"

namespace windcast {

/// Mean Huber loss over all elements: 0.5 r^2 for |r| <= delta, else
/// delta (|r| - 0.5 delta), with r = pred - target. When grad_out is given it
/// receives dLoss/dPred, i.e. clamp(r, +-delta) / numel.
double huber_loss(const Tensor& pred, const Tensor& target, double delta = 1.0,
                  Tensor* grad_out = nullptr);

}  // namespace windcast

#endif
