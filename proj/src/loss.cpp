#include "windcast/loss.hpp"

#include <cmath>

#include "windcast/errors.hpp"

namespace windcast {

double huber_loss(const Tensor& pred, const Tensor& target, double delta, Tensor* grad_out) {
    pred.expect_shape(target.shape, "huber_loss");
    if (delta <= 0.0) throw validation_error("huber_loss: delta must be positive");
    const std::size_t n = pred.data.size();
    if (n == 0) throw validation_error("huber_loss: empty tensors");
    if (grad_out) *grad_out = Tensor(pred.shape);

    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = pred.data[i] - target.data[i];
        const double ar = std::fabs(r);
        if (ar <= delta) {
            sum += 0.5 * r * r;
        } else {
            sum += delta * (ar - 0.5 * delta);
        }
        if (grad_out) {
            const double clipped = r > delta ? delta : (r < -delta ? -delta : r);
            grad_out->data[i] = clipped / static_cast<double>(n);
        }
    }
    return sum / static_cast<double>(n);
}

}  // namespace windcast
