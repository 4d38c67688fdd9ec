#include "windcast/tensor.hpp"

#include <cmath>
#include <string>

#include "windcast/errors.hpp"

namespace windcast {

Tensor::Tensor(std::vector<std::int64_t> shp, bool requires_grad_) : shape(std::move(shp)) {
    std::int64_t n = 1;
    for (std::int64_t d : shape) {
        if (d < 0) throw validation_error("Tensor: negative dimension");
        n *= d;
    }
    data.assign(static_cast<std::size_t>(n), 0.0);
    requires_grad = requires_grad_;
    if (requires_grad) grad.assign(static_cast<std::size_t>(n), 0.0);
}

std::int64_t Tensor::numel() const {
    std::int64_t n = 1;
    for (std::int64_t d : shape) n *= d;
    return n;
}

void Tensor::ensure_grad() {
    requires_grad = true;
    if (grad.size() != data.size()) grad.assign(data.size(), 0.0);
}

void Tensor::zero_grad() {
    for (double& g : grad) g = 0.0;
}

std::string shape_string(const std::vector<std::int64_t>& shape) {
    std::string s = "[";
    for (std::size_t i = 0; i < shape.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(shape[i]);
    }
    return s + "]";
}

void Tensor::expect_shape(const std::vector<std::int64_t>& want, const char* where) const {
    if (shape != want) {
        throw validation_error(std::string(where) + ": shape mismatch, expected " +
                               shape_string(want) + ", got " + shape_string(shape));
    }
}

Tensor he_uniform_init(std::vector<std::int64_t> shape, std::int64_t n_in, Rng& rng) {
    if (n_in < 1) throw validation_error("he_uniform_init: n_in must be >= 1");
    Tensor t(std::move(shape));
    const double bound = std::sqrt(6.0 / static_cast<double>(n_in));
    for (double& x : t.data) x = rng.uniform(-bound, bound);
    return t;
}

}  // namespace windcast
