#ifndef WINDCAST_TENSOR_HPP
#define WINDCAST_TENSOR_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "windcast/rng.hpp"

namespace windcast {

/// Row-major n-dimensional array of 64-bit floats with an optional gradient
/// buffer of the same shape. The whole engine works in doubles; float32 only
/// appears in file formats.
struct Tensor {
    std::vector<std::int64_t> shape;
    std::vector<double> data;
    std::vector<double> grad;
    bool requires_grad = false;

    Tensor() = default;
    explicit Tensor(std::vector<std::int64_t> shp, bool requires_grad_ = false);

    static Tensor zeros(std::vector<std::int64_t> shp) { return Tensor(std::move(shp)); }

    std::int64_t numel() const;
    void ensure_grad();
    void zero_grad();

    /// Shape check that throws validation_error with expected-vs-got dims.
    void expect_shape(const std::vector<std::int64_t>& want, const char* where) const;
};

std::string shape_string(const std::vector<std::int64_t>& shape);

/// He uniform variance-scaling init: i.i.d. samples on
/// (-sqrt(6/n_in), +sqrt(6/n_in)). n_in is the fan-in of the layer the
/// tensor belongs to.
Tensor he_uniform_init(std::vector<std::int64_t> shape, std::int64_t n_in, Rng& rng);

}  // namespace windcast

#endif
