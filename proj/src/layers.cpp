#include "windcast/layers.hpp"

#include <cmath>

#include "windcast/errors.hpp"

namespace windcast {

namespace {

struct ConvDims {
    int n, c_in, c_out;
    int in_t, in_h, in_w;
    int out_t, out_h, out_w;
    int kt, kh, kw;
    int st, sh, sw;
    int pt, ph, pw;  // leading pad
};

int out_extent(int in, int k, int stride, Padding padding, const char* where) {
    if (padding == Padding::same) return in;
    const int o = (in - k) / stride + 1;
    if (in < k || o < 1) {
        throw validation_error(std::string(where) + ": kernel " + std::to_string(k) +
                               " does not fit input extent " + std::to_string(in) +
                               " with valid padding");
    }
    return o;
}

ConvDims conv_dims(const std::vector<std::int64_t>& in_shape, const LayerSpec& spec,
                   const char* where) {
    if (in_shape.size() != 5) {
        throw validation_error(std::string(where) + ": expected rank-5 input [N][C][T][H][W], got " +
                               shape_string(in_shape));
    }
    ConvDims d{};
    d.n = static_cast<int>(in_shape[0]);
    d.c_in = static_cast<int>(in_shape[1]);
    d.in_t = static_cast<int>(in_shape[2]);
    d.in_h = static_cast<int>(in_shape[3]);
    d.in_w = static_cast<int>(in_shape[4]);
    if (d.c_in != spec.channels_in) {
        throw validation_error(std::string(where) + ": channel mismatch, expected " +
                               std::to_string(spec.channels_in) + " input channels, got " +
                               std::to_string(d.c_in));
    }
    d.c_out = spec.channels_out;
    d.kt = spec.kernel[0];
    d.kh = spec.kernel[1];
    d.kw = spec.kernel[2];
    d.st = spec.stride.empty() ? 1 : spec.stride[0];
    d.sh = spec.stride.empty() ? 1 : spec.stride[1];
    d.sw = spec.stride.empty() ? 1 : spec.stride[2];
    if (spec.padding == Padding::same && (d.st != 1 || d.sh != 1 || d.sw != 1)) {
        throw validation_error(std::string(where) + ": same padding requires stride 1");
    }
    d.out_t = out_extent(d.in_t, d.kt, d.st, spec.padding, where);
    d.out_h = out_extent(d.in_h, d.kh, d.sh, spec.padding, where);
    d.out_w = out_extent(d.in_w, d.kw, d.sw, spec.padding, where);
    d.pt = spec.padding == Padding::same ? (d.kt - 1) / 2 : 0;
    d.ph = spec.padding == Padding::same ? (d.kh - 1) / 2 : 0;
    d.pw = spec.padding == Padding::same ? (d.kw - 1) / 2 : 0;
    return d;
}

// out[n][co][ot][oh][ow] = bias[co]
//   + sum_{ci,dt,dh,dw} w[co][ci][dt][dh][dw] * x[n][ci][ot*st-pt+dt][...]
void conv_forward(const ConvDims& d, const double* x, const double* w, const double* b,
                  double* y) {
    const std::size_t in_plane = static_cast<std::size_t>(d.in_h) * d.in_w;
    const std::size_t in_chan = static_cast<std::size_t>(d.in_t) * in_plane;
    const std::size_t in_batch = static_cast<std::size_t>(d.c_in) * in_chan;
    const std::size_t k_plane = static_cast<std::size_t>(d.kh) * d.kw;
    const std::size_t k_chan = static_cast<std::size_t>(d.kt) * k_plane;
    const std::size_t k_out = static_cast<std::size_t>(d.c_in) * k_chan;

    std::size_t yi = 0;
    for (int n = 0; n < d.n; ++n) {
        for (int co = 0; co < d.c_out; ++co) {
            const double* wo = w + static_cast<std::size_t>(co) * k_out;
            for (int ot = 0; ot < d.out_t; ++ot) {
                for (int oh = 0; oh < d.out_h; ++oh) {
                    for (int ow = 0; ow < d.out_w; ++ow, ++yi) {
                        double acc = b[co];
                        const int t0 = ot * d.st - d.pt;
                        const int h0 = oh * d.sh - d.ph;
                        const int w0 = ow * d.sw - d.pw;
                        for (int ci = 0; ci < d.c_in; ++ci) {
                            const double* xc = x + n * in_batch + ci * in_chan;
                            const double* wc = wo + ci * k_chan;
                            for (int dt = 0; dt < d.kt; ++dt) {
                                const int it = t0 + dt;
                                if (it < 0 || it >= d.in_t) continue;
                                for (int dh = 0; dh < d.kh; ++dh) {
                                    const int ih = h0 + dh;
                                    if (ih < 0 || ih >= d.in_h) continue;
                                    const double* xrow = xc + it * in_plane +
                                                         static_cast<std::size_t>(ih) * d.in_w;
                                    const double* wrow = wc + dt * k_plane +
                                                         static_cast<std::size_t>(dh) * d.kw;
                                    for (int dw = 0; dw < d.kw; ++dw) {
                                        const int iw = w0 + dw;
                                        if (iw < 0 || iw >= d.in_w) continue;
                                        acc += wrow[dw] * xrow[iw];
                                    }
                                }
                            }
                        }
                        y[yi] = acc;
                    }
                }
            }
        }
    }
}

void conv_backward(const ConvDims& d, const double* x, const double* w, const double* gy,
                   double* gx, double* gw, double* gb) {
    const std::size_t in_plane = static_cast<std::size_t>(d.in_h) * d.in_w;
    const std::size_t in_chan = static_cast<std::size_t>(d.in_t) * in_plane;
    const std::size_t in_batch = static_cast<std::size_t>(d.c_in) * in_chan;
    const std::size_t k_plane = static_cast<std::size_t>(d.kh) * d.kw;
    const std::size_t k_chan = static_cast<std::size_t>(d.kt) * k_plane;
    const std::size_t k_out = static_cast<std::size_t>(d.c_in) * k_chan;

    std::size_t yi = 0;
    for (int n = 0; n < d.n; ++n) {
        for (int co = 0; co < d.c_out; ++co) {
            const double* wo = w + static_cast<std::size_t>(co) * k_out;
            double* gwo = gw + static_cast<std::size_t>(co) * k_out;
            for (int ot = 0; ot < d.out_t; ++ot) {
                for (int oh = 0; oh < d.out_h; ++oh) {
                    for (int ow = 0; ow < d.out_w; ++ow, ++yi) {
                        const double g = gy[yi];
                        if (g == 0.0) continue;
                        gb[co] += g;
                        const int t0 = ot * d.st - d.pt;
                        const int h0 = oh * d.sh - d.ph;
                        const int w0 = ow * d.sw - d.pw;
                        for (int ci = 0; ci < d.c_in; ++ci) {
                            const double* xc = x + n * in_batch + ci * in_chan;
                            double* gxc = gx + n * in_batch + ci * in_chan;
                            const double* wc = wo + ci * k_chan;
                            double* gwc = gwo + ci * k_chan;
                            for (int dt = 0; dt < d.kt; ++dt) {
                                const int it = t0 + dt;
                                if (it < 0 || it >= d.in_t) continue;
                                for (int dh = 0; dh < d.kh; ++dh) {
                                    const int ih = h0 + dh;
                                    if (ih < 0 || ih >= d.in_h) continue;
                                    const std::size_t xoff =
                                        it * in_plane + static_cast<std::size_t>(ih) * d.in_w;
                                    const std::size_t woff =
                                        dt * k_plane + static_cast<std::size_t>(dh) * d.kw;
                                    for (int dw = 0; dw < d.kw; ++dw) {
                                        const int iw = w0 + dw;
                                        if (iw < 0 || iw >= d.in_w) continue;
                                        gwc[woff + dw] += g * xc[xoff + iw];
                                        gxc[xoff + iw] += g * wc[woff + dw];
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

void check_kernel(const std::vector<int>& kernel, std::size_t want, const char* where) {
    if (kernel.size() != want) {
        throw validation_error(std::string(where) + ": kernel must have " + std::to_string(want) +
                               " dims");
    }
    for (int k : kernel) {
        if (k < 1) throw validation_error(std::string(where) + ": kernel dims must be positive");
    }
}

}  // namespace

// ---------------------------------------------------------------- Conv3d

Conv3d::Conv3d(int c_in, int c_out, std::vector<int> kernel, Padding padding,
               std::vector<int> stride) {
    check_kernel(kernel, 3, "conv3d");
    if (c_in < 1 || c_out < 1) throw validation_error("conv3d: channel counts must be positive");
    spec_.kind = "conv3d";
    spec_.kernel = std::move(kernel);
    spec_.channels_in = c_in;
    spec_.channels_out = c_out;
    spec_.padding = padding;
    spec_.stride = std::move(stride);
    weight = Tensor({c_out, c_in, spec_.kernel[0], spec_.kernel[1], spec_.kernel[2]}, true);
    bias = Tensor({c_out}, true);
}

void Conv3d::init(Rng& rng) {
    const std::int64_t n_in =
        static_cast<std::int64_t>(spec_.channels_in) * spec_.kernel[0] * spec_.kernel[1] *
        spec_.kernel[2];
    Tensor w = he_uniform_init(weight.shape, n_in, rng);
    weight.data = std::move(w.data);
    Tensor b = he_uniform_init(bias.shape, n_in, rng);
    bias.data = std::move(b.data);
}

Tensor Conv3d::forward(const Tensor& x, bool) {
    const ConvDims d = conv_dims(x.shape, spec_, "conv3d");
    input_ = x;
    Tensor y({d.n, d.c_out, d.out_t, d.out_h, d.out_w});
    conv_forward(d, x.data.data(), weight.data.data(), bias.data.data(), y.data.data());
    return y;
}

Tensor Conv3d::backward(const Tensor& grad_out) {
    const ConvDims d = conv_dims(input_.shape, spec_, "conv3d");
    grad_out.expect_shape({d.n, d.c_out, d.out_t, d.out_h, d.out_w}, "conv3d backward");
    weight.ensure_grad();
    bias.ensure_grad();
    Tensor gx(input_.shape);
    conv_backward(d, input_.data.data(), weight.data.data(), grad_out.data.data(),
                  gx.data.data(), weight.grad.data(), bias.grad.data());
    return gx;
}

// ---------------------------------------------------------------- Conv2d

Conv2d::Conv2d(int c_in, int c_out, std::vector<int> kernel, Padding padding,
               std::vector<int> stride) {
    check_kernel(kernel, 2, "conv2d");
    if (c_in < 1 || c_out < 1) throw validation_error("conv2d: channel counts must be positive");
    spec_.kind = "conv2d";
    spec_.kernel = std::move(kernel);
    spec_.channels_in = c_in;
    spec_.channels_out = c_out;
    spec_.padding = padding;
    spec_.stride = std::move(stride);
    weight = Tensor({c_out, c_in, spec_.kernel[0], spec_.kernel[1]}, true);
    bias = Tensor({c_out}, true);
}

void Conv2d::init(Rng& rng) {
    const std::int64_t n_in =
        static_cast<std::int64_t>(spec_.channels_in) * spec_.kernel[0] * spec_.kernel[1];
    Tensor w = he_uniform_init(weight.shape, n_in, rng);
    weight.data = std::move(w.data);
    Tensor b = he_uniform_init(bias.shape, n_in, rng);
    bias.data = std::move(b.data);
}

namespace {

// Runs the 3D core on [N][C][H][W] by inserting a unit time axis.
LayerSpec as3d(const LayerSpec& s2) {
    LayerSpec s = s2;
    s.kernel = {1, s2.kernel[0], s2.kernel[1]};
    if (!s2.stride.empty()) s.stride = {1, s2.stride[0], s2.stride[1]};
    return s;
}

std::vector<std::int64_t> with_unit_time(const std::vector<std::int64_t>& shape4,
                                         const char* where) {
    if (shape4.size() != 4) {
        throw validation_error(std::string(where) + ": expected rank-4 input [N][C][H][W], got " +
                               shape_string(shape4));
    }
    return {shape4[0], shape4[1], 1, shape4[2], shape4[3]};
}

}  // namespace

Tensor Conv2d::forward(const Tensor& x, bool) {
    const ConvDims d = conv_dims(with_unit_time(x.shape, "conv2d"), as3d(spec_), "conv2d");
    input_ = x;
    Tensor y({d.n, d.c_out, d.out_h, d.out_w});
    conv_forward(d, x.data.data(), weight.data.data(), bias.data.data(), y.data.data());
    return y;
}

Tensor Conv2d::backward(const Tensor& grad_out) {
    const ConvDims d = conv_dims(with_unit_time(input_.shape, "conv2d"), as3d(spec_), "conv2d");
    grad_out.expect_shape({d.n, d.c_out, d.out_h, d.out_w}, "conv2d backward");
    weight.ensure_grad();
    bias.ensure_grad();
    Tensor gx(input_.shape);
    conv_backward(d, input_.data.data(), weight.data.data(), grad_out.data.data(),
                  gx.data.data(), weight.grad.data(), bias.grad.data());
    return gx;
}

// -------------------------------------------------------------- BatchNorm

BatchNorm::BatchNorm(int channels, double momentum, double eps) {
    if (channels < 1) throw validation_error("batchnorm: channels must be positive");
    spec_.kind = "batchnorm";
    spec_.channels_in = channels;
    spec_.channels_out = channels;
    spec_.momentum = momentum;
    spec_.eps = eps;
    gamma = Tensor({channels}, true);
    beta = Tensor({channels}, true);
    for (double& g : gamma.data) g = 1.0;
    running_mean.assign(static_cast<std::size_t>(channels), 0.0);
    running_var.assign(static_cast<std::size_t>(channels), 1.0);
}

Tensor BatchNorm::forward(const Tensor& x, bool train) {
    if (x.shape.size() < 2 || x.shape[1] != spec_.channels_in) {
        throw validation_error("batchnorm: expected [N][" + std::to_string(spec_.channels_in) +
                               "][...], got " + shape_string(x.shape));
    }
    const std::int64_t n = x.shape[0];
    const std::int64_t c = x.shape[1];
    std::int64_t spatial = 1;
    for (std::size_t i = 2; i < x.shape.size(); ++i) spatial *= x.shape[i];
    const std::int64_t m = n * spatial;
    train_mode_ = train;
    if (train && n < 2) {
        throw validation_error("batchnorm: train mode needs batch size >= 2, got " +
                               std::to_string(n));
    }

    Tensor y(x.shape);
    xhat_ = Tensor(x.shape);
    inv_std_.assign(static_cast<std::size_t>(c), 0.0);

    for (std::int64_t ch = 0; ch < c; ++ch) {
        double mu, var;
        if (train) {
            double s = 0.0;
            for (std::int64_t b = 0; b < n; ++b) {
                const double* p = x.data.data() + (b * c + ch) * spatial;
                for (std::int64_t i = 0; i < spatial; ++i) s += p[i];
            }
            mu = s / static_cast<double>(m);
            double ss = 0.0;
            for (std::int64_t b = 0; b < n; ++b) {
                const double* p = x.data.data() + (b * c + ch) * spatial;
                for (std::int64_t i = 0; i < spatial; ++i) {
                    const double d = p[i] - mu;
                    ss += d * d;
                }
            }
            var = ss / static_cast<double>(m);
            running_mean[static_cast<std::size_t>(ch)] =
                spec_.momentum * running_mean[static_cast<std::size_t>(ch)] +
                (1.0 - spec_.momentum) * mu;
            running_var[static_cast<std::size_t>(ch)] =
                spec_.momentum * running_var[static_cast<std::size_t>(ch)] +
                (1.0 - spec_.momentum) * var;
        } else {
            mu = running_mean[static_cast<std::size_t>(ch)];
            var = running_var[static_cast<std::size_t>(ch)];
        }
        const double inv = 1.0 / std::sqrt(var + spec_.eps);
        inv_std_[static_cast<std::size_t>(ch)] = inv;
        const double g = gamma.data[static_cast<std::size_t>(ch)];
        const double bt = beta.data[static_cast<std::size_t>(ch)];
        for (std::int64_t b = 0; b < n; ++b) {
            const double* p = x.data.data() + (b * c + ch) * spatial;
            double* xh = xhat_.data.data() + (b * c + ch) * spatial;
            double* py = y.data.data() + (b * c + ch) * spatial;
            for (std::int64_t i = 0; i < spatial; ++i) {
                xh[i] = (p[i] - mu) * inv;
                py[i] = g * xh[i] + bt;
            }
        }
    }
    return y;
}

Tensor BatchNorm::backward(const Tensor& grad_out) {
    grad_out.expect_shape(xhat_.shape, "batchnorm backward");
    const std::int64_t n = xhat_.shape[0];
    const std::int64_t c = xhat_.shape[1];
    std::int64_t spatial = 1;
    for (std::size_t i = 2; i < xhat_.shape.size(); ++i) spatial *= xhat_.shape[i];
    const double m = static_cast<double>(n * spatial);

    gamma.ensure_grad();
    beta.ensure_grad();
    Tensor gx(xhat_.shape);

    for (std::int64_t ch = 0; ch < c; ++ch) {
        const double g = gamma.data[static_cast<std::size_t>(ch)];
        const double inv = inv_std_[static_cast<std::size_t>(ch)];
        double sum_gy = 0.0, sum_gy_xhat = 0.0;
        for (std::int64_t b = 0; b < n; ++b) {
            const double* gy = grad_out.data.data() + (b * c + ch) * spatial;
            const double* xh = xhat_.data.data() + (b * c + ch) * spatial;
            for (std::int64_t i = 0; i < spatial; ++i) {
                sum_gy += gy[i];
                sum_gy_xhat += gy[i] * xh[i];
            }
        }
        gamma.grad[static_cast<std::size_t>(ch)] += sum_gy_xhat;
        beta.grad[static_cast<std::size_t>(ch)] += sum_gy;

        for (std::int64_t b = 0; b < n; ++b) {
            const double* gy = grad_out.data.data() + (b * c + ch) * spatial;
            const double* xh = xhat_.data.data() + (b * c + ch) * spatial;
            double* px = gx.data.data() + (b * c + ch) * spatial;
            if (train_mode_) {
                for (std::int64_t i = 0; i < spatial; ++i) {
                    px[i] = g * inv * (gy[i] - sum_gy / m - xh[i] * sum_gy_xhat / m);
                }
            } else {
                for (std::int64_t i = 0; i < spatial; ++i) px[i] = g * inv * gy[i];
            }
        }
    }
    return gx;
}

// -------------------------------------------------------------- LeakyRelu

LeakyRelu::LeakyRelu(double alpha) {
    spec_.kind = "leaky_relu";
    spec_.alpha = alpha;
}

Tensor LeakyRelu::forward(const Tensor& x, bool) {
    input_ = x;
    Tensor y(x.shape);
    const double a = spec_.alpha;
    for (std::size_t i = 0; i < x.data.size(); ++i) {
        y.data[i] = std::max(a * x.data[i], x.data[i]);
    }
    return y;
}

Tensor LeakyRelu::backward(const Tensor& grad_out) {
    grad_out.expect_shape(input_.shape, "leaky_relu backward");
    Tensor gx(input_.shape);
    const double a = spec_.alpha;
    for (std::size_t i = 0; i < gx.data.size(); ++i) {
        gx.data[i] = grad_out.data[i] * (input_.data[i] >= 0.0 ? 1.0 : a);
    }
    return gx;
}

// ---------------------------------------------------------------- Flatten

Flatten::Flatten() { spec_.kind = "flatten"; }

Tensor Flatten::forward(const Tensor& x, bool) {
    if (x.shape.empty()) throw validation_error("flatten: scalar input");
    in_shape_ = x.shape;
    Tensor y({x.shape[0], x.numel() / x.shape[0]});
    y.data = x.data;
    return y;
}

Tensor Flatten::backward(const Tensor& grad_out) {
    Tensor gx(in_shape_);
    if (grad_out.data.size() != gx.data.size()) {
        throw validation_error("flatten backward: size mismatch");
    }
    gx.data = grad_out.data;
    return gx;
}

// ------------------------------------------------------------ CollapseTime

CollapseTime::CollapseTime() { spec_.kind = "collapse_time"; }

Tensor CollapseTime::forward(const Tensor& x, bool) {
    if (x.shape.size() != 5) {
        throw validation_error("collapse_time: expected rank-5 input [N][C][T][H][W], got " +
                               shape_string(x.shape));
    }
    in_shape_ = x.shape;
    const std::int64_t n = x.shape[0], c = x.shape[1], t = x.shape[2];
    const std::int64_t plane = x.shape[3] * x.shape[4];
    Tensor y({n, c, x.shape[3], x.shape[4]});
    for (std::int64_t b = 0; b < n; ++b) {
        for (std::int64_t ch = 0; ch < c; ++ch) {
            double* py = y.data.data() + (b * c + ch) * plane;
            for (std::int64_t tt = 0; tt < t; ++tt) {
                const double* px = x.data.data() + ((b * c + ch) * t + tt) * plane;
                for (std::int64_t i = 0; i < plane; ++i) py[i] += px[i];
            }
            for (std::int64_t i = 0; i < plane; ++i) py[i] /= static_cast<double>(t);
        }
    }
    return y;
}

Tensor CollapseTime::backward(const Tensor& grad_out) {
    const std::int64_t n = in_shape_[0], c = in_shape_[1], t = in_shape_[2];
    const std::int64_t plane = in_shape_[3] * in_shape_[4];
    grad_out.expect_shape({n, c, in_shape_[3], in_shape_[4]}, "collapse_time backward");
    Tensor gx(in_shape_);
    for (std::int64_t b = 0; b < n; ++b) {
        for (std::int64_t ch = 0; ch < c; ++ch) {
            const double* gy = grad_out.data.data() + (b * c + ch) * plane;
            for (std::int64_t tt = 0; tt < t; ++tt) {
                double* px = gx.data.data() + ((b * c + ch) * t + tt) * plane;
                for (std::int64_t i = 0; i < plane; ++i) {
                    px[i] = gy[i] / static_cast<double>(t);
                }
            }
        }
    }
    return gx;
}

// ------------------------------------------------------------------ Dense

Dense::Dense(int in_features, int out_features) {
    if (in_features < 1 || out_features < 1) {
        throw validation_error("dense: feature counts must be positive");
    }
    spec_.kind = "dense";
    spec_.channels_in = in_features;
    spec_.channels_out = out_features;
    weight = Tensor({out_features, in_features}, true);
    bias = Tensor({out_features}, true);
}

void Dense::init(Rng& rng) {
    Tensor w = he_uniform_init(weight.shape, spec_.channels_in, rng);
    weight.data = std::move(w.data);
    // biases start at zero; only conv filters draw He-uniform biases
}

Tensor Dense::forward(const Tensor& x, bool) {
    const std::int64_t fin = spec_.channels_in, fout = spec_.channels_out;
    if (x.shape.size() != 2 || x.shape[1] != fin) {
        throw validation_error("dense: expected [N][" + std::to_string(fin) + "], got " +
                               shape_string(x.shape));
    }
    input_ = x;
    const std::int64_t n = x.shape[0];
    Tensor y({n, fout});
    for (std::int64_t b = 0; b < n; ++b) {
        const double* px = x.data.data() + b * fin;
        double* py = y.data.data() + b * fout;
        for (std::int64_t o = 0; o < fout; ++o) {
            const double* wr = weight.data.data() + o * fin;
            double acc = bias.data[static_cast<std::size_t>(o)];
            for (std::int64_t i = 0; i < fin; ++i) acc += wr[i] * px[i];
            py[o] = acc;
        }
    }
    return y;
}

Tensor Dense::backward(const Tensor& grad_out) {
    const std::int64_t fin = spec_.channels_in, fout = spec_.channels_out;
    const std::int64_t n = input_.shape[0];
    grad_out.expect_shape({n, fout}, "dense backward");
    weight.ensure_grad();
    bias.ensure_grad();
    Tensor gx({n, fin});
    for (std::int64_t b = 0; b < n; ++b) {
        const double* px = input_.data.data() + b * fin;
        const double* gy = grad_out.data.data() + b * fout;
        double* pgx = gx.data.data() + b * fin;
        for (std::int64_t o = 0; o < fout; ++o) {
            const double g = gy[o];
            if (g == 0.0) continue;
            bias.grad[static_cast<std::size_t>(o)] += g;
            const double* wr = weight.data.data() + o * fin;
            double* gwr = weight.grad.data() + o * fin;
            for (std::int64_t i = 0; i < fin; ++i) {
                gwr[i] += g * px[i];
                pgx[i] += g * wr[i];
            }
        }
    }
    return gx;
}

std::unique_ptr<Layer> make_layer(const LayerSpec& spec) {
    if (spec.kind == "conv3d") {
        return std::make_unique<Conv3d>(spec.channels_in, spec.channels_out, spec.kernel,
                                        spec.padding, spec.stride);
    }
    if (spec.kind == "conv2d") {
        return std::make_unique<Conv2d>(spec.channels_in, spec.channels_out, spec.kernel,
                                        spec.padding, spec.stride);
    }
    if (spec.kind == "batchnorm") {
        return std::make_unique<BatchNorm>(spec.channels_in, spec.momentum, spec.eps);
    }
    if (spec.kind == "leaky_relu") return std::make_unique<LeakyRelu>(spec.alpha);
    if (spec.kind == "flatten") return std::make_unique<Flatten>();
    if (spec.kind == "collapse_time") return std::make_unique<CollapseTime>();
    if (spec.kind == "dense") {
        return std::make_unique<Dense>(spec.channels_in, spec.channels_out);
    }
    throw validation_error("make_layer: unknown layer kind '" + spec.kind + "'");
}

}  // namespace windcast
