#include "windcast/model.hpp"

#include <cstring>
#include <fstream>

#include <json.hpp>

#include "windcast/errors.hpp"
#include "windcast/sampling.hpp"

namespace windcast {

Variant variant_from_name(const std::string& name) {
    if (name == "cnn2d3d") return Variant::cnn2d3d;
    if (name == "fully3d") return Variant::fully3d;
    throw validation_error("unknown model variant: '" + name +
                           "' (expected cnn2d3d or fully3d)");
}

std::string to_string(Variant v) {
    return v == Variant::cnn2d3d ? "cnn2d3d" : "fully3d";
}

void ModelConfig::validate() const {
    if (!supported_T(T)) {
        throw validation_error("ModelConfig: unsupported T=" + std::to_string(T));
    }
    if (!supported_S(S)) {
        throw validation_error("ModelConfig: unsupported S=" + std::to_string(S));
    }
    if (variant == Variant::fully3d) {
        if (S < 7) {
            throw validation_error("ModelConfig: fully3d requires S >= 7, got S=" +
                                   std::to_string(S));
        }
        if (T != 6 && T != 12 && T != 24) {
            throw validation_error("ModelConfig: fully3d requires T in {6, 12, 24}, got T=" +
                                   std::to_string(T));
        }
    }
    if (conv3d_channels.empty()) {
        throw validation_error("ModelConfig: need at least one conv3d stage");
    }
    for (int c : conv3d_channels) {
        if (c < 1) throw validation_error("ModelConfig: conv3d channels must be positive");
    }
    if (variant == Variant::cnn2d3d) {
        if (conv2d_channels.empty()) {
            throw validation_error("ModelConfig: cnn2d3d needs at least one conv2d stage");
        }
        for (int c : conv2d_channels) {
            if (c < 1) throw validation_error("ModelConfig: conv2d channels must be positive");
        }
        if (dense_hidden < 1) {
            throw validation_error("ModelConfig: dense_hidden must be positive");
        }
    }
}

namespace {

std::vector<LayerSpec> specs_cnn2d3d(const ModelConfig& c) {
    std::vector<LayerSpec> specs;
    auto conv_bn_act = [&](const std::string& kind, std::vector<int> kernel, int ci, int co) {
        LayerSpec conv;
        conv.kind = kind;
        conv.kernel = std::move(kernel);
        conv.channels_in = ci;
        conv.channels_out = co;
        conv.padding = Padding::same;
        specs.push_back(conv);
        LayerSpec bn;
        bn.kind = "batchnorm";
        bn.channels_in = bn.channels_out = co;
        specs.push_back(bn);
        LayerSpec act;
        act.kind = "leaky_relu";
        specs.push_back(act);
    };

    int ch = 2;
    for (int co : c.conv3d_channels) {
        conv_bn_act("conv3d", {3, 3, 3}, ch, co);
        ch = co;
    }
    specs.push_back({.kind = "collapse_time"});
    for (int co : c.conv2d_channels) {
        conv_bn_act("conv2d", {3, 3}, ch, co);
        ch = co;
    }
    specs.push_back({.kind = "flatten"});
    LayerSpec d1;
    d1.kind = "dense";
    d1.channels_in = ch * c.S * c.S;
    d1.channels_out = c.dense_hidden;
    specs.push_back(d1);
    specs.push_back({.kind = "leaky_relu"});
    LayerSpec d2;
    d2.kind = "dense";
    d2.channels_in = c.dense_hidden;
    d2.channels_out = 2;  // one neuron each for u and v
    specs.push_back(d2);
    return specs;
}

std::vector<LayerSpec> specs_fully3d(const ModelConfig& c) {
    std::vector<LayerSpec> specs;
    int ch = 2;
    std::vector<int> plan = c.conv3d_channels;
    plan.push_back(plan.back());  // three 3D stages: 2 -> a -> b -> b
    for (int co : plan) {
        LayerSpec conv;
        conv.kind = "conv3d";
        conv.kernel = {3, 3, 3};
        conv.channels_in = ch;
        conv.channels_out = co;
        conv.padding = Padding::same;
        specs.push_back(conv);
        LayerSpec bn;
        bn.kind = "batchnorm";
        bn.channels_in = bn.channels_out = co;
        specs.push_back(bn);
        specs.push_back({.kind = "leaky_relu"});
        ch = co;
    }
    specs.push_back({.kind = "flatten"});
    LayerSpec out;
    out.kind = "dense";
    out.channels_in = ch * c.T * c.S * c.S;
    out.channels_out = 2;
    specs.push_back(out);
    return specs;
}

}  // namespace

Model::Model(const ModelConfig& config) : cfg_(config) {
    cfg_.validate();
    specs_ = cfg_.variant == Variant::cnn2d3d ? specs_cnn2d3d(cfg_) : specs_fully3d(cfg_);
    Rng rng(derive_seed(cfg_.seed, {0x1417u}));
    for (const LayerSpec& s : specs_) {
        layers_.push_back(make_layer(s));
        layers_.back()->init(rng);
    }
}

Tensor Model::forward(const Tensor& x, bool train) {
    const std::vector<std::int64_t> want = {x.shape.empty() ? 0 : x.shape[0], 2, cfg_.T, cfg_.S,
                                            cfg_.S};
    x.expect_shape(want, "Model::forward");
    Tensor cur = x;
    for (auto& layer : layers_) cur = layer->forward(cur, train);
    return cur;
}

Tensor Model::backward(const Tensor& grad_out) {
    Tensor g = grad_out;
    for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) g = (*it)->backward(g);
    return g;
}

std::vector<Tensor*> Model::params() {
    std::vector<Tensor*> out;
    for (auto& layer : layers_) {
        for (Tensor* p : layer->params()) out.push_back(p);
    }
    return out;
}

std::int64_t Model::param_count() const {
    std::int64_t n = 0;
    for (const auto& layer : layers_) {
        for (Tensor* p : const_cast<Layer&>(*layer).params()) n += p->numel();
    }
    return n;
}

Model::Snapshot Model::snapshot() const {
    Snapshot snap;
    for (const auto& layer : layers_) {
        Layer& l = const_cast<Layer&>(*layer);
        for (Tensor* p : l.params()) snap.params.push_back(p->data);
        for (std::vector<double>* s : l.state()) snap.state.push_back(*s);
    }
    return snap;
}

void Model::restore(const Snapshot& snap) {
    std::size_t pi = 0, si = 0;
    for (auto& layer : layers_) {
        for (Tensor* p : layer->params()) p->data = snap.params.at(pi++);
        for (std::vector<double>* s : layer->state()) *s = snap.state.at(si++);
    }
}

Model build_cnn2d3d(const ModelConfig& config) {
    ModelConfig c = config;
    c.variant = Variant::cnn2d3d;
    return Model(c);
}

Model build_fully3d(const ModelConfig& config) {
    ModelConfig c = config;
    c.variant = Variant::fully3d;
    return Model(c);
}

Model build_model(const ModelConfig& config) { return Model(config); }

namespace {

constexpr char kCkptMagic[8] = {'W', 'C', 'C', 'K', 'P', 'T', '1', '\n'};

nlohmann::json config_to_json(const ModelConfig& c) {
    return {{"variant", to_string(c.variant)},
            {"T", c.T},
            {"S", c.S},
            {"conv3d_channels", c.conv3d_channels},
            {"conv2d_channels", c.conv2d_channels},
            {"dense_hidden", c.dense_hidden},
            {"seed", c.seed}};
}

ModelConfig config_from_json(const nlohmann::json& j) {
    ModelConfig c;
    c.variant = variant_from_name(j.at("variant"));
    c.T = j.at("T");
    c.S = j.at("S");
    c.conv3d_channels = j.at("conv3d_channels").get<std::vector<int>>();
    c.conv2d_channels = j.at("conv2d_channels").get<std::vector<int>>();
    c.dense_hidden = j.at("dense_hidden");
    c.seed = j.at("seed");
    return c;
}

nlohmann::json spec_to_json(const LayerSpec& s) {
    return {{"kind", s.kind},
            {"kernel", s.kernel},
            {"channels_in", s.channels_in},
            {"channels_out", s.channels_out},
            {"padding", s.padding == Padding::same ? "same" : "valid"},
            {"stride", s.stride},
            {"alpha", s.alpha},
            {"momentum", s.momentum},
            {"eps", s.eps}};
}

}  // namespace

void save_checkpoint(const Model& model, const StandardizeStats& stats, const std::string& path) {
    Model& m = const_cast<Model&>(model);
    nlohmann::json specs = nlohmann::json::array();
    for (const LayerSpec& s : model.specs()) specs.push_back(spec_to_json(s));
    const nlohmann::json header{{"config", config_to_json(model.config())},
                                {"layers", specs},
                                {"stats", nlohmann::json::parse(stats_to_json(stats))}};
    const std::string htext = header.dump();

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot write checkpoint: " + path);
    out.write(kCkptMagic, 8);
    const std::uint32_t hlen = static_cast<std::uint32_t>(htext.size());
    char lenbuf[4] = {static_cast<char>(hlen & 0xff), static_cast<char>((hlen >> 8) & 0xff),
                      static_cast<char>((hlen >> 16) & 0xff),
                      static_cast<char>((hlen >> 24) & 0xff)};
    out.write(lenbuf, 4);
    out.write(htext.data(), static_cast<std::streamsize>(htext.size()));

    auto write_f32 = [&](const std::vector<double>& vals) {
        for (double d : vals) {
            const float f = static_cast<float>(d);
            std::uint32_t bits;
            std::memcpy(&bits, &f, 4);
            char b[4] = {static_cast<char>(bits & 0xff), static_cast<char>((bits >> 8) & 0xff),
                         static_cast<char>((bits >> 16) & 0xff),
                         static_cast<char>((bits >> 24) & 0xff)};
            out.write(b, 4);
        }
    };
    const Model::Snapshot snap = m.snapshot();
    for (const auto& p : snap.params) write_f32(p);
    for (const auto& s : snap.state) write_f32(s);
    if (!out) throw io_error("checkpoint write failed: " + path);
}

Model load_checkpoint(const std::string& path, StandardizeStats* stats_out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open checkpoint: " + path);
    std::string raw(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>{});
    if (raw.size() < 12 || std::memcmp(raw.data(), kCkptMagic, 8) != 0) {
        throw validation_error("checkpoint " + path + ": bad magic");
    }
    const unsigned char* lp = reinterpret_cast<const unsigned char*>(raw.data()) + 8;
    const std::uint32_t hlen = static_cast<std::uint32_t>(lp[0]) |
                               (static_cast<std::uint32_t>(lp[1]) << 8) |
                               (static_cast<std::uint32_t>(lp[2]) << 16) |
                               (static_cast<std::uint32_t>(lp[3]) << 24);
    if (raw.size() < 12 + static_cast<std::size_t>(hlen)) {
        throw validation_error("checkpoint " + path + ": truncated header");
    }
    nlohmann::json header;
    try {
        header = nlohmann::json::parse(raw.substr(12, hlen));
    } catch (const std::exception& e) {
        throw validation_error("checkpoint " + path + ": malformed header: " + e.what());
    }

    Model model(config_from_json(header.at("config")));
    if (stats_out) *stats_out = stats_from_json(header.at("stats").dump());

    Model::Snapshot snap = model.snapshot();
    std::size_t off = 12 + hlen;
    auto read_f32 = [&](std::vector<double>& vals) {
        for (double& d : vals) {
            if (off + 4 > raw.size()) {
                throw validation_error("checkpoint " + path + ": payload too short");
            }
            const unsigned char* p = reinterpret_cast<const unsigned char*>(raw.data()) + off;
            const std::uint32_t bits = static_cast<std::uint32_t>(p[0]) |
                                       (static_cast<std::uint32_t>(p[1]) << 8) |
                                       (static_cast<std::uint32_t>(p[2]) << 16) |
                                       (static_cast<std::uint32_t>(p[3]) << 24);
            float f;
            std::memcpy(&f, &bits, 4);
            d = static_cast<double>(f);
            off += 4;
        }
    };
    for (auto& p : snap.params) read_f32(p);
    for (auto& s : snap.state) read_f32(s);
    if (off != raw.size()) {
        throw validation_error("checkpoint " + path + ": payload size mismatch: " +
                               std::to_string(raw.size() - off) + " trailing bytes");
    }
    model.restore(snap);
    return model;
}

}  // namespace windcast
