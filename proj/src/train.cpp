#include "windcast/train.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>

#include "windcast/adam.hpp"
#include "windcast/errors.hpp"
#include "windcast/loss.hpp"

namespace windcast {

namespace {

Tensor batch_inputs(const SampleSet& set, const std::vector<std::size_t>& idx, std::size_t begin,
                    std::size_t count) {
    const SampleWindow& first = set.samples[idx[begin]];
    Tensor x({static_cast<std::int64_t>(count), 2, first.T, first.S, first.S});
    const std::size_t stride = first.input.size();
    for (std::size_t b = 0; b < count; ++b) {
        const SampleWindow& w = set.samples[idx[begin + b]];
        std::memcpy(x.data.data() + b * stride, w.input.data(), stride * sizeof(double));
    }
    return x;
}

Tensor batch_targets(const SampleSet& set, const std::vector<std::size_t>& idx, std::size_t begin,
                     std::size_t count) {
    Tensor y({static_cast<std::int64_t>(count), 2});
    for (std::size_t b = 0; b < count; ++b) {
        const SampleWindow& w = set.samples[idx[begin + b]];
        y.data[b * 2] = w.target_u;
        y.data[b * 2 + 1] = w.target_v;
    }
    return y;
}

double split_loss(Model& model, const SampleSet& set, const std::vector<std::size_t>& idx,
                  std::size_t batch_size, double delta) {
    double total = 0.0;
    for (std::size_t begin = 0; begin < idx.size(); begin += batch_size) {
        const std::size_t count = std::min(batch_size, idx.size() - begin);
        Tensor x = batch_inputs(set, idx, begin, count);
        Tensor y = batch_targets(set, idx, begin, count);
        const Tensor pred = model.forward(x, /*train=*/false);
        total += huber_loss(pred, y, delta) * static_cast<double>(count);
    }
    return total / static_cast<double>(idx.size());
}

}  // namespace

TrainHistory train_model(Model& model, const SampleSet& samples, const TrainConfig& config) {
    if (config.batch_size < 2) {
        throw validation_error("train: batch_size must be >= 2 for batch normalization");
    }
    if (config.epochs < 1) throw validation_error("train: epochs must be >= 1");
    std::vector<std::size_t> train_idx = samples.indices_of(Split::train);
    const std::vector<std::size_t> val_idx = samples.indices_of(Split::val);
    if (train_idx.empty()) throw validation_error("train: train split is empty");
    if (val_idx.empty()) throw validation_error("train: validation split is empty");

    Adam opt(model.params(), {.lr = config.lr});
    Rng shuffle_rng(derive_seed(config.seed, {0x73a1u}));

    TrainHistory hist;
    hist.best_val = std::numeric_limits<double>::infinity();
    Model::Snapshot best = model.snapshot();
    const std::size_t bs = static_cast<std::size_t>(config.batch_size);

    for (int epoch = 1; epoch <= config.epochs; ++epoch) {
        shuffle_rng.shuffle(train_idx);
        double loss_sum = 0.0;
        std::size_t seen = 0;
        int step = 0;
        for (std::size_t begin = 0; begin < train_idx.size(); begin += bs) {
            std::size_t count = std::min(bs, train_idx.size() - begin);
            if (count < 2) break;  // batchnorm cannot normalize a single leftover sample
            ++step;
            Tensor x = batch_inputs(samples, train_idx, begin, count);
            Tensor y = batch_targets(samples, train_idx, begin, count);
            const Tensor pred = model.forward(x, /*train=*/true);
            Tensor grad;
            const double loss = huber_loss(pred, y, config.huber_delta, &grad);
            if (!std::isfinite(loss)) {
                throw std::runtime_error("train: diverged, non-finite loss at epoch " +
                                         std::to_string(epoch) + " step " + std::to_string(step));
            }
            opt.zero_grad();
            model.backward(grad);
            opt.step();
            loss_sum += loss * static_cast<double>(count);
            seen += count;
        }
        if (seen == 0) throw validation_error("train: no full batch fits the train split");

        EpochRecord rec;
        rec.epoch = epoch;
        rec.train_loss = loss_sum / static_cast<double>(seen);
        rec.val_loss = split_loss(model, samples, val_idx, bs, config.huber_delta);
        hist.epochs.push_back(rec);

        if (rec.val_loss < hist.best_val) {
            hist.best_val = rec.val_loss;
            hist.best_epoch = epoch;
            best = model.snapshot();
        } else if (epoch - hist.best_epoch >= config.patience) {
            break;
        }
    }

    model.restore(best);
    return hist;
}

std::pair<double, double> predict(Model& model, const SampleWindow& window,
                                  const StandardizeStats& stats) {
    Tensor x({1, 2, window.T, window.S, window.S});
    if (x.data.size() != window.input.size()) {
        throw validation_error("predict: window shape [2][" + std::to_string(window.T) + "][" +
                               std::to_string(window.S) + "][" + std::to_string(window.S) +
                               "] does not match its buffer");
    }
    x.data = window.input;
    const Tensor out = model.forward(x, /*train=*/false);
    return invert_standardize(out.data[0], out.data[1], stats);
}

std::vector<std::pair<double, double>> predict_batch(Model& model, const SampleSet& samples,
                                                     const std::vector<std::size_t>& indices) {
    std::vector<std::pair<double, double>> out;
    out.reserve(indices.size());
    constexpr std::size_t kBatch = 64;
    for (std::size_t begin = 0; begin < indices.size(); begin += kBatch) {
        const std::size_t count = std::min(kBatch, indices.size() - begin);
        Tensor x = batch_inputs(samples, indices, begin, count);
        const Tensor pred = model.forward(x, /*train=*/false);
        for (std::size_t b = 0; b < count; ++b) {
            out.emplace_back(pred.data[b * 2], pred.data[b * 2 + 1]);
        }
    }
    return out;
}

void write_history_csv(const TrainHistory& history, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw io_error("cannot write history: " + path);
    out << "epoch,train_loss,val_loss\n";
    char buf[96];
    for (const EpochRecord& r : history.epochs) {
        std::snprintf(buf, sizeof buf, "%d,%.12g,%.12g\n", r.epoch, r.train_loss, r.val_loss);
        out << buf;
    }
}

}  // namespace windcast
