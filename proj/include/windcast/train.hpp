#ifndef WINDCAST_TRAIN_HPP
#define WINDCAST_TRAIN_HPP

#include <string>
#include <utility>
#include <vector>

#include "windcast/model.hpp"
#include "windcast/sampling.hpp"

namespace windcast {

struct TrainConfig {
    double lr = 1e-3;
    int batch_size = 32;
    int epochs = 50;
    int patience = 5;  // early stopping on validation Huber loss
    double huber_delta = 1.0;
    std::uint64_t seed = 0;
};

struct EpochRecord {
    int epoch = 0;  // 1-based
    double train_loss = 0.0;
    double val_loss = 0.0;
};

struct TrainHistory {
    std::vector<EpochRecord> epochs;
    int best_epoch = 0;       // 1-based epoch of the returned parameters
    double best_val = 0.0;
};

/// Minimizes Huber loss with Adam over the train split, shuffling each epoch
/// with a seeded generator. Early-stops when validation loss has not
/// improved for `patience` epochs and leaves the model at its best-validation
/// parameters. Samples must already be standardized.
TrainHistory train_model(Model& model, const SampleSet& samples, const TrainConfig& config);

/// Forward pass in eval mode plus de-standardization; returns (u, v) in m/s.
std::pair<double, double> predict(Model& model, const SampleWindow& window,
                                  const StandardizeStats& stats);

/// Batched eval-mode forward over a list of sample indices; returns
/// standardized predictions as pairs (u, v) in index order.
std::vector<std::pair<double, double>> predict_batch(Model& model, const SampleSet& samples,
                                                     const std::vector<std::size_t>& indices);

/// CSV "epoch,train_loss,val_loss" with %.12g formatting (stable bytes).
void write_history_csv(const TrainHistory& history, const std::string& path);

}  // namespace windcast

#endif
