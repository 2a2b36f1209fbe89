#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wez/dataset.hpp"
#include "wez/errors.hpp"
#include "wez/mlp.hpp"
#include "wez/preprocess.hpp"

namespace wez {

struct TrainConfig {
    // Hidden widths; with the 9-wide input and scalar output the default
    // stacks 12 layers of nodes. The tapered profile and small batch are
    // tuned for datasets in the thousands of rows, where wider stacks
    // overfit long before early stopping lets them converge.
    std::vector<int> hidden = {56, 44, 36, 30, 26, 22, 18, 14, 12, 8};
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    int batch_size = 4;
    int max_epochs = 500;
    int patience = 20;  // epochs without validation improvement before stopping
    std::uint64_t seed = 7;
};

struct EpochStats {
    int epoch = 0;          // 1-based
    double train_mse = 0.0; // scaled units
    double val_mse = 0.0;
};

struct TrainResult {
    MlpModel model;  // parameters restored from the best-validation epoch
    std::vector<EpochStats> history;
};

// Non-finite loss mid-training; carries the history up to the failure.
struct DivergedError : Diverged {
    std::vector<EpochStats> history;
    DivergedError(const std::string& msg, std::vector<EpochStats> h)
        : Diverged(msg), history(std::move(h)) {}
};

struct RegressionMetrics {
    double mae = 0.0;   // NM
    double mse = 0.0;   // NM^2
    double rmse = 0.0;  // NM
    // Undefined when the targets are constant (zero total variance).
    std::optional<double> r2;
};

// Mini-batch Adam on `train_rows` with per-epoch validation on
// `val_rows`; the scaler is fitted on `train_rows` only and embedded in
// the model. Deterministic in cfg.seed.
TrainResult train_model(const std::vector<Sample>& train_rows,
                        const std::vector<Sample>& val_rows, const TrainConfig& cfg);

// Convenience: train against fold `val_fold` of the split (the remaining
// folds form the training partition).
TrainResult train_with_splits(const Dataset& dataset, const Splits& splits,
                              std::size_t val_fold, const TrainConfig& cfg);

// The metric definitions on raw vectors; r2 is empty when the targets
// have zero variance. Throws EmptyDataset / ShapeMismatch.
RegressionMetrics compute_metrics(const std::vector<double>& targets,
                                  const std::vector<double>& predictions);

// Metrics in NM against the rows' simulated labels.
RegressionMetrics evaluate(const MlpModel& model, const std::vector<Sample>& rows);

struct CrossValidation {
    std::vector<RegressionMetrics> folds;
    RegressionMetrics mean;
    RegressionMetrics std_dev;  // sample standard deviation across folds
};

// Trains one model per fold (in parallel when OpenMP is enabled; results
// are fold-indexed and deterministic) and evaluates each on its held-out
// fold.
CrossValidation cross_validate(const Dataset& dataset, const SplitSpec& split_spec,
                               const TrainConfig& cfg);

std::vector<Sample> rows_at(const Dataset& dataset, const std::vector<std::size_t>& indices);

// JSON round-trip for the training configuration; load applies partial
// overrides on top of the defaults.
std::string train_config_json(const TrainConfig& cfg);
TrainConfig load_train_config(const std::string& path);

}  // namespace wez
