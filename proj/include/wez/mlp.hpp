#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wez/preprocess.hpp"
#include "wez/scenario.hpp"

namespace wez {

// Dense feed-forward regressor: ReLU on every hidden layer, identity
// output. weights[l] is a flat row-major [layer_sizes[l+1] x
// layer_sizes[l]] matrix mapping layer l to layer l+1.
struct MlpModel {
    std::vector<int> layer_sizes;
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<double>> biases;

    // Embedded preprocessing so a saved model predicts standalone.
    ScalerParams scaler;
    std::vector<std::string> feature_order;

    struct Metadata {
        std::uint64_t seed = 0;
        int epochs_run = 0;
        int best_epoch = 0;
        double train_mse = 0.0;  // scaled units, at the restored epoch
        double val_mse = 0.0;
        double learning_rate = 0.0;
        int batch_size = 0;
        int patience = 0;
    } metadata;

    std::size_t parameter_count() const;
};

// He-uniform weights (suits ReLU), zero biases; deterministic in seed.
MlpModel make_mlp(const std::vector<int>& layer_sizes, std::uint64_t seed);

// Throws ShapeMismatch unless weight/bias dimensions chain correctly.
void validate_shapes(const MlpModel& m);

// Scaled input -> scaled output.
double forward(const MlpModel& m, std::span<const double> input);

// encode -> scale -> forward -> unscale; the self-contained NM prediction.
double predict(const MlpModel& m, const Scenario& s);

struct Gradients {
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<double>> biases;
};

Gradients make_zero_gradients(const MlpModel& m);

// Exact gradient of the batch-mean MSE over X[indices] w.r.t. every
// parameter, accumulated into `out` (which is zeroed first). Returns the
// batch MSE. Requires layer_sizes.front() == kFeatureCount.
double backward(const MlpModel& m, const std::vector<FeatureVector>& X,
                const std::vector<double>& y, std::span<const std::size_t> indices,
                Gradients& out);

// Forward-only batch-mean MSE over X[indices].
double batch_mse(const MlpModel& m, const std::vector<FeatureVector>& X,
                 const std::vector<double>& y, std::span<const std::size_t> indices);

struct AdamConfig {
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

struct AdamState {
    std::vector<std::vector<double>> m_w, v_w, m_b, v_b;
    long step = 0;
};

AdamState make_adam_state(const MlpModel& m);

// Canonical bias-corrected Adam update, in place.
void adam_step(MlpModel& m, const Gradients& g, AdamState& state, const AdamConfig& cfg);

}  // namespace wez
