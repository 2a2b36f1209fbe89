#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "wez/dataset.hpp"
#include "wez/scenario.hpp"

namespace wez {

inline constexpr std::size_t kFeatureCount = 9;
using FeatureVector = std::array<double, kFeatureCount>;

// Model input order. The two cyclic angles are replaced by their
// (sin, cos) pairs so -180 deg and +180 deg encode identically.
inline constexpr std::array<const char*, kFeatureCount> kFeatureOrder = {
    "alt_sht", "vel_sht",     "pit_sht",     "alt_tgt",     "vel_tgt",
    "sin_hdg_tgt", "cos_hdg_tgt", "sin_rgt_tgt", "cos_rgt_tgt"};

// Degrees-to-radians happens here; throws NonFinite on bad inputs.
FeatureVector encode_features(const Scenario& s);

// Per-feature and target min-max ranges, fitted on training rows only.
struct ScalerParams {
    std::array<double, kFeatureCount> feature_min{};
    std::array<double, kFeatureCount> feature_max{};
    double target_min = 0.0;
    double target_max = 0.0;
    // Features whose fitted range collapsed to a point; transform emits
    // 0.0 for these and callers surface the warning.
    std::vector<std::size_t> degenerate_features;
};

ScalerParams fit_scaler(const std::vector<FeatureVector>& features,
                        const std::vector<double>& targets);

// (x - min) / (max - min) per feature; values from outside the fitted
// range map outside [0, 1] by design (no clamping).
FeatureVector transform_features(const ScalerParams& params, const FeatureVector& raw);
double transform_target(const ScalerParams& params, double target);
double inverse_target(const ScalerParams& params, double scaled);

struct SplitSpec {
    double test_fraction = 0.2;
    std::size_t k = 5;
    std::uint64_t seed = 0;
};

// Index-level split: a shuffled 20% test slice plus k near-equal folds
// partitioning the remaining 80%. All indices refer to dataset row order.
struct Splits {
    std::vector<std::size_t> test;
    std::vector<std::vector<std::size_t>> folds;  // k disjoint validation sets

    // Training pool for fold `f`: every non-test index outside fold f.
    std::vector<std::size_t> train_for_fold(std::size_t f) const;
    // The whole 80% pool in shuffled order.
    std::vector<std::size_t> train_all() const;
};

// Deterministic in spec.seed. Throws TooFewRows when rows < k + 1.
Splits split_dataset(std::size_t rows, const SplitSpec& spec);

}  // namespace wez
