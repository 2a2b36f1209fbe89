#include "wez/preprocess.hpp"

#include <cmath>
#include <numeric>

#include "wez/errors.hpp"
#include "wez/rng.hpp"
#include "wez/units.hpp"

namespace wez {

FeatureVector encode_features(const Scenario& s) {
    const double hdg = deg_to_rad(s.hdg_tgt);
    const double rgt = deg_to_rad(s.rgt_tgt);
    FeatureVector f = {s.alt_sht,      s.vel_sht,      s.pit_sht,
                       s.alt_tgt,      s.vel_tgt,      std::sin(hdg),
                       std::cos(hdg),  std::sin(rgt),  std::cos(rgt)};
    for (double v : f)
        if (!std::isfinite(v)) throw NonFinite("non-finite value in encoded features");
    return f;
}

ScalerParams fit_scaler(const std::vector<FeatureVector>& features,
                        const std::vector<double>& targets) {
    if (features.empty() || features.size() != targets.size())
        throw ShapeMismatch("fit_scaler needs matching non-empty features and targets");
    ScalerParams p;
    for (std::size_t j = 0; j < kFeatureCount; ++j) {
        p.feature_min[j] = features[0][j];
        p.feature_max[j] = features[0][j];
    }
    p.target_min = targets[0];
    p.target_max = targets[0];
    for (std::size_t i = 0; i < features.size(); ++i) {
        for (std::size_t j = 0; j < kFeatureCount; ++j) {
            p.feature_min[j] = std::min(p.feature_min[j], features[i][j]);
            p.feature_max[j] = std::max(p.feature_max[j], features[i][j]);
        }
        p.target_min = std::min(p.target_min, targets[i]);
        p.target_max = std::max(p.target_max, targets[i]);
    }
    for (std::size_t j = 0; j < kFeatureCount; ++j)
        if (p.feature_max[j] == p.feature_min[j]) p.degenerate_features.push_back(j);
    return p;
}

FeatureVector transform_features(const ScalerParams& params, const FeatureVector& raw) {
    FeatureVector out{};
    for (std::size_t j = 0; j < kFeatureCount; ++j) {
        const double span = params.feature_max[j] - params.feature_min[j];
        out[j] = span > 0.0 ? (raw[j] - params.feature_min[j]) / span : 0.0;
    }
    return out;
}

double transform_target(const ScalerParams& params, double target) {
    const double span = params.target_max - params.target_min;
    return span > 0.0 ? (target - params.target_min) / span : 0.0;
}

double inverse_target(const ScalerParams& params, double scaled) {
    const double span = params.target_max - params.target_min;
    return params.target_min + scaled * span;
}

std::vector<std::size_t> Splits::train_for_fold(std::size_t f) const {
    std::vector<std::size_t> out;
    for (std::size_t g = 0; g < folds.size(); ++g) {
        if (g == f) continue;
        out.insert(out.end(), folds[g].begin(), folds[g].end());
    }
    return out;
}

std::vector<std::size_t> Splits::train_all() const {
    std::vector<std::size_t> out;
    for (const auto& fold : folds) out.insert(out.end(), fold.begin(), fold.end());
    return out;
}

Splits split_dataset(std::size_t rows, const SplitSpec& spec) {
    if (spec.k < 1) throw ConfigError("split needs k >= 1");
    if (!(spec.test_fraction >= 0.0 && spec.test_fraction < 1.0))
        throw ConfigError("test_fraction must lie in [0, 1)");
    if (rows < spec.k + 1)
        throw TooFewRows("split needs at least " + std::to_string(spec.k + 1) +
                         " rows, got " + std::to_string(rows));
    std::vector<std::size_t> order(rows);
    std::iota(order.begin(), order.end(), std::size_t{0});
    CounterRng rng(spec.seed, kStreamSplit);
    rng.shuffle(order);

    const auto test_count = static_cast<std::size_t>(
        std::lround(spec.test_fraction * static_cast<double>(rows)));
    Splits s;
    s.test.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(test_count));

    const std::size_t pool = rows - test_count;
    if (pool < spec.k)
        throw TooFewRows("training pool of " + std::to_string(pool) +
                         " rows cannot form " + std::to_string(spec.k) + " folds");
    const std::size_t base = pool / spec.k;
    const std::size_t remainder = pool % spec.k;
    std::size_t cursor = test_count;
    s.folds.resize(spec.k);
    for (std::size_t f = 0; f < spec.k; ++f) {
        const std::size_t size = base + (f < remainder ? 1 : 0);
        s.folds[f].assign(order.begin() + static_cast<std::ptrdiff_t>(cursor),
                          order.begin() + static_cast<std::ptrdiff_t>(cursor + size));
        cursor += size;
    }
    return s;
}

}  // namespace wez
