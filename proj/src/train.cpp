#include "wez/train.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <numeric>

#include <json.hpp>

#include "wez/rng.hpp"

namespace wez {

namespace {

void validate_train_config(const TrainConfig& cfg) {
    if (cfg.hidden.empty()) throw ConfigError("train config needs at least one hidden layer");
    for (int h : cfg.hidden)
        if (h < 1) throw ConfigError("hidden widths must be positive");
    if (!(cfg.learning_rate > 0.0)) throw ConfigError("learning_rate must be positive");
    if (!(cfg.beta1 > 0.0 && cfg.beta1 < 1.0 && cfg.beta2 > 0.0 && cfg.beta2 < 1.0))
        throw ConfigError("adam betas must lie in (0, 1)");
    if (!(cfg.epsilon > 0.0)) throw ConfigError("epsilon must be positive");
    if (cfg.batch_size < 1) throw ConfigError("batch_size must be positive");
    if (cfg.max_epochs < 1) throw ConfigError("max_epochs must be positive");
    if (cfg.patience < 1) throw ConfigError("patience must be at least 1");
}

struct EncodedRows {
    std::vector<FeatureVector> X;
    std::vector<double> y;  // scaled after the caller applies the scaler
};

EncodedRows encode_rows(const std::vector<Sample>& rows) {
    EncodedRows out;
    out.X.reserve(rows.size());
    out.y.reserve(rows.size());
    for (const Sample& s : rows) {
        out.X.push_back(encode_features(s.scenario));
        out.y.push_back(s.max_range_nm);
    }
    return out;
}

void apply_scaler(const ScalerParams& scaler, EncodedRows& rows) {
    for (FeatureVector& f : rows.X) f = transform_features(scaler, f);
    for (double& t : rows.y) t = transform_target(scaler, t);
}

std::vector<std::size_t> all_indices(std::size_t n) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    return idx;
}

}  // namespace

std::vector<Sample> rows_at(const Dataset& dataset, const std::vector<std::size_t>& indices) {
    std::vector<Sample> out;
    out.reserve(indices.size());
    for (std::size_t i : indices) out.push_back(dataset.rows.at(i));
    return out;
}

TrainResult train_model(const std::vector<Sample>& train_rows,
                        const std::vector<Sample>& val_rows, const TrainConfig& cfg) {
    validate_train_config(cfg);
    if (train_rows.empty()) throw TooFewRows("empty training partition");
    if (val_rows.empty()) throw TooFewRows("empty validation partition");

    EncodedRows train = encode_rows(train_rows);
    EncodedRows val = encode_rows(val_rows);
    const ScalerParams scaler = fit_scaler(train.X, train.y);
    apply_scaler(scaler, train);
    apply_scaler(scaler, val);

    std::vector<int> layer_sizes;
    layer_sizes.push_back(static_cast<int>(kFeatureCount));
    layer_sizes.insert(layer_sizes.end(), cfg.hidden.begin(), cfg.hidden.end());
    layer_sizes.push_back(1);

    MlpModel model = make_mlp(layer_sizes, cfg.seed);
    model.scaler = scaler;
    Gradients grads = make_zero_gradients(model);
    AdamState adam = make_adam_state(model);
    const AdamConfig adam_cfg{cfg.learning_rate, cfg.beta1, cfg.beta2, cfg.epsilon};

    const std::vector<std::size_t> train_eval = all_indices(train.X.size());
    const std::vector<std::size_t> val_eval = all_indices(val.X.size());
    std::vector<std::size_t> order = train_eval;

    std::vector<EpochStats> history;
    double best_val = std::numeric_limits<double>::infinity();
    int best_epoch = 0;
    double best_train = 0.0;
    std::vector<std::vector<double>> best_weights = model.weights;
    std::vector<std::vector<double>> best_biases = model.biases;

    const auto batch = static_cast<std::size_t>(cfg.batch_size);
    for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
        CounterRng rng(cfg.seed, kStreamShuffle + static_cast<std::uint64_t>(epoch));
        rng.shuffle(order);
        for (std::size_t start = 0; start < order.size(); start += batch) {
            const std::size_t len = std::min(batch, order.size() - start);
            const double loss =
                backward(model, train.X, train.y,
                         std::span<const std::size_t>(order.data() + start, len), grads);
            if (!std::isfinite(loss))
                throw DivergedError("non-finite batch loss at epoch " +
                                        std::to_string(epoch),
                                    history);
            adam_step(model, grads, adam, adam_cfg);
        }
        const double train_mse = batch_mse(model, train.X, train.y, train_eval);
        const double val_mse = batch_mse(model, val.X, val.y, val_eval);
        history.push_back({epoch, train_mse, val_mse});
        if (!std::isfinite(train_mse) || !std::isfinite(val_mse))
            throw DivergedError("non-finite epoch loss at epoch " + std::to_string(epoch),
                                history);
        if (val_mse < best_val) {
            best_val = val_mse;
            best_epoch = epoch;
            best_train = train_mse;
            best_weights = model.weights;
            best_biases = model.biases;
        } else if (epoch - best_epoch >= cfg.patience) {
            break;
        }
    }

    model.weights = std::move(best_weights);
    model.biases = std::move(best_biases);
    model.metadata.seed = cfg.seed;
    model.metadata.epochs_run = static_cast<int>(history.size());
    model.metadata.best_epoch = best_epoch;
    model.metadata.train_mse = best_train;
    model.metadata.val_mse = best_val;
    model.metadata.learning_rate = cfg.learning_rate;
    model.metadata.batch_size = cfg.batch_size;
    model.metadata.patience = cfg.patience;
    return {std::move(model), std::move(history)};
}

TrainResult train_with_splits(const Dataset& dataset, const Splits& splits,
                              std::size_t val_fold, const TrainConfig& cfg) {
    if (val_fold >= splits.folds.size())
        throw ConfigError("validation fold index out of range");
    return train_model(rows_at(dataset, splits.train_for_fold(val_fold)),
                       rows_at(dataset, splits.folds[val_fold]), cfg);
}

RegressionMetrics compute_metrics(const std::vector<double>& targets,
                                  const std::vector<double>& predictions) {
    if (targets.empty()) throw EmptyDataset("compute_metrics needs at least one value");
    if (targets.size() != predictions.size())
        throw ShapeMismatch("compute_metrics: " + std::to_string(targets.size()) +
                            " targets vs " + std::to_string(predictions.size()) +
                            " predictions");
    const double n = static_cast<double>(targets.size());
    double abs_sum = 0.0, sq_sum = 0.0, target_sum = 0.0;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const double err = predictions[i] - targets[i];
        abs_sum += std::fabs(err);
        sq_sum += err * err;
        target_sum += targets[i];
    }
    RegressionMetrics metrics;
    metrics.mae = abs_sum / n;
    metrics.mse = sq_sum / n;
    metrics.rmse = std::sqrt(metrics.mse);
    const double target_mean = target_sum / n;
    double ss_tot = 0.0;
    for (double t : targets) ss_tot += (t - target_mean) * (t - target_mean);
    if (ss_tot > 0.0) metrics.r2 = 1.0 - sq_sum / ss_tot;
    return metrics;
}

RegressionMetrics evaluate(const MlpModel& model, const std::vector<Sample>& rows) {
    if (rows.empty()) throw EmptyDataset("evaluate needs at least one row");
    std::vector<double> targets, predictions;
    targets.reserve(rows.size());
    predictions.reserve(rows.size());
    for (const Sample& s : rows) {
        targets.push_back(s.max_range_nm);
        predictions.push_back(predict(model, s.scenario));
    }
    return compute_metrics(targets, predictions);
}

CrossValidation cross_validate(const Dataset& dataset, const SplitSpec& split_spec,
                               const TrainConfig& cfg) {
    const Splits splits = split_dataset(dataset.rows.size(), split_spec);
    const std::size_t k = splits.folds.size();
    CrossValidation cv;
    cv.folds.resize(k);
    std::vector<std::exception_ptr> errors(k);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
    for (std::size_t f = 0; f < k; ++f) {
        try {
            const TrainResult result = train_with_splits(dataset, splits, f, cfg);
            cv.folds[f] = evaluate(result.model, rows_at(dataset, splits.folds[f]));
        } catch (...) {
            errors[f] = std::current_exception();
        }
    }
    for (std::size_t f = 0; f < k; ++f)
        if (errors[f]) std::rethrow_exception(errors[f]);

    const double n = static_cast<double>(k);
    auto mean_of = [&](auto select) {
        double sum = 0.0;
        for (const RegressionMetrics& m : cv.folds) sum += select(m);
        return sum / n;
    };
    auto std_of = [&](auto select, double mean) {
        if (k < 2) return 0.0;
        double ss = 0.0;
        for (const RegressionMetrics& m : cv.folds)
            ss += (select(m) - mean) * (select(m) - mean);
        return std::sqrt(ss / (n - 1.0));
    };
    auto r2_of = [](const RegressionMetrics& m) { return m.r2.value_or(0.0); };

    cv.mean.mae = mean_of([](const RegressionMetrics& m) { return m.mae; });
    cv.mean.mse = mean_of([](const RegressionMetrics& m) { return m.mse; });
    cv.mean.rmse = mean_of([](const RegressionMetrics& m) { return m.rmse; });
    cv.mean.r2 = mean_of(r2_of);
    cv.std_dev.mae =
        std_of([](const RegressionMetrics& m) { return m.mae; }, cv.mean.mae);
    cv.std_dev.mse =
        std_of([](const RegressionMetrics& m) { return m.mse; }, cv.mean.mse);
    cv.std_dev.rmse =
        std_of([](const RegressionMetrics& m) { return m.rmse; }, cv.mean.rmse);
    cv.std_dev.r2 = std_of(r2_of, *cv.mean.r2);
    return cv;
}

std::string train_config_json(const TrainConfig& cfg) {
    nlohmann::ordered_json j;
    j["hidden"] = cfg.hidden;
    j["learning_rate"] = cfg.learning_rate;
    j["beta1"] = cfg.beta1;
    j["beta2"] = cfg.beta2;
    j["epsilon"] = cfg.epsilon;
    j["batch_size"] = cfg.batch_size;
    j["max_epochs"] = cfg.max_epochs;
    j["patience"] = cfg.patience;
    j["seed"] = cfg.seed;
    return j.dump(2) + "\n";
}

TrainConfig load_train_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open train config file " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
    TrainConfig cfg;
    try {
        if (j.contains("hidden")) cfg.hidden = j.at("hidden").get<std::vector<int>>();
        cfg.learning_rate = j.value("learning_rate", cfg.learning_rate);
        cfg.beta1 = j.value("beta1", cfg.beta1);
        cfg.beta2 = j.value("beta2", cfg.beta2);
        cfg.epsilon = j.value("epsilon", cfg.epsilon);
        cfg.batch_size = j.value("batch_size", cfg.batch_size);
        cfg.max_epochs = j.value("max_epochs", cfg.max_epochs);
        cfg.patience = j.value("patience", cfg.patience);
        cfg.seed = j.value("seed", cfg.seed);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
    validate_train_config(cfg);
    return cfg;
}

}  // namespace wez
