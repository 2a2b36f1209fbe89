#include "wez/model_io.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "wez/errors.hpp"

namespace wez {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

template <typename T>
T get_checked(const json& j, const char* key) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw CorruptFile(std::string("model field '") + key + "': " + e.what());
    }
}

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw CorruptFile(std::string("non-finite ") + what);
}

}  // namespace

std::string model_json(const MlpModel& model) {
    validate_shapes(model);
    ordered_json j;
    j["format_version"] = kModelFormatVersion;
    j["layer_sizes"] = model.layer_sizes;

    ordered_json weights = ordered_json::array();
    for (std::size_t l = 0; l < model.weights.size(); ++l) {
        const auto rows = static_cast<std::size_t>(model.layer_sizes[l + 1]);
        const auto cols = static_cast<std::size_t>(model.layer_sizes[l]);
        ordered_json matrix = ordered_json::array();
        for (std::size_t r = 0; r < rows; ++r) {
            ordered_json row = ordered_json::array();
            for (std::size_t c = 0; c < cols; ++c)
                row.push_back(model.weights[l][r * cols + c]);
            matrix.push_back(std::move(row));
        }
        weights.push_back(std::move(matrix));
    }
    j["weights"] = std::move(weights);
    j["biases"] = model.biases;

    ordered_json scaler;
    scaler["feature_mins"] = model.scaler.feature_min;
    scaler["feature_maxs"] = model.scaler.feature_max;
    scaler["target_min"] = model.scaler.target_min;
    scaler["target_max"] = model.scaler.target_max;
    j["scaler"] = std::move(scaler);
    j["feature_order"] = model.feature_order;

    ordered_json meta;
    meta["seed"] = model.metadata.seed;
    meta["epochs_run"] = model.metadata.epochs_run;
    meta["best_epoch"] = model.metadata.best_epoch;
    meta["train_mse"] = model.metadata.train_mse;
    meta["val_mse"] = model.metadata.val_mse;
    meta["learning_rate"] = model.metadata.learning_rate;
    meta["batch_size"] = model.metadata.batch_size;
    meta["patience"] = model.metadata.patience;
    j["metadata"] = std::move(meta);
    return j.dump(2) + "\n";
}

void save_model(const MlpModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CorruptFile("cannot open " + path + " for writing");
    out << model_json(model);
    if (!out.flush()) throw CorruptFile("write failed for " + path);
}

MlpModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CorruptFile("cannot open model file " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw CorruptFile(path + ": " + e.what());
    }

    const auto version = get_checked<std::string>(j, "format_version");
    if (version != kModelFormatVersion)
        throw FormatVersionMismatch("model format_version '" + version + "', expected '" +
                                    kModelFormatVersion + "'");

    MlpModel m;
    m.layer_sizes = get_checked<std::vector<int>>(j, "layer_sizes");
    if (m.layer_sizes.size() < 2) throw CorruptFile("layer_sizes too short");
    for (int s : m.layer_sizes)
        if (s < 1) throw CorruptFile("non-positive layer size");

    const std::size_t layers = m.layer_sizes.size() - 1;
    if (!j.contains("weights") || !j["weights"].is_array() || j["weights"].size() != layers)
        throw CorruptFile("weights must hold one matrix per layer transition");
    if (!j.contains("biases") || !j["biases"].is_array() || j["biases"].size() != layers)
        throw CorruptFile("biases must hold one vector per layer transition");
    const json& weights = j["weights"];
    const json& biases = j["biases"];
    for (std::size_t l = 0; l < layers; ++l) {
        const auto rows = static_cast<std::size_t>(m.layer_sizes[l + 1]);
        const auto cols = static_cast<std::size_t>(m.layer_sizes[l]);
        const json& matrix = weights[l];
        if (!matrix.is_array() || matrix.size() != rows)
            throw CorruptFile("weight matrix " + std::to_string(l) + " has wrong row count");
        std::vector<double> flat;
        flat.reserve(rows * cols);
        for (const json& row : matrix) {
            if (!row.is_array() || row.size() != cols)
                throw CorruptFile("weight matrix " + std::to_string(l) +
                                  " has a wrong-length row");
            for (const json& v : row) {
                if (!v.is_number()) throw CorruptFile("non-numeric weight");
                flat.push_back(v.get<double>());
                require_finite(flat.back(), "weight");
            }
        }
        m.weights.push_back(std::move(flat));
        std::vector<double> b;
        try {
            b = biases[l].get<std::vector<double>>();
        } catch (const json::exception& e) {
            throw CorruptFile(std::string("bias vector: ") + e.what());
        }
        if (b.size() != rows)
            throw CorruptFile("bias vector " + std::to_string(l) + " has wrong size");
        for (double v : b) require_finite(v, "bias");
        m.biases.push_back(std::move(b));
    }

    if (!j.contains("scaler") || !j["scaler"].is_object())
        throw CorruptFile("missing scaler block");
    const json& scaler = j["scaler"];
    const auto mins = get_checked<std::vector<double>>(scaler, "feature_mins");
    const auto maxs = get_checked<std::vector<double>>(scaler, "feature_maxs");
    if (mins.size() != kFeatureCount || maxs.size() != kFeatureCount)
        throw CorruptFile("scaler arrays must have " + std::to_string(kFeatureCount) +
                          " entries");
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
        require_finite(mins[i], "scaler min");
        require_finite(maxs[i], "scaler max");
        m.scaler.feature_min[i] = mins[i];
        m.scaler.feature_max[i] = maxs[i];
        if (maxs[i] == mins[i]) m.scaler.degenerate_features.push_back(i);
    }
    m.scaler.target_min = get_checked<double>(scaler, "target_min");
    m.scaler.target_max = get_checked<double>(scaler, "target_max");
    require_finite(m.scaler.target_min, "target_min");
    require_finite(m.scaler.target_max, "target_max");

    m.feature_order = get_checked<std::vector<std::string>>(j, "feature_order");
    if (m.feature_order.size() != kFeatureCount)
        throw CorruptFile("feature_order must list " + std::to_string(kFeatureCount) +
                          " features");
    for (std::size_t i = 0; i < kFeatureCount; ++i)
        if (m.feature_order[i] != kFeatureOrder[i])
            throw CorruptFile("unexpected feature_order entry '" + m.feature_order[i] + "'");

    if (j.contains("metadata") && j["metadata"].is_object()) {
        const json& meta = j["metadata"];
        m.metadata.seed = meta.value("seed", std::uint64_t{0});
        m.metadata.epochs_run = meta.value("epochs_run", 0);
        m.metadata.best_epoch = meta.value("best_epoch", 0);
        m.metadata.train_mse = meta.value("train_mse", 0.0);
        m.metadata.val_mse = meta.value("val_mse", 0.0);
        m.metadata.learning_rate = meta.value("learning_rate", 0.0);
        m.metadata.batch_size = meta.value("batch_size", 0);
        m.metadata.patience = meta.value("patience", 0);
    }

    validate_shapes(m);
    return m;
}

}  // namespace wez
