#include "wez/mlp.hpp"

#include <cmath>

#include "wez/errors.hpp"
#include "wez/rng.hpp"

namespace wez {

namespace {

void check_layer_sizes(const std::vector<int>& sizes) {
    if (sizes.size() < 2) throw ShapeMismatch("network needs at least input and output layers");
    for (int s : sizes)
        if (s < 1) throw ShapeMismatch("layer sizes must be positive");
}

// Reusable per-layer buffers for one forward/backward sweep.
struct Workspace {
    std::vector<std::vector<double>> pre;   // pre-activations z, per non-input layer
    std::vector<std::vector<double>> act;   // activations a, per layer (act[0] = input)
    std::vector<std::vector<double>> delta; // dL/dz, per non-input layer

    explicit Workspace(const std::vector<int>& sizes) {
        act.resize(sizes.size());
        pre.resize(sizes.size() - 1);
        delta.resize(sizes.size() - 1);
        for (std::size_t l = 0; l < sizes.size(); ++l)
            act[l].resize(static_cast<std::size_t>(sizes[l]));
        for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
            pre[l].resize(static_cast<std::size_t>(sizes[l + 1]));
            delta[l].resize(static_cast<std::size_t>(sizes[l + 1]));
        }
    }
};

// Forward sweep storing every activation; returns the scalar output.
double forward_into(const MlpModel& m, std::span<const double> input, Workspace& ws) {
    std::copy(input.begin(), input.end(), ws.act[0].begin());
    const std::size_t layers = m.weights.size();
    for (std::size_t l = 0; l < layers; ++l) {
        const auto rows = static_cast<std::size_t>(m.layer_sizes[l + 1]);
        const auto cols = static_cast<std::size_t>(m.layer_sizes[l]);
        const double* w = m.weights[l].data();
        const std::vector<double>& in = ws.act[l];
        const bool last = l + 1 == layers;
        for (std::size_t r = 0; r < rows; ++r) {
            double z = m.biases[l][r];
            const double* wrow = w + r * cols;
            for (std::size_t c = 0; c < cols; ++c) z += wrow[c] * in[c];
            ws.pre[l][r] = z;
            ws.act[l + 1][r] = last ? z : (z > 0.0 ? z : 0.0);
        }
    }
    return ws.act.back()[0];
}

}  // namespace

std::size_t MlpModel::parameter_count() const {
    std::size_t n = 0;
    for (std::size_t l = 0; l < weights.size(); ++l)
        n += weights[l].size() + biases[l].size();
    return n;
}

MlpModel make_mlp(const std::vector<int>& layer_sizes, std::uint64_t seed) {
    check_layer_sizes(layer_sizes);
    MlpModel m;
    m.layer_sizes = layer_sizes;
    m.metadata.seed = seed;
    m.feature_order.assign(kFeatureOrder.begin(), kFeatureOrder.end());
    for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
        const auto rows = static_cast<std::size_t>(layer_sizes[l + 1]);
        const auto cols = static_cast<std::size_t>(layer_sizes[l]);
        CounterRng rng(seed, kStreamInit + l);
        const double limit = std::sqrt(6.0 / static_cast<double>(cols));
        std::vector<double> w(rows * cols);
        for (double& v : w) v = (2.0 * rng.uniform() - 1.0) * limit;
        m.weights.push_back(std::move(w));
        m.biases.emplace_back(rows, 0.0);
    }
    return m;
}

void validate_shapes(const MlpModel& m) {
    check_layer_sizes(m.layer_sizes);
    const std::size_t layers = m.layer_sizes.size() - 1;
    if (m.weights.size() != layers || m.biases.size() != layers)
        throw ShapeMismatch("weight/bias layer count does not match layer_sizes");
    for (std::size_t l = 0; l < layers; ++l) {
        const auto rows = static_cast<std::size_t>(m.layer_sizes[l + 1]);
        const auto cols = static_cast<std::size_t>(m.layer_sizes[l]);
        if (m.weights[l].size() != rows * cols)
            throw ShapeMismatch("weight matrix " + std::to_string(l) + " has wrong size");
        if (m.biases[l].size() != rows)
            throw ShapeMismatch("bias vector " + std::to_string(l) + " has wrong size");
    }
}

double forward(const MlpModel& m, std::span<const double> input) {
    if (input.size() != static_cast<std::size_t>(m.layer_sizes.front()))
        throw ShapeMismatch("input length " + std::to_string(input.size()) +
                            " does not match input layer " +
                            std::to_string(m.layer_sizes.front()));
    if (m.layer_sizes.back() != 1)
        throw ShapeMismatch("regression head must have exactly one output");
    Workspace ws(m.layer_sizes);
    return forward_into(m, input, ws);
}

double predict(const MlpModel& m, const Scenario& s) {
    const FeatureVector scaled = transform_features(m.scaler, encode_features(s));
    return inverse_target(m.scaler, forward(m, std::span<const double>(scaled)));
}

Gradients make_zero_gradients(const MlpModel& m) {
    Gradients g;
    for (std::size_t l = 0; l < m.weights.size(); ++l) {
        g.weights.emplace_back(m.weights[l].size(), 0.0);
        g.biases.emplace_back(m.biases[l].size(), 0.0);
    }
    return g;
}

double backward(const MlpModel& m, const std::vector<FeatureVector>& X,
                const std::vector<double>& y, std::span<const std::size_t> indices,
                Gradients& out) {
    if (m.layer_sizes.front() != static_cast<int>(kFeatureCount))
        throw ShapeMismatch("backward expects a " + std::to_string(kFeatureCount) +
                            "-input network");
    if (m.layer_sizes.back() != 1)
        throw ShapeMismatch("regression head must have exactly one output");
    if (X.size() != y.size()) throw ShapeMismatch("feature/target row counts differ");
    if (indices.empty()) throw ShapeMismatch("backward needs a non-empty batch");
    if (out.weights.size() != m.weights.size() || out.biases.size() != m.biases.size())
        throw ShapeMismatch("gradient buffers do not match the model");

    for (std::size_t l = 0; l < out.weights.size(); ++l) {
        std::fill(out.weights[l].begin(), out.weights[l].end(), 0.0);
        std::fill(out.biases[l].begin(), out.biases[l].end(), 0.0);
    }

    Workspace ws(m.layer_sizes);
    const std::size_t layers = m.weights.size();
    const double inv_n = 1.0 / static_cast<double>(indices.size());
    double loss = 0.0;
    for (std::size_t idx : indices) {
        const double prediction = forward_into(m, std::span<const double>(X[idx]), ws);
        const double err = prediction - y[idx];
        loss += err * err * inv_n;

        // Output layer: identity activation, mean-MSE upstream gradient.
        ws.delta[layers - 1][0] = 2.0 * err * inv_n;
        for (std::size_t l = layers; l-- > 0;) {
            const auto rows = static_cast<std::size_t>(m.layer_sizes[l + 1]);
            const auto cols = static_cast<std::size_t>(m.layer_sizes[l]);
            const std::vector<double>& delta = ws.delta[l];
            const std::vector<double>& in = ws.act[l];
            double* gw = out.weights[l].data();
            for (std::size_t r = 0; r < rows; ++r) {
                const double d = delta[r];
                if (d == 0.0) continue;
                out.biases[l][r] += d;
                double* grow = gw + r * cols;
                for (std::size_t c = 0; c < cols; ++c) grow[c] += d * in[c];
            }
            if (l == 0) break;
            // Propagate through W^T, then the previous layer's ReLU gate.
            std::vector<double>& prev = ws.delta[l - 1];
            std::fill(prev.begin(), prev.end(), 0.0);
            const double* w = m.weights[l].data();
            for (std::size_t r = 0; r < rows; ++r) {
                const double d = delta[r];
                if (d == 0.0) continue;
                const double* wrow = w + r * cols;
                for (std::size_t c = 0; c < cols; ++c) prev[c] += d * wrow[c];
            }
            for (std::size_t c = 0; c < cols; ++c)
                if (ws.pre[l - 1][c] <= 0.0) prev[c] = 0.0;
        }
    }
    return loss;
}

double batch_mse(const MlpModel& m, const std::vector<FeatureVector>& X,
                 const std::vector<double>& y, std::span<const std::size_t> indices) {
    if (X.size() != y.size()) throw ShapeMismatch("feature/target row counts differ");
    if (indices.empty()) throw ShapeMismatch("batch_mse needs a non-empty batch");
    Workspace ws(m.layer_sizes);
    double loss = 0.0;
    for (std::size_t idx : indices) {
        const double err = forward_into(m, std::span<const double>(X[idx]), ws) - y[idx];
        loss += err * err;
    }
    return loss / static_cast<double>(indices.size());
}

AdamState make_adam_state(const MlpModel& m) {
    AdamState st;
    for (std::size_t l = 0; l < m.weights.size(); ++l) {
        st.m_w.emplace_back(m.weights[l].size(), 0.0);
        st.v_w.emplace_back(m.weights[l].size(), 0.0);
        st.m_b.emplace_back(m.biases[l].size(), 0.0);
        st.v_b.emplace_back(m.biases[l].size(), 0.0);
    }
    return st;
}

void adam_step(MlpModel& m, const Gradients& g, AdamState& state, const AdamConfig& cfg) {
    if (!(cfg.beta1 > 0.0 && cfg.beta1 < 1.0 && cfg.beta2 > 0.0 && cfg.beta2 < 1.0))
        throw ConfigError("adam betas must lie in (0, 1)");
    ++state.step;
    const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.step));
    const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.step));
    auto update = [&](std::vector<double>& p, const std::vector<double>& grad,
                      std::vector<double>& mo, std::vector<double>& vo) {
        for (std::size_t i = 0; i < p.size(); ++i) {
            mo[i] = cfg.beta1 * mo[i] + (1.0 - cfg.beta1) * grad[i];
            vo[i] = cfg.beta2 * vo[i] + (1.0 - cfg.beta2) * grad[i] * grad[i];
            const double m_hat = mo[i] / bc1;
            const double v_hat = vo[i] / bc2;
            p[i] -= cfg.learning_rate * m_hat / (std::sqrt(v_hat) + cfg.epsilon);
        }
    };
    for (std::size_t l = 0; l < m.weights.size(); ++l) {
        update(m.weights[l], g.weights[l], state.m_w[l], state.v_w[l]);
        update(m.biases[l], g.biases[l], state.m_b[l], state.v_b[l]);
    }
}

}  // namespace wez
