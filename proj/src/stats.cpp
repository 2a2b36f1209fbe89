#include "wez/stats.hpp"

#include <algorithm>
#include <cmath>

#include "wez/errors.hpp"

namespace wez {

std::vector<double> dataset_column(const Dataset& dataset, std::size_t col) {
    if (col >= kDatasetColumns.size())
        throw ConfigError("column index " + std::to_string(col) + " out of range");
    std::vector<double> out;
    out.reserve(dataset.rows.size());
    for (const Sample& s : dataset.rows)
        out.push_back(col < 7 ? scenario_field(s.scenario, static_cast<int>(col))
                              : s.max_range_nm);
    return out;
}

double quantile_linear(std::vector<double> values, double p) {
    if (values.empty()) throw EmptyDataset("quantile of empty column");
    if (p < 0.0 || p > 1.0) throw ConfigError("quantile p outside [0, 1]");
    std::sort(values.begin(), values.end());
    const double rank = static_cast<double>(values.size() - 1) * p;
    const std::size_t lo = static_cast<std::size_t>(rank);
    if (lo + 1 >= values.size()) return values.back();
    const double frac = rank - static_cast<double>(lo);
    return values[lo] + frac * (values[lo + 1] - values[lo]);
}

StatsSummary describe(const Dataset& dataset) {
    if (dataset.rows.empty()) throw EmptyDataset("describe of empty dataset");
    StatsSummary summary;
    summary.rows = dataset.rows.size();
    const double n = static_cast<double>(dataset.rows.size());
    for (std::size_t col = 0; col < kDatasetColumns.size(); ++col) {
        std::vector<double> values = dataset_column(dataset, col);
        ColumnStats& cs = summary.columns[col];
        cs.name = kDatasetColumns[col];
        double sum = 0.0;
        for (double v : values) sum += v;
        cs.mean = sum / n;
        double ss = 0.0;
        for (double v : values) ss += (v - cs.mean) * (v - cs.mean);
        cs.std_dev = values.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
        std::sort(values.begin(), values.end());
        cs.min = values.front();
        cs.max = values.back();
        cs.q25 = quantile_linear(values, 0.25);
        cs.q50 = quantile_linear(values, 0.50);
        cs.q75 = quantile_linear(values, 0.75);
    }
    return summary;
}

Matrix8 pearson_matrix(const Dataset& dataset) {
    if (dataset.rows.empty()) throw EmptyDataset("pearson_matrix of empty dataset");
    constexpr std::size_t kCols = 8;
    const std::size_t n = dataset.rows.size();
    std::array<std::vector<double>, kCols> columns;
    std::array<double, kCols> mean{};
    std::array<double, kCols> ss{};
    for (std::size_t c = 0; c < kCols; ++c) {
        columns[c] = dataset_column(dataset, c);
        double sum = 0.0;
        for (double v : columns[c]) sum += v;
        mean[c] = sum / static_cast<double>(n);
        for (double v : columns[c]) ss[c] += (v - mean[c]) * (v - mean[c]);
        if (ss[c] == 0.0)
            throw ZeroVariance(std::string("column '") + kDatasetColumns[c] +
                               "' has zero variance");
    }
    Matrix8 m{};
    for (std::size_t a = 0; a < kCols; ++a) {
        m[a][a] = 1.0;
        for (std::size_t b = a + 1; b < kCols; ++b) {
            double cov = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                cov += (columns[a][i] - mean[a]) * (columns[b][i] - mean[b]);
            const double r = cov / std::sqrt(ss[a] * ss[b]);
            m[a][b] = m[b][a] = std::clamp(r, -1.0, 1.0);
        }
    }
    return m;
}

double iqr_upper_fence(double q1, double q3) {
    if (!(q1 <= q3)) throw ConfigError("iqr_upper_fence requires q1 <= q3");
    return q3 + 1.5 * (q3 - q1);
}

Histogram histogram(const std::vector<double>& values, std::size_t n_bins) {
    if (values.empty()) throw EmptyDataset("histogram of empty column");
    if (n_bins < 1) throw ConfigError("histogram needs at least one bin");
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it;
    const double hi = *hi_it > lo ? *hi_it : lo + 1.0;  // degenerate range -> unit width
    Histogram h;
    h.edges.resize(n_bins + 1);
    h.counts.assign(n_bins, 0);
    const double width = (hi - lo) / static_cast<double>(n_bins);
    for (std::size_t i = 0; i <= n_bins; ++i)
        h.edges[i] = lo + width * static_cast<double>(i);
    h.edges.back() = hi;
    for (double v : values) {
        auto bin = static_cast<std::size_t>((v - lo) / width);
        if (bin >= n_bins) bin = n_bins - 1;
        ++h.counts[bin];
    }
    return h;
}

}  // namespace wez
