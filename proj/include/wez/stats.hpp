#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "wez/dataset.hpp"

namespace wez {

struct ColumnStats {
    std::string name;
    double mean = 0.0;
    double std_dev = 0.0;  // sample standard deviation (n-1 denominator)
    double min = 0.0;
    double q25 = 0.0;
    double q50 = 0.0;
    double q75 = 0.0;
    double max = 0.0;
};

struct StatsSummary {
    std::size_t rows = 0;
    std::array<ColumnStats, 8> columns{};
};

using Matrix8 = std::array<std::array<double, 8>, 8>;

struct Histogram {
    std::vector<double> edges;         // n_bins + 1 ascending edges
    std::vector<std::size_t> counts;   // per-bin counts; sum equals sample size
};

// Column `col` of the dataset in row order (0..6 scenario fields, 7 label).
std::vector<double> dataset_column(const Dataset& dataset, std::size_t col);

// Quantile by linear interpolation at rank (n-1)*p of the sorted values.
double quantile_linear(std::vector<double> values, double p);

// Per-column descriptive statistics. Throws EmptyDataset.
StatsSummary describe(const Dataset& dataset);

// Pearson correlation of all 8 columns, two-pass, symmetric with an exact
// unit diagonal. Throws EmptyDataset, or ZeroVariance naming the offending
// column.
Matrix8 pearson_matrix(const Dataset& dataset);

// Tukey upper fence: q3 + 1.5*(q3 - q1). Throws ConfigError when q1 > q3.
double iqr_upper_fence(double q1, double q3);

// Equal-width bins over [min, max]; the maximum lands in the last bin. A
// constant column widens its degenerate range to [min, min + 1] so every
// value falls in the first bin. Throws EmptyDataset / ConfigError.
Histogram histogram(const std::vector<double>& values, std::size_t n_bins);

}  // namespace wez
