#include "wez/design.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "wez/errors.hpp"

namespace wez {
namespace {

double dist2(const DesignRow& a, const DesignRow& b) {
    double s = 0.0;
    for (std::size_t j = 0; j < kDesignDims; ++j) {
        const double d = a[j] - b[j];
        s += d * d;
    }
    return s;
}

// Nearest other row to `r`, by squared distance; ties go to the lower index.
std::pair<double, int> scan_row(const std::vector<DesignRow>& rows, int r) {
    double best = std::numeric_limits<double>::infinity();
    int best_i = -1;
    const int n = static_cast<int>(rows.size());
    for (int i = 0; i < n; ++i) {
        if (i == r) continue;
        const double d2 = dist2(rows[i], rows[r]);
        if (d2 < best) {
            best = d2;
            best_i = i;
        }
    }
    return {best, best_i};
}

void validate_spec(const DesignSpec& spec) {
    if (spec.samples < 2) throw ConfigError("design needs at least 2 samples");
    for (const VariableBounds& b : spec.bounds) {
        if (!(b.max > b.min))
            throw ConfigError(std::string("design bounds degenerate for ") + b.name);
    }
}

}  // namespace

MaximinResult maximin_pass(std::vector<DesignRow>& u, std::size_t iterations,
                           CounterRng& rng, const std::function<void(double)>& on_accept) {
    const int n = static_cast<int>(u.size());
    if (n < 2) throw ConfigError("maximin pass needs at least 2 rows");

    std::vector<double> nnd2;
    std::vector<int> nni;
    nearest_neighbors(u, nnd2, nni);

    const auto global_min = [&]() {
        int arg = 0;
        for (int i = 1; i < n; ++i)
            if (nnd2[i] < nnd2[arg]) arg = i;
        return std::pair<double, std::pair<int, int>>{nnd2[arg], {arg, nni[arg]}};
    };

    auto [gmin2, pair] = global_min();
    MaximinResult result;
    result.initial_min_distance = std::sqrt(gmin2);

    std::vector<int> rescan;
    for (std::size_t it = 0; it < iterations; ++it) {
        const int pick = rng.next_below(2) ? pair.second : pair.first;
        int partner = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n - 1)));
        if (partner >= pick) ++partner;
        const std::size_t col = static_cast<std::size_t>(rng.next_below(kDesignDims));

        std::swap(u[pick][col], u[partner][col]);
        const auto [d1, i1] = scan_row(u, pick);
        const auto [d2, i2] = scan_row(u, partner);
        if (std::min(d1, d2) > gmin2) {
            nnd2[pick] = d1;
            nni[pick] = i1;
            nnd2[partner] = d2;
            nni[partner] = i2;
            rescan.clear();
            for (int i = 0; i < n; ++i) {
                if (i == pick || i == partner) continue;
                if (nni[i] == pick || nni[i] == partner) {
                    rescan.push_back(i);  // former neighbour moved; revisit fully
                    continue;
                }
                const double da = dist2(u[i], u[pick]);
                const double db = dist2(u[i], u[partner]);
                if (da < nnd2[i]) {
                    nnd2[i] = da;
                    nni[i] = pick;
                }
                if (db < nnd2[i]) {
                    nnd2[i] = db;
                    nni[i] = partner;
                }
            }
            for (const int i : rescan) {
                const auto [d, idx] = scan_row(u, i);
                nnd2[i] = d;
                nni[i] = idx;
            }
            std::tie(gmin2, pair) = global_min();
            ++result.accepted_swaps;
            if (on_accept) on_accept(std::sqrt(gmin2));
        } else {
            std::swap(u[pick][col], u[partner][col]);
        }
    }
    result.final_min_distance = std::sqrt(gmin2);
    return result;
}

Design lhs_sample(const DesignSpec& spec) {
    validate_spec(spec);
    const std::size_t n = spec.samples;

    std::vector<DesignRow> u(n);
    std::vector<std::uint32_t> perm(n);
    for (std::size_t j = 0; j < kDesignDims; ++j) {
        std::iota(perm.begin(), perm.end(), 0u);
        CounterRng strata(spec.seed, kStreamStrata + j);
        strata.shuffle(perm);
        CounterRng jitter(spec.seed, kStreamJitter + j);
        for (std::size_t i = 0; i < n; ++i)
            u[i][j] = (perm[i] + jitter.uniform()) / static_cast<double>(n);
    }

    CounterRng swap_rng(spec.seed, kStreamMaximin);
    const MaximinResult mm = maximin_pass(u, spec.maximin_iterations, swap_rng);

    Design d;
    d.rows.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < kDesignDims; ++j) {
            const VariableBounds& b = spec.bounds[j];
            d.rows[i][j] = b.min + u[i][j] * (b.max - b.min);
        }
    d.seed = spec.seed;
    d.maximin_iterations = spec.maximin_iterations;
    d.accepted_swaps = mm.accepted_swaps;
    d.min_distance_initial = mm.initial_min_distance;
    d.min_distance = mm.final_min_distance;
    return d;
}

double min_pairwise_distance_serial(const std::vector<DesignRow>& rows) {
    const int n = static_cast<int>(rows.size());
    if (n < 2) throw ConfigError("pairwise distance needs at least 2 rows");
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
        for (int k = i + 1; k < n; ++k) best = std::min(best, dist2(rows[i], rows[k]));
    return std::sqrt(best);
}

double min_pairwise_distance(const std::vector<DesignRow>& rows) {
    const int n = static_cast<int>(rows.size());
    if (n < 2) throw ConfigError("pairwise distance needs at least 2 rows");
    double best = std::numeric_limits<double>::infinity();
#pragma omp parallel for schedule(dynamic, 16) reduction(min : best)
    for (int i = 0; i < n; ++i)
        for (int k = i + 1; k < n; ++k) best = std::min(best, dist2(rows[i], rows[k]));
    return std::sqrt(best);
}

void nearest_neighbors_serial(const std::vector<DesignRow>& rows,
                              std::vector<double>& dist2_out, std::vector<int>& index) {
    const int n = static_cast<int>(rows.size());
    dist2_out.assign(n, 0.0);
    index.assign(n, -1);
    for (int i = 0; i < n; ++i) {
        const auto [d, idx] = scan_row(rows, i);
        dist2_out[i] = d;
        index[i] = idx;
    }
}

void nearest_neighbors(const std::vector<DesignRow>& rows, std::vector<double>& dist2_out,
                       std::vector<int>& index) {
    const int n = static_cast<int>(rows.size());
    dist2_out.assign(n, 0.0);
    index.assign(n, -1);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        const auto [d, idx] = scan_row(rows, i);
        dist2_out[i] = d;
        index[i] = idx;
    }
}

std::vector<Scenario> scenario_rows(const Design& design) {
    std::vector<Scenario> out;
    out.reserve(design.rows.size());
    for (const DesignRow& r : design.rows) {
        Scenario s;
        for (std::size_t j = 0; j < kDesignDims; ++j)
            set_scenario_field(s, static_cast<int>(j), r[j]);
        out.push_back(s);
    }
    return out;
}

void write_design_csv(const Design& design, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw CsvError("cannot open " + path + " for writing");
    for (std::size_t j = 0; j < kDesignDims; ++j)
        std::fprintf(f, "%s%c", kScenarioFields[j], j + 1 < kDesignDims ? ',' : '\n');
    for (const DesignRow& r : design.rows)
        for (std::size_t j = 0; j < kDesignDims; ++j)
            std::fprintf(f, "%.17g%c", r[j], j + 1 < kDesignDims ? ',' : '\n');
    if (std::fclose(f) != 0) throw CsvError("write failed for " + path);
}

Design read_design_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CsvError("cannot open " + path);
    Design d;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line_no == 1) {
            std::string expected;
            for (std::size_t j = 0; j < kDesignDims; ++j) {
                expected += kScenarioFields[j];
                if (j + 1 < kDesignDims) expected += ',';
            }
            if (line != expected)
                throw CsvError(path + ":1: unexpected header '" + line + "'");
            continue;
        }
        std::stringstream ss(line);
        std::string cell;
        DesignRow row{};
        std::size_t col = 0;
        while (std::getline(ss, cell, ',')) {
            if (col >= kDesignDims)
                throw CsvError(path + ":" + std::to_string(line_no) + ": too many columns");
            try {
                std::size_t used = 0;
                row[col] = std::stod(cell, &used);
                if (used != cell.size()) throw std::invalid_argument(cell);
            } catch (const std::exception&) {
                throw CsvError(path + ":" + std::to_string(line_no) + ": bad value '" +
                               cell + "'");
            }
            if (!std::isfinite(row[col]))
                throw CsvError(path + ":" + std::to_string(line_no) + ": non-finite value");
            ++col;
        }
        if (col != kDesignDims)
            throw CsvError(path + ":" + std::to_string(line_no) + ": expected " +
                           std::to_string(kDesignDims) + " columns, got " +
                           std::to_string(col));
        d.rows.push_back(row);
    }
    if (d.rows.empty()) throw CsvError(path + ": no data rows");
    return d;
}

void write_design_meta(const Design& design, const std::string& path) {
    nlohmann::ordered_json j;
    j["samples"] = design.rows.size();
    j["seed"] = design.seed;
    j["maximin_iterations"] = design.maximin_iterations;
    j["accepted_swaps"] = design.accepted_swaps;
    j["min_distance_initial"] = design.min_distance_initial;
    j["min_distance"] = design.min_distance;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CsvError("cannot open " + path + " for writing");
    out << j.dump(2) << '\n';
    if (!out.flush()) throw CsvError("write failed for " + path);
}

void read_design_meta(Design& design, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CsvError("cannot open " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw CsvError(path + ": " + e.what());
    }
    try {
        design.seed = j.value("seed", std::uint64_t{0});
        design.maximin_iterations = j.value("maximin_iterations", std::size_t{0});
        design.accepted_swaps = j.value("accepted_swaps", std::size_t{0});
        design.min_distance_initial = j.value("min_distance_initial", 0.0);
        design.min_distance = j.value("min_distance", 0.0);
    } catch (const nlohmann::json::exception& e) {
        throw CsvError(path + ": " + e.what());
    }
}

}  // namespace wez
