#include "wez/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <json.hpp>

#include "wez/errors.hpp"
#include "wez/range_solver.hpp"
#include "wez/simulate.hpp"

namespace wez {

namespace {

// Solves one row; never throws. Errors land in `failure`.
double label_row(const Scenario& s, const MissileConfig& missile, bool* no_range,
                 std::string* failure) {
    try {
        std::optional<double> r = find_max_range(s, missile);
        if (!r) {
            *no_range = true;
            return kNoRangeSentinelNm;
        }
        return *r;
    } catch (const std::exception& e) {
        *failure = e.what();
        return kNoRangeSentinelNm;
    }
}

struct ProgressTicker {
    const ProgressFn& fn;
    std::size_t total;
    std::size_t done = 0;
    std::size_t next_report;
    std::mutex mutex;

    ProgressTicker(const ProgressFn& fn_, std::size_t total_)
        : fn(fn_), total(total_), next_report(step()) {}

    std::size_t step() const { return std::max<std::size_t>(1, total / 100); }

    void tick() {
        if (!fn) return;
        std::lock_guard<std::mutex> lock(mutex);
        ++done;
        if (done >= next_report || done == total) {
            fn(done, total);
            next_report = done + step();
        }
    }
};

Dataset assemble(const Design& design, const MissileConfig& missile,
                 std::vector<Sample>&& rows) {
    Dataset out;
    out.rows = std::move(rows);
    out.meta.rows = out.rows.size();
    out.meta.design_seed = design.seed;
    out.meta.missile_config_hash = missile_config_hash(missile);
    out.meta.sim_version = kSimVersion;
    return out;
}

}  // namespace

Dataset generate_dataset_serial(const Design& design, const MissileConfig& missile,
                                BatchReport* report, const ProgressFn& progress) {
    validate_config(missile);
    const std::vector<Scenario> scenarios = scenario_rows(design);
    std::vector<Sample> rows(scenarios.size());
    ProgressTicker ticker(progress, scenarios.size());
    BatchReport local;
    for (std::size_t i = 0; i < scenarios.size(); ++i) {
        bool no_range = false;
        std::string failure;
        rows[i].scenario = scenarios[i];
        rows[i].max_range_nm = label_row(scenarios[i], missile, &no_range, &failure);
        if (no_range) ++local.no_range_rows;
        if (!failure.empty()) local.failures.push_back({i, failure});
        ticker.tick();
    }
    if (report) *report = std::move(local);
    return assemble(design, missile, std::move(rows));
}

Dataset generate_dataset(const Design& design, const MissileConfig& missile, int jobs,
                         BatchReport* report, const ProgressFn& progress) {
    validate_config(missile);
    const std::vector<Scenario> scenarios = scenario_rows(design);
    const std::size_t n = scenarios.size();
    std::vector<Sample> rows(n);
    std::vector<std::uint8_t> no_range_flags(n, 0);
    std::vector<std::string> failures(n);
    ProgressTicker ticker(progress, n);

#ifdef _OPENMP
    const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#else
    (void)jobs;
#endif
    for (std::size_t i = 0; i < n; ++i) {
        bool no_range = false;
        rows[i].scenario = scenarios[i];
        rows[i].max_range_nm = label_row(scenarios[i], missile, &no_range, &failures[i]);
        no_range_flags[i] = no_range ? 1 : 0;
        ticker.tick();
    }

    if (report) {
        BatchReport local;
        for (std::size_t i = 0; i < n; ++i) {
            if (no_range_flags[i]) ++local.no_range_rows;
            if (!failures[i].empty()) local.failures.push_back({i, failures[i]});
        }
        *report = std::move(local);
    }
    return assemble(design, missile, std::move(rows));
}

void write_dataset_csv(const Dataset& dataset, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw CsvError("cannot open " + path + " for writing");
    for (std::size_t j = 0; j < kDatasetColumns.size(); ++j)
        std::fprintf(f, "%s%c", kDatasetColumns[j], j + 1 < kDatasetColumns.size() ? ',' : '\n');
    for (const Sample& s : dataset.rows) {
        for (int j = 0; j < 7; ++j) std::fprintf(f, "%.17g,", scenario_field(s.scenario, j));
        std::fprintf(f, "%.17g\n", s.max_range_nm);
    }
    if (std::fclose(f) != 0) throw CsvError("write failed for " + path);
}

Dataset read_dataset_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CsvError("cannot open " + path);
    Dataset d;
    std::string line;
    std::size_t line_no = 0;
    const std::size_t ncols = kDatasetColumns.size();
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line_no == 1) {
            std::string expected;
            for (std::size_t j = 0; j < ncols; ++j) {
                expected += kDatasetColumns[j];
                if (j + 1 < ncols) expected += ',';
            }
            if (line != expected)
                throw CsvError(path + ":1: unexpected header '" + line + "'");
            continue;
        }
        std::stringstream ss(line);
        std::string cell;
        std::array<double, 8> row{};
        std::size_t col = 0;
        while (std::getline(ss, cell, ',')) {
            if (col >= ncols)
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
        if (col != ncols)
            throw CsvError(path + ":" + std::to_string(line_no) + ": expected " +
                           std::to_string(ncols) + " columns, got " + std::to_string(col));
        Sample s;
        for (int j = 0; j < 7; ++j) set_scenario_field(s.scenario, j, row[j]);
        s.max_range_nm = row[7];
        d.rows.push_back(s);
    }
    if (d.rows.empty()) throw CsvError(path + ": no data rows");
    d.meta.rows = d.rows.size();
    return d;
}

void write_dataset_meta(const DatasetMeta& meta, const std::string& path) {
    nlohmann::ordered_json j;
    j["rows"] = meta.rows;
    j["design_seed"] = meta.design_seed;
    char hash[19];
    std::snprintf(hash, sizeof hash, "0x%016llx",
                  static_cast<unsigned long long>(meta.missile_config_hash));
    j["missile_config_hash"] = hash;
    j["sim_version"] = meta.sim_version;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CsvError("cannot open " + path + " for writing");
    out << j.dump(2) << '\n';
    if (!out.flush()) throw CsvError("write failed for " + path);
}

DatasetMeta read_dataset_meta(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CsvError("cannot open " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw CsvError(path + ": " + e.what());
    }
    DatasetMeta meta;
    try {
        meta.rows = j.at("rows").get<std::size_t>();
        meta.design_seed = j.at("design_seed").get<std::uint64_t>();
        meta.missile_config_hash =
            std::stoull(j.at("missile_config_hash").get<std::string>(), nullptr, 16);
        meta.sim_version = j.at("sim_version").get<std::string>();
    } catch (const std::exception& e) {
        throw CsvError(path + ": " + e.what());
    }
    return meta;
}

}  // namespace wez
