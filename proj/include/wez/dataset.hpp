#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "wez/design.hpp"
#include "wez/missile.hpp"
#include "wez/scenario.hpp"

namespace wez {

// One design row with its simulated label. `max_range_nm` is 0.0 (the
// sub-activation sentinel) when no launch range exists for the scenario.
struct Sample {
    Scenario scenario;
    double max_range_nm = 0.0;
};

inline constexpr double kNoRangeSentinelNm = 0.0;

inline constexpr std::array<const char*, 8> kDatasetColumns = {
    "alt_sht", "vel_sht", "pit_sht", "alt_tgt", "vel_tgt",
    "hdg_tgt", "rgt_tgt", "max_range"};

struct DatasetMeta {
    std::size_t rows = 0;
    std::uint64_t design_seed = 0;
    std::uint64_t missile_config_hash = 0;
    std::string sim_version;
};

struct Dataset {
    std::vector<Sample> rows;
    DatasetMeta meta;
};

// A design row whose solve threw; the batch continues and reports these.
struct BatchFailure {
    std::size_t row = 0;
    std::string message;
};

struct BatchReport {
    std::vector<BatchFailure> failures;
    std::size_t no_range_rows = 0;  // sentinel-labelled rows (not failures)
};

// Per-1% progress hook: called with (rows_done, rows_total). Invoked from
// worker threads under a mutex; keep it cheap.
using ProgressFn = std::function<void(std::size_t, std::size_t)>;

// Labels every design row with find_max_range. Rows are solved in parallel
// across `jobs` threads (0 = hardware default) but written by row index, so
// the dataset is byte-identical for any job count. Per-row errors are
// collected into `report` instead of aborting the batch; those rows keep
// the sentinel label.
Dataset generate_dataset(const Design& design, const MissileConfig& missile, int jobs,
                         BatchReport* report = nullptr, const ProgressFn& progress = {});

// Single-threaded reference with the identical contract; kept for the
// equality tests and the benchmark.
Dataset generate_dataset_serial(const Design& design, const MissileConfig& missile,
                                BatchReport* report = nullptr,
                                const ProgressFn& progress = {});

void write_dataset_csv(const Dataset& dataset, const std::string& path);
Dataset read_dataset_csv(const std::string& path);

// Sidecar metadata, deliberately free of timestamps so reruns are
// byte-identical.
void write_dataset_meta(const DatasetMeta& meta, const std::string& path);
DatasetMeta read_dataset_meta(const std::string& path);

}  // namespace wez
