#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "wez/rng.hpp"
#include "wez/scenario.hpp"

namespace wez {

inline constexpr std::size_t kDesignDims = 7;
using DesignRow = std::array<double, kDesignDims>;

struct DesignSpec {
    std::array<VariableBounds, kDesignDims> bounds = kScenarioBounds;
    std::size_t samples = 0;            // >= 2
    std::uint64_t seed = 0;
    std::size_t maximin_iterations = 100000;
};

// A space-filling design with its provenance. Rows are in engineering
// units in kScenarioFields column order; the recorded distances are L2 in
// unit-cube coordinates.
struct Design {
    std::vector<DesignRow> rows;
    std::uint64_t seed = 0;
    std::size_t maximin_iterations = 0;
    std::size_t accepted_swaps = 0;
    double min_distance_initial = 0.0;  // plain stratified LHS, before maximin
    double min_distance = 0.0;          // after the maximin pass
};

struct MaximinResult {
    double initial_min_distance = 0.0;
    double final_min_distance = 0.0;
    std::size_t accepted_swaps = 0;
};

// Stratified Latin hypercube with per-stratum jitter, improved by the
// column-swap maximin pass. Deterministic in (spec.seed, spec.samples).
Design lhs_sample(const DesignSpec& spec);

// The maximin improvement pass on unit-cube rows: each proposal swaps one
// column value between a row of the current closest pair and a random
// partner, accepted only when the global minimum pairwise distance
// strictly increases. `on_accept`, when set, observes the new minimum
// distance after every accepted swap.
MaximinResult maximin_pass(std::vector<DesignRow>& unit_rows, std::size_t iterations,
                           CounterRng& rng,
                           const std::function<void(double)>& on_accept = {});

// Minimum pairwise L2 distance over all row pairs; the parallel kernel
// returns bit-identical results to the serial reference.
double min_pairwise_distance_serial(const std::vector<DesignRow>& rows);
double min_pairwise_distance(const std::vector<DesignRow>& rows);

// Per-row nearest neighbour: squared distance and partner index.
void nearest_neighbors_serial(const std::vector<DesignRow>& rows,
                              std::vector<double>& dist2, std::vector<int>& index);
void nearest_neighbors(const std::vector<DesignRow>& rows,
                       std::vector<double>& dist2, std::vector<int>& index);

// Rows reinterpreted as scenarios (requires the default variable order).
std::vector<Scenario> scenario_rows(const Design& design);

void write_design_csv(const Design& design, const std::string& path);
Design read_design_csv(const std::string& path);

// Provenance sidecar (seed, iterations, achieved distances); the CSV alone
// cannot carry it. `read_design_meta` restores those fields onto a design
// read back from CSV.
void write_design_meta(const Design& design, const std::string& path);
void read_design_meta(Design& design, const std::string& path);

}  // namespace wez
