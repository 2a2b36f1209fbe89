#pragma once

#include <optional>

#include "wez/missile.hpp"
#include "wez/scenario.hpp"
#include "wez/simulate.hpp"

namespace wez {

struct RangeSolveOptions {
    double tolerance_nm = 0.01;   // bisection bracket width at convergence
    double r_upper_nm = 60.0;     // search ceiling
    double probe_step_nm = 0.1;   // ladder spacing when the near anchor misses
    bool debug_crosscheck = false;  // grid-scan the whole interval and compare
};

struct RangeSolveDiag {
    int simulations = 0;
    // Converged upper bracket: a simulated miss within tolerance above the
    // answer. 0 when no bisection ran (no hit anywhere, or the ceiling hit).
    double upper_miss_nm = 0.0;
    bool used_probe_ladder = false;
    bool crosscheck_ran = false;
    bool crosscheck_disagreed = false;
    double crosscheck_range_nm = 0.0;  // best grid hit when the scan ran
};

// Largest launch range (NM) from which the engagement still ends in a hit,
// found by bisection between the seeker-activation distance and the search
// ceiling. When the near anchor itself misses, ranges are probed outward on
// the `probe_step_nm` grid until the first hit re-anchors the bracket; no
// hit anywhere means no launch range exists and nullopt is returned.
std::optional<double> find_max_range(const Scenario& scenario, const MissileConfig& missile,
                                     const RangeSolveOptions& options = {},
                                     RangeSolveDiag* diag = nullptr);

// Same search against a target that breaks away at its lateral limit after
// `reaction_delay_s`: the no-escape boundary.
std::optional<double> find_nez_range(const Scenario& scenario, const MissileConfig& missile,
                                     double reaction_delay_s,
                                     const RangeSolveOptions& options = {},
                                     RangeSolveDiag* diag = nullptr);

}  // namespace wez
