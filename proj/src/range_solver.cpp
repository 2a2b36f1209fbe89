#include "wez/range_solver.hpp"

#include <cmath>
#include <cstdio>

#include "wez/errors.hpp"
#include "wez/units.hpp"

namespace wez {
namespace {

std::optional<double> solve(const Scenario& scn, const MissileConfig& cfg,
                            const TargetPolicy& policy, const RangeSolveOptions& opt,
                            RangeSolveDiag* diag) {
    validate_config(cfg);
    const double r_base = m_to_nm(cfg.activation_distance);
    if (opt.r_upper_nm <= r_base || opt.tolerance_nm <= 0.0 || opt.probe_step_nm <= 0.0)
        throw ConfigError("range solver options must bracket beyond the activation distance");

    RangeSolveDiag local;
    RangeSolveDiag& d = diag ? *diag : local;
    d = {};

    const auto hits = [&](double r_nm) {
        ++d.simulations;
        return engage(scn, r_nm, cfg, policy).outcome.hit;
    };

    std::optional<double> answer;
    double lo = r_base;
    bool anchored = hits(lo);
    if (!anchored) {
        // The near anchor misses (typically a seeker-limit geometry); walk
        // the grid outward for a hit to bracket from.
        d.used_probe_ladder = true;
        for (int k = 1;; ++k) {
            const double r = r_base + k * opt.probe_step_nm;
            if (r > opt.r_upper_nm) break;
            if (hits(r)) {
                lo = r;
                anchored = true;
                break;
            }
        }
    }

    if (anchored) {
        if (hits(opt.r_upper_nm)) {
            answer = opt.r_upper_nm;
        } else {
            double hi = opt.r_upper_nm;
            while (hi - lo > opt.tolerance_nm) {
                const double mid = 0.5 * (lo + hi);
                if (hits(mid))
                    lo = mid;
                else
                    hi = mid;
            }
            answer = lo;
            d.upper_miss_nm = hi;
        }
    }

    if (opt.debug_crosscheck) {
        d.crosscheck_ran = true;
        std::optional<double> scan;
        for (int k = 0;; ++k) {
            const double r = r_base + k * opt.probe_step_nm;
            if (r > opt.r_upper_nm) break;
            ++d.simulations;
            if (engage(scn, r, cfg, policy).outcome.hit) scan = r;
        }
        if (scan) d.crosscheck_range_nm = *scan;
        const bool verdicts_agree = scan.has_value() == answer.has_value();
        const bool values_agree =
            !answer || std::fabs(*scan - *answer) <= opt.probe_step_nm + opt.tolerance_nm;
        if (!verdicts_agree || !values_agree) {
            d.crosscheck_disagreed = true;
            std::fprintf(stderr,
                         "range solver cross-check disagreement: bisection=%s scan=%s\n",
                         answer ? std::to_string(*answer).c_str() : "none",
                         scan ? std::to_string(*scan).c_str() : "none");
        }
    }
    return answer;
}

}  // namespace

std::optional<double> find_max_range(const Scenario& scenario, const MissileConfig& missile,
                                     const RangeSolveOptions& options, RangeSolveDiag* diag) {
    return solve(scenario, missile, TargetPolicy::non_maneuvering(), options, diag);
}

std::optional<double> find_nez_range(const Scenario& scenario, const MissileConfig& missile,
                                     double reaction_delay_s, const RangeSolveOptions& options,
                                     RangeSolveDiag* diag) {
    if (!(reaction_delay_s >= 0.0))
        throw ConfigError("evasion reaction delay must be non-negative");
    return solve(scenario, missile, TargetPolicy::evasive(reaction_delay_s), options, diag);
}

}  // namespace wez
