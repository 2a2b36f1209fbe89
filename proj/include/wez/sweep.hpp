#pragma once

#include <string>
#include <vector>

#include "wez/mlp.hpp"
#include "wez/scenario.hpp"

namespace wez {

inline constexpr int kSweepPoints = 241;       // -60..+60 deg inclusive
inline constexpr double kSweepStepDeg = 0.5;

struct SweepPoint {
    double rgt_deg = 0.0;
    double max_range_nm = 0.0;
};

struct SweepResult {
    Scenario base;  // rgt_tgt is the swept variable; its base value is ignored
    std::vector<SweepPoint> points;
};

// Evaluates the surrogate across the off-boresight sector; predictions are
// clamped at zero (a negative range is physically meaningless).
SweepResult run_sweep(const MlpModel& model, const Scenario& base);

void write_sweep_csv(const SweepResult& sweep, const std::string& path);

// Static polar depiction: shooter at the origin, range rings every 5 NM,
// the predicted maximum-range curve over the +/-60 deg sector. SVG 1.1.
void write_wez_svg(const SweepResult& sweep, const std::string& path);

}  // namespace wez
