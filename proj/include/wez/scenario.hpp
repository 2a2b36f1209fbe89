#pragma once

#include <array>
#include <string>

namespace wez {

// The seven launch-condition inputs. External units: ft, kt, deg.
struct Scenario {
    double alt_sht = 0.0;  // shooter altitude, ft
    double vel_sht = 0.0;  // shooter true airspeed, kt
    double pit_sht = 0.0;  // shooter pitch, deg
    double alt_tgt = 0.0;  // target altitude, ft
    double vel_tgt = 0.0;  // target true airspeed, kt
    double hdg_tgt = 0.0;  // target heading relative to shooter nose, deg
    double rgt_tgt = 0.0;  // target off-boresight angle, deg
};

inline constexpr std::array<const char*, 7> kScenarioFields = {
    "alt_sht", "vel_sht", "pit_sht", "alt_tgt", "vel_tgt", "hdg_tgt", "rgt_tgt"};

struct VariableBounds {
    const char* name;
    double min;
    double max;
    const char* unit;
};

// Engagement-space box the designer samples from.
inline constexpr std::array<VariableBounds, 7> kScenarioBounds = {{
    {"alt_sht", 1000.0, 45000.0, "ft"},
    {"vel_sht", 400.0, 600.0, "kt"},
    {"pit_sht", -45.0, 45.0, "deg"},
    {"alt_tgt", 1000.0, 45000.0, "ft"},
    {"vel_tgt", 400.0, 600.0, "kt"},
    {"hdg_tgt", -180.0, 180.0, "deg"},
    {"rgt_tgt", -60.0, 60.0, "deg"},
}};

double scenario_field(const Scenario& s, int index);
void set_scenario_field(Scenario& s, int index, double value);

// Maps any finite heading onto (-180, 180].
double normalize_heading(double deg);

// Throws InvalidScenario on non-finite or out-of-domain fields.
void validate_scenario(const Scenario& s);

std::string scenario_to_string(const Scenario& s);

// JSON object keyed by kScenarioFields; load validates the result.
std::string scenario_json(const Scenario& s);
Scenario load_scenario(const std::string& path);

}  // namespace wez
