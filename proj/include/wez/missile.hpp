#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace wez {

struct LoftCutoff {
    double trigger_range_nm = 10.0;   // loft only when initial LOS range exceeds this
    double covered_fraction = 0.4;    // loft ends once this fraction of range is covered
};

// AMRAAM-class boost-sustain missile. All values configurable; none are
// manufacturer data.
struct MissileConfig {
    double launch_mass = 152.0;              // kg
    double boost_thrust = 11000.0;           // N
    double boost_duration = 6.0;             // s
    double sustain_thrust = 2600.0;          // N
    double sustain_duration = 20.0;          // s
    double propellant_mass_boost = 45.0;     // kg
    double propellant_mass_sustain = 20.0;   // kg
    std::map<double, double> drag_coefficient_table = {
        {0.8, 0.35}, {1.2, 0.55}, {2.0, 0.40}, {4.0, 0.30}};
    double reference_area = 0.0324;          // m^2
    double nav_gain = 4.0;                   // proportional-navigation constant
    double max_lateral_accel = 40.0;         // G, structural limit
    double lift_slope = 30.0;                // CN_alpha per rad, reference-area basis
    double max_incidence = 25.0;             // deg, aerodynamic incidence limit
    double seeker_gimbal_limit = 60.0;       // deg
    double activation_distance = 2000.0;     // m
    double loft_pitch_bias = 20.0;           // deg above line of sight
    LoftCutoff loft_cutoff;
    double hit_radius = 50.0;                // m
    double max_flight_time = 200.0;          // s
    // Energy-exhaustion floor, as equivalent airspeed (sea-level
    // referenced) so it expresses a dynamic-pressure stall criterion;
    // checked once the motor has burned out.
    double stall_speed = 150.0;              // m/s EAS
    double time_step = 0.01;                 // s, RK4 step
};

// Piecewise-linear Cd(Mach), clamped at the table ends.
double drag_coefficient(const MissileConfig& cfg, double mach);

// Throws ConfigError on violated invariants.
void validate_config(const MissileConfig& cfg);

MissileConfig load_missile_config(const std::string& path);
std::string missile_config_json(const MissileConfig& cfg);

// FNV-1a over the canonical JSON dump; recorded in dataset metadata.
std::uint64_t missile_config_hash(const MissileConfig& cfg);

}  // namespace wez
