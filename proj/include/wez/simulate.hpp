#pragma once

#include <string>
#include <vector>

#include "wez/missile.hpp"
#include "wez/scenario.hpp"
#include "wez/vec3.hpp"

namespace wez {

// Bumped whenever a physics or integration change alters simulation
// outputs; recorded in dataset metadata so labels stay traceable.
inline constexpr const char* kSimVersion = "1.0.0";

struct TargetPolicy {
    enum class Mode { NonManeuvering, Evasive };
    Mode mode = Mode::NonManeuvering;
    double evasion_accel = 5.0;  // G, horizontal
    double evasion_delay = 0.0;  // s from launch

    static TargetPolicy non_maneuvering() { return {}; }
    static TargetPolicy evasive(double delay_s, double accel_g = 5.0) {
        return {Mode::Evasive, accel_g, delay_s};
    }
};

enum class MissReason { GroundImpact, EnergyExhausted, SeekerLost, Timeout };

const char* miss_reason_name(MissReason r);

struct Outcome {
    bool hit = false;
    double time = 0.0;           // s; intercept time for hits, termination time otherwise
    double miss_distance = 0.0;  // m; closest approach
    MissReason reason = MissReason::Timeout;
};

struct MissileState {
    double time = 0.0;
    Vec3 position;               // NED, m; z down, ground at z = 0
    double speed = 0.0;          // m/s
    double flight_path_angle = 0.0;  // gamma, rad
    double heading = 0.0;            // chi, rad from north
    double mass = 0.0;           // kg
    double angle_of_attack = 0.0;    // rad, diagnostic (body lift proxy)
    double seeker_angle = 0.0;       // rad between velocity and line of sight
    Vec3 acceleration;           // NED, m/s^2
};

struct FlightTrace {
    std::vector<MissileState> states;  // fixed time_step spacing
    Outcome outcome;
};

struct EngagementResult {
    Outcome outcome;
    double closest_approach = 0.0;  // m over the whole flight
    double time_of_flight = 0.0;    // s
};

// Flies one launch. The target starts at `launch_range_nm` horizontal
// distance along the off-boresight bearing from the shooter, at its own
// altitude, flying hdg_tgt relative to the shooter's nose. Terminates on
// hit, ground impact, energy exhaustion, seeker-limit loss, or
// max_flight_time. Pure function of its inputs; identical inputs give
// bit-identical traces.
FlightTrace simulate_flight(const Scenario& scenario, double launch_range_nm,
                            const MissileConfig& missile, const TargetPolicy& target);

// Same fly-out without recording the trace; used by range solvers and
// batch drivers.
EngagementResult engage(const Scenario& scenario, double launch_range_nm,
                        const MissileConfig& missile, const TargetPolicy& target);

// CSV columns: time,n,e,d,speed,gamma,chi,mass,alpha,seeker,ax,ay,az (SI).
void write_trace_csv(const FlightTrace& trace, const std::string& path);

}  // namespace wez
