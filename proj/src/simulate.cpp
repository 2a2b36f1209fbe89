#include "wez/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "wez/atmosphere.hpp"
#include "wez/errors.hpp"
#include "wez/units.hpp"

namespace wez {
namespace {

constexpr double kMinSpeedDenom = 1.0;        // m/s guard in kinematic rates
constexpr double kMinCosGamma = 0.05;         // heading-rate guard near vertical
constexpr double kMaxGamma = 89.0 * kPi / 180.0;
// Apogee cap for loft arcs: past this the climb stops paying for itself.
constexpr double kLoftAltitudeCeiling = 15000.0;  // m

struct SimState {
    Vec3 pos;      // NED m
    double speed;  // m/s
    double gamma;  // rad
    double chi;    // rad
    double mass;   // kg
};

struct SimDeriv {
    Vec3 dpos;
    double dspeed, dgamma, dchi;
};

struct TargetState {
    Vec3 pos;
    double heading;  // rad from north
    double speed;    // m/s
};

Vec3 velocity_unit(double gamma, double chi) {
    const double cg = std::cos(gamma);
    return {cg * std::cos(chi), cg * std::sin(chi), -std::sin(gamma)};
}

// Pitch-up direction: perpendicular to velocity in the vertical plane.
Vec3 pitch_unit(double gamma, double chi) {
    const double sg = std::sin(gamma);
    return {-sg * std::cos(chi), -sg * std::sin(chi), -std::cos(gamma)};
}

// Horizontal-turn direction: perpendicular to velocity, level.
Vec3 yaw_unit(double chi) { return {-std::sin(chi), std::cos(chi), 0.0}; }

double thrust_at(const MissileConfig& cfg, double t) {
    if (t < cfg.boost_duration) return cfg.boost_thrust;
    if (t < cfg.boost_duration + cfg.sustain_duration) return cfg.sustain_thrust;
    return 0.0;
}

// Mass is a known piecewise-linear function of time, so it is evaluated in
// closed form rather than integrated; totals stay exact across the phase
// boundaries regardless of where they fall inside a step.
double mass_at(const MissileConfig& cfg, double t) {
    if (t < cfg.boost_duration)
        return cfg.launch_mass - cfg.propellant_mass_boost * (t / cfg.boost_duration);
    const double after_boost = cfg.launch_mass - cfg.propellant_mass_boost;
    const double sustain_t = t - cfg.boost_duration;
    if (sustain_t < cfg.sustain_duration)
        return after_boost - cfg.propellant_mass_sustain * (sustain_t / cfg.sustain_duration);
    return after_boost - cfg.propellant_mass_sustain;
}

// Normal-force coefficient demanded by the lateral command, capped at the
// incidence limit. The lift includes the gravity-compensation share, so
// trim drag in cruise falls out of the same expression.
double normal_force_coeff(const MissileConfig& cfg, double q, double mass,
                          double a_v, double a_h) {
    const double qs = std::max(q * cfg.reference_area, 1e-9);
    const double cn_max = cfg.lift_slope * deg_to_rad(cfg.max_incidence);
    return std::min(mass * std::hypot(a_v, a_h) / qs, cn_max);
}

// Point-mass dynamics with a zero-order-hold lateral command (a_v pitch,
// a_h yaw, both m/s^2 and already clamped). Drag is zero-lift Cd(Mach)
// plus drag-due-to-lift CN^2 / CN_alpha.
SimDeriv dynamics(const MissileConfig& cfg, const SimState& s, double t,
                  double a_v, double a_h) {
    const double altitude = -s.pos.z;
    const double rho = atmosphere_density_extended(altitude);
    const double mach = s.speed / speed_of_sound_extended(altitude);
    const double q = 0.5 * rho * s.speed * s.speed;
    const double mass = mass_at(cfg, t);
    const double cn = normal_force_coeff(cfg, q, mass, a_v, a_h);
    const double cd = drag_coefficient(cfg, mach) + cn * cn / cfg.lift_slope;
    const double drag = q * cfg.reference_area * cd;
    const double v = std::max(s.speed, kMinSpeedDenom);
    const double cg = std::cos(s.gamma);

    SimDeriv d;
    d.dpos = s.speed * velocity_unit(s.gamma, s.chi);
    d.dspeed = (thrust_at(cfg, t) - drag) / mass - kGravity * std::sin(s.gamma);
    d.dgamma = (a_v - kGravity * cg) / v;
    d.dchi = a_h / (v * std::max(cg, kMinCosGamma));
    return d;
}

SimState advance(const SimState& s, const SimDeriv& d, double h) {
    SimState r;
    r.pos = s.pos + h * d.dpos;
    r.speed = s.speed + h * d.dspeed;
    r.gamma = std::clamp(s.gamma + h * d.dgamma, -kMaxGamma, kMaxGamma);
    r.chi = s.chi + h * d.dchi;
    r.mass = s.mass;  // stage copies carry it; dynamics evaluates mass_at(t)
    return r;
}

SimState rk4_step(const MissileConfig& cfg, const SimState& s, double t, double dt,
                  double a_v, double a_h) {
    const SimDeriv k1 = dynamics(cfg, s, t, a_v, a_h);
    const SimDeriv k2 = dynamics(cfg, advance(s, k1, 0.5 * dt), t + 0.5 * dt, a_v, a_h);
    const SimDeriv k3 = dynamics(cfg, advance(s, k2, 0.5 * dt), t + 0.5 * dt, a_v, a_h);
    const SimDeriv k4 = dynamics(cfg, advance(s, k3, dt), t + dt, a_v, a_h);

    SimState r;
    r.pos = s.pos + (dt / 6.0) * (k1.dpos + 2.0 * k2.dpos + 2.0 * k3.dpos + k4.dpos);
    r.speed = s.speed + (dt / 6.0) * (k1.dspeed + 2.0 * k2.dspeed + 2.0 * k3.dspeed + k4.dspeed);
    r.gamma = std::clamp(
        s.gamma + (dt / 6.0) * (k1.dgamma + 2.0 * k2.dgamma + 2.0 * k3.dgamma + k4.dgamma),
        -kMaxGamma, kMaxGamma);
    r.chi = s.chi + (dt / 6.0) * (k1.dchi + 2.0 * k2.dchi + 2.0 * k3.dchi + k4.dchi);
    r.mass = mass_at(cfg, t + dt);
    return r;
}

double wrap_pi(double a) {
    a = std::fmod(a + kPi, 2.0 * kPi);
    if (a <= 0.0) a += 2.0 * kPi;
    return a - kPi;
}

// Constant-altitude target step. An evasive target turns at its lateral
// limit toward the flee heading (directly away from the missile) and holds
// course once aligned; position advances along the exact circular arc.
void step_target(TargetState& tgt, const Vec3& missile_pos, const TargetPolicy& policy,
                 double t, double dt) {
    double dpsi = 0.0;
    if (policy.mode == TargetPolicy::Mode::Evasive && t >= policy.evasion_delay) {
        const double dn = tgt.pos.x - missile_pos.x;
        const double de = tgt.pos.y - missile_pos.y;
        if (dn != 0.0 || de != 0.0) {
            const double flee = std::atan2(de, dn);
            const double err = wrap_pi(flee - tgt.heading);
            const double max_dpsi = policy.evasion_accel * kGravity /
                                    std::max(tgt.speed, kMinSpeedDenom) * dt;
            dpsi = std::clamp(err, -max_dpsi, max_dpsi);
        }
    }
    if (std::fabs(dpsi) > 1e-12) {
        const double radius = tgt.speed * dt / dpsi;
        tgt.pos.x += radius * (std::sin(tgt.heading + dpsi) - std::sin(tgt.heading));
        tgt.pos.y -= radius * (std::cos(tgt.heading + dpsi) - std::cos(tgt.heading));
        tgt.heading = wrap_pi(tgt.heading + dpsi);
    } else {
        tgt.pos.x += tgt.speed * dt * std::cos(tgt.heading);
        tgt.pos.y += tgt.speed * dt * std::sin(tgt.heading);
    }
}

struct Command {
    double a_v = 0.0;  // pitch channel, m/s^2
    double a_h = 0.0;  // yaw channel, m/s^2
};

// Proportional navigation with gravity compensation, plus the loft law
// while it is active. Output clamped to the lateral-acceleration limit.
Command guidance(const MissileConfig& cfg, const SimState& s, const TargetState& tgt,
                 const Vec3& tgt_vel, bool lofting) {
    const Vec3 vel = s.speed * velocity_unit(s.gamma, s.chi);
    const Vec3 los = tgt.pos - s.pos;
    const double r2 = dot(los, los);
    const Vec3 v_rel = tgt_vel - vel;
    const Vec3 omega = r2 > 0.0 ? cross(los, v_rel) / r2 : Vec3{};
    const Vec3 a_pn = cfg.nav_gain * cross(omega, vel);

    const Vec3 up = pitch_unit(s.gamma, s.chi);
    const Vec3 uy = yaw_unit(s.chi);
    Command cmd;
    cmd.a_v = dot(a_pn, up) + kGravity * std::cos(s.gamma);
    cmd.a_h = dot(a_pn, uy);

    if (lofting) {
        // Track a climb steeper than the line of sight by the pitch bias.
        const double range = std::sqrt(r2);
        const double elevation =
            range > 0.0 ? std::asin(std::clamp(-los.z / range, -1.0, 1.0)) : 0.0;
        const double gamma_ref = std::min(elevation + deg_to_rad(cfg.loft_pitch_bias),
                                          80.0 * kPi / 180.0);
        constexpr double kLoftGain = 0.5;  // 1/s on flight-path-angle error
        cmd.a_v = kGravity * std::cos(s.gamma) + kLoftGain * (gamma_ref - s.gamma) * s.speed;
    }

    // Achievable lateral acceleration: structural limit or what the
    // airframe can lift at the current dynamic pressure, whichever binds.
    const double q = 0.5 * atmosphere_density_extended(-s.pos.z) * s.speed * s.speed;
    const double aero = q * cfg.reference_area * cfg.lift_slope *
                        deg_to_rad(cfg.max_incidence) / s.mass;
    const double limit = std::min(cfg.max_lateral_accel * kGravity, aero);
    const double mag = std::hypot(cmd.a_v, cmd.a_h);
    if (mag > limit) {
        cmd.a_v *= limit / mag;
        cmd.a_h *= limit / mag;
    }
    return cmd;
}

// Closest approach of the relative track over one step assuming constant
// relative velocity across it. Returns distance and the in-step time.
std::pair<double, double> segment_closest(const Vec3& rel_pos, const Vec3& rel_vel,
                                          double dt) {
    const double vv = dot(rel_vel, rel_vel);
    double tau = 0.0;
    if (vv > 0.0) tau = std::clamp(-dot(rel_pos, rel_vel) / vv, 0.0, dt);
    return {(rel_pos + tau * rel_vel).norm(), tau};
}

MissileState record_state(const SimState& s, const TargetState& tgt, double t,
                          const Command& cmd, const MissileConfig& cfg) {
    MissileState out;
    out.time = t;
    out.position = s.pos;
    out.speed = s.speed;
    out.flight_path_angle = s.gamma;
    out.heading = s.chi;
    out.mass = s.mass;

    const Vec3 vel = s.speed * velocity_unit(s.gamma, s.chi);
    const Vec3 los = tgt.pos - s.pos;
    const double denom = vel.norm() * los.norm();
    out.seeker_angle =
        denom > 0.0 ? std::acos(std::clamp(dot(vel, los) / denom, -1.0, 1.0)) : 0.0;

    // Incidence that balances the commanded lift at the configured slope;
    // signed by the pitch channel.
    const double altitude = -s.pos.z;
    const double q = 0.5 * atmosphere_density_extended(altitude) * s.speed * s.speed;
    const double cn = normal_force_coeff(cfg, q, s.mass, cmd.a_v, cmd.a_h);
    out.angle_of_attack = std::copysign(cn / cfg.lift_slope, cmd.a_v);

    const SimDeriv d = dynamics(cfg, s, t, cmd.a_v, cmd.a_h);
    const double v = std::max(s.speed, kMinSpeedDenom);
    out.acceleration = d.dspeed * velocity_unit(s.gamma, s.chi) +
                       v * d.dgamma * pitch_unit(s.gamma, s.chi) +
                       v * std::cos(s.gamma) * d.dchi * yaw_unit(s.chi);
    return out;
}

EngagementResult fly(const Scenario& scn, double launch_range_nm,
                     const MissileConfig& cfg, const TargetPolicy& policy,
                     std::vector<MissileState>* trace) {
    validate_scenario(scn);
    validate_config(cfg);
    if (!std::isfinite(launch_range_nm) || launch_range_nm <= 0.0)
        throw InvalidScenario("launch range must be positive and finite");

    SimState mis;
    mis.pos = {0.0, 0.0, -ft_to_m(scn.alt_sht)};
    mis.speed = kt_to_mps(scn.vel_sht);
    mis.gamma = deg_to_rad(scn.pit_sht);
    mis.chi = 0.0;
    mis.mass = cfg.launch_mass;

    TargetState tgt;
    const double bearing = deg_to_rad(scn.rgt_tgt);
    const double range0 = nm_to_m(launch_range_nm);
    tgt.pos = {range0 * std::cos(bearing), range0 * std::sin(bearing),
               -ft_to_m(scn.alt_tgt)};
    tgt.heading = deg_to_rad(scn.hdg_tgt);
    tgt.speed = kt_to_mps(scn.vel_tgt);

    const double dt = cfg.time_step;
    const double burnout = cfg.boost_duration + cfg.sustain_duration;
    const double gimbal = deg_to_rad(cfg.seeker_gimbal_limit);
    const double slant0 = (tgt.pos - mis.pos).norm();
    const bool loft_wanted = m_to_nm(slant0) > cfg.loft_cutoff.trigger_range_nm;
    bool lofting = loft_wanted;
    double prev_gamma = mis.gamma;

    EngagementResult result;
    result.closest_approach = slant0;

    double t = 0.0;
    while (true) {
        const Vec3 tgt_vel =
            tgt.speed * Vec3{std::cos(tgt.heading), std::sin(tgt.heading), 0.0};

        if (lofting) {
            const double covered = 1.0 - (tgt.pos - mis.pos).norm() / slant0;
            const bool apogee = (t > burnout && prev_gamma > 0.0 && mis.gamma <= 0.0) ||
                                -mis.pos.z >= kLoftAltitudeCeiling;
            if (covered >= cfg.loft_cutoff.covered_fraction || apogee) lofting = false;
        }
        prev_gamma = mis.gamma;

        const Command cmd = guidance(cfg, mis, tgt, tgt_vel, lofting);
        const MissileState snap = record_state(mis, tgt, t, cmd, cfg);
        if (trace) trace->push_back(snap);
        result.closest_approach =
            std::min(result.closest_approach, (tgt.pos - mis.pos).norm());

        if (mis.pos.z >= 0.0) {
            result.outcome = {false, t, result.closest_approach, MissReason::GroundImpact};
            break;
        }
        const double eas = mis.speed *
            std::sqrt(atmosphere_density_extended(-mis.pos.z) / kSeaLevelDensity);
        if (t >= burnout && eas < cfg.stall_speed) {
            result.outcome = {false, t, result.closest_approach, MissReason::EnergyExhausted};
            break;
        }
        if (snap.seeker_angle > gimbal) {
            result.outcome = {false, t, result.closest_approach, MissReason::SeekerLost};
            break;
        }
        if (t >= cfg.max_flight_time) {
            result.outcome = {false, t, result.closest_approach, MissReason::Timeout};
            break;
        }

        const Vec3 mis_vel = mis.speed * velocity_unit(mis.gamma, mis.chi);
        const auto [dmin, tau] = segment_closest(tgt.pos - mis.pos, tgt_vel - mis_vel, dt);
        result.closest_approach = std::min(result.closest_approach, dmin);
        if (dmin <= cfg.hit_radius) {
            result.outcome = {true, t + tau, dmin, MissReason::Timeout};
            break;
        }

        mis = rk4_step(cfg, mis, t, dt, cmd.a_v, cmd.a_h);
        step_target(tgt, mis.pos, policy, t, dt);
        t += dt;
    }

    result.time_of_flight = result.outcome.time;
    return result;
}

}  // namespace

const char* miss_reason_name(MissReason r) {
    switch (r) {
        case MissReason::GroundImpact: return "ground_impact";
        case MissReason::EnergyExhausted: return "energy_exhausted";
        case MissReason::SeekerLost: return "seeker_lost";
        case MissReason::Timeout: return "timeout";
    }
    return "unknown";
}

FlightTrace simulate_flight(const Scenario& scenario, double launch_range_nm,
                            const MissileConfig& missile, const TargetPolicy& target) {
    FlightTrace trace;
    const EngagementResult r = fly(scenario, launch_range_nm, missile, target, &trace.states);
    trace.outcome = r.outcome;
    return trace;
}

EngagementResult engage(const Scenario& scenario, double launch_range_nm,
                        const MissileConfig& missile, const TargetPolicy& target) {
    return fly(scenario, launch_range_nm, missile, target, nullptr);
}

void write_trace_csv(const FlightTrace& trace, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw CsvError("cannot open " + path + " for writing");
    std::fputs("time,n,e,d,speed,gamma,chi,mass,alpha,seeker,ax,ay,az\n", f);
    for (const MissileState& s : trace.states) {
        std::fprintf(f, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                     s.time, s.position.x, s.position.y, s.position.z, s.speed,
                     s.flight_path_angle, s.heading, s.mass, s.angle_of_attack,
                     s.seeker_angle, s.acceleration.x, s.acceleration.y,
                     s.acceleration.z);
    }
    if (std::fclose(f) != 0) throw CsvError("write failed for " + path);
}

}  // namespace wez
