#include "wez/missile.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "wez/errors.hpp"

namespace wez {

double drag_coefficient(const MissileConfig& cfg, double mach) {
    const auto& table = cfg.drag_coefficient_table;
    if (table.empty()) throw ConfigError("drag_coefficient_table is empty");
    auto hi = table.lower_bound(mach);
    if (hi == table.begin()) return hi->second;
    if (hi == table.end()) return std::prev(hi)->second;
    auto lo = std::prev(hi);
    double t = (mach - lo->first) / (hi->first - lo->first);
    return lo->second + t * (hi->second - lo->second);
}

void validate_config(const MissileConfig& cfg) {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw ConfigError(std::string("MissileConfig.") + name + " must be strictly positive");
        }
    };
    positive(cfg.launch_mass, "launch_mass");
    positive(cfg.boost_thrust, "boost_thrust");
    positive(cfg.boost_duration, "boost_duration");
    positive(cfg.sustain_thrust, "sustain_thrust");
    positive(cfg.sustain_duration, "sustain_duration");
    positive(cfg.propellant_mass_boost, "propellant_mass_boost");
    positive(cfg.propellant_mass_sustain, "propellant_mass_sustain");
    positive(cfg.reference_area, "reference_area");
    positive(cfg.nav_gain, "nav_gain");
    positive(cfg.max_lateral_accel, "max_lateral_accel");
    positive(cfg.lift_slope, "lift_slope");
    positive(cfg.max_incidence, "max_incidence");
    if (cfg.max_incidence > 45.0) {
        throw ConfigError("MissileConfig.max_incidence must be <= 45 deg");
    }
    positive(cfg.activation_distance, "activation_distance");
    positive(cfg.hit_radius, "hit_radius");
    positive(cfg.max_flight_time, "max_flight_time");
    positive(cfg.stall_speed, "stall_speed");
    positive(cfg.time_step, "time_step");
    if (cfg.seeker_gimbal_limit < 60.0) {
        throw ConfigError("MissileConfig.seeker_gimbal_limit must be >= 60 deg");
    }
    if (cfg.propellant_mass_boost + cfg.propellant_mass_sustain >= cfg.launch_mass) {
        throw ConfigError("propellant mass exceeds launch mass");
    }
    if (cfg.drag_coefficient_table.empty()) {
        throw ConfigError("drag_coefficient_table must not be empty");
    }
    for (const auto& [mach, cd] : cfg.drag_coefficient_table) {
        if (mach < 0.0 || cd <= 0.0 || !std::isfinite(cd)) {
            throw ConfigError("drag_coefficient_table entries must have mach >= 0 and cd > 0");
        }
    }
    if (cfg.loft_cutoff.covered_fraction <= 0.0 || cfg.loft_cutoff.covered_fraction >= 1.0) {
        throw ConfigError("loft_cutoff.covered_fraction must be in (0, 1)");
    }
}

namespace {

nlohmann::ordered_json to_json(const MissileConfig& cfg) {
    nlohmann::ordered_json j;
    j["launch_mass"] = cfg.launch_mass;
    j["boost_thrust"] = cfg.boost_thrust;
    j["boost_duration"] = cfg.boost_duration;
    j["sustain_thrust"] = cfg.sustain_thrust;
    j["sustain_duration"] = cfg.sustain_duration;
    j["propellant_mass_boost"] = cfg.propellant_mass_boost;
    j["propellant_mass_sustain"] = cfg.propellant_mass_sustain;
    nlohmann::ordered_json cd = nlohmann::ordered_json::array();
    for (const auto& [mach, value] : cfg.drag_coefficient_table) {
        cd.push_back({{"mach", mach}, {"cd", value}});
    }
    j["drag_coefficient_table"] = cd;
    j["reference_area"] = cfg.reference_area;
    j["nav_gain"] = cfg.nav_gain;
    j["max_lateral_accel"] = cfg.max_lateral_accel;
    j["lift_slope"] = cfg.lift_slope;
    j["max_incidence"] = cfg.max_incidence;
    j["seeker_gimbal_limit"] = cfg.seeker_gimbal_limit;
    j["activation_distance"] = cfg.activation_distance;
    j["loft_pitch_bias"] = cfg.loft_pitch_bias;
    j["loft_cutoff"] = {{"trigger_range_nm", cfg.loft_cutoff.trigger_range_nm},
                        {"covered_fraction", cfg.loft_cutoff.covered_fraction}};
    j["hit_radius"] = cfg.hit_radius;
    j["max_flight_time"] = cfg.max_flight_time;
    j["stall_speed"] = cfg.stall_speed;
    j["time_step"] = cfg.time_step;
    return j;
}

}  // namespace

MissileConfig load_missile_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open missile config: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("malformed missile config " + path + ": " + e.what());
    }

    MissileConfig cfg;
    auto get = [&](const char* key, double& field) {
        if (j.contains(key)) field = j.at(key).get<double>();
    };
    get("launch_mass", cfg.launch_mass);
    get("boost_thrust", cfg.boost_thrust);
    get("boost_duration", cfg.boost_duration);
    get("sustain_thrust", cfg.sustain_thrust);
    get("sustain_duration", cfg.sustain_duration);
    get("propellant_mass_boost", cfg.propellant_mass_boost);
    get("propellant_mass_sustain", cfg.propellant_mass_sustain);
    get("reference_area", cfg.reference_area);
    get("nav_gain", cfg.nav_gain);
    get("max_lateral_accel", cfg.max_lateral_accel);
    get("lift_slope", cfg.lift_slope);
    get("max_incidence", cfg.max_incidence);
    get("seeker_gimbal_limit", cfg.seeker_gimbal_limit);
    get("activation_distance", cfg.activation_distance);
    get("loft_pitch_bias", cfg.loft_pitch_bias);
    get("hit_radius", cfg.hit_radius);
    get("max_flight_time", cfg.max_flight_time);
    get("stall_speed", cfg.stall_speed);
    get("time_step", cfg.time_step);
    if (j.contains("loft_cutoff")) {
        const auto& lc = j.at("loft_cutoff");
        if (lc.contains("trigger_range_nm")) {
            cfg.loft_cutoff.trigger_range_nm = lc.at("trigger_range_nm").get<double>();
        }
        if (lc.contains("covered_fraction")) {
            cfg.loft_cutoff.covered_fraction = lc.at("covered_fraction").get<double>();
        }
    }
    if (j.contains("drag_coefficient_table")) {
        cfg.drag_coefficient_table.clear();
        for (const auto& entry : j.at("drag_coefficient_table")) {
            cfg.drag_coefficient_table[entry.at("mach").get<double>()] =
                entry.at("cd").get<double>();
        }
    }
    validate_config(cfg);
    return cfg;
}

std::string missile_config_json(const MissileConfig& cfg) {
    return to_json(cfg).dump(2);
}

std::uint64_t missile_config_hash(const MissileConfig& cfg) {
    std::string dump = to_json(cfg).dump();
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

}  // namespace wez
