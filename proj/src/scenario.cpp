#include "wez/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "wez/errors.hpp"

namespace wez {

double scenario_field(const Scenario& s, int index) {
    switch (index) {
        case 0: return s.alt_sht;
        case 1: return s.vel_sht;
        case 2: return s.pit_sht;
        case 3: return s.alt_tgt;
        case 4: return s.vel_tgt;
        case 5: return s.hdg_tgt;
        case 6: return s.rgt_tgt;
        default: throw WezError("scenario_field: bad index");
    }
}

void set_scenario_field(Scenario& s, int index, double value) {
    switch (index) {
        case 0: s.alt_sht = value; break;
        case 1: s.vel_sht = value; break;
        case 2: s.pit_sht = value; break;
        case 3: s.alt_tgt = value; break;
        case 4: s.vel_tgt = value; break;
        case 5: s.hdg_tgt = value; break;
        case 6: s.rgt_tgt = value; break;
        default: throw WezError("set_scenario_field: bad index");
    }
}

double normalize_heading(double deg) {
    double h = std::fmod(deg, 360.0);
    if (h > 180.0) h -= 360.0;
    if (h <= -180.0) h += 360.0;
    return h;
}

void validate_scenario(const Scenario& s) {
    for (int i = 0; i < 7; ++i) {
        double v = scenario_field(s, i);
        const auto& b = kScenarioBounds[i];
        if (!std::isfinite(v)) {
            throw InvalidScenario(std::string("scenario field ") + b.name + " is not finite");
        }
        if (v < b.min || v > b.max) {
            std::ostringstream msg;
            msg << "scenario field " << b.name << " = " << v << " outside [" << b.min
                << ", " << b.max << "] " << b.unit;
            throw InvalidScenario(msg.str());
        }
    }
}

std::string scenario_to_string(const Scenario& s) {
    std::ostringstream out;
    out << "alt_sht=" << s.alt_sht << "ft vel_sht=" << s.vel_sht << "kt pit_sht="
        << s.pit_sht << "deg alt_tgt=" << s.alt_tgt << "ft vel_tgt=" << s.vel_tgt
        << "kt hdg_tgt=" << s.hdg_tgt << "deg rgt_tgt=" << s.rgt_tgt << "deg";
    return out.str();
}

std::string scenario_json(const Scenario& s) {
    nlohmann::ordered_json j;
    for (int i = 0; i < 7; ++i) j[kScenarioFields[static_cast<std::size_t>(i)]] =
        scenario_field(s, i);
    return j.dump(2) + "\n";
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario file " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
    Scenario s;
    try {
        for (int i = 0; i < 7; ++i)
            set_scenario_field(s, i,
                               j.at(kScenarioFields[static_cast<std::size_t>(i)])
                                   .get<double>());
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
    validate_scenario(s);
    return s;
}

}  // namespace wez
