#include "wez/atmosphere.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wez/errors.hpp"
#include "wez/units.hpp"

namespace wez {

namespace {
constexpr double kSeaLevelTemp = 288.15;      // K
constexpr double kLapseRate = 0.0065;         // K/m, troposphere
constexpr double kGasConstant = 287.05287;    // J/(kg K)
constexpr double kTropopause = 11000.0;       // m
constexpr double kModelCeiling = 20000.0;     // m
constexpr double kGamma = 1.4;

double temperature(double alt_m) {
    return alt_m < kTropopause ? kSeaLevelTemp - kLapseRate * alt_m : 216.65;
}
}  // namespace

double atmosphere_density(double alt_m) {
    if (alt_m < 0.0 || alt_m > kModelCeiling) {
        throw OutOfDomain("atmosphere_density: altitude " + std::to_string(alt_m) +
                          " m outside [0, 20000]");
    }
    if (alt_m <= kTropopause) {
        double t = kSeaLevelTemp - kLapseRate * alt_m;
        double expo = kGravity / (kLapseRate * kGasConstant) - 1.0;
        return kSeaLevelDensity * std::pow(t / kSeaLevelTemp, expo);
    }
    double t11 = kSeaLevelTemp - kLapseRate * kTropopause;
    double expo = kGravity / (kLapseRate * kGasConstant) - 1.0;
    double rho11 = kSeaLevelDensity * std::pow(t11 / kSeaLevelTemp, expo);
    return rho11 * std::exp(-kGravity * (alt_m - kTropopause) / (kGasConstant * 216.65));
}

double speed_of_sound(double alt_m) {
    if (alt_m < 0.0 || alt_m > kModelCeiling) {
        throw OutOfDomain("speed_of_sound: altitude " + std::to_string(alt_m) +
                          " m outside [0, 20000]");
    }
    return std::sqrt(kGamma * kGasConstant * temperature(alt_m));
}

double atmosphere_density_extended(double alt_m) {
    if (alt_m <= kModelCeiling) return atmosphere_density(std::max(alt_m, 0.0));
    return atmosphere_density(kModelCeiling) *
           std::exp(-kGravity * (alt_m - kModelCeiling) / (kGasConstant * 216.65));
}

double speed_of_sound_extended(double alt_m) {
    return speed_of_sound(std::clamp(alt_m, 0.0, kModelCeiling));
}

}  // namespace wez
