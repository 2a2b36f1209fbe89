#pragma once

namespace wez {

inline constexpr double kSeaLevelDensity = 1.225;  // kg/m^3

// ISA density, troposphere + lower stratosphere. Valid for 0..20,000 m;
// throws OutOfDomain above.
double atmosphere_density(double alt_m);

// ISA speed of sound, same altitude domain.
double speed_of_sound(double alt_m);

// Simulator variants: altitude is clamped at 0 below sea level, and
// above the model ceiling the isothermal-stratosphere exponential keeps
// thinning, so a lofting missile sees physically decaying air instead
// of an error. Identical to the strict functions inside [0, 20 km].
double atmosphere_density_extended(double alt_m);
double speed_of_sound_extended(double alt_m);

}  // namespace wez
