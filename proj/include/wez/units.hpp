#pragma once

// Unit policy: external I/O uses aviation units (ft, kt, deg, NM),
// all internal computation is SI.

namespace wez {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kGravity = 9.80665;  // m/s^2

inline constexpr double kFtToM = 0.3048;
inline constexpr double kKtToMps = 0.514444;
inline constexpr double kNmToM = 1852.0;

inline constexpr double ft_to_m(double ft) { return ft * kFtToM; }
inline constexpr double m_to_ft(double m) { return m / kFtToM; }
inline constexpr double kt_to_mps(double kt) { return kt * kKtToMps; }
inline constexpr double mps_to_kt(double mps) { return mps / kKtToMps; }
inline constexpr double nm_to_m(double nm) { return nm * kNmToM; }
inline constexpr double m_to_nm(double m) { return m / kNmToM; }
inline constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

}  // namespace wez
