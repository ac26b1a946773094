// units.hpp — Internal unit convention and physical constants
//
// All frequencies are angular, in rad/ns. Times are in ns, temperatures in
// kelvin. Config files accept linear GHz for the drive strengths; conversion
// happens once at the CLI boundary.
#pragma once

#include <cmath>

namespace drf {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// hbar / k_B in K*ns; thermal factors are coth(kHbarOverKb * omega / (2 T)).
inline constexpr double kHbarOverKb = 7.63824e-3;

inline double thermal_coth(double omega, double temperature_k) {
    if (temperature_k <= 0.0) return 1.0; // zero-temperature limit
    const double x = kHbarOverKb * omega / (2.0 * temperature_k);
    if (x > 30.0) return 1.0;
    return 1.0 / std::tanh(x);
}

} // namespace drf
