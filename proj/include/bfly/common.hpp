#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace bfly {

// IEEE double machine epsilon, 2^-52.
inline constexpr double kEpsMachine = 2.220446049250313e-16;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

// Pivot magnitudes below this are treated as exact breakdown.
inline constexpr double kSingularPivot = 1e-300;

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SingularityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateAngleError : std::domain_error {
    using std::domain_error::domain_error;
};

// Reduce an angle into [0, 2*pi).
inline double reduce_angle(double theta) {
    double r = std::fmod(theta, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

}  // namespace bfly
