#pragma once

#include <cmath>
#include <stdexcept>

namespace eitlin {

/// Natural log of the gamma function, Lanczos approximation (g = 7, 9 terms).
/// Accuracy is a few ulps of the returned value over [0.5, 1e6]; arguments
/// below 0.5 go through the reflection formula.
inline double log_gamma(double z) {
    static constexpr double kCoef[9] = {
        0.99999999999980993,     676.5203681218851,    -1259.1392167224028,
        771.32342877765313,     -176.61502916214059,    12.507343278686905,
        -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};
    static constexpr double kHalfLogTwoPi = 0.91893853320467274178;

    if (!(z > 0.0)) {
        throw std::invalid_argument("log_gamma: argument must be positive");
    }
    if (z < 0.5) {
        // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return std::log(M_PI / std::sin(M_PI * z)) - log_gamma(1.0 - z);
    }
    double a = kCoef[0];
    for (int i = 1; i < 9; ++i) {
        a += kCoef[i] / (z - 1.0 + static_cast<double>(i));
    }
    const double t = z + 6.5;
    return kHalfLogTwoPi + (z - 0.5) * std::log(t) - t + std::log(a);
}

}  // namespace eitlin
