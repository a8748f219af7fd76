#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace purity {

/// Compensated (error-free transformation) Horner evaluation of a polynomial
/// with coefficients in ascending power order. Accurate to ~1 ulp even when
/// the plain Horner scheme suffers heavy cancellation (condition numbers up
/// to ~1/eps^2), which happens for expanded powers of (1-R) near R = 1.
inline double compensated_horner(std::span<const double> coeffs, double x) {
    const std::size_t m = coeffs.size();
    if (m == 0) return 0.0;
    double s = coeffs[m - 1];
    double e = 0.0;
    for (std::size_t k = m - 1; k-- > 0;) {
        // TwoProd(s, x)
        const double p = s * x;
        const double pi = std::fma(s, x, -p);
        // TwoSum(p, c_k)
        const double t = p + coeffs[k];
        const double z = t - p;
        const double sigma = (p - (t - z)) + (coeffs[k] - z);
        s = t;
        e = e * x + (pi + sigma);
    }
    return s + e;
}

} // namespace purity
