#include "purity/basis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace purity {

namespace {

constexpr double kClampTol = 1e-12;

// sin(m*phi)/m, with the limit value phi at m = 0.
double sine_over(int m, double phi) {
    if (m == 0) return phi;
    return std::sin(m * phi) / m;
}

double clamp_unit(double x, const char* what) {
    if (x > 1.0) {
        if (x > 1.0 + kClampTol)
            throw std::logic_error(std::string(what) + ": argument " + std::to_string(x) +
                                   " beyond clamp tolerance (term evaluated off its interval)");
        return 1.0;
    }
    if (x < -1.0) {
        if (x < -1.0 - kClampTol)
            throw std::logic_error(std::string(what) + ": argument " + std::to_string(x) +
                                   " beyond clamp tolerance (term evaluated off its interval)");
        return -1.0;
    }
    return x;
}

double clamp_nonneg(double x, const char* what) {
    if (x < 0.0) {
        if (x < -kClampTol)
            throw std::logic_error(std::string(what) + ": negative argument " + std::to_string(x) +
                                   " beyond clamp tolerance (term evaluated off its interval)");
        return 0.0;
    }
    return x;
}

} // namespace

double chi(int j2, double phi) {
    if (j2 < 0) throw std::domain_error("chi: index must be >= 0, got j2=" + std::to_string(j2));
    // chi_j with j = j2/2: multipliers 6j-6, 6j, 6j+6 become 3*j2 - 6, 3*j2, 3*j2 + 6.
    return sine_over(3 * j2 - 6, phi) - 2.0 * sine_over(3 * j2, phi) + sine_over(3 * j2 + 6, phi);
}

double phi_angle(double R) {
    if (R <= 0.5) return 0.0;
    const double c = clamp_unit(1.0 / std::sqrt(6.0 * R - 2.0), "phi_angle");
    return std::acos(c);
}

double eval_basis(const BasisFn& fn, double R, double r) {
    switch (fn.tag) {
        case Basis::One:
            return 1.0;
        case Basis::Sqrt6RMinus3:
            return std::sqrt(clamp_nonneg(6.0 * R - 3.0, "sqrt(6R-3)"));
        case Basis::ArccosInvSqrt6RMinus2:
            return std::acos(clamp_unit(1.0 / std::sqrt(6.0 * R - 2.0), "arccos(1/sqrt(6R-2))"));
        case Basis::ArccosROver3RMinus1:
            return std::acos(clamp_unit(R / (3.0 * R - 1.0), "arccos(R/(3R-1))"));
        case Basis::AtanSqrt8r2Over4r2Minus1: {
            const double den = clamp_nonneg(4.0 * r * r - 1.0, "arctan(sqrt(8r^2/(4r^2-1)))");
            if (den == 0.0) return std::numbers::pi / 2;
            return std::atan(std::sqrt(8.0 * r * r / den));
        }
        case Basis::AtanSqrt2Over12r2Minus3: {
            const double den = clamp_nonneg(12.0 * r * r - 3.0, "arctan(sqrt(2/(12r^2-3)))");
            if (den == 0.0) return std::numbers::pi / 2;
            return std::atan(std::sqrt(2.0 / den));
        }
        case Basis::Sqrt4r2Minus1:
            return std::sqrt(clamp_nonneg(4.0 * r * r - 1.0, "sqrt(4r^2-1)"));
        case Basis::ChiDiff: {
            static const double kPiThird = std::numbers::pi / 3;
            return chi(fn.chi_j2, phi_angle(R)) - chi(fn.chi_j2, kPiThird);
        }
    }
    throw std::logic_error("eval_basis: unknown tag");
}

const char* basis_name(Basis b) {
    switch (b) {
        case Basis::One: return "ONE";
        case Basis::Sqrt6RMinus3: return "SQRT_6R_MINUS_3";
        case Basis::ArccosInvSqrt6RMinus2: return "ARCCOS_INV_SQRT_6R_MINUS_2";
        case Basis::ArccosROver3RMinus1: return "ARCCOS_R_OVER_3R_MINUS_1";
        case Basis::AtanSqrt8r2Over4r2Minus1: return "ATAN_SQRT_8R2_OVER_4R2_MINUS_1";
        case Basis::AtanSqrt2Over12r2Minus3: return "ATAN_SQRT_2_OVER_12R2_MINUS_3";
        case Basis::Sqrt4r2Minus1: return "SQRT_4R2_MINUS_1";
        case Basis::ChiDiff: return "CHI_DIFF";
    }
    throw std::logic_error("basis_name: unknown tag");
}

Basis basis_from_name(const std::string& name) {
    for (Basis b : {Basis::One, Basis::Sqrt6RMinus3, Basis::ArccosInvSqrt6RMinus2,
                    Basis::ArccosROver3RMinus1, Basis::AtanSqrt8r2Over4r2Minus1,
                    Basis::AtanSqrt2Over12r2Minus3, Basis::Sqrt4r2Minus1, Basis::ChiDiff}) {
        if (name == basis_name(b)) return b;
    }
    throw std::invalid_argument("basis_from_name: unknown basis tag '" + name + "'");
}

} // namespace purity
