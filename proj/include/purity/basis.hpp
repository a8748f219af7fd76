#pragma once

#include <string>

namespace purity {

/// Named special functions appearing as factors in the piecewise densities.
///
/// The first seven evaluate functions of the purity R directly, or of
/// r = sqrt(R - 1/4) where the name says so (the "r2" forms; they arise in the
/// p = 4 family). ChiDiff is the parametric family
///     chi_j(phi(R)) - chi_j(pi/3),  phi(R) = arccos(1/sqrt(6R-2)) for R >= 1/2,
/// indexed by the half-integer j (stored as chi_j2 = 2j); it carries the
/// angular content of the p = 3, q > 3 densities.
enum class Basis {
    One,
    Sqrt6RMinus3,              // sqrt(6R - 3)
    ArccosInvSqrt6RMinus2,     // arccos(1/sqrt(6R - 2))
    ArccosROver3RMinus1,       // arccos(R/(3R - 1))
    AtanSqrt8r2Over4r2Minus1,  // arctan(sqrt(8r^2/(4r^2 - 1)))
    AtanSqrt2Over12r2Minus3,   // arctan(sqrt(2/(12r^2 - 3)))
    Sqrt4r2Minus1,             // sqrt(4r^2 - 1)
    ChiDiff,                   // chi_{j2/2}(phi(R)) - chi_{j2/2}(pi/3)
};

struct BasisFn {
    Basis tag = Basis::One;
    int chi_j2 = 0;  // twice the chi index; used only when tag == ChiDiff

    bool operator==(const BasisFn& other) const noexcept {
        return tag == other.tag && (tag != Basis::ChiDiff || chi_j2 == other.chi_j2);
    }
};

/// chi_j(phi) = sin((6j-6)phi)/(6j-6) - 2 sin(6j phi)/(6j) + sin((6j+6)phi)/(6j+6)
/// for half-integer j = j2/2 >= 0, with the exact limit value phi substituted
/// for sin(m phi)/m whenever a multiplier m vanishes (j = 0 and j = 1).
/// Throws std::domain_error for j2 < 0.
double chi(int j2, double phi);

/// phi(R): 0 for R <= 1/2, arccos(1/sqrt(6R-2)) in [0, pi/3] for 1/2 <= R <= 1.
double phi_angle(double R);

/// Evaluate a basis factor at purity R with r = sqrt(R - 1/p) precomputed by
/// the caller. Arguments of arccos/sqrt are clamped into their valid range
/// when within 1e-12 (floating-point drift at breakpoints); a larger
/// excursion means the term was evaluated off its validity interval and
/// raises std::logic_error.
double eval_basis(const BasisFn& fn, double R, double r);

/// Stable string tags used in JSON serialization.
const char* basis_name(Basis b);
Basis basis_from_name(const std::string& name);

} // namespace purity
