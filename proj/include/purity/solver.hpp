#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <string>
#include <vector>

#include "purity/exact_moments.hpp"
#include "purity/piecewise_pdf.hpp"

namespace purity {

/// Dynamic-precision real (MPFR-backed). Precision is a thread-local default;
/// solver entry points and their parallel regions set it explicitly.
using BigFloat = boost::multiprecision::mpfr_float;

BigFloat bigfloat_from_mpz(const mpz_class& z);
BigFloat bigfloat_from_rational(const Rational& value);

/// RAII guard for the thread-local BigFloat working precision (decimal digits).
class PrecisionGuard {
public:
    explicit PrecisionGuard(unsigned digits);
    ~PrecisionGuard();

private:
    unsigned saved_;
};

/// The three radial segments of the p = 4 ansatz: segment k covers
/// r in [sqrt(1/k - 1/4), sqrt(1/(k-1) - 1/4)], i.e. R in [1/k, 1/(k-1)],
/// for k = 4, 3, 2 (k counts how many breakpoints lie at or above R).
struct SegmentGeometry {
    int k;
    double R_lo, R_hi;
};
inline constexpr SegmentGeometry kSegments[3] = {
    {4, 0.25, 1.0 / 3.0},
    {3, 1.0 / 3.0, 0.5},
    {2, 0.5, 1.0},
};

/// Basis functions admitted on a segment: plain polynomials inside the
/// sphere-only region (k = 4, 3); on k = 2 the two arctan forms and
/// sqrt(4r^2-1) join in.
std::vector<BasisFn> segment_bases(int segment_k);

/// Integral of r^nu * (r^2 + 1/4)^moment_n * g(r) * 2r dr over segment k
/// (the 2r is the Jacobian of R = r^2 + 1/4), evaluated by tanh-sinh
/// quadrature at the current working precision. Throws std::domain_error if
/// g is not admitted on the segment, NumericalError (with the achieved
/// precision) if the quadrature fails to converge.
BigFloat basis_integral(int nu, const BasisFn& g, int segment_k, int moment_n);

/// Cached one-dimensional integrals T[m] = int r^m g(r) 2r dr per
/// (segment, basis); moment weights fold in by binomial expansion of
/// (r^2 + 1/4)^n. Built once (OpenMP-parallel), read-only afterwards.
class BasisIntegralTable {
public:
    /// max_power: largest monomial power m required.
    BasisIntegralTable(int max_power, unsigned digits);

    const BigFloat& get(int segment_k, const BasisFn& g, int m) const;
    int max_power() const noexcept { return max_power_; }
    unsigned digits() const noexcept { return digits_; }

private:
    int max_power_;
    unsigned digits_;
    // tables_[segment_index][basis_index][m]
    std::vector<std::vector<std::vector<BigFloat>>> tables_;
};

/// One unknown of the moment system: polynomial coefficient of r^nu
/// multiplying basis g on a segment.
struct UnknownSpec {
    int segment_k;
    BasisFn basis;
    int nu;
};

struct MomentSystem {
    int d = 0;
    unsigned digits = 0;
    std::vector<UnknownSpec> unknowns;           // column layout
    std::vector<std::vector<BigFloat>> matrix;   // row-major, square
    std::vector<BigFloat> rhs;                   // exact <R^n> at working precision
};

/// Moment-matching system for p = 4, q = 4 + d: six polynomials of degree
/// 13+4d (one per segment for k = 4, 3; four on k = 2), one row per moment
/// n = 0 .. 6(14+4d)-1. Rows are later scaled by their max-abs entry.
MomentSystem assemble_system(int d, const BasisIntegralTable& table);

struct LinearSolveInfo {
    BigFloat cond_estimate;  // max/min pivot magnitude (full pivoting)
    BigFloat min_pivot;
    BigFloat max_pivot;
};

/// Gaussian elimination with full pivoting; rows must be pre-scaled.
/// Throws NumericalError (reporting the condition estimate) if a pivot
/// degenerates below 10^{3-digits} of the largest.
std::vector<BigFloat> solve_full_pivot(std::vector<std::vector<BigFloat>> matrix,
                                       std::vector<BigFloat> rhs, LinearSolveInfo& info);

struct HeldOutCheck {
    int n;
    Rational exact;
    BigFloat relative_residual;  // |quadrature-moment(solution) - exact| / exact
};

struct Solve4xqResult {
    int q = 4;
    int d = 0;
    unsigned digits = 0;
    std::vector<UnknownSpec> unknowns;
    std::vector<BigFloat> coefficients;     // aligned with unknowns
    BigFloat cond_estimate;
    std::vector<HeldOutCheck> held_out;     // the 10 moments after the fitted ones
    double held_out_max_rel = 0.0;
    int structural_zeros = 0;               // |c| <= 1e-18 * max|c| of its polynomial

    // Native-precision verification of the reconstruction itself (the double
    // projection below adds ~eps * max|coefficient| of quantization noise on
    // top, which dominates for d >= 1):
    BigFloat norm_residual;                 // |moment-0 of the solution - 1|
    BigFloat breakpoint_mismatch;           // max relative branch gap at R = 1/3, 1/2
    BigFloat min_grid_value;                // min over a 10^4-point R grid

    /// Piecewise density with coefficients rounded to double; coefficients
    /// below the structural-zero threshold are dropped so that solver noise
    /// cannot leak into evaluations near the support edges, and each piece
    /// carries the coefficient-quantization noise floor.
    PiecewisePdf to_pdf() const;
};

/// Default working precision for a given dimension gap: 80 digits at d = 0
/// (the precision at which the q = 4 reconstruction reaches the double
/// evaluation noise floor; the moment system is numerically near
/// rank-deficient, so headroom matters), plus 30 digits per unit of d.
unsigned default_solver_digits(int d);

/// Reconstruct P(R) for p = 4, q >= 4 by solving the moment-matching system
/// at the given precision (0 = default_solver_digits). Computes the 10
/// held-out moment residuals but does not enforce them.
Solve4xqResult solve_4xq(int q, unsigned digits = 0);

/// Convenience wrapper that enforces the held-out verification: throws
/// NumericalError if any held-out moment misses by more than 1e-8 relative.
PiecewisePdf solve_pdf_4xq(int q, unsigned digits = 0);

/// Cache round-trip (JSON, exact decimal strings at working precision).
/// Loading re-checks the (q, digits) key and returns false on mismatch.
std::string solve_result_to_json(const Solve4xqResult& result);
bool solve_result_from_json(const std::string& text, Solve4xqResult& result);

} // namespace purity
