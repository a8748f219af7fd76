#pragma once

#include <functional>
#include <vector>

#include "purity/piecewise_pdf.hpp"

namespace purity {

struct QuadratureResult {
    double value = 0.0;
    double abs_error = 0.0;  // accumulated error estimate
    bool converged = true;
    int panels = 0;
};

/// Adaptive Gauss-Kronrod 15(7) bisection on [a, b] with an absolute
/// tolerance target. Does not throw; inspect `converged`.
///
/// noise_floor is the integrand's absolute evaluation-noise level per unit
/// length: panels whose error estimate sits at that floor are accepted as
/// converged, since no amount of subdivision can better the integrand's own
/// accuracy.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, int max_depth = 48,
                                    double noise_floor = 0.0);

/// Same, but throws NumericalError with the achieved error on non-convergence.
double integrate_or_throw(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, int max_depth = 48, double noise_floor = 0.0);

/// Integral of x^n * pdf(x) over one piece, split-substituted at both piece
/// edges (u = sqrt(x - lo) / sqrt(hi - x)) so square-root endpoint behavior
/// integrates as a smooth function.
double integrate_piece(const PiecewisePdf& pdf, int piece, int n, double abs_tol);

/// Moment of order n of the density in its own frame variable
/// (n = 0: the normalization integral). Tolerance is per piece.
double pdf_moment(const PiecewisePdf& pdf, int n = 0, double abs_tol = 1e-12);

/// Normalization integral over the support.
double pdf_norm(const PiecewisePdf& pdf, double abs_tol = 1e-12);

/// Cumulative distribution at x: adaptive quadrature from the lower support
/// end, clamped to [0, 1].
double cdf(const PiecewisePdf& pdf, double x, double abs_tol = 1e-12);

/// Incremental CDF evaluation for ascending query points; one pass over a
/// sorted sample costs one small quadrature per gap instead of one full
/// integral per point.
class CdfWalker {
public:
    explicit CdfWalker(const PiecewisePdf& pdf, double per_step_tol = 1e-14);

    /// F(x). Queries must be nondecreasing across calls. Returned values are
    /// nondecreasing and clamped to [0, 1]; the true density is nonnegative,
    /// so any numerical dip is noise and gets flattened.
    double advance(double x);

private:
    const PiecewisePdf& pdf_;
    double tol_;
    int piece_ = 0;
    double pos_;
    double acc_ = 0.0;
    double returned_ = 0.0;
    double last_query_;

    double integrate_within_piece(int piece, double a, double b);
};

} // namespace purity
