#pragma once

#include <string>
#include <vector>

#include "purity/basis.hpp"
#include "purity/dims.hpp"

namespace purity {

/// Which variable the monomial factor of a term is a power of.
enum class RadialVar {
    R,  // the purity itself
    r,  // r = sqrt(R - 1/p)
};

/// Variable a density is expressed in.
enum class Frame {
    Purity,         // R on [1/p, 1]
    LinearEntropy,  // S_L on [0, 1]
};

/// One additive term of a piece: coeff * var^nu * basis(R).
struct Term {
    double coeff = 0.0;
    int nu = 0;
    RadialVar var = RadialVar::R;
    BasisFn basis{};
};

struct Piece {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<Term> terms;
};

/// An exact piecewise density: contiguous intervals covering the support,
/// each carrying a list of coefficient * monomial * basis-function terms.
///
/// Terms are always written in the purity language (their basis functions
/// take R); a density in the linear-entropy frame evaluates through the
/// substitution R = 1 - (p-1)/p * S_L with the constant Jacobian folded in.
///
/// Evaluation convention: a breakpoint belongs to the piece on its right,
/// and the final piece is closed at the upper support end. Both sides agree
/// at interior breakpoints (the densities are continuous), so the convention
/// is observationally irrelevant but fixed for determinism.
///
/// Immutable after construction; safe for concurrent evaluation.
class PiecewisePdf {
public:
    /// breakpoints has size pieces+1 and must be strictly increasing; in the
    /// purity frame it must span [1/p, 1], in the entropy frame [0, 1].
    /// extra_noise (optional, one entry per piece) raises the per-piece
    /// evaluation-noise floor, e.g. for coefficients that were rounded from
    /// a higher-precision solve.
    PiecewisePdf(BipartiteDims dims, std::vector<double> breakpoints,
                 std::vector<std::vector<Term>> piece_terms, std::string formula,
                 Frame frame = Frame::Purity, std::vector<double> extra_noise = {});

    const BipartiteDims& dims() const noexcept { return dims_; }
    Frame frame() const noexcept { return frame_; }
    const std::string& formula() const noexcept { return formula_; }
    const std::vector<Piece>& pieces() const noexcept { return pieces_; }

    double support_lo() const noexcept { return pieces_.front().lo; }
    double support_hi() const noexcept { return pieces_.back().hi; }

    /// Density at x (in the frame variable); 0 outside the support.
    double operator()(double x) const;

    /// Index of the piece containing x, or -1 outside the support.
    int piece_index(double x) const noexcept;

    /// Absolute evaluation-noise estimate for a piece: the density is a sum
    /// of basis-function groups whose individual magnitudes can exceed the
    /// summed value by orders of magnitude (heavy cancellation in the p = 4
    /// branch on [1/2, 1]), so evaluations carry ~eps * max-group-magnitude
    /// of irreducible absolute noise. Quadrature uses this as its honest
    /// accuracy floor.
    double noise_scale(int piece) const { return noise_.at(piece); }

private:
    BipartiteDims dims_;
    Frame frame_;
    std::string formula_;
    std::vector<Piece> pieces_;

    // Terms regrouped per piece by (var, basis) with dense ascending
    // coefficient arrays, so each basis function is evaluated once and the
    // polynomial part goes through compensated Horner.
    struct TermGroup {
        RadialVar var;
        BasisFn basis;
        std::vector<double> coeffs;
    };
    std::vector<std::vector<TermGroup>> groups_;
    std::vector<double> noise_;

    void validate() const;
    void build_groups();
};

/// Free-function alias for the evaluation operator.
inline double eval_pdf(const PiecewisePdf& pdf, double x) { return pdf(x); }

/// Density of the linear entropy S_L = p/(p-1) (1-R):
/// S_L -> (p-1)/p * P(1 - (p-1)/p * S_L), supported by [0, 1].
PiecewisePdf to_linear_entropy(const PiecewisePdf& pdf);

/// Inverse transform back to the purity frame.
PiecewisePdf to_purity(const PiecewisePdf& pdf);

/// Evaluate the density on many points (OpenMP-parallel kernel).
std::vector<double> eval_grid(const PiecewisePdf& pdf, const std::vector<double>& xs);

/// Serial reference for eval_grid, kept for tests and benchmarks.
std::vector<double> eval_grid_serial(const PiecewisePdf& pdf, const std::vector<double>& xs);

/// n equally spaced points spanning [lo, hi] inclusive (n >= 2; n == 1 gives lo).
std::vector<double> linspace(double lo, double hi, int n);

} // namespace purity
