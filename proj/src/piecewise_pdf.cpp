#include "purity/piecewise_pdf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "purity/numeric.hpp"

namespace purity {

PiecewisePdf::PiecewisePdf(BipartiteDims dims, std::vector<double> breakpoints,
                           std::vector<std::vector<Term>> piece_terms, std::string formula,
                           Frame frame, std::vector<double> extra_noise)
    : dims_(dims), frame_(frame), formula_(std::move(formula)) {
    if (breakpoints.size() < 2 || breakpoints.size() != piece_terms.size() + 1)
        throw std::invalid_argument("PiecewisePdf: need n+1 breakpoints for n pieces");
    if (!extra_noise.empty() && extra_noise.size() != piece_terms.size())
        throw std::invalid_argument("PiecewisePdf: extra_noise must have one entry per piece");
    pieces_.reserve(piece_terms.size());
    for (std::size_t i = 0; i < piece_terms.size(); ++i)
        pieces_.push_back(Piece{breakpoints[i], breakpoints[i + 1], std::move(piece_terms[i])});
    validate();
    build_groups();
    for (std::size_t i = 0; i < extra_noise.size(); ++i)
        noise_[i] = std::max(noise_[i], extra_noise[i]);
}

void PiecewisePdf::validate() const {
    for (const Piece& piece : pieces_) {
        if (!(piece.lo < piece.hi))
            throw std::invalid_argument("PiecewisePdf: breakpoints must be strictly increasing");
        for (const Term& term : piece.terms)
            if (!std::isfinite(term.coeff))
                throw std::domain_error(
                    "PiecewisePdf: non-finite term coefficient (dimensions too large for "
                    "double-precision coefficients)");
    }
    const double lo = pieces_.front().lo;
    const double hi = pieces_.back().hi;
    const double want_lo = frame_ == Frame::Purity ? dims_.support_lo() : 0.0;
    if (std::abs(lo - want_lo) > 1e-12 || std::abs(hi - 1.0) > 1e-12)
        throw std::invalid_argument("PiecewisePdf: pieces must span the support interval");
}

namespace {

double basis_magnitude_bound(Basis b) {
    switch (b) {
        case Basis::One: return 1.0;
        case Basis::Sqrt6RMinus3: return 1.8;                // sqrt(3) on [1/2, 1]
        case Basis::ArccosInvSqrt6RMinus2: return 1.1;       // <= pi/3
        case Basis::ArccosROver3RMinus1: return 1.1;         // <= pi/3
        case Basis::AtanSqrt8r2Over4r2Minus1: return 1.6;    // <= pi/2
        case Basis::AtanSqrt2Over12r2Minus3: return 1.6;     // <= pi/2
        case Basis::Sqrt4r2Minus1: return 1.5;               // sqrt(2) on the 4xq support
        case Basis::ChiDiff: return 3.0;
    }
    return 3.0;
}

} // namespace

void PiecewisePdf::build_groups() {
    groups_.resize(pieces_.size());
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        for (const Term& term : pieces_[i].terms) {
            if (term.nu < 0)
                throw std::invalid_argument("PiecewisePdf: negative monomial power");
            auto& groups = groups_[i];
            auto it = std::find_if(groups.begin(), groups.end(), [&](const TermGroup& g) {
                return g.var == term.var && g.basis == term.basis;
            });
            if (it == groups.end()) {
                groups.push_back(TermGroup{term.var, term.basis, {}});
                it = std::prev(groups.end());
            }
            if (static_cast<int>(it->coeffs.size()) <= term.nu) it->coeffs.resize(term.nu + 1, 0.0);
            it->coeffs[term.nu] += term.coeff;
        }
    }

    // Noise scale: eps times the summed magnitude of the basis groups that
    // cancel against each other, sampled over the piece.
    noise_.assign(pieces_.size(), 0.0);
    const double slope = static_cast<double>(dims_.p - 1) / dims_.p;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        double magnitude = 0.0;
        for (const TermGroup& group : groups_[i]) {
            double poly_max = 0.0;
            for (double frac : {0.0, 0.5, 1.0}) {
                const double x = pieces_[i].lo + frac * (pieces_[i].hi - pieces_[i].lo);
                const double R = frame_ == Frame::Purity ? x : 1.0 - slope * x;
                const double var = group.var == RadialVar::R
                                       ? R
                                       : std::sqrt(std::max(R - dims_.support_lo(), 0.0));
                poly_max = std::max(poly_max, std::abs(compensated_horner(group.coeffs, var)));
            }
            magnitude += basis_magnitude_bound(group.basis.tag) * poly_max;
        }
        noise_[i] = 4.0 * 2.220446049250313e-16 * magnitude;
    }
}

int PiecewisePdf::piece_index(double x) const noexcept {
    if (x < pieces_.front().lo || x > pieces_.back().hi) return -1;
    for (std::size_t i = 0; i < pieces_.size(); ++i)
        if (x < pieces_[i].hi) return static_cast<int>(i);
    return static_cast<int>(pieces_.size()) - 1;  // x == upper support end
}

double PiecewisePdf::operator()(double x) const {
    const int idx = piece_index(x);
    if (idx < 0) return 0.0;

    double R = x;
    double jacobian = 1.0;
    if (frame_ == Frame::LinearEntropy) {
        const double slope = static_cast<double>(dims_.p - 1) / dims_.p;
        R = 1.0 - slope * x;
        jacobian = slope;
    }
    const double r = std::sqrt(std::max(R - dims_.support_lo(), 0.0));

    double sum = 0.0;
    for (const TermGroup& group : groups_[idx]) {
        const double var = group.var == RadialVar::R ? R : r;
        sum += compensated_horner(group.coeffs, var) * eval_basis(group.basis, R, r);
    }
    const double value = jacobian * sum;
    if (!std::isfinite(value))
        throw std::logic_error("PiecewisePdf: non-finite evaluation at x=" + std::to_string(x) +
                               " (basis singularity inside a piece)");
    return value;
}

PiecewisePdf to_linear_entropy(const PiecewisePdf& pdf) {
    if (pdf.frame() == Frame::LinearEntropy) return pdf;
    const BipartiteDims dims = pdf.dims();
    const double inv_slope = static_cast<double>(dims.p) / (dims.p - 1);
    const auto& pieces = pdf.pieces();
    const std::size_t n = pieces.size();

    // S_L = p/(p-1) (1 - R) reverses orientation: last purity piece first.
    std::vector<double> breakpoints;
    std::vector<std::vector<Term>> terms;
    std::vector<double> noise;
    breakpoints.reserve(n + 1);
    breakpoints.push_back(inv_slope * (1.0 - pieces[n - 1].hi));  // = 0 up to rounding
    for (std::size_t i = n; i-- > 0;) {
        breakpoints.push_back(inv_slope * (1.0 - pieces[i].lo));
        terms.push_back(pieces[i].terms);
        noise.push_back(pdf.noise_scale(static_cast<int>(i)));
    }
    breakpoints.front() = 0.0;
    breakpoints.back() = 1.0;
    return PiecewisePdf(dims, std::move(breakpoints), std::move(terms), pdf.formula(),
                        Frame::LinearEntropy, std::move(noise));
}

PiecewisePdf to_purity(const PiecewisePdf& pdf) {
    if (pdf.frame() == Frame::Purity) return pdf;
    const BipartiteDims dims = pdf.dims();
    const double slope = static_cast<double>(dims.p - 1) / dims.p;
    const auto& pieces = pdf.pieces();
    const std::size_t n = pieces.size();

    std::vector<double> breakpoints;
    std::vector<std::vector<Term>> terms;
    std::vector<double> noise;
    breakpoints.reserve(n + 1);
    breakpoints.push_back(1.0 - slope * pieces[n - 1].hi);
    for (std::size_t i = n; i-- > 0;) {
        breakpoints.push_back(1.0 - slope * pieces[i].lo);
        terms.push_back(pieces[i].terms);
        noise.push_back(pdf.noise_scale(static_cast<int>(i)));
    }
    breakpoints.front() = dims.support_lo();
    breakpoints.back() = 1.0;
    return PiecewisePdf(dims, std::move(breakpoints), std::move(terms), pdf.formula(),
                        Frame::Purity, std::move(noise));
}

std::vector<double> eval_grid(const PiecewisePdf& pdf, const std::vector<double>& xs) {
    std::vector<double> out(xs.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(xs.size()); ++i)
        out[i] = pdf(xs[i]);
    return out;
}

std::vector<double> eval_grid_serial(const PiecewisePdf& pdf, const std::vector<double>& xs) {
    std::vector<double> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = pdf(xs[i]);
    return out;
}

std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 1) throw std::invalid_argument("linspace: need at least one point");
    std::vector<double> xs(n);
    if (n == 1) {
        xs[0] = lo;
        return xs;
    }
    for (int i = 0; i < n; ++i) xs[i] = lo + (hi - lo) * i / (n - 1);
    xs.back() = hi;
    return xs;
}

} // namespace purity
