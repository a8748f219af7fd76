#include "purity/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

#include "purity/errors.hpp"

namespace purity {

namespace {

// 15-point Kronrod / 7-point Gauss pair (QUADPACK dqk15 constants).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, error;
    int depth;
};

Panel gk15(const std::function<double(double)>& f, double a, double b, int depth) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = kWgk[7] * fc;
    double gauss = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kXgk[i];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        kronrod += kWgk[i] * (f1 + f2);
        if (i % 2 == 1) gauss += kWg[(i - 1) / 2] * (f1 + f2);
    }
    return Panel{a, b, kronrod * half, std::abs(kronrod - gauss) * half, depth};
}

} // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, int max_depth, double noise_floor) {
    QuadratureResult result;
    if (a == b) return result;

    // Global adaptivity: keep splitting the panel with the largest error
    // estimate until the summed estimate meets the target. Endpoint
    // singularities then cost O(depth) panels instead of demanding that the
    // innermost panel alone meet a length-proportional allowance.
    const double target = abs_tol + noise_floor * std::abs(b - a);
    constexpr int kMaxPanels = 100000;

    const auto by_error = [](const Panel& lhs, const Panel& rhs) { return lhs.error < rhs.error; };
    std::priority_queue<Panel, std::vector<Panel>, decltype(by_error)> splittable(by_error);
    double settled_value = 0.0;   // panels at max depth or below the noise floor
    double settled_error = 0.0;
    double active_value = 0.0;    // panels still in the queue
    double active_error = 0.0;
    int settled_count = 0;

    const auto admit = [&](Panel panel) {
        if (panel.depth >= max_depth || panel.error <= noise_floor * (panel.b - panel.a)) {
            settled_value += panel.value;
            settled_error += panel.error;
            ++settled_count;
        } else {
            active_value += panel.value;
            active_error += panel.error;
            splittable.push(panel);
        }
    };

    admit(gk15(f, a, b, 0));
    while (settled_error + active_error > target && !splittable.empty() &&
           settled_count + static_cast<int>(splittable.size()) < kMaxPanels) {
        const Panel worst = splittable.top();
        splittable.pop();
        active_value -= worst.value;
        active_error -= worst.error;
        const double mid = 0.5 * (worst.a + worst.b);
        admit(gk15(f, worst.a, mid, worst.depth + 1));
        admit(gk15(f, mid, worst.b, worst.depth + 1));
    }

    result.value = settled_value + active_value;
    result.abs_error = settled_error + active_error;
    result.panels = settled_count + static_cast<int>(splittable.size());
    result.converged = result.abs_error <= target;
    return result;
}

double integrate_or_throw(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, int max_depth, double noise_floor) {
    const QuadratureResult result = integrate_adaptive(f, a, b, abs_tol, max_depth, noise_floor);
    if (!result.converged)
        throw NumericalError("adaptive quadrature did not converge on [" + std::to_string(a) +
                             ", " + std::to_string(b) + "]: achieved error " +
                             std::to_string(result.abs_error) + " > tolerance " +
                             std::to_string(abs_tol) + " (" + std::to_string(result.panels) +
                             " panels)");
    return result.value;
}

double integrate_piece(const PiecewisePdf& pdf, int piece, int n, double abs_tol) {
    const Piece& pc = pdf.pieces().at(piece);
    const double lo = pc.lo;
    const double hi = pc.hi;
    const double mid = 0.5 * (lo + hi);
    const double noise = pdf.noise_scale(piece);

    const auto weighted = [&](double x) { return (n == 0 ? 1.0 : std::pow(x, n)) * pdf(x); };

    // u = sqrt(x - lo) on the left half and u = sqrt(hi - x) on the right
    // half turn the square-root edge behavior of the densities into smooth
    // integrands (the interior is analytic, so the substitution is harmless
    // where no singularity exists).
    const auto left = [&](double u) { return 2.0 * u * weighted(lo + u * u); };
    const auto right = [&](double u) { return 2.0 * u * weighted(hi - u * u); };

    const double value_left =
        integrate_or_throw(left, 0.0, std::sqrt(mid - lo), 0.5 * abs_tol, 48, noise);
    const double value_right =
        integrate_or_throw(right, 0.0, std::sqrt(hi - mid), 0.5 * abs_tol, 48, noise);
    return value_left + value_right;
}

double pdf_moment(const PiecewisePdf& pdf, int n, double abs_tol) {
    double total = 0.0;
    for (int i = 0; i < static_cast<int>(pdf.pieces().size()); ++i)
        total += integrate_piece(pdf, i, n, abs_tol);
    return total;
}

double pdf_norm(const PiecewisePdf& pdf, double abs_tol) { return pdf_moment(pdf, 0, abs_tol); }

double cdf(const PiecewisePdf& pdf, double x, double abs_tol) {
    if (x <= pdf.support_lo()) return 0.0;
    if (x >= pdf.support_hi()) return 1.0;
    double total = 0.0;
    for (int i = 0; i < static_cast<int>(pdf.pieces().size()); ++i) {
        const Piece& pc = pdf.pieces()[i];
        if (x >= pc.hi) {
            total += integrate_piece(pdf, i, 0, abs_tol);
            continue;
        }
        // Partial piece [lo, x]: substitute at the lower edge only.
        const auto left = [&](double u) { return 2.0 * u * pdf(pc.lo + u * u); };
        total += integrate_or_throw(left, 0.0, std::sqrt(x - pc.lo), abs_tol, 48,
                                    pdf.noise_scale(i));
        break;
    }
    return std::clamp(total, 0.0, 1.0);
}

CdfWalker::CdfWalker(const PiecewisePdf& pdf, double per_step_tol)
    : pdf_(pdf), tol_(per_step_tol), pos_(pdf.support_lo()), last_query_(-1e300) {}

double CdfWalker::integrate_within_piece(int piece, double a, double b) {
    if (a >= b) return 0.0;
    const Piece& pc = pdf_.pieces()[piece];
    const double noise = pdf_.noise_scale(piece);
    if (a == pc.lo && b == pc.hi) return integrate_piece(pdf_, piece, 0, tol_);
    if (a == pc.lo) {
        const auto left = [&](double u) { return 2.0 * u * pdf_(pc.lo + u * u); };
        return integrate_or_throw(left, 0.0, std::sqrt(b - pc.lo), tol_, 48, noise);
    }
    if (b == pc.hi) {
        const auto right = [&](double u) { return 2.0 * u * pdf_(pc.hi - u * u); };
        return integrate_or_throw(right, 0.0, std::sqrt(pc.hi - a), tol_, 48, noise);
    }
    return integrate_or_throw([&](double x) { return pdf_(x); }, a, b, tol_, 48, noise);
}

double CdfWalker::advance(double x) {
    if (x < last_query_)
        throw std::invalid_argument("CdfWalker::advance: queries must be nondecreasing");
    last_query_ = x;
    if (x <= pdf_.support_lo()) return 0.0;
    if (x >= pdf_.support_hi()) {
        // Flush the remainder so later support-interior queries stay exact.
        x = pdf_.support_hi();
    }
    const auto& pieces = pdf_.pieces();
    while (x > pieces[piece_].hi) {
        acc_ += integrate_within_piece(piece_, pos_, pieces[piece_].hi);
        ++piece_;  // stays in range: x was clamped to the upper support end
        pos_ = pieces[piece_].lo;
    }
    if (x > pos_) {
        acc_ += integrate_within_piece(piece_, pos_, x);
        pos_ = x;
    }
    returned_ = std::max(returned_, std::clamp(acc_, 0.0, 1.0));
    return returned_;
}

} // namespace purity
