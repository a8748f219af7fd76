#include "purity/solver.hpp"

#include <json.hpp>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "purity/errors.hpp"

namespace purity {

namespace {

BigFloat const_pi() {
    BigFloat x;
    mpfr_const_pi(x.backend().data(), MPFR_RNDN);
    return x;
}

BigFloat eval_g(const BasisFn& g, const BigFloat& r) {
    switch (g.tag) {
        case Basis::One:
            return BigFloat(1);
        case Basis::AtanSqrt8r2Over4r2Minus1: {
            const BigFloat den = 4 * r * r - 1;
            if (den <= 0) return const_pi() / 2;
            return atan(sqrt(8 * r * r / den));
        }
        case Basis::AtanSqrt2Over12r2Minus3: {
            const BigFloat den = 12 * r * r - 3;
            if (den <= 0) return const_pi() / 2;
            return atan(sqrt(BigFloat(2) / den));
        }
        case Basis::Sqrt4r2Minus1: {
            const BigFloat arg = 4 * r * r - 1;
            if (arg <= 0) return BigFloat(0);
            return sqrt(arg);
        }
        default:
            throw std::domain_error("solver: basis function not admitted in the radial ansatz");
    }
}

// boost's default min_complement degenerates for the variable-precision mpfr
// type (itrunc of inf); pin how close nodes may approach the endpoints.
boost::math::quadrature::tanh_sinh<BigFloat> make_integrator(unsigned digits) {
    const BigFloat min_complement = pow(BigFloat(10), -3 * static_cast<int>(digits) - 20);
    return boost::math::quadrature::tanh_sinh<BigFloat>(15, min_complement);
}

struct SegmentBoundsBig {
    BigFloat r_lo, r_hi;
};

// Segment k covers r in [sqrt(1/k - 1/4), sqrt(1/(k-1) - 1/4)].
SegmentBoundsBig segment_bounds_big(int k) {
    if (k < 2 || k > 4) throw std::domain_error("solver: segment k must be 2, 3 or 4");
    SegmentBoundsBig b;
    b.r_lo = sqrt(BigFloat(1) / k - BigFloat(1) / 4);
    b.r_hi = sqrt(BigFloat(1) / (k - 1) - BigFloat(1) / 4);
    return b;
}

int segment_index(int k) { return 4 - k; }  // k = 4, 3, 2 -> 0, 1, 2

// tanh-sinh integration of f over [a, b] at the current working precision.
// Tolerance and the convergence check leave ~10 digits of headroom over the
// requested precision.
template <typename F>
BigFloat integrate_hp(boost::math::quadrature::tanh_sinh<BigFloat>& integrator, F&& f,
                      const BigFloat& a, const BigFloat& b, unsigned digits) {
    const BigFloat tol = pow(BigFloat(10), -static_cast<int>(digits) + 10);
    BigFloat error(0), l1(0);
    std::size_t levels = 0;
    const BigFloat value = integrator.integrate(std::forward<F>(f), a, b, tol, &error, &l1, &levels);
    const BigFloat scale = std::max(l1, BigFloat(1e-300));
    if (error > pow(BigFloat(10), -static_cast<int>(digits) + 15) * scale)
        throw NumericalError(
            "solver: tanh-sinh quadrature did not converge (achieved relative error ~" +
            static_cast<BigFloat>(error / scale).str(3, std::ios_base::scientific) + " at " +
            std::to_string(digits) + " digits, " + std::to_string(levels) + " levels)");
    return value;
}

int basis_slot(int segment_k, const BasisFn& g) {
    const std::vector<BasisFn> bases = segment_bases(segment_k);
    for (std::size_t i = 0; i < bases.size(); ++i)
        if (bases[i] == g) return static_cast<int>(i);
    throw std::domain_error(std::string("solver: basis ") + basis_name(g.tag) +
                            " not admitted on segment k=" + std::to_string(segment_k));
}

} // namespace

BigFloat bigfloat_from_mpz(const mpz_class& z) {
    BigFloat x;
    mpfr_set_z(x.backend().data(), z.get_mpz_t(), MPFR_RNDN);
    return x;
}

BigFloat bigfloat_from_rational(const Rational& value) {
    BigFloat x;
    mpfr_set_q(x.backend().data(), value.get_mpq_t(), MPFR_RNDN);
    return x;
}

PrecisionGuard::PrecisionGuard(unsigned digits) : saved_(BigFloat::default_precision()) {
    BigFloat::default_precision(digits);
}

PrecisionGuard::~PrecisionGuard() { BigFloat::default_precision(saved_); }

std::vector<BasisFn> segment_bases(int segment_k) {
    if (segment_k == 4 || segment_k == 3) return {BasisFn{Basis::One}};
    if (segment_k == 2)
        return {BasisFn{Basis::One}, BasisFn{Basis::AtanSqrt8r2Over4r2Minus1},
                BasisFn{Basis::AtanSqrt2Over12r2Minus3}, BasisFn{Basis::Sqrt4r2Minus1}};
    throw std::domain_error("segment_bases: segment k must be 2, 3 or 4");
}

BigFloat basis_integral(int nu, const BasisFn& g, int segment_k, int moment_n) {
    if (nu < 0) throw std::domain_error("basis_integral: nu must be >= 0");
    if (moment_n < 0) throw std::domain_error("basis_integral: moment_n must be >= 0");
    basis_slot(segment_k, g);  // validates admissibility
    const unsigned digits = BigFloat::default_precision();
    const SegmentBoundsBig bounds = segment_bounds_big(segment_k);
    const BigFloat quarter = BigFloat(1) / 4;
    auto integrator = make_integrator(digits);
    auto f = [&](const BigFloat& r) {
        BigFloat weight = pow(r * r + quarter, moment_n);
        return pow(r, nu) * weight * eval_g(g, r) * 2 * r;
    };
    return integrate_hp(integrator, f, bounds.r_lo, bounds.r_hi, digits);
}

BasisIntegralTable::BasisIntegralTable(int max_power, unsigned digits)
    : max_power_(max_power), digits_(digits) {
    PrecisionGuard guard(digits);

    struct Job {
        int seg_idx;
        int basis_idx;
        BasisFn g;
        int m;
    };
    std::vector<Job> jobs;
    tables_.resize(3);
    for (int k : {4, 3, 2}) {
        const int s = segment_index(k);
        const std::vector<BasisFn> bases = segment_bases(k);
        tables_[s].resize(bases.size());
        for (std::size_t b = 0; b < bases.size(); ++b) {
            tables_[s][b].assign(max_power + 1, BigFloat(0));
            for (int m = 0; m <= max_power; ++m)
                jobs.push_back(Job{s, static_cast<int>(b), bases[b], m});
        }
    }

#pragma omp parallel
    {
        PrecisionGuard thread_guard(digits);  // BigFloat default precision is thread-local
        auto integrator = make_integrator(digits);
        std::array<SegmentBoundsBig, 3> bounds = {segment_bounds_big(4), segment_bounds_big(3),
                                                  segment_bounds_big(2)};
#pragma omp for schedule(dynamic, 16)
        for (std::ptrdiff_t idx = 0; idx < static_cast<std::ptrdiff_t>(jobs.size()); ++idx) {
            const Job& job = jobs[idx];
            auto f = [&](const BigFloat& r) { return pow(r, job.m) * eval_g(job.g, r) * 2 * r; };
            tables_[job.seg_idx][job.basis_idx][job.m] =
                integrate_hp(integrator, f, bounds[job.seg_idx].r_lo, bounds[job.seg_idx].r_hi,
                             digits);
        }
    }
}

const BigFloat& BasisIntegralTable::get(int segment_k, const BasisFn& g, int m) const {
    if (m < 0 || m > max_power_)
        throw std::out_of_range("BasisIntegralTable: power " + std::to_string(m) +
                                " outside table range");
    return tables_[segment_index(segment_k)][basis_slot(segment_k, g)][m];
}

MomentSystem assemble_system(int d, const BasisIntegralTable& table) {
    if (d < 0) throw std::domain_error("assemble_system: d must be >= 0");
    const unsigned digits = table.digits();
    PrecisionGuard guard(digits);

    MomentSystem system;
    system.d = d;
    system.digits = digits;

    const int degree = 13 + 4 * d;
    for (int k : {4, 3, 2})
        for (const BasisFn& g : segment_bases(k))
            for (int nu = 0; nu <= degree; ++nu)
                system.unknowns.push_back(UnknownSpec{k, g, nu});
    const int size = static_cast<int>(system.unknowns.size());  // = 6 (14 + 4d)

    const BipartiteDims dims(4, 4 + d);
    system.rhs.resize(size);
#pragma omp parallel for schedule(dynamic)
    for (int n = 0; n < size; ++n) {
        PrecisionGuard thread_guard(digits);
        system.rhs[n] = bigfloat_from_rational(purity_moment(dims, n));
    }

    system.matrix.assign(size, std::vector<BigFloat>(size, BigFloat(0)));
#pragma omp parallel for schedule(dynamic)
    for (int n = 0; n < size; ++n) {
        PrecisionGuard thread_guard(digits);
        // weights of the binomial expansion (r^2 + 1/4)^n = sum_i w_i r^{2i},
        // w_i = C(n,i) 4^{i-n}, generated downward from w_n = 1
        std::vector<BigFloat> w(n + 1);
        w[n] = 1;
        for (int i = n; i > 0; --i) w[i - 1] = w[i] * i / (4 * (n - i + 1));
        auto& row = system.matrix[n];
        for (int col = 0; col < size; ++col) {
            const UnknownSpec& u = system.unknowns[col];
            BigFloat entry(0);
            for (int i = 0; i <= n; ++i) entry += w[i] * table.get(u.segment_k, u.basis, u.nu + 2 * i);
            row[col] = entry;
        }
    }
    return system;
}

std::vector<BigFloat> solve_full_pivot(std::vector<std::vector<BigFloat>> matrix,
                                       std::vector<BigFloat> rhs, LinearSolveInfo& info) {
    const int n = static_cast<int>(matrix.size());
    std::vector<int> col_of(n);
    for (int j = 0; j < n; ++j) col_of[j] = j;

    info.min_pivot = 0;
    info.max_pivot = 0;

    for (int step = 0; step < n; ++step) {
        int pi = step, pj = step;
        BigFloat best = abs(matrix[step][step]);
        for (int i = step; i < n; ++i)
            for (int j = step; j < n; ++j) {
                BigFloat cand = abs(matrix[i][j]);
                if (cand > best) {
                    best = cand;
                    pi = i;
                    pj = j;
                }
            }
        if (pi != step) {
            std::swap(matrix[pi], matrix[step]);
            std::swap(rhs[pi], rhs[step]);
        }
        if (pj != step) {
            for (int i = 0; i < n; ++i) std::swap(matrix[i][pj], matrix[i][step]);
            std::swap(col_of[pj], col_of[step]);
        }
        const BigFloat pivot = matrix[step][step];
        const BigFloat pivot_abs = abs(pivot);
        if (step == 0) {
            info.max_pivot = pivot_abs;
            info.min_pivot = pivot_abs;
        } else {
            info.max_pivot = std::max(info.max_pivot, pivot_abs);
            info.min_pivot = std::min(info.min_pivot, pivot_abs);
        }
        // The moment matrix is heavily graded (segments see R^n through very
        // different scales), so a wide pivot range is expected and full
        // pivoting keeps the elimination stable; only an exactly vanishing
        // pivot is fatal. Solution quality is certified afterwards by the
        // held-out moments.
        if (pivot_abs == 0) {
            info.cond_estimate = info.min_pivot > 0 ? BigFloat(info.max_pivot / info.min_pivot)
                                                    : BigFloat(0);
            throw NumericalError(
                "solve_full_pivot: exactly singular at step " + std::to_string(step) +
                " (pivot-ratio condition estimate " +
                info.cond_estimate.str(3, std::ios_base::scientific) + ", " +
                std::to_string(BigFloat::default_precision()) + " digits)");
        }
        for (int i = step + 1; i < n; ++i) {
            if (matrix[i][step] == 0) continue;
            const BigFloat factor = matrix[i][step] / pivot;
            matrix[i][step] = 0;
            for (int j = step + 1; j < n; ++j) matrix[i][j] -= factor * matrix[step][j];
            rhs[i] -= factor * rhs[step];
        }
    }
    info.cond_estimate = info.max_pivot / info.min_pivot;

    std::vector<BigFloat> y(n);
    for (int i = n - 1; i >= 0; --i) {
        BigFloat acc = rhs[i];
        for (int j = i + 1; j < n; ++j) acc -= matrix[i][j] * y[j];
        y[i] = acc / matrix[i][i];
    }
    std::vector<BigFloat> x(n);
    for (int j = 0; j < n; ++j) x[col_of[j]] = y[j];
    return x;
}

unsigned default_solver_digits(int d) {
    // The moment system is graded and numerically near rank-deficient; 80
    // digits puts the q = 4 reconstruction at the double-precision evaluation
    // noise floor, and each unit of d adds ~24 unknowns (rows) of further
    // Vandermonde-type conditioning growth.
    return 80 + 30 * static_cast<unsigned>(std::max(d, 0));
}

Solve4xqResult solve_4xq(int q, unsigned digits) {
    if (q < 4) throw std::domain_error("solve_4xq: q must be >= 4, got " + std::to_string(q));
    const int d = q - 4;
    if (digits == 0) digits = default_solver_digits(d);
    PrecisionGuard guard(digits);

    const int degree = 13 + 4 * d;
    const int size = 6 * (14 + 4 * d);
    constexpr int kHeldOut = 10;

    BasisIntegralTable table(degree + 2 * (size - 1 + kHeldOut), digits);
    MomentSystem system = assemble_system(d, table);

    // Equilibration: moment rows span hundreds of orders of magnitude, and
    // the columns (monomial power x segment) are graded as well. Scale rows
    // then columns by their max-abs entries; the column scales fold back into
    // the solution.
    std::vector<std::vector<BigFloat>> scaled = system.matrix;
    std::vector<BigFloat> scaled_rhs = system.rhs;
    for (int n = 0; n < size; ++n) {
        BigFloat max_abs(0);
        for (const BigFloat& v : scaled[n]) max_abs = std::max(max_abs, BigFloat(abs(v)));
        if (max_abs == 0)
            throw NumericalError("solve_4xq: empty moment row n=" + std::to_string(n));
        for (BigFloat& v : scaled[n]) v /= max_abs;
        scaled_rhs[n] /= max_abs;
    }
    std::vector<BigFloat> col_scale(size, BigFloat(1));
    for (int col = 0; col < size; ++col) {
        BigFloat max_abs(0);
        for (int n = 0; n < size; ++n) max_abs = std::max(max_abs, BigFloat(abs(scaled[n][col])));
        if (max_abs == 0)
            throw NumericalError("solve_4xq: empty column " + std::to_string(col));
        col_scale[col] = max_abs;
        for (int n = 0; n < size; ++n) scaled[n][col] /= max_abs;
    }

    LinearSolveInfo info;
    std::vector<BigFloat> x = solve_full_pivot(std::move(scaled), std::move(scaled_rhs), info);
    for (int col = 0; col < size; ++col) x[col] /= col_scale[col];

    Solve4xqResult result;
    result.q = q;
    result.d = d;
    result.digits = digits;
    result.unknowns = system.unknowns;
    result.coefficients = std::move(x);
    result.cond_estimate = info.cond_estimate;

    // Held-out verification: the kHeldOut moments after the fitted ones.
    const BipartiteDims dims(4, q);
    result.held_out_max_rel = 0.0;
    for (int extra = 0; extra < kHeldOut; ++extra) {
        const int n = size + extra;
        std::vector<BigFloat> w(n + 1);
        w[n] = 1;
        for (int i = n; i > 0; --i) w[i - 1] = w[i] * i / (4 * (n - i + 1));
        BigFloat lhs(0);
        for (int col = 0; col < size; ++col) {
            const UnknownSpec& u = result.unknowns[col];
            BigFloat entry(0);
            for (int i = 0; i <= n; ++i) entry += w[i] * table.get(u.segment_k, u.basis, u.nu + 2 * i);
            lhs += entry * result.coefficients[col];
        }
        HeldOutCheck check;
        check.n = n;
        check.exact = purity_moment(dims, n);
        const BigFloat exact_big = bigfloat_from_rational(check.exact);
        check.relative_residual = abs(lhs - exact_big) / exact_big;
        result.held_out_max_rel =
            std::max(result.held_out_max_rel, check.relative_residual.convert_to<double>());
        result.held_out.push_back(std::move(check));
    }

    // Native-precision verification of the reconstruction: normalization via
    // the n = 0 moment row, branch agreement at the breakpoints, and a
    // nonnegativity scan, all on the high-precision coefficients.
    {
        BigFloat norm(0);
        for (int col = 0; col < size; ++col)
            norm += system.matrix[0][col] * result.coefficients[col];
        result.norm_residual = abs(norm - 1);

        const auto value_at = [&](int segment_k, const BigFloat& R) -> BigFloat {
            const BigFloat r = sqrt(R - BigFloat(1) / 4);
            BigFloat total(0);
            for (const BasisFn& g : segment_bases(segment_k)) {
                // Horner over the contiguous coefficient run of (segment, g)
                BigFloat poly(0);
                for (int col = size - 1; col >= 0; --col) {
                    const UnknownSpec& u = result.unknowns[col];
                    if (u.segment_k != segment_k || !(u.basis == g)) continue;
                    poly = poly * r + result.coefficients[col];
                }
                total += poly * eval_g(g, r);
            }
            return total;
        };

        const BigFloat third = BigFloat(1) / 3;
        const BigFloat half = BigFloat(1) / 2;
        const auto rel_gap = [&](const BigFloat& a, const BigFloat& b) -> BigFloat {
            const BigFloat scale = std::max(BigFloat(1), BigFloat(std::max(abs(a), abs(b))));
            return BigFloat(abs(a - b) / scale);
        };
        result.breakpoint_mismatch = std::max(rel_gap(value_at(4, third), value_at(3, third)),
                                              rel_gap(value_at(3, half), value_at(2, half)));

        result.min_grid_value = BigFloat(1e300);
        for (int i = 0; i < 10000; ++i) {
            const BigFloat R = BigFloat(1) / 4 + BigFloat(3) / 4 * i / 9999;
            const int segment_k = R < third ? 4 : (R < half ? 3 : 2);
            result.min_grid_value = std::min(result.min_grid_value, value_at(segment_k, R));
        }
    }

    // Structural zeros: coefficients that vanish relative to their own
    // polynomial (the solve resolves them ~30 orders below the genuine ones).
    result.structural_zeros = 0;
    for (int k : {4, 3, 2}) {
        for (const BasisFn& g : segment_bases(k)) {
            BigFloat max_abs(0);
            for (int col = 0; col < size; ++col) {
                const UnknownSpec& u = result.unknowns[col];
                if (u.segment_k == k && u.basis == g)
                    max_abs = std::max(max_abs, BigFloat(abs(result.coefficients[col])));
            }
            const BigFloat threshold = max_abs * 1e-18;
            for (int col = 0; col < size; ++col) {
                const UnknownSpec& u = result.unknowns[col];
                if (u.segment_k == k && u.basis == g && abs(result.coefficients[col]) <= threshold)
                    ++result.structural_zeros;
            }
        }
    }
    return result;
}

PiecewisePdf Solve4xqResult::to_pdf() const {
    PrecisionGuard guard(digits);
    const int size = static_cast<int>(unknowns.size());

    // Per-polynomial structural-zero threshold (see solve_4xq).
    std::vector<bool> keep(size, true);
    for (int k : {4, 3, 2}) {
        for (const BasisFn& g : segment_bases(k)) {
            BigFloat max_abs(0);
            for (int col = 0; col < size; ++col)
                if (unknowns[col].segment_k == k && unknowns[col].basis == g)
                    max_abs = std::max(max_abs, BigFloat(abs(coefficients[col])));
            const BigFloat threshold = max_abs * 1e-18;
            for (int col = 0; col < size; ++col)
                if (unknowns[col].segment_k == k && unknowns[col].basis == g &&
                    abs(coefficients[col]) <= threshold)
                    keep[col] = false;
        }
    }

    std::vector<std::vector<Term>> pieces(3);
    std::vector<double> quantization_noise(3, 0.0);
    const double r_hi[3] = {0.28867513459481287, 0.5, 0.8660254037844386};
    for (int col = 0; col < size; ++col) {
        if (!keep[col]) continue;
        const UnknownSpec& u = unknowns[col];
        const int piece = 4 - u.segment_k;  // k = 4, 3, 2 -> piece 0, 1, 2
        const double c = coefficients[col].convert_to<double>();
        pieces[piece].push_back(Term{c, u.nu, RadialVar::r, u.basis});
        // rounding the high-precision coefficient to double perturbs the
        // function by up to ~eps |c| r^nu per term
        quantization_noise[piece] += std::abs(c) * std::pow(r_hi[piece], u.nu);
    }
    for (double& noise : quantization_noise) noise *= 4.0 * 2.220446049250313e-16;
    return PiecewisePdf(BipartiteDims(4, q), {0.25, 1.0 / 3.0, 0.5, 1.0}, std::move(pieces),
                        "4xq-moment-solver", Frame::Purity, std::move(quantization_noise));
}

PiecewisePdf solve_pdf_4xq(int q, unsigned digits) {
    Solve4xqResult result = solve_4xq(q, digits);
    if (result.held_out_max_rel > 1e-8)
        throw NumericalError(
            "solve_pdf_4xq: held-out moment verification failed (max relative residual " +
            std::to_string(result.held_out_max_rel) + " > 1e-8); raise the working precision");
    return result.to_pdf();
}

std::string solve_result_to_json(const Solve4xqResult& result) {
    PrecisionGuard guard(result.digits);
    nlohmann::ordered_json j;
    j["kind"] = "solve4xq";
    j["q"] = result.q;
    j["d"] = result.d;
    j["precision_digits"] = result.digits;
    j["cond_estimate"] = result.cond_estimate.str(3, std::ios_base::scientific);
    j["held_out_max_rel_residual"] = result.held_out_max_rel;
    j["structural_zeros"] = result.structural_zeros;
    j["norm_residual"] = result.norm_residual.str(3, std::ios_base::scientific);
    j["breakpoint_mismatch"] = result.breakpoint_mismatch.str(3, std::ios_base::scientific);
    j["min_grid_value"] = result.min_grid_value.str(3, std::ios_base::scientific);
    nlohmann::ordered_json held = nlohmann::ordered_json::array();
    for (const HeldOutCheck& check : result.held_out) {
        nlohmann::ordered_json h;
        h["n"] = check.n;
        h["exact"] = to_fraction_string(check.exact);
        h["relative_residual"] =
            check.relative_residual.str(3, std::ios_base::scientific);
        held.push_back(std::move(h));
    }
    j["held_out"] = std::move(held);
    nlohmann::ordered_json cols = nlohmann::ordered_json::array();
    for (std::size_t col = 0; col < result.unknowns.size(); ++col) {
        nlohmann::ordered_json c;
        c["segment_k"] = result.unknowns[col].segment_k;
        c["basis"] = basis_name(result.unknowns[col].basis.tag);
        c["nu"] = result.unknowns[col].nu;
        // digits + 4 guard digits so parsing at the same precision round-trips
        c["coefficient"] = result.coefficients[col].str(
            static_cast<std::streamsize>(result.digits) + 4, std::ios_base::scientific);
        cols.push_back(std::move(c));
    }
    j["coefficients"] = std::move(cols);
    return j.dump(2);
}

bool solve_result_from_json(const std::string& text, Solve4xqResult& result) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object() || j.value("kind", "") != "solve4xq") return false;
    Solve4xqResult loaded;
    loaded.q = j.at("q").get<int>();
    loaded.d = j.at("d").get<int>();
    loaded.digits = j.at("precision_digits").get<unsigned>();
    PrecisionGuard guard(loaded.digits);
    loaded.cond_estimate = BigFloat(j.at("cond_estimate").get<std::string>());
    loaded.held_out_max_rel = j.at("held_out_max_rel_residual").get<double>();
    loaded.structural_zeros = j.at("structural_zeros").get<int>();
    loaded.norm_residual = BigFloat(j.value("norm_residual", "0"));
    loaded.breakpoint_mismatch = BigFloat(j.value("breakpoint_mismatch", "0"));
    loaded.min_grid_value = BigFloat(j.value("min_grid_value", "0"));
    for (const auto& h : j.at("held_out")) {
        HeldOutCheck check;
        check.n = h.at("n").get<int>();
        check.exact = Rational(h.at("exact").get<std::string>());
        check.exact.canonicalize();
        check.relative_residual = BigFloat(h.at("relative_residual").get<std::string>());
        loaded.held_out.push_back(std::move(check));
    }
    for (const auto& c : j.at("coefficients")) {
        UnknownSpec u;
        u.segment_k = c.at("segment_k").get<int>();
        u.basis = BasisFn{basis_from_name(c.at("basis").get<std::string>())};
        u.nu = c.at("nu").get<int>();
        loaded.unknowns.push_back(u);
        loaded.coefficients.emplace_back(c.at("coefficient").get<std::string>());
    }
    if (loaded.unknowns.size() != static_cast<std::size_t>(6 * (14 + 4 * loaded.d))) return false;
    result = std::move(loaded);
    return true;
}

} // namespace purity
