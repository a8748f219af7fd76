#include "purity/closed_form.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

#include "purity/exact_moments.hpp"

namespace purity {

namespace {

const double kSqrt3 = std::sqrt(3.0);
constexpr double kPi = std::numbers::pi;

mpz_class pow_ui(unsigned long base, unsigned long exp) {
    mpz_class result;
    mpz_ui_pow_ui(result.get_mpz_t(), base, exp);
    return result;
}

} // namespace

PiecewisePdf pdf_2xq(int q) {
    if (q < 2) throw std::domain_error("pdf_2xq: q must be >= 2, got " + std::to_string(q));
    const BipartiteDims dims(2, q);

    // Prefactor (2q-1)! / (2^{q-1} (q-1)! (q-2)!), kept exact until the final
    // irrational sqrt(3) division.
    mpz_class den = factorial(static_cast<unsigned>(q - 1));
    den *= factorial(static_cast<unsigned>(q - 2));
    den *= pow_ui(2, static_cast<unsigned>(q - 1));
    Rational prefactor(factorial(static_cast<unsigned>(2 * q - 1)), den);
    prefactor.canonicalize();

    // (1-R)^{q-2} expanded in monomials of R; sqrt(2R-1) = sqrt(6R-3)/sqrt(3).
    std::vector<Term> terms;
    for (int i = 0; i <= q - 2; ++i) {
        Rational c = prefactor * binomial(static_cast<unsigned>(q - 2), static_cast<unsigned>(i));
        double coeff = to_double(c) / kSqrt3;
        if (i % 2 == 1) coeff = -coeff;
        terms.push_back(Term{coeff, i, RadialVar::R, BasisFn{Basis::Sqrt6RMinus3}});
    }
    return PiecewisePdf(dims, {0.5, 1.0}, {std::move(terms)}, "2xq-closed-form");
}

PiecewisePdf pdf_3x3() {
    const BipartiteDims dims(3, 3);
    const double a = 70.0 * kSqrt3;

    // [1/3, 1/2]: 2 pi (R-1/3)^3 = 2 pi r^6.
    std::vector<Term> piece1{
        Term{a * 2.0 * kPi, 6, RadialVar::r, BasisFn{Basis::One}},
    };
    // [1/2, 1]: 6 r^6 (pi/3 - arccos(1/sqrt(6R-2))) + (R-1)(R-5/9) sqrt(6R-3).
    std::vector<Term> piece2{
        Term{a * 2.0 * kPi, 6, RadialVar::r, BasisFn{Basis::One}},
        Term{-a * 6.0, 6, RadialVar::r, BasisFn{Basis::ArccosInvSqrt6RMinus2}},
        Term{a * 5.0 / 9.0, 0, RadialVar::R, BasisFn{Basis::Sqrt6RMinus3}},
        Term{-a * 14.0 / 9.0, 1, RadialVar::R, BasisFn{Basis::Sqrt6RMinus3}},
        Term{a, 2, RadialVar::R, BasisFn{Basis::Sqrt6RMinus3}},
    };
    return PiecewisePdf(dims, {1.0 / 3.0, 0.5, 1.0}, {std::move(piece1), std::move(piece2)},
                        "3x3-closed-form");
}

PiecewisePdf pdf_3xq(int q) {
    if (q < 3) throw std::domain_error("pdf_3xq: q must be >= 3, got " + std::to_string(q));
    // The chi-basis groups carry coefficients that grow combinatorially with
    // d and cancel against each other at evaluation time; past q = 12 the
    // double-precision density value is no better than ~1e-4 absolute.
    if (q > 12)
        throw std::domain_error("pdf_3xq: q=" + std::to_string(q) +
                                " exceeds double-precision evaluation fidelity (supported q <= 12)");
    const BipartiteDims dims(3, q);
    const int d = q - 3;

    // Prefactor (3q-1)! / ((q-1)!(q-2)!(q-3)!), exact.
    Rational prefactor(factorial(static_cast<unsigned>(3 * q - 1)),
                       factorial(static_cast<unsigned>(q - 1)) *
                           factorial(static_cast<unsigned>(q - 2)) *
                           factorial(static_cast<unsigned>(q - 3)));
    prefactor.canonicalize();

    // Several (k, i) pairs land on the same monomial power nu = 3(k+2)+2i and
    // chi index; merging them in doubles cancels catastrophically once d gets
    // large. Accumulate exactly instead, splitting even and odd k so that only
    // a final factor 1/sqrt(6) (odd k) stays irrational:
    //   coefficient(nu, j2) = [ A_even + A_odd / sqrt(6) ] / (16 sqrt(3)).
    std::map<std::pair<int, int>, std::pair<Rational, Rational>> groups;  // (nu, j2)
    for (int k = 0; k <= d; ++k) {
        const int kbar = k % 2;
        // (-1/(6 sqrt 6))^k = (-1)^k / (6^{3k/2}): rational part 6^{-floor(3k/2)}
        Rational outer = prefactor;
        outer *= binomial(static_cast<unsigned>(d), static_cast<unsigned>(k));
        outer /= Rational(pow_ui(6, static_cast<unsigned>(3 * k / 2)));
        if (k % 2 == 1) outer = -outer;
        for (int i = 0; i <= d - k; ++i) {
            // ((5-9R)/54)^{d-k} = sum_i C(d-k,i) 2^{d-k-i} (-9 r^2)^i / 54^{d-k}
            Rational exact = outer;
            exact *= binomial(static_cast<unsigned>(d - k), static_cast<unsigned>(i));
            exact *= pow_ui(2, static_cast<unsigned>(d - k - i));
            exact *= pow_ui(9, static_cast<unsigned>(i));
            exact /= Rational(pow_ui(54, static_cast<unsigned>(d - k)));
            if (i % 2 == 1) exact = -exact;
            const int nu = 3 * (k + 2) + 2 * i;

            for (int j = 0; j <= k / 2; ++j) {
                Rational weighted = exact;
                weighted *= binomial(static_cast<unsigned>(k), static_cast<unsigned>(k / 2 - j));
                if (j == 0 && kbar == 0) weighted /= 2;  // the (1 - delta_j delta_kbar / 2) weight
                const int j2 = 2 * j + kbar;
                auto& slot = groups[{nu, j2}];
                (kbar == 0 ? slot.first : slot.second) += weighted;
            }
        }
    }

    const double c_even = 1.0 / (16.0 * kSqrt3);
    const double c_odd = c_even / std::sqrt(6.0);
    std::vector<Term> piece1;
    std::vector<Term> piece2;
    for (const auto& [key, parts] : groups) {
        const auto [nu, j2] = key;
        const double coeff = to_double(parts.first) * c_even + to_double(parts.second) * c_odd;
        piece2.push_back(Term{coeff, nu, RadialVar::r, BasisFn{Basis::ChiDiff, j2}});
        // On [1/3, 1/2] the angle vanishes, so the chi difference is the
        // constant -chi_{j2/2}(pi/3), nonzero only at j2 = 0 and 2.
        if (j2 == 0)
            piece1.push_back(Term{coeff * 2.0 * kPi / 3.0, nu, RadialVar::r, BasisFn{Basis::One}});
        else if (j2 == 2)
            piece1.push_back(Term{-coeff * kPi / 3.0, nu, RadialVar::r, BasisFn{Basis::One}});
    }
    return PiecewisePdf(dims, {1.0 / 3.0, 0.5, 1.0}, {std::move(piece1), std::move(piece2)},
                        "3xq-closed-form");
}

PiecewisePdf pdf_4x4() {
    const BipartiteDims dims(4, 4);

    // Q1(x) = c (1-x) (1657 + 277731 x - 2190321 x^2 + 6208416 x^3
    //                  - 7386066 x^4 + 2913408 x^5)
    // Q2(x) = c (-159241 + 2178306 x - 11709126 x^2 + 30254796 x^3
    //            - 34540506 x^4 + 4864860 x^5 + 14594580 x^6)
    // with c = 175/(1944 sqrt 3). Integer parts stay exact; the (1-x) factor
    // is expanded in integers so Q1(1) evaluates to exactly zero.
    const long q1_inner[6] = {1657, 277731, -2190321, 6208416, -7386066, 2913408};
    long q1[7];
    q1[0] = q1_inner[0];
    for (int i = 1; i <= 5; ++i) q1[i] = q1_inner[i] - q1_inner[i - 1];
    q1[6] = -q1_inner[5];
    const long q2[7] = {-159241, 2178306, -11709126, 30254796, -34540506, 4864860, 14594580};

    const double c = 175.0 / (1944.0 * kSqrt3);
    const double pi3 = kPi / 3.0;
    // (4R-1)^{13/2} = 2^13 r^13.
    const double cap1 = 1575.0 * kPi / 16.0 * 8192.0;  // = 806400 pi
    const double cap3 = 4725.0 / 16.0 * 8192.0;        // = 2419200

    std::vector<Term> piece1{Term{cap1, 13, RadialVar::r, BasisFn{Basis::One}}};

    std::vector<Term> piece2;
    for (int i = 0; i <= 6; ++i)
        piece2.push_back(Term{pi3 * c * q2[i], i, RadialVar::R, BasisFn{Basis::One}});
    piece2.push_back(Term{-cap1, 13, RadialVar::r, BasisFn{Basis::One}});

    std::vector<Term> piece3;
    for (int i = 0; i <= 6; ++i)
        piece3.push_back(Term{c * q1[i], i, RadialVar::R, BasisFn{Basis::Sqrt6RMinus3}});
    for (int i = 0; i <= 6; ++i) {
        piece3.push_back(Term{pi3 * c * q2[i], i, RadialVar::R, BasisFn{Basis::One}});
        piece3.push_back(Term{-c * q2[i], i, RadialVar::R, BasisFn{Basis::ArccosInvSqrt6RMinus2}});
    }
    piece3.push_back(Term{-cap3 * pi3, 13, RadialVar::r, BasisFn{Basis::One}});
    piece3.push_back(Term{cap3, 13, RadialVar::r, BasisFn{Basis::ArccosROver3RMinus1}});

    return PiecewisePdf(dims, {0.25, 1.0 / 3.0, 0.5, 1.0},
                        {std::move(piece1), std::move(piece2), std::move(piece3)},
                        "4x4-closed-form");
}

PiecewisePdf closed_form_pdf(const BipartiteDims& dims) {
    if (dims.p == 2) return pdf_2xq(dims.q);
    if (dims.p == 3) return dims.q == 3 ? pdf_3x3() : pdf_3xq(dims.q);
    if (dims.p == 4 && dims.q == 4) return pdf_4x4();
    throw std::domain_error("closed_form_pdf: no closed form for p=" + std::to_string(dims.p) +
                            ", q=" + std::to_string(dims.q) +
                            " (p=4, q>4 is served by the moment solver)");
}

bool has_closed_form(const BipartiteDims& dims) {
    return dims.p == 2 || dims.p == 3 || (dims.p == 4 && dims.q == 4);
}

} // namespace purity
