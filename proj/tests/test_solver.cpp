#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "purity/errors.hpp"
#include "purity/solver.hpp"

using namespace purity;

namespace {

double rel_err_vs(const BigFloat& value, const BigFloat& reference) {
    return static_cast<BigFloat>(abs(value - reference) / abs(reference)).convert_to<double>();
}

} // namespace

TEST_CASE("precision guard round trip") {
    const unsigned before = BigFloat::default_precision();
    {
        PrecisionGuard guard(90);
        CHECK(BigFloat::default_precision() == 90);
        {
            PrecisionGuard inner(40);
            CHECK(BigFloat::default_precision() == 40);
        }
        CHECK(BigFloat::default_precision() == 90);
    }
    CHECK(BigFloat::default_precision() == before);
}

TEST_CASE("segment basis admissibility") {
    CHECK(segment_bases(4).size() == 1);
    CHECK(segment_bases(3).size() == 1);
    CHECK(segment_bases(2).size() == 4);
    CHECK_THROWS_AS(segment_bases(1), std::domain_error);

    PrecisionGuard guard(60);
    CHECK_THROWS_AS(basis_integral(0, BasisFn{Basis::AtanSqrt8r2Over4r2Minus1}, 4, 0),
                    std::domain_error);
    CHECK_THROWS_AS(basis_integral(-1, BasisFn{Basis::One}, 2, 0), std::domain_error);
}

TEST_CASE("basis integrals reproduce elementary antiderivatives") {
    PrecisionGuard guard(60);
    // int_{1/2}^{sqrt(3)/2} 2r dr = 3/4 - 1/4 = 1/2
    CHECK(rel_err_vs(basis_integral(0, BasisFn{Basis::One}, 2, 0), BigFloat(1) / 2) <= 1e-50);
    // int 2r sqrt(4r^2-1) dr = (4r^2-1)^{3/2}/6 -> sqrt(2)/3 on segment 2
    CHECK(rel_err_vs(basis_integral(0, BasisFn{Basis::Sqrt4r2Minus1}, 2, 0),
                     BigFloat(sqrt(BigFloat(2)) / 3)) <= 1e-50);
    // int_0^{1/sqrt(12)} 2r dr = 1/12
    CHECK(rel_err_vs(basis_integral(0, BasisFn{Basis::One}, 4, 0), BigFloat(1) / 12) <= 1e-50);
    // against doubles too
    CHECK(basis_integral(0, BasisFn{Basis::Sqrt4r2Minus1}, 2, 0).convert_to<double>() ==
          doctest::Approx(0.47140452079103168).epsilon(1e-15));
}

TEST_CASE("moment weights fold through the cached table") {
    PrecisionGuard guard(60);
    // direct weighted integral vs the binomial expansion over the table
    const BasisIntegralTable table(3 + 2 * 2, 60);
    for (int segment_k : {4, 3}) {
        const BigFloat direct = basis_integral(3, BasisFn{Basis::One}, segment_k, 2);
        // (r^2 + 1/4)^2 = r^4 + r^2/2 + 1/16
        const BigFloat via_table = table.get(segment_k, BasisFn{Basis::One}, 7) +
                                   table.get(segment_k, BasisFn{Basis::One}, 5) / 2 +
                                   table.get(segment_k, BasisFn{Basis::One}, 3) / 16;
        CHECK(rel_err_vs(direct, via_table) <= 1e-50);
    }
}

TEST_CASE("system shape and right-hand side") {
    PrecisionGuard guard(45);
    const BasisIntegralTable table(13 + 2 * (84 - 1), 45);
    const MomentSystem system = assemble_system(0, table);
    CHECK(system.unknowns.size() == 84);  // 6 (14 + 4 d), d = 0
    CHECK(system.matrix.size() == 84);
    CHECK(system.matrix[0].size() == 84);
    CHECK(system.rhs[0] == 1);  // zeroth moment
    // layout: segment k=4 polynomial first, then k=3, then the four on k=2
    CHECK(system.unknowns[0].segment_k == 4);
    CHECK(system.unknowns[14].segment_k == 3);
    CHECK(system.unknowns[28].segment_k == 2);
    CHECK(system.unknowns[83].nu == 13);
}

TEST_CASE("full-pivot solve on a known system") {
    PrecisionGuard guard(60);
    // 3x3 with exact solution (1, -2, 3)
    std::vector<std::vector<BigFloat>> m = {
        {BigFloat(2), BigFloat(1), BigFloat(-1)},
        {BigFloat(-3), BigFloat(-1), BigFloat(2)},
        {BigFloat(-2), BigFloat(1), BigFloat(2)},
    };
    std::vector<BigFloat> b = {BigFloat(2) * 1 + 1 * (-2) + (-1) * 3,
                               BigFloat(-3) * 1 + (-1) * (-2) + 2 * 3,
                               BigFloat(-2) * 1 + 1 * (-2) + 2 * 3};
    LinearSolveInfo info;
    const auto x = solve_full_pivot(m, b, info);
    CHECK(rel_err_vs(x[0], BigFloat(1)) <= 1e-55);
    CHECK(rel_err_vs(x[1], BigFloat(-2)) <= 1e-55);
    CHECK(rel_err_vs(x[2], BigFloat(3)) <= 1e-55);
    CHECK(info.cond_estimate >= 1);

    // singular matrix reports the failure
    std::vector<std::vector<BigFloat>> singular = {
        {BigFloat(1), BigFloat(2)},
        {BigFloat(2), BigFloat(4)},
    };
    std::vector<BigFloat> rhs = {BigFloat(1), BigFloat(2)};
    LinearSolveInfo info2;
    CHECK_THROWS_AS(solve_full_pivot(singular, rhs, info2), NumericalError);
}

TEST_CASE("default solver precision floor") {
    CHECK(default_solver_digits(0) >= 60);
    CHECK(default_solver_digits(2) >= default_solver_digits(0));
}

TEST_CASE("solver rejects q < 4") {
    CHECK_THROWS_AS(solve_4xq(3), std::domain_error);
}
