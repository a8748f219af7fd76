#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "purity/closed_form.hpp"
#include "purity/exact_moments.hpp"
#include "purity/json_io.hpp"
#include "purity/mc.hpp"

using namespace purity;

namespace {

double state_norm_sq(const StateVector& psi) {
    double total = 0.0;
    for (const auto& amp : psi.amplitudes) total += std::norm(amp);
    return total;
}

// a fixed 2x2 unitary with exactly representable entries:
// [[0.6+0.48i, 0.64], [-0.64, 0.6-0.48i]]
StateVector rotate_factor_a_2d(const StateVector& psi) {
    const std::complex<double> a(0.6, 0.48), b(0.64, 0.0);
    const int q = psi.dims.q;
    StateVector out = psi;
    for (int k = 0; k < q; ++k) {
        const auto top = psi.amplitudes[k];
        const auto bottom = psi.amplitudes[q + k];
        out.amplitudes[k] = a * top + b * bottom;
        out.amplitudes[q + k] = -std::conj(b) * top + std::conj(a) * bottom;
    }
    return out;
}

// fixed DFT unitary on the q = 3 factor
StateVector rotate_factor_b_3d(const StateVector& psi) {
    const int p = psi.dims.p;
    const double w = 2.0 * std::numbers::pi / 3.0;
    std::complex<double> F[3][3];
    for (int l = 0; l < 3; ++l)
        for (int k = 0; k < 3; ++k) F[l][k] = std::polar(1.0 / std::sqrt(3.0), w * l * k);
    StateVector out = psi;
    for (int i = 0; i < p; ++i)
        for (int l = 0; l < 3; ++l) {
            std::complex<double> acc = 0.0;
            for (int k = 0; k < 3; ++k) acc += psi.amplitudes[i * 3 + k] * F[l][k];
            out.amplitudes[i * 3 + l] = acc;
        }
    return out;
}

} // namespace

TEST_CASE("generator substreams are deterministic") {
    Xoshiro256pp a(42, 7), b(42, 7), c(42, 8);
    bool differ = false;
    for (int i = 0; i < 100; ++i) {
        const auto va = a.next();
        CHECK(va == b.next());
        if (va != c.next()) differ = true;
    }
    CHECK(differ);
}

TEST_CASE("sample_state is normalized") {
    Xoshiro256pp gen(123, 0);
    for (const BipartiteDims& dims : {BipartiteDims(2, 2), BipartiteDims(4, 8)}) {
        for (int t = 0; t < 50; ++t) {
            const StateVector psi = sample_state(dims, gen);
            CHECK(std::abs(state_norm_sq(psi) - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("single-amplitude marginal has mean 1/(pq)") {
    const BipartiteDims dims(2, 3);
    Xoshiro256pp gen(5150, 0);
    const int n = 20000;
    double sum = 0.0, sum_sq = 0.0;
    for (int t = 0; t < n; ++t) {
        const StateVector psi = sample_state(dims, gen);
        const double x = std::norm(psi.amplitudes[0]);
        sum += x;
        sum_sq += x * x;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sum_sq / n - mean * mean) / (n - 1));
    CHECK(std::abs(mean - 1.0 / 6.0) <= 5.0 * se);
}

TEST_CASE("schmidt spectrum of known states") {
    // product state e1 (x) e1
    StateVector product{BipartiteDims(3, 4), std::vector<std::complex<double>>(12, 0.0)};
    product.amplitudes[0] = 1.0;
    auto spectrum = schmidt_spectrum(product);
    CHECK(spectrum[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(spectrum[1]) <= 1e-12);
    CHECK(std::abs(spectrum[2]) <= 1e-12);
    CHECK(purity_direct(product) == doctest::Approx(1.0).epsilon(1e-12));

    // Bell state
    StateVector bell{BipartiteDims(2, 2), {1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0)}};
    spectrum = schmidt_spectrum(bell);
    CHECK(spectrum[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(spectrum[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(purity_direct(bell) == doctest::Approx(0.5).epsilon(1e-12));

    // maximally entangled 3x3 state: purity 1/p
    StateVector ghz{BipartiteDims(3, 3), std::vector<std::complex<double>>(9, 0.0)};
    for (int i = 0; i < 3; ++i) ghz.amplitudes[i * 3 + i] = 1.0 / std::sqrt(3.0);
    CHECK(purity_direct(ghz) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("purity dual-path agreement and spectrum sum") {
    for (int p = 2; p <= 4; ++p) {
        for (int q = p; q <= 8; ++q) {
            const BipartiteDims dims(p, q);
            Xoshiro256pp gen(99, static_cast<std::uint64_t>(p * 100 + q));
            for (int t = 0; t < 300; ++t) {
                const StateVector psi = sample_state(dims, gen);
                const auto spectrum = schmidt_spectrum(psi);
                double sum = 0.0;
                for (double x : spectrum) sum += x;
                CHECK(std::abs(sum - 1.0) <= 1e-10);
                for (std::size_t i = 1; i < spectrum.size(); ++i)
                    CHECK(spectrum[i - 1] >= spectrum[i]);
                CHECK(std::abs(purity_from_spectrum(spectrum) - purity_direct(psi)) <= 1e-10);
            }
        }
    }
}

TEST_CASE("joint schmidt density") {
    const BipartiteDims dims22(2, 2);
    const std::vector<double> equal{0.5, 0.5};
    CHECK(joint_schmidt_density(dims22, equal) == 0.0);  // Vandermonde vanishes
    // normalization constant 3 for (2,2): density = 3 (x1 - x2)^2
    const std::vector<double> x{0.7, 0.3};
    CHECK(joint_schmidt_density(dims22, x) == doctest::Approx(3.0 * 0.16).epsilon(1e-13));
    // degenerate component with q > p
    const std::vector<double> edge{1.0, 0.0};
    CHECK(joint_schmidt_density(BipartiteDims(2, 3), edge) == 0.0);
    const std::vector<double> bad{0.8, 0.1};
    CHECK_THROWS_AS(joint_schmidt_density(dims22, bad), std::domain_error);
    const std::vector<double> negative{1.2, -0.2};
    CHECK_THROWS_AS(joint_schmidt_density(dims22, negative), std::domain_error);
}

TEST_CASE("parallel sampler is bit-identical to the serial reference") {
    const BipartiteDims dims(3, 5);
    const std::size_t count = 3 * kSampleChunk + 1234;  // exercise a partial chunk
    const auto serial = sample_purities_serial(dims, count, 2024);
    const auto parallel = sample_purities(dims, count, 2024);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) CHECK(serial[i] == parallel[i]);

    // determinism across calls, sensitivity to the seed
    const auto again = sample_purities(dims, count, 2024);
    CHECK(again == parallel);
    const auto other = sample_purities(dims, count, 2025);
    CHECK(other != parallel);
}

TEST_CASE("sampled purities live in [1/p, 1]") {
    for (const BipartiteDims& dims : {BipartiteDims(2, 2), BipartiteDims(4, 6)}) {
        const auto purities = sample_purities(dims, 20000, 7);
        for (double R : purities) {
            CHECK(R >= dims.support_lo() - 1e-12);
            CHECK(R <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("empirical mean matches the exact first moment") {
    const std::size_t n = 200000;
    const auto purities = sample_purities(BipartiteDims(2, 2), n, 31337);
    double sum = 0.0, sum_sq = 0.0;
    for (double R : purities) {
        sum += R;
        sum_sq += R * R;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sum_sq / n - mean * mean) / (n - 1));
    CHECK(std::abs(mean - 0.8) <= 5.0 * se);  // <R> = 4/5 for (2,2)
}

TEST_CASE("validate passes against the matching density") {
    const BipartiteDims dims(3, 3);
    const ValidationReport report = validate(dims, pdf_3x3(), 50000, 200, 424242);
    CHECK(report.pass);
    CHECK(report.ks_statistic <= report.ks_threshold);
    CHECK(report.ks_threshold ==
          doctest::Approx(1.9494746035204053 / std::sqrt(50000.0)).epsilon(1e-12));
    REQUIRE(report.moment_deltas.size() == 3);
    for (const MomentDelta& delta : report.moment_deltas)
        CHECK(std::abs(delta.empirical - delta.exact) <= 5.0 * delta.standard_error);
    CHECK(report.bin_counts.size() == 200);
    std::uint64_t total = 0;
    for (auto c : report.bin_counts) total += c;
    CHECK(total == report.sample_count);
}

TEST_CASE("validate is deterministic given the seed") {
    const BipartiteDims dims(2, 4);
    const ValidationReport a = validate(dims, pdf_2xq(4), 20000, 64, 99);
    const ValidationReport b = validate(dims, pdf_2xq(4), 20000, 64, 99);
    CHECK(a.pass);  // (2,4) against its own density
    CHECK(a.ks_statistic == b.ks_statistic);
    CHECK(a.bin_counts == b.bin_counts);
    for (std::size_t i = 0; i < a.moment_deltas.size(); ++i) {
        CHECK(a.moment_deltas[i].empirical == b.moment_deltas[i].empirical);
        CHECK(a.moment_deltas[i].standard_error == b.moment_deltas[i].standard_error);
    }
    CHECK(report_to_json(a).dump() == report_to_json(b).dump());
}

TEST_CASE("validate rejects tiny samples and fails on mismatched densities") {
    CHECK_THROWS_AS(validate(BipartiteDims(2, 2), pdf_2xq(2), 999, 10, 1),
                    std::invalid_argument);
    // negative control: 2x2 density against 3x3 samples must fail
    const ValidationReport report = validate(BipartiteDims(3, 3), pdf_2xq(2), 20000, 100, 5);
    CHECK_FALSE(report.pass);
    CHECK(report.ks_statistic > report.ks_threshold);
}

TEST_CASE("local rotations leave the purity distribution unchanged") {
    // per-state invariance under a local unitary on either factor
    const BipartiteDims dims(2, 3);
    Xoshiro256pp gen(11, 0);
    for (int t = 0; t < 200; ++t) {
        const StateVector psi = sample_state(dims, gen);
        CHECK(std::abs(purity_direct(rotate_factor_a_2d(psi)) - purity_direct(psi)) <= 1e-12);
        CHECK(std::abs(purity_direct(rotate_factor_b_3d(psi)) - purity_direct(psi)) <= 1e-12);
    }

    // two independent batches, one rotated: KS at alpha = 0.001
    const std::size_t n = 40000;
    std::vector<double> plain(n), rotated(n);
    Xoshiro256pp gen_a(21, 0), gen_b(22, 0);
    for (std::size_t i = 0; i < n; ++i) {
        plain[i] = purity_direct(sample_state(dims, gen_a));
        rotated[i] = purity_direct(rotate_factor_a_2d(sample_state(dims, gen_b)));
    }
    std::sort(plain.begin(), plain.end());
    std::sort(rotated.begin(), rotated.end());
    CHECK(ks_two_sample(plain, rotated) <= ks_two_sample_threshold(n, n));
}
