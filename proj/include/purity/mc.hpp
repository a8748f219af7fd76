#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "purity/dims.hpp"
#include "purity/piecewise_pdf.hpp"

namespace purity {

/// xoshiro256++ (Blackman & Vigna, public domain), seeded through splitmix64.
/// Small state, long period, and a cheap deterministic substream scheme.
class Xoshiro256pp {
public:
    /// Substream construction rule (stable across versions; changing it
    /// changes every sampled value): seed splitmix64 with
    /// master + (stream+1) * 0x9E3779B97F4A7C15 and take four outputs as the
    /// initial state.
    Xoshiro256pp(std::uint64_t master_seed, std::uint64_t stream);

    std::uint64_t next();

    /// Uniform on (0, 1] (safe as a log argument).
    double uniform_open_closed();
    /// Uniform on [0, 1).
    double uniform_half_open();

private:
    std::uint64_t s_[4];
};

/// Number of samples drawn per generator substream. Sample i belongs to
/// chunk i / kSampleChunk; both the serial and the OpenMP sampler follow the
/// same layout, so their outputs are bit-identical for any thread count.
inline constexpr std::size_t kSampleChunk = 8192;

/// A pure state of C^p (x) C^q; amplitude (i, k) lives at index i*q + k.
struct StateVector {
    BipartiteDims dims;
    std::vector<std::complex<double>> amplitudes;
};

/// Haar-random pure state: pq independent standard complex Gaussians
/// (Box-Muller: two uniforms per amplitude), rescaled to unit norm.
StateVector sample_state(const BipartiteDims& dims, Xoshiro256pp& gen);

/// Descending eigenvalues of the p x p reduced Gram matrix M M^dagger
/// (= squared Schmidt coefficients; sums to 1 for a normalized state).
/// Throws NumericalError if the eigensolver does not converge.
std::vector<double> schmidt_spectrum(const StateVector& psi);

/// Purity tr((M M^dagger)^2) computed directly from the p x p Gram matrix,
/// without an eigendecomposition.
double purity_direct(const StateVector& psi);

/// Purity as the sum of squared Schmidt coefficients.
double purity_from_spectrum(std::span<const double> spectrum);

/// Joint density of the (unordered) squared Schmidt coefficients on the
/// simplex: A * prod_{i<j} (x_i - x_j)^2 * prod_i x_i^{q-p}.
/// Requires x_i >= 0 with sum 1 (1e-9 slack); throws std::domain_error else.
double joint_schmidt_density(const BipartiteDims& dims, std::span<const double> x);

/// `count` purity samples, deterministic per (dims, seed). Serial reference.
std::vector<double> sample_purities_serial(const BipartiteDims& dims, std::size_t count,
                                           std::uint64_t seed);

/// OpenMP kernel; bit-identical output to sample_purities_serial.
std::vector<double> sample_purities(const BipartiteDims& dims, std::size_t count,
                                    std::uint64_t seed);

struct MomentDelta {
    int n = 0;
    double empirical = 0.0;
    double exact = 0.0;
    double standard_error = 0.0;
};

struct ValidationReport {
    int p = 0;
    int q = 0;
    std::uint64_t sample_count = 0;
    std::uint64_t seed = 0;
    double alpha = 0.0;
    double ks_statistic = 0.0;
    double ks_threshold = 0.0;
    std::vector<MomentDelta> moment_deltas;  // n = 1..3
    std::vector<double> bin_edges;
    std::vector<std::uint64_t> bin_counts;
    bool pass = false;
};

/// Draw sample_count purities of dims-distributed states and compare against
/// the analytic pdf: one-sample Kolmogorov-Smirnov statistic vs the
/// asymptotic threshold c(alpha)/sqrt(N), c(alpha) = sqrt(ln(2/alpha)/2),
/// plus first three sample moments vs the exact rationals (5 standard
/// errors). Deterministic given the seed. The pdf may belong to different
/// dims (negative control); moments are always checked against the sampled
/// dims. Requires sample_count >= 1000.
ValidationReport validate(const BipartiteDims& dims, const PiecewisePdf& pdf,
                          std::size_t sample_count, int bin_count, std::uint64_t seed,
                          double alpha = 1e-3);

/// Two-sample KS distance between sorted samples.
double ks_two_sample(std::span<const double> sorted_a, std::span<const double> sorted_b);

/// Two-sample KS threshold c(alpha) * sqrt((n+m)/(n*m)).
double ks_two_sample_threshold(std::size_t n, std::size_t m, double alpha = 1e-3);

} // namespace purity
