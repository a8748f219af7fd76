#include "purity/mc.hpp"

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "purity/errors.hpp"
#include "purity/exact_moments.hpp"
#include "purity/quadrature.hpp"

namespace purity {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

struct SplitMix64 {
    std::uint64_t s;
    std::uint64_t next() {
        std::uint64_t z = (s += kGolden);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

inline std::complex<double> gaussian_amplitude(Xoshiro256pp& gen) {
    // Box-Muller; u1 in (0,1] keeps the log finite.
    const double u1 = gen.uniform_open_closed();
    const double u2 = gen.uniform_half_open();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

// Purity of the (possibly unnormalized) amplitude array: tr(G^2)/tr(G)^2 with
// G = M M^dagger the p x p Gram matrix.
double purity_from_amplitudes(int p, int q, const std::complex<double>* a) {
    double trace = 0.0;
    double sum_sq = 0.0;
    for (int i = 0; i < p; ++i) {
        for (int j = i; j < p; ++j) {
            std::complex<double> g = 0.0;
            for (int k = 0; k < q; ++k)
                g += a[i * q + k] * std::conj(a[j * q + k]);
            if (i == j) {
                trace += g.real();
                sum_sq += std::norm(g);
            } else {
                sum_sq += 2.0 * std::norm(g);
            }
        }
    }
    return sum_sq / (trace * trace);
}

void purity_chunk(const BipartiteDims& dims, std::uint64_t seed, std::uint64_t chunk, double* out,
                  std::size_t count) {
    Xoshiro256pp gen(seed, chunk);
    const int p = dims.p;
    const int q = dims.q;
    std::vector<std::complex<double>> amps(static_cast<std::size_t>(p) * q);
    for (std::size_t t = 0; t < count; ++t) {
        for (auto& amp : amps) amp = gaussian_amplitude(gen);
        out[t] = purity_from_amplitudes(p, q, amps.data());
    }
}

} // namespace

Xoshiro256pp::Xoshiro256pp(std::uint64_t master_seed, std::uint64_t stream) {
    SplitMix64 sm{master_seed + (stream + 1) * kGolden};
    bool all_zero = true;
    for (auto& word : s_) {
        word = sm.next();
        all_zero = all_zero && word == 0;
    }
    if (all_zero) s_[0] = kGolden;
}

std::uint64_t Xoshiro256pp::next() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Xoshiro256pp::uniform_open_closed() { return ((next() >> 11) + 1) * 0x1.0p-53; }

double Xoshiro256pp::uniform_half_open() { return (next() >> 11) * 0x1.0p-53; }

StateVector sample_state(const BipartiteDims& dims, Xoshiro256pp& gen) {
    StateVector psi{dims, std::vector<std::complex<double>>(
                              static_cast<std::size_t>(dims.p) * dims.q)};
    double norm_sq = 0.0;
    do {
        norm_sq = 0.0;
        for (auto& amp : psi.amplitudes) {
            amp = gaussian_amplitude(gen);
            norm_sq += std::norm(amp);
        }
    } while (norm_sq == 0.0);  // probability zero, but the contract says resample
    const double inv_norm = 1.0 / std::sqrt(norm_sq);
    for (auto& amp : psi.amplitudes) amp *= inv_norm;
    return psi;
}

std::vector<double> schmidt_spectrum(const StateVector& psi) {
    const int p = psi.dims.p;
    const int q = psi.dims.q;
    Eigen::MatrixXcd m(p, q);
    for (int i = 0; i < p; ++i)
        for (int k = 0; k < q; ++k) m(i, k) = psi.amplitudes[static_cast<std::size_t>(i) * q + k];
    const Eigen::MatrixXcd gram = m * m.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram);
    if (solver.info() != Eigen::Success)
        throw NumericalError("schmidt_spectrum: eigensolver failed to converge");
    std::vector<double> spectrum(p);
    for (int i = 0; i < p; ++i) {
        // eigenvalues come out ascending; flip to descending and clip the
        // tiny negatives produced by rounding
        spectrum[i] = std::max(solver.eigenvalues()(p - 1 - i), 0.0);
    }
    return spectrum;
}

double purity_direct(const StateVector& psi) {
    return purity_from_amplitudes(psi.dims.p, psi.dims.q, psi.amplitudes.data());
}

double purity_from_spectrum(std::span<const double> spectrum) {
    double sum = 0.0;
    for (double x : spectrum) sum += x * x;
    return sum;
}

double joint_schmidt_density(const BipartiteDims& dims, std::span<const double> x) {
    if (static_cast<int>(x.size()) != dims.p)
        throw std::domain_error("joint_schmidt_density: expected p components");
    double total = 0.0;
    for (double xi : x) {
        if (xi < 0.0) throw std::domain_error("joint_schmidt_density: components must be >= 0");
        total += xi;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw std::domain_error("joint_schmidt_density: components must sum to 1");

    double value = to_double(schmidt_density_normalization(dims));
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            const double diff = x[i] - x[j];
            value *= diff * diff;
        }
    if (dims.d() > 0)
        for (double xi : x) value *= std::pow(xi, dims.d());
    return value;
}

std::vector<double> sample_purities_serial(const BipartiteDims& dims, std::size_t count,
                                           std::uint64_t seed) {
    std::vector<double> out(count);
    const std::size_t chunks = (count + kSampleChunk - 1) / kSampleChunk;
    for (std::size_t c = 0; c < chunks; ++c) {
        const std::size_t begin = c * kSampleChunk;
        purity_chunk(dims, seed, c, out.data() + begin, std::min(kSampleChunk, count - begin));
    }
    return out;
}

std::vector<double> sample_purities(const BipartiteDims& dims, std::size_t count,
                                    std::uint64_t seed) {
    std::vector<double> out(count);
    const std::ptrdiff_t chunks = static_cast<std::ptrdiff_t>((count + kSampleChunk - 1) / kSampleChunk);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t c = 0; c < chunks; ++c) {
        const std::size_t begin = static_cast<std::size_t>(c) * kSampleChunk;
        purity_chunk(dims, seed, static_cast<std::uint64_t>(c), out.data() + begin,
                     std::min(kSampleChunk, count - begin));
    }
    return out;
}

ValidationReport validate(const BipartiteDims& dims, const PiecewisePdf& pdf,
                          std::size_t sample_count, int bin_count, std::uint64_t seed,
                          double alpha) {
    if (sample_count < 1000)
        throw std::invalid_argument(
            "validate: fewer than 1000 samples is statistically meaningless");
    if (bin_count < 1) throw std::invalid_argument("validate: need at least one bin");

    ValidationReport report;
    report.p = dims.p;
    report.q = dims.q;
    report.sample_count = sample_count;
    report.seed = seed;
    report.alpha = alpha;

    std::vector<double> samples = sample_purities(dims, sample_count, seed);

    // Power sums in sample order (deterministic reduction).
    std::array<double, 7> power_sums{};
    for (double x : samples) {
        double xk = 1.0;
        for (int k = 1; k <= 6; ++k) {
            xk *= x;
            power_sums[k] += xk;
        }
    }

    const double lo = dims.support_lo();
    report.bin_edges.resize(bin_count + 1);
    for (int b = 0; b <= bin_count; ++b)
        report.bin_edges[b] = lo + (1.0 - lo) * b / bin_count;
    report.bin_counts.assign(bin_count, 0);
    for (double x : samples) {
        int b = static_cast<int>((x - lo) / (1.0 - lo) * bin_count);
        b = std::clamp(b, 0, bin_count - 1);
        ++report.bin_counts[static_cast<std::size_t>(b)];
    }

    std::sort(samples.begin(), samples.end());
    CdfWalker walker(pdf);
    const double n_inv = 1.0 / static_cast<double>(sample_count);
    double ks = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double F = walker.advance(samples[i]);
        ks = std::max(ks, (i + 1) * n_inv - F);
        ks = std::max(ks, F - i * n_inv);
    }
    report.ks_statistic = ks;
    report.ks_threshold =
        std::sqrt(std::log(2.0 / alpha) / 2.0) / std::sqrt(static_cast<double>(sample_count));

    bool moments_ok = true;
    const double n = static_cast<double>(sample_count);
    for (int k = 1; k <= 3; ++k) {
        MomentDelta delta;
        delta.n = k;
        delta.empirical = power_sums[k] / n;
        delta.exact = to_double(purity_moment(dims, k));
        const double mean_sq = power_sums[2 * k] / n;
        const double variance = std::max(mean_sq - delta.empirical * delta.empirical, 0.0) * n / (n - 1.0);
        delta.standard_error = std::sqrt(variance / n);
        report.moment_deltas.push_back(delta);
        if (std::abs(delta.empirical - delta.exact) > 5.0 * delta.standard_error)
            moments_ok = false;
    }
    report.pass = report.ks_statistic <= report.ks_threshold && moments_ok;
    return report;
}

double ks_two_sample(std::span<const double> sorted_a, std::span<const double> sorted_b) {
    const double na = static_cast<double>(sorted_a.size());
    const double nb = static_cast<double>(sorted_b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < sorted_a.size() && j < sorted_b.size()) {
        if (sorted_a[i] <= sorted_b[j])
            ++i;
        else
            ++j;
        d = std::max(d, std::abs(i / na - j / nb));
    }
    return d;
}

double ks_two_sample_threshold(std::size_t n, std::size_t m, double alpha) {
    return std::sqrt(std::log(2.0 / alpha) / 2.0) *
           std::sqrt(static_cast<double>(n + m) / (static_cast<double>(n) * m));
}

} // namespace purity
