// Benchmark: OpenMP kernels against their serial references.
//   1. Haar-state purity sampling (chunked substreams)
//   2. density grid evaluation
// Also verifies that the parallel outputs are bit-identical to the serial
// ones, which is the determinism contract the library advertises.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "purity/closed_form.hpp"
#include "purity/mc.hpp"
#include "purity/piecewise_pdf.hpp"

using namespace purity;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

} // namespace

int main(int argc, char** argv) {
    int p = 3, q = 4;
    std::size_t count = 400000;
    std::size_t grid_points = 2000000;
    std::uint64_t seed = 1;
    for (int i = 1; i + 1 < argc; i += 2) {
        const std::string flag = argv[i];
        const char* value = argv[i + 1];
        if (flag == "--p") p = std::atoi(value);
        else if (flag == "--q") q = std::atoi(value);
        else if (flag == "--count") count = std::strtoull(value, nullptr, 10);
        else if (flag == "--grid") grid_points = std::strtoull(value, nullptr, 10);
        else if (flag == "--seed") seed = std::strtoull(value, nullptr, 10);
        else {
            std::fprintf(stderr, "usage: bench [--p P] [--q Q] [--count N] [--grid N] [--seed S]\n");
            return 2;
        }
    }

    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::printf("bench: p=%d q=%d count=%zu grid=%zu threads=%d\n", p, q, count, grid_points,
                threads);

    const BipartiteDims dims(p, q);

    auto start = std::chrono::steady_clock::now();
    const auto serial = sample_purities_serial(dims, count, seed);
    const double t_serial = seconds_since(start);

    start = std::chrono::steady_clock::now();
    const auto parallel = sample_purities(dims, count, seed);
    const double t_parallel = seconds_since(start);

    const bool sampling_identical = serial == parallel;
    std::printf("sampling: serial %8.3f s (%.2f Ms/s) | omp %8.3f s (%.2f Ms/s) | "
                "speedup %.2fx | bit-identical: %s\n",
                t_serial, count / t_serial / 1e6, t_parallel, count / t_parallel / 1e6,
                t_serial / t_parallel, sampling_identical ? "yes" : "NO");

    const PiecewisePdf pdf = closed_form_pdf(dims);
    const auto xs = linspace(dims.support_lo(), 1.0, static_cast<int>(grid_points));

    start = std::chrono::steady_clock::now();
    const auto grid_serial = eval_grid_serial(pdf, xs);
    const double t_grid_serial = seconds_since(start);

    start = std::chrono::steady_clock::now();
    const auto grid_parallel = eval_grid(pdf, xs);
    const double t_grid_parallel = seconds_since(start);

    const bool grid_identical = grid_serial == grid_parallel;
    std::printf("grid eval: serial %7.3f s (%.2f Me/s) | omp %8.3f s (%.2f Me/s) | "
                "speedup %.2fx | bit-identical: %s\n",
                t_grid_serial, grid_points / t_grid_serial / 1e6, t_grid_parallel,
                grid_points / t_grid_parallel / 1e6, t_grid_serial / t_grid_parallel,
                grid_identical ? "yes" : "NO");

    return sampling_identical && grid_identical ? 0 : 1;
}
