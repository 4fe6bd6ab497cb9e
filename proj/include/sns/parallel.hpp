#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#ifdef SNS_HAVE_OPENMP
#include <omp.h>
#endif

namespace sns::parallel {

/// Environment variable capping worker threads (OpenMP loops and FFTW).
inline constexpr const char* kThreadEnv = "SNS_NUM_THREADS";

/// Applies the thread cap from SNS_NUM_THREADS if set. Returns the cap in
/// effect afterwards.
int configure_from_env();

void set_threads(int threads);
int threads();

/// Elements per reduction block. Sums are formed per block in index order
/// and the block partials are then added serially, so the result does not
/// depend on the number of threads.
inline constexpr std::size_t kBlock = 4096;

template <class Term>
double blocked_sum(std::size_t count, Term term) {
    const std::size_t blocks = (count + kBlock - 1) / kBlock;
    std::vector<double> partial(blocks, 0.0);
    const auto nb = static_cast<long long>(blocks);
#pragma omp parallel for schedule(static)
    for (long long b = 0; b < nb; ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
        const std::size_t hi = std::min(count, lo + kBlock);
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += term(i);
        partial[static_cast<std::size_t>(b)] = s;
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

/// Maximum of term(i) over [0, count). NaN terms propagate.
template <class Term>
double max_of(std::size_t count, Term term) {
    double best = 0.0;
    bool nan_seen = false;
    const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(static) reduction(max : best) reduction(|| : nan_seen)
    for (long long i = 0; i < n; ++i) {
        const double v = term(static_cast<std::size_t>(i));
        if (std::isnan(v)) nan_seen = true;
        else best = std::max(best, v);
    }
    return nan_seen ? std::nan("") : best;
}

}  // namespace sns::parallel
