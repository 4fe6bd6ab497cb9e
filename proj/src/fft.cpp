#include "sns/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "sns/kernels.hpp"
#include "sns/parallel.hpp"

namespace sns {

namespace {

// The FFTW planner is not re-entrant.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

struct FftEngine::Plans {
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;
};

FftEngine::FftEngine(int n, int threads) : n_(n), plans_(std::make_unique<Plans>()) {
    const std::size_t real_size = static_cast<std::size_t>(n) * n * n;
    const std::size_t half_size = static_cast<std::size_t>(n) * n * (n / 2 + 1);
    std::vector<double> r(real_size);
    std::vector<Complex> c(half_size);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
#ifdef SNS_HAVE_FFTW_OMP
    static std::once_flag init;
    std::call_once(init, [] { fftw_init_threads(); });
    fftw_plan_with_nthreads(threads);
#else
    (void)threads;
#endif
    plans_->r2c = fftw_plan_dft_r2c_3d(n, n, n, r.data(), as_fftw(c.data()), flags);
    plans_->c2r = fftw_plan_dft_c2r_3d(n, n, n, as_fftw(c.data()), r.data(), flags | FFTW_DESTROY_INPUT);
}

FftEngine::~FftEngine() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plans_->r2c);
    fftw_destroy_plan(plans_->c2r);
}

const FftEngine& FftEngine::for_size(int n) {
    static std::map<std::pair<int, int>, std::unique_ptr<FftEngine>> cache;
    std::lock_guard lock(planner_mutex());
    const int threads = parallel::threads();
    auto& slot = cache[{n, threads}];
    if (!slot) slot.reset(new FftEngine(n, threads));
    return *slot;
}

bool FftEngine::forward(std::span<const double> in, std::span<Complex> out) const {
    if (!kernels::all_finite(in)) return false;
    const int n = n_;
    const int h = n / 2 + 1;
    std::vector<Complex> half(static_cast<std::size_t>(n) * n * h);
    fftw_execute_dft_r2c(plans_->r2c, const_cast<double*>(in.data()), as_fftw(half.data()));

    const double scale = 1.0 / (double(n) * n * n);
    auto lin = [n](int ix, int iy, int iz) { return (static_cast<std::size_t>(ix) * n + iy) * n + iz; };
    auto hlin = [n, h](int ix, int iy, int iz) { return (static_cast<std::size_t>(ix) * n + iy) * h + iz; };

#pragma omp parallel for schedule(static)
    for (int ix = 0; ix < n; ++ix) {
        const int jx = (n - ix) % n;
        for (int iy = 0; iy < n; ++iy) {
            const int jy = (n - iy) % n;
            for (int iz = 0; iz < h; ++iz) out[lin(ix, iy, iz)] = half[hlin(ix, iy, iz)] * scale;
            for (int iz = h; iz < n; ++iz) out[lin(ix, iy, iz)] = std::conj(half[hlin(jx, jy, n - iz)]) * scale;
        }
    }

    // The k_z = 0 and k_z = -n/2 planes are their own conjugate partners;
    // r2c computes both halves independently, so make them exactly Hermitian.
    for (int iz : {0, n / 2}) {
#pragma omp parallel for schedule(static)
        for (int ix = 0; ix < n; ++ix) {
            const int jx = (n - ix) % n;
            for (int iy = 0; iy < n; ++iy) {
                const int jy = (n - iy) % n;
                const std::size_t a = lin(ix, iy, iz);
                const std::size_t b = lin(jx, jy, iz);
                if (a > b) continue;
                if (a == b) {
                    out[a] = out[a].real();
                } else {
                    const Complex avg = 0.5 * (out[a] + std::conj(out[b]));
                    out[a] = avg;
                    out[b] = std::conj(avg);
                }
            }
        }
    }
    return true;
}

void FftEngine::inverse(std::span<const Complex> in, std::span<double> out) const {
    const int n = n_;
    const int h = n / 2 + 1;
    std::vector<Complex> half(static_cast<std::size_t>(n) * n * h);
#pragma omp parallel for schedule(static)
    for (int ix = 0; ix < n; ++ix) {
        for (int iy = 0; iy < n; ++iy) {
            const std::size_t src = (static_cast<std::size_t>(ix) * n + iy) * n;
            const std::size_t dst = (static_cast<std::size_t>(ix) * n + iy) * h;
            for (int iz = 0; iz < h; ++iz) half[dst + iz] = in[src + iz];
        }
    }
    fftw_execute_dft_c2r(plans_->c2r, as_fftw(half.data()), out.data());
}

}  // namespace sns
