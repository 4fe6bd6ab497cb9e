#include "sns/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sns/error.hpp"
#include "sns/fft.hpp"
#include "sns/kernels.hpp"
#include "sns/parallel.hpp"

namespace sns {

using kernels::spans;
using kernels::views;

double box_volume() {
    constexpr double L = 2.0 * std::numbers::pi;
    return L * L * L;
}

SpectralField forward_transform(const RealField& f) {
    const auto& engine = FftEngine::for_size(f.grid().n());
    SpectralField out(f.grid());
    for (int c = 0; c < 3; ++c) {
        if (!engine.forward(f.component(c), out.component(c))) {
            throw DivergedError("non-finite value in physical field");
        }
    }
    return out;
}

double hermitian_defect(const SpectralField& s) {
    const GridSpec& g = s.grid();
    const int n = g.n();
    const double scale = kernels::max_coefficient(views(s));
    if (scale == 0.0) return 0.0;
    double worst = 0.0;
    for (int c = 0; c < 3; ++c) {
        const auto u = s.component(c);
        double local = 0.0;
#pragma omp parallel for collapse(2) schedule(static) reduction(max : local)
        for (int ix = 0; ix < n; ++ix) {
            for (int iy = 0; iy < n; ++iy) {
                for (int iz = 0; iz < n; ++iz) {
                    const Complex a = u[g.linear(ix, iy, iz)];
                    const Complex b = u[g.conjugate_linear(ix, iy, iz)];
                    local = std::max(local, std::abs(a - std::conj(b)));
                }
            }
        }
        worst = std::max(worst, local);
    }
    return worst / scale;
}

RealField inverse_transform_unchecked(const SpectralField& s) {
    const auto& engine = FftEngine::for_size(s.grid().n());
    RealField out(s.grid());
    for (int c = 0; c < 3; ++c) engine.inverse(s.component(c), out.component(c));
    return out;
}

RealField inverse_transform(const SpectralField& s) {
    const double defect = hermitian_defect(s);
    if (!(defect <= 1e-12)) {
        throw Error("spectrum is not Hermitian-symmetric (defect " + std::to_string(defect) + ")");
    }
    return inverse_transform_unchecked(s);
}

SpectralField leray_project(const SpectralField& s) {
    SpectralField out = s;
    kernels::leray_project(s.grid(), spans(out));
    return out;
}

SpectralField dealias(const SpectralField& s) {
    SpectralField out = s;
    kernels::dealias(s.grid(), spans(out));
    return out;
}

SpectralField curl(const SpectralField& s) {
    SpectralField out(s.grid());
    kernels::curl(s.grid(), views(s), spans(out));
    return out;
}

double l2_norm_sq(const SpectralField& s) {
    return box_volume() * kernels::weighted_sum(s.grid(), views(s), {});
}

double grad_norm_sq(const SpectralField& s) {
    return box_volume() * kernels::weighted_sum(s.grid(), views(s), {kernels::Weight::Kind::k_squared});
}

double sobolev_norm(const SpectralField& s, double order) {
    if (!(order >= 0.0)) throw Error("Sobolev order must be non-negative");
    const kernels::Weight w{kernels::Weight::Kind::sobolev, order};
    return std::sqrt(box_volume() * kernels::weighted_sum(s.grid(), views(s), w));
}

double relative_divergence(const SpectralField& s) {
    const double scale = kernels::max_coefficient(views(s));
    if (scale == 0.0) return 0.0;
    return kernels::max_divergence(s.grid(), views(s)) / scale;
}

SpectralField add_scaled(const SpectralField& a, double scale, const SpectralField& b) {
    if (!(a.grid() == b.grid())) throw Error("grid mismatch");
    SpectralField out(a.grid());
    for (int c = 0; c < 3; ++c) kernels::combine(out.component(c), a.component(c), scale, b.component(c));
    return out;
}

SpectralField scaled(const SpectralField& a, double scale) {
    SpectralField out(a.grid());
    for (int c = 0; c < 3; ++c) kernels::axpy(out.component(c), scale, a.component(c));
    return out;
}

SpectralField resample(const SpectralField& s, const GridSpec& target) {
    SpectralField out(target);
    const GridSpec& g = s.grid();
    const int limit = std::min(g.n(), target.n()) / 2;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto k = g.wavevector(i);
        if (std::abs(k[0]) >= limit || std::abs(k[1]) >= limit || std::abs(k[2]) >= limit) continue;
        for (int c = 0; c < 3; ++c) out.mode(c, k) = s.at(c, i);
    }
    return out;
}

}  // namespace sns
