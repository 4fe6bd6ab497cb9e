#include "sns/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "sns/parallel.hpp"

namespace sns::kernels {

double Weight::operator()(double k2) const {
    switch (kind) {
        case Kind::unit: return 1.0;
        case Kind::k_squared: return k2;
        case Kind::sobolev: return order == 0.0 ? 1.0 : std::pow(1.0 + k2, order);
    }
    return 1.0;
}

namespace {

std::vector<double> wavenumbers(const GridSpec& grid) {
    std::vector<double> k(grid.n());
    for (int i = 0; i < grid.n(); ++i) k[i] = grid.wavenumber(i);
    return k;
}

double k2_at(const GridSpec& grid, std::size_t i) {
    const auto k = grid.wavevector(i);
    return double(k[0]) * k[0] + double(k[1]) * k[1] + double(k[2]) * k[2];
}

}  // namespace

void leray_project(const GridSpec& grid, CSpan3 u) {
    const int n = grid.n();
    const auto k = wavenumbers(grid);
#pragma omp parallel for collapse(2) schedule(static)
    for (int ix = 0; ix < n; ++ix) {
        for (int iy = 0; iy < n; ++iy) {
            const double kx = k[ix], ky = k[iy];
            for (int iz = 0; iz < n; ++iz) {
                const double kz = k[iz];
                const double k2 = kx * kx + ky * ky + kz * kz;
                if (k2 == 0.0) continue;
                const std::size_t i = grid.linear(ix, iy, iz);
                const Complex div = (kx * u[0][i] + ky * u[1][i] + kz * u[2][i]) / k2;
                u[0][i] -= kx * div;
                u[1][i] -= ky * div;
                u[2][i] -= kz * div;
            }
        }
    }
}

void dealias(const GridSpec& grid, CSpan3 u) {
    const int n = grid.n();
    const int kmax = grid.k_max();
    auto cut = [&](int idx) { return std::abs(grid.wavenumber(idx)) > kmax; };
#pragma omp parallel for collapse(2) schedule(static)
    for (int ix = 0; ix < n; ++ix) {
        for (int iy = 0; iy < n; ++iy) {
            const bool plane = cut(ix) || cut(iy);
            for (int iz = 0; iz < n; ++iz) {
                if (plane || cut(iz)) {
                    const std::size_t i = grid.linear(ix, iy, iz);
                    u[0][i] = u[1][i] = u[2][i] = Complex{};
                }
            }
        }
    }
}

void curl(const GridSpec& grid, CView3 u, CSpan3 out) {
    const int n = grid.n();
    const auto k = wavenumbers(grid);
    const Complex I{0.0, 1.0};
#pragma omp parallel for collapse(2) schedule(static)
    for (int ix = 0; ix < n; ++ix) {
        for (int iy = 0; iy < n; ++iy) {
            const double kx = k[ix], ky = k[iy];
            for (int iz = 0; iz < n; ++iz) {
                const double kz = k[iz];
                const std::size_t i = grid.linear(ix, iy, iz);
                const Complex ux = u[0][i], uy = u[1][i], uz = u[2][i];
                out[0][i] = I * (ky * uz - kz * uy);
                out[1][i] = I * (kz * ux - kx * uz);
                out[2][i] = I * (kx * uy - ky * ux);
            }
        }
    }
}

void derivative(const GridSpec& grid, int axis, CView u, CSpan out) {
    const int n = grid.n();
    const auto k = wavenumbers(grid);
    const Complex I{0.0, 1.0};
#pragma omp parallel for collapse(2) schedule(static)
    for (int ix = 0; ix < n; ++ix) {
        for (int iy = 0; iy < n; ++iy) {
            for (int iz = 0; iz < n; ++iz) {
                const double ka = axis == 0 ? k[ix] : axis == 1 ? k[iy] : k[iz];
                const std::size_t i = grid.linear(ix, iy, iz);
                out[i] = I * ka * u[i];
            }
        }
    }
}

void axpy(CSpan y, double a, CView x) {
    const auto n = static_cast<long long>(y.size());
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i) y[i] += a * x[i];
}

void combine(CSpan out, CView x, double a, CView y) {
    const auto n = static_cast<long long>(out.size());
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i) out[i] = x[i] + a * y[i];
}

void assemble_rhs(const GridSpec& grid, CView nl, CView u, double nu, CView f, CSpan out) {
    const int n = grid.n();
    const auto k = wavenumbers(grid);
    const bool forced = !f.empty();
#pragma omp parallel for collapse(2) schedule(static)
    for (int ix = 0; ix < n; ++ix) {
        for (int iy = 0; iy < n; ++iy) {
            const double kxy = k[ix] * k[ix] + k[iy] * k[iy];
            for (int iz = 0; iz < n; ++iz) {
                const std::size_t i = grid.linear(ix, iy, iz);
                const double k2 = kxy + k[iz] * k[iz];
                Complex v = nl.empty() ? Complex{} : nl[i];
                v -= nu * k2 * u[i];
                if (forced) v += f[i];
                out[i] = v;
            }
        }
    }
}

double weighted_sum(const GridSpec& grid, CView3 u, Weight w) {
    return parallel::blocked_sum(grid.size(), [&](std::size_t i) {
        const double m = std::norm(u[0][i]) + std::norm(u[1][i]) + std::norm(u[2][i]);
        return m == 0.0 ? 0.0 : w(k2_at(grid, i)) * m;
    });
}

double pairing(CView3 a, CView3 b) {
    return parallel::blocked_sum(a[0].size(), [&](std::size_t i) {
        return (a[0][i] * std::conj(b[0][i])).real() + (a[1][i] * std::conj(b[1][i])).real() +
               (a[2][i] * std::conj(b[2][i])).real();
    });
}

double k2_pairing(const GridSpec& grid, CView3 a, CView3 b) {
    return parallel::blocked_sum(grid.size(), [&](std::size_t i) {
        const double p = (a[0][i] * std::conj(b[0][i])).real() + (a[1][i] * std::conj(b[1][i])).real() +
                         (a[2][i] * std::conj(b[2][i])).real();
        return p == 0.0 ? 0.0 : k2_at(grid, i) * p;
    });
}

double max_divergence(const GridSpec& grid, CView3 u) {
    return parallel::max_of(grid.size(), [&](std::size_t i) {
        const auto k = grid.wavevector(i);
        return std::abs(double(k[0]) * u[0][i] + double(k[1]) * u[1][i] + double(k[2]) * u[2][i]);
    });
}

double max_coefficient(CView3 u) {
    return parallel::max_of(u[0].size(), [&](std::size_t i) {
        return std::sqrt(std::norm(u[0][i]) + std::norm(u[1][i]) + std::norm(u[2][i]));
    });
}

double max_magnitude(RView3 v) {
    return parallel::max_of(v[0].size(), [&](std::size_t i) {
        return std::sqrt(v[0][i] * v[0][i] + v[1][i] * v[1][i] + v[2][i] * v[2][i]);
    });
}

void multiply_add(RSpan out, RView a, RView b) {
    const auto n = static_cast<long long>(out.size());
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i) out[i] += a[i] * b[i];
}

bool all_finite(RView v) {
    bool ok = true;
    const auto n = static_cast<long long>(v.size());
#pragma omp parallel for schedule(static) reduction(&& : ok)
    for (long long i = 0; i < n; ++i) ok = ok && std::isfinite(v[i]);
    return ok;
}

bool all_finite(CView v) {
    bool ok = true;
    const auto n = static_cast<long long>(v.size());
#pragma omp parallel for schedule(static) reduction(&& : ok)
    for (long long i = 0; i < n; ++i) ok = ok && std::isfinite(v[i].real()) && std::isfinite(v[i].imag());
    return ok;
}

}  // namespace sns::kernels
