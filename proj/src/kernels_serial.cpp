// Reference implementations: straightforward loops, no threading, no
// precomputed tables.

#include <algorithm>
#include <cmath>

#include "sns/kernels.hpp"

namespace sns::kernels::serial {

void leray_project(const GridSpec& grid, CSpan3 u) {
    const int n = grid.n();
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy)
            for (int iz = 0; iz < n; ++iz) {
                const double kx = grid.wavenumber(ix), ky = grid.wavenumber(iy), kz = grid.wavenumber(iz);
                const double k2 = kx * kx + ky * ky + kz * kz;
                if (k2 == 0.0) continue;
                const std::size_t i = grid.linear(ix, iy, iz);
                const Complex div = (kx * u[0][i] + ky * u[1][i] + kz * u[2][i]) / k2;
                u[0][i] -= kx * div;
                u[1][i] -= ky * div;
                u[2][i] -= kz * div;
            }
}

void dealias(const GridSpec& grid, CSpan3 u) {
    const int n = grid.n();
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy)
            for (int iz = 0; iz < n; ++iz) {
                const std::array<int, 3> k{grid.wavenumber(ix), grid.wavenumber(iy), grid.wavenumber(iz)};
                if (grid.retained(k)) continue;
                const std::size_t i = grid.linear(ix, iy, iz);
                for (int c = 0; c < 3; ++c) u[c][i] = Complex{};
            }
}

void curl(const GridSpec& grid, CView3 u, CSpan3 out) {
    const Complex I{0.0, 1.0};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto k = grid.wavevector(i);
        out[0][i] = I * (double(k[1]) * u[2][i] - double(k[2]) * u[1][i]);
        out[1][i] = I * (double(k[2]) * u[0][i] - double(k[0]) * u[2][i]);
        out[2][i] = I * (double(k[0]) * u[1][i] - double(k[1]) * u[0][i]);
    }
}

void derivative(const GridSpec& grid, int axis, CView u, CSpan out) {
    const Complex I{0.0, 1.0};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out[i] = I * double(grid.wavevector(i)[axis]) * u[i];
    }
}

void axpy(CSpan y, double a, CView x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

void combine(CSpan out, CView x, double a, CView y) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = x[i] + a * y[i];
}

void assemble_rhs(const GridSpec& grid, CView nl, CView u, double nu, CView f, CSpan out) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto k = grid.wavevector(i);
        const double k2 = double(k[0]) * k[0] + double(k[1]) * k[1] + double(k[2]) * k[2];
        Complex v = nl.empty() ? Complex{} : nl[i];
        v -= nu * k2 * u[i];
        if (!f.empty()) v += f[i];
        out[i] = v;
    }
}

double weighted_sum(const GridSpec& grid, CView3 u, Weight w) {
    double total = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto k = grid.wavevector(i);
        const double k2 = double(k[0]) * k[0] + double(k[1]) * k[1] + double(k[2]) * k[2];
        const double m = std::norm(u[0][i]) + std::norm(u[1][i]) + std::norm(u[2][i]);
        if (m != 0.0) total += w(k2) * m;
    }
    return total;
}

double pairing(CView3 a, CView3 b) {
    double total = 0.0;
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < a[c].size(); ++i) total += (a[c][i] * std::conj(b[c][i])).real();
    return total;
}

double k2_pairing(const GridSpec& grid, CView3 a, CView3 b) {
    double total = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto k = grid.wavevector(i);
        const double k2 = double(k[0]) * k[0] + double(k[1]) * k[1] + double(k[2]) * k[2];
        for (int c = 0; c < 3; ++c) total += k2 * (a[c][i] * std::conj(b[c][i])).real();
    }
    return total;
}

double max_divergence(const GridSpec& grid, CView3 u) {
    double best = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto k = grid.wavevector(i);
        best = std::max(best, std::abs(double(k[0]) * u[0][i] + double(k[1]) * u[1][i] + double(k[2]) * u[2][i]));
    }
    return best;
}

double max_coefficient(CView3 u) {
    double best = 0.0;
    for (std::size_t i = 0; i < u[0].size(); ++i) {
        best = std::max(best, std::sqrt(std::norm(u[0][i]) + std::norm(u[1][i]) + std::norm(u[2][i])));
    }
    return best;
}

double max_magnitude(RView3 v) {
    double best = 0.0;
    for (std::size_t i = 0; i < v[0].size(); ++i) {
        best = std::max(best, std::sqrt(v[0][i] * v[0][i] + v[1][i] * v[1][i] + v[2][i] * v[2][i]));
    }
    return best;
}

void multiply_add(RSpan out, RView a, RView b) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += a[i] * b[i];
}

}  // namespace sns::kernels::serial
