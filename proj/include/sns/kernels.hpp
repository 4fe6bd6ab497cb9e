#pragma once

// Pointwise and modewise field kernels.
//
// sns::kernels holds the OpenMP versions used by the solver. The functions in
// sns::kernels::serial compute the same things with plain nested loops over
// (ix, iy, iz); they are the reference the parallel versions are tested and
// benchmarked against.

#include <array>
#include <span>

#include "sns/field.hpp"
#include "sns/grid.hpp"

namespace sns::kernels {

using CSpan = std::span<Complex>;
using CView = std::span<const Complex>;
using RSpan = std::span<double>;
using RView = std::span<const double>;

using CSpan3 = std::array<CSpan, 3>;
using CView3 = std::array<CView, 3>;
using RView3 = std::array<RView, 3>;

/// Spectral weight applied to |u_k|^2 in norm sums.
struct Weight {
    enum class Kind { unit, k_squared, sobolev } kind = Kind::unit;
    double order = 0.0;  // Sobolev order s for Kind::sobolev

    double operator()(double k2) const;
};

/// u_k <- (I - k k^T/|k|^2) u_k for k != 0.
void leray_project(const GridSpec& grid, CSpan3 u);

/// Zeroes every mode with some |k_i| > k_max.
void dealias(const GridSpec& grid, CSpan3 u);

/// out = i k x u.
void curl(const GridSpec& grid, CView3 u, CSpan3 out);

/// out = i k_axis u.
void derivative(const GridSpec& grid, int axis, CView u, CSpan out);

/// y += a * x.
void axpy(CSpan y, double a, CView x);

/// out = x + a * y.
void combine(CSpan out, CView x, double a, CView y);

/// out = n - nu |k|^2 u + f  (f may be empty).
void assemble_rhs(const GridSpec& grid, CView n, CView u, double nu, CView f, CSpan out);

/// Sum over modes of w(|k|^2) |u_k|^2 (all three components).
double weighted_sum(const GridSpec& grid, CView3 u, Weight w);

/// Re sum_k a_k . conj(b_k).
double pairing(CView3 a, CView3 b);

/// Re sum_k |k|^2 a_k . conj(b_k).
double k2_pairing(const GridSpec& grid, CView3 a, CView3 b);

/// max_k |k . u_k| over all modes.
double max_divergence(const GridSpec& grid, CView3 u);

/// max over modes of the Euclidean coefficient magnitude.
double max_coefficient(CView3 u);

/// max over grid points of the Euclidean magnitude |(a, b, c)|.
double max_magnitude(RView3 v);

/// out += a * b pointwise.
void multiply_add(RSpan out, RView a, RView b);

bool all_finite(RView v);
bool all_finite(CView v);

namespace serial {

void leray_project(const GridSpec& grid, CSpan3 u);
void dealias(const GridSpec& grid, CSpan3 u);
void curl(const GridSpec& grid, CView3 u, CSpan3 out);
void derivative(const GridSpec& grid, int axis, CView u, CSpan out);
void axpy(CSpan y, double a, CView x);
void combine(CSpan out, CView x, double a, CView y);
void assemble_rhs(const GridSpec& grid, CView n, CView u, double nu, CView f, CSpan out);
double weighted_sum(const GridSpec& grid, CView3 u, Weight w);
double pairing(CView3 a, CView3 b);
double k2_pairing(const GridSpec& grid, CView3 a, CView3 b);
double max_divergence(const GridSpec& grid, CView3 u);
double max_coefficient(CView3 u);
double max_magnitude(RView3 v);
void multiply_add(RSpan out, RView a, RView b);

}  // namespace serial

inline CSpan3 spans(SpectralField& f) { return {f.component(0), f.component(1), f.component(2)}; }
inline CView3 views(const SpectralField& f) {
    return {f.component(0), f.component(1), f.component(2)};
}
inline RView3 views(const RealField& f) { return {f.component(0), f.component(1), f.component(2)}; }

}  // namespace sns::kernels
