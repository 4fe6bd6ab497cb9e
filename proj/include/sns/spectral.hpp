#pragma once

#include "sns/field.hpp"

namespace sns {

// Field algebra on [0, 2pi]^3. Every operation returns a new field.

/// Analysis transform with 1/n^3 normalisation. Throws DivergedError on
/// non-finite input.
SpectralField forward_transform(const RealField& f);

/// Synthesis transform. Throws Error if the input is not Hermitian to
/// 1e-12 relative.
RealField inverse_transform(const SpectralField& s);

/// Synthesis without the symmetry check, for spectra Hermitian by construction.
RealField inverse_transform_unchecked(const SpectralField& s);

/// max_k |u_k - conj(u_{-k})| / max_k |u_k| (0 for the zero field).
double hermitian_defect(const SpectralField& s);

SpectralField leray_project(const SpectralField& s);
SpectralField dealias(const SpectralField& s);

/// omega_k = i k x u_k.
SpectralField curl(const SpectralField& s);

/// Integral of |u|^2 over the box: (2pi)^3 sum_k |u_k|^2.
double l2_norm_sq(const SpectralField& s);

/// (2pi)^3 sum_k |k|^2 |u_k|^2.
double grad_norm_sq(const SpectralField& s);

/// ((2pi)^3 sum_k (1+|k|^2)^s |u_k|^2)^{1/2}; throws for s < 0.
double sobolev_norm(const SpectralField& s, double order);

/// max_k |k . u_k| / max_k |u_k| (0 for the zero field).
double relative_divergence(const SpectralField& s);

/// a + scale * b.
SpectralField add_scaled(const SpectralField& a, double scale, const SpectralField& b);

SpectralField scaled(const SpectralField& a, double scale);

/// Zero-pads (or truncates) onto `target` keeping every mode with
/// |k_i| < min(n, target.n)/2.
SpectralField resample(const SpectralField& s, const GridSpec& target);

/// The box volume (2pi)^3.
double box_volume();

}  // namespace sns
