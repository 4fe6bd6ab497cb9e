#pragma once

#include <memory>
#include <span>

#include "sns/field.hpp"

namespace sns {

/// Real 3D transforms between a grid function and its full FFT-ordered
/// coefficient array. Backed by FFTW real-to-complex plans; only the
/// half spectrum k_z >= 0 is transformed, the rest is filled by symmetry.
///
/// forward: u_k = n^{-3} sum_x u(x) e^{-ik.x}   (so a constant c maps to u_0 = c)
/// inverse: u(x) = sum_k u_k e^{ik.x}
class FftEngine {
public:
    /// Shared engine for grids with n points per axis, planned for the
    /// current thread cap. Safe to call from several threads.
    static const FftEngine& for_size(int n);

    ~FftEngine();
    FftEngine(const FftEngine&) = delete;
    FftEngine& operator=(const FftEngine&) = delete;

    int n() const { return n_; }

    /// Returns false (leaving `out` unspecified) if `in` holds a non-finite value.
    bool forward(std::span<const double> in, std::span<Complex> out) const;

    /// `in` is assumed Hermitian; the redundant half is ignored.
    void inverse(std::span<const Complex> in, std::span<double> out) const;

private:
    FftEngine(int n, int threads);

    struct Plans;
    int n_;
    std::unique_ptr<Plans> plans_;
};

}  // namespace sns
