#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "sns/grid.hpp"

namespace sns {

using Complex = std::complex<double>;

/// Three-component real vector field sampled on the uniform grid
/// x_j = 2*pi*j/n.
class RealField {
public:
    RealField() = default;
    explicit RealField(const GridSpec& grid);

    const GridSpec& grid() const { return grid_; }

    std::span<double> component(int c) { return comps_[c]; }
    std::span<const double> component(int c) const { return comps_[c]; }

    double& at(int c, int ix, int iy, int iz) { return comps_[c][grid_.linear(ix, iy, iz)]; }
    double at(int c, int ix, int iy, int iz) const { return comps_[c][grid_.linear(ix, iy, iz)]; }

private:
    GridSpec grid_;
    std::array<std::vector<double>, 3> comps_;
};

/// Fourier coefficients u_k of a real three-component field, full n^3
/// lattice per component in FFT order. Hermitian symmetry
/// u_{-k} = conj(u_k) is maintained by every operation that produces one.
class SpectralField {
public:
    SpectralField() = default;
    explicit SpectralField(const GridSpec& grid);

    const GridSpec& grid() const { return grid_; }

    std::span<Complex> component(int c) { return comps_[c]; }
    std::span<const Complex> component(int c) const { return comps_[c]; }

    Complex& at(int c, std::size_t linear) { return comps_[c][linear]; }
    Complex at(int c, std::size_t linear) const { return comps_[c][linear]; }

    /// Coefficient at signed wavevector k (|k_i| <= n/2).
    Complex& mode(int c, const std::array<int, 3>& k);
    Complex mode(int c, const std::array<int, 3>& k) const;

    /// Sets u_k and its conjugate partner u_{-k} together.
    void set_mode_pair(const std::array<int, 3>& k, const std::array<Complex, 3>& value);

private:
    std::size_t linear_of(const std::array<int, 3>& k) const;

    GridSpec grid_;
    std::array<std::vector<Complex>, 3> comps_;
};

}  // namespace sns
