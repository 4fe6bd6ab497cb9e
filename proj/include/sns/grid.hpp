#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>

namespace sns {

enum class DealiasRule { two_thirds, none };

/// Uniform periodic grid on [0, 2pi)^3 with n points per axis.
///
/// Linear storage is row-major with the x index slowest; the same layout is
/// used for physical samples and for Fourier coefficients, the latter in FFT
/// order (0, 1, ..., n/2-1, -n/2, ..., -1).
class GridSpec {
public:
    static constexpr double domain_length = 2.0 * std::numbers::pi;

    GridSpec() = default;
    GridSpec(int n_points, DealiasRule rule);

    int n() const { return n_; }
    DealiasRule dealias_rule() const { return rule_; }

    /// Largest retained |k_i| after dealiasing.
    int k_max() const { return k_max_; }

    std::size_t size() const { return size_; }
    double dx() const { return domain_length / n_; }

    /// Signed wavenumber for an FFT-ordered index.
    int wavenumber(int index) const { return index < n_ / 2 ? index : index - n_; }

    /// FFT-ordered index for a signed wavenumber; |k| <= n/2.
    int index_of(int k) const { return k >= 0 ? k : k + n_; }

    std::size_t linear(int ix, int iy, int iz) const {
        return (static_cast<std::size_t>(ix) * n_ + iy) * n_ + iz;
    }

    /// Index of the mode -k for the mode stored at (ix, iy, iz).
    std::size_t conjugate_linear(int ix, int iy, int iz) const {
        return linear((n_ - ix) % n_, (n_ - iy) % n_, (n_ - iz) % n_);
    }

    std::array<int, 3> wavevector(std::size_t linear_index) const {
        const int iz = static_cast<int>(linear_index % n_);
        const int iy = static_cast<int>((linear_index / n_) % n_);
        const int ix = static_cast<int>(linear_index / (static_cast<std::size_t>(n_) * n_));
        return {wavenumber(ix), wavenumber(iy), wavenumber(iz)};
    }

    /// True when every |k_i| <= k_max.
    bool retained(const std::array<int, 3>& k) const {
        return std::abs(k[0]) <= k_max_ && std::abs(k[1]) <= k_max_ && std::abs(k[2]) <= k_max_;
    }

    double coordinate(int index) const { return domain_length * index / n_; }

    bool operator==(const GridSpec& other) const {
        return n_ == other.n_ && rule_ == other.rule_;
    }

private:
    int n_ = 0;
    DealiasRule rule_ = DealiasRule::two_thirds;
    int k_max_ = 0;
    std::size_t size_ = 0;
};

const char* to_string(DealiasRule rule);

}  // namespace sns
