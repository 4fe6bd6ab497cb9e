#include "sns/field.hpp"

#include <cstdlib>

#include "sns/error.hpp"

namespace sns {

GridSpec::GridSpec(int n_points, DealiasRule rule) : n_(n_points), rule_(rule) {
    if (n_points < 4 || n_points % 2 != 0) throw Error("n_points must be even and >= 4");
    k_max_ = rule == DealiasRule::two_thirds ? n_points / 3 : n_points / 2 - 1;
    size_ = static_cast<std::size_t>(n_points) * n_points * n_points;
}

const char* to_string(DealiasRule rule) {
    return rule == DealiasRule::two_thirds ? "two_thirds" : "none";
}

RealField::RealField(const GridSpec& grid) : grid_(grid) {
    for (auto& c : comps_) c.assign(grid.size(), 0.0);
}

SpectralField::SpectralField(const GridSpec& grid) : grid_(grid) {
    for (auto& c : comps_) c.assign(grid.size(), Complex{});
}

std::size_t SpectralField::linear_of(const std::array<int, 3>& k) const {
    const int half = grid_.n() / 2;
    for (int v : k) {
        if (std::abs(v) > half) throw Error("wavevector outside the grid");
    }
    return grid_.linear(grid_.index_of(k[0]), grid_.index_of(k[1]), grid_.index_of(k[2]));
}

Complex& SpectralField::mode(int c, const std::array<int, 3>& k) { return comps_[c][linear_of(k)]; }

Complex SpectralField::mode(int c, const std::array<int, 3>& k) const {
    return comps_[c][linear_of(k)];
}

void SpectralField::set_mode_pair(const std::array<int, 3>& k, const std::array<Complex, 3>& value) {
    const std::size_t a = linear_of(k);
    const std::size_t b = linear_of({-k[0], -k[1], -k[2]});
    for (int c = 0; c < 3; ++c) {
        comps_[c][a] = value[c];
        comps_[c][b] = std::conj(value[c]);
    }
    if (a == b) {
        for (int c = 0; c < 3; ++c) comps_[c][a] = value[c].real();
    }
}

}  // namespace sns
