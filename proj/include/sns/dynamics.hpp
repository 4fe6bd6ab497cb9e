#pragma once

#include <array>
#include <cstdint>
#include <numbers>
#include <optional>

#include "sns/field.hpp"

namespace sns {

enum class ForcingKind { none, steady_analytic, concentrated_pulse };
enum class InitialConditionKind { taylor_green, concentrated_vortex, random_analytic };

const char* to_string(ForcingKind kind);
const char* to_string(InitialConditionKind kind);

inline constexpr std::array<double, 3> kBoxCentre{std::numbers::pi, std::numbers::pi, std::numbers::pi};

/// Body force f(x, t).
///
/// steady_analytic is the ABC (Arnold-Beltrami-Childress) field at
/// wavenumber k_f = max(1, round(2pi / length_scale)):
///   f = A (sin k_f z + cos k_f y, sin k_f x + cos k_f z, sin k_f y + cos k_f x).
/// concentrated_pulse is a Gaussian-enveloped swirl about the z axis through
/// `center`, of width length_scale, switched on linearly over ramp_time.
struct ForcingSpec {
    ForcingKind kind = ForcingKind::none;
    double amplitude = 0.0;
    double length_scale = 2.0 * std::numbers::pi;
    std::array<double, 3> center = kBoxCentre;
    double ramp_time = 0.0;

    void validate() const;
};

struct PhysicsParams {
    double nu = 0.0;
    ForcingSpec forcing;
    /// Off only for exercising the exact linear (Stokes) oracles.
    bool nonlinear = true;

    void validate() const;
};

/// taylor_green:        A (sin x cos y cos z, -cos x sin y cos z, 0)
/// concentrated_vortex: A exp(-c |x - x0|^2) (e x r), r the periodic
///                      displacement from x0 and e the unit vector along
///                      `axis`; Leray-projected.
/// random_analytic:     |u_k| = A e^{-|k|/c} with seeded random
///                      divergence-free directions and phases; the draw for
///                      a mode depends only on (seed, k), so the same field
///                      is produced on every grid that retains the mode.
struct InitialConditionSpec {
    InitialConditionKind kind = InitialConditionKind::taylor_green;
    double amplitude = 1.0;
    double concentration = 1.0;
    std::uint64_t seed = 0;
    std::array<double, 3> center = kBoxCentre;
    std::array<double, 3> axis{0.0, 0.0, 1.0};

    void validate() const;
};

SpectralField make_initial_condition(const InitialConditionSpec& spec, const GridSpec& grid);

/// Forcing with its spatial shape transformed once; evaluation at a time
/// only rescales.
class Forcing {
public:
    Forcing() = default;
    Forcing(const ForcingSpec& spec, const GridSpec& grid);

    bool active() const { return spec_.kind != ForcingKind::none; }
    const ForcingSpec& spec() const { return spec_; }

    /// Time factor multiplying the spatial shape, and its derivative.
    double factor(double t) const;
    double factor_rate(double t) const;

    SpectralField at(double t) const;

    /// Leray-projected, dealiased spatial shape (amplitude included).
    const SpectralField& shape() const { return shape_; }

private:
    ForcingSpec spec_;
    SpectralField shape_;
};

SpectralField eval_forcing(const ForcingSpec& spec, double t, const GridSpec& grid);

/// -P dealias((u . grad) u), products formed on the grid.
SpectralField nonlinear_term(const SpectralField& u);

/// Fourier-space Navier-Stokes right-hand side with pressure removed by
/// projection. Holds the prepared forcing for one grid.
class NavierStokesModel {
public:
    NavierStokesModel(const PhysicsParams& params, const GridSpec& grid);

    const PhysicsParams& params() const { return params_; }
    const GridSpec& grid() const { return grid_; }
    const Forcing& forcing() const { return forcing_; }

    /// N(u) - nu |k|^2 u + P f(t). Throws DivergedError on non-finite data.
    SpectralField rhs(const SpectralField& u, double t) const;

private:
    PhysicsParams params_;
    GridSpec grid_;
    Forcing forcing_;
};

SpectralField rhs(const SpectralField& u, double t, const PhysicsParams& params);

}  // namespace sns
