#include <cmath>
#include <numbers>

#include "doctest.h"
#include "sns/diagnostics.hpp"
#include "sns/dynamics.hpp"
#include "sns/error.hpp"
#include "sns/kernels.hpp"
#include "sns/spectral.hpp"
#include "test_support.hpp"

using namespace sns;
using std::numbers::pi;

TEST_CASE("Taylor-Green initial condition") {
    const GridSpec g(16, DealiasRule::two_thirds);
    InitialConditionSpec ic;
    ic.amplitude = 2.0;
    const SpectralField u = make_initial_condition(ic, g);
    CHECK(relative_divergence(u) < 1e-15);
    // E = A^2 (2pi)^3 / 8
    CHECK(test::rel(kinetic_energy(u), 4.0 * pi * pi * pi) < 1e-14);
    CHECK(std::abs(u.mode(0, {1, 1, 1}) - Complex(0.0, -0.25)) < 1e-15);
}

TEST_CASE("concentrated vortex is divergence-free and swirls about its axis") {
    const GridSpec g(16, DealiasRule::two_thirds);
    InitialConditionSpec ic;
    ic.kind = InitialConditionKind::concentrated_vortex;
    ic.amplitude = 3.0;
    ic.concentration = 2.0;
    const SpectralField u = make_initial_condition(ic, g);
    CHECK(relative_divergence(u) < 1e-13);
    CHECK(kinetic_energy(u) > 0.0);
    // No axial velocity for an axis along z.
    // (Only the periodic wrap of the envelope, ~e^{-c pi^2}, leaks into u_z.)
    double uz = 0.0, ux = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        uz = std::max(uz, std::abs(u.at(2, i)));
        ux = std::max(ux, std::abs(u.at(0, i)));
    }
    CHECK(uz < 1e-6 * ux);
}

TEST_CASE("random analytic data is grid independent") {
    InitialConditionSpec ic;
    ic.kind = InitialConditionKind::random_analytic;
    ic.concentration = 2.0;
    ic.seed = 17;
    const GridSpec a(16, DealiasRule::two_thirds), b(24, DealiasRule::two_thirds);
    const SpectralField ua = make_initial_condition(ic, a);
    const SpectralField ub = make_initial_condition(ic, b);
    CHECK(relative_divergence(ua) < 1e-14);
    CHECK(hermitian_defect(ua) < 1e-15);
    for (int kx = -a.k_max(); kx <= a.k_max(); ++kx)
        for (int ky = -a.k_max(); ky <= a.k_max(); ++ky)
            for (int kz = -a.k_max(); kz <= a.k_max(); ++kz)
                for (int c = 0; c < 3; ++c) CHECK(ua.mode(c, {kx, ky, kz}) == ub.mode(c, {kx, ky, kz}));
    // |u_k| = A e^{-|k|/c}
    const std::array<int, 3> k{2, -1, 3};
    double mag = 0.0;
    for (int c = 0; c < 3; ++c) mag += std::norm(ua.mode(c, k));
    CHECK(test::rel(std::sqrt(mag), std::exp(-std::sqrt(14.0) / 2.0)) < 1e-12);
    ic.seed = 18;
    CHECK(make_initial_condition(ic, a).mode(0, k) != ua.mode(0, k));
}

TEST_CASE("viscous-only right-hand side") {
    const GridSpec g(8, DealiasRule::two_thirds);
    PhysicsParams p;
    p.nu = 0.3;
    p.nonlinear = false;
    SpectralField u(g);
    u.set_mode_pair({1, 2, 0}, {Complex(0.2, 0.1), Complex(-0.1, -0.05), Complex{}});
    const SpectralField r = rhs(u, 0.0, p);
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(r.at(c, i) + 0.3 * 5.0 * u.at(c, i)) < 1e-15);
}

TEST_CASE("nonlinear term conserves energy and stays solenoidal") {
    const GridSpec g(16, DealiasRule::two_thirds);
    InitialConditionSpec ic;
    ic.kind = InitialConditionKind::random_analytic;
    ic.concentration = 1.5;
    const SpectralField u = make_initial_condition(ic, g);
    const SpectralField nl = nonlinear_term(u);
    CHECK(relative_divergence(nl) < 1e-13);
    const double power = kernels::pairing(kernels::views(nl), kernels::views(u));
    const double scale = std::sqrt(l2_norm_sq(nl) * l2_norm_sq(u));
    CHECK(std::abs(power) / scale < 1e-13);
    // Taylor-Green at t = 0 has no nonlinear energy transfer into itself either.
    const SpectralField tg = make_initial_condition({}, g);
    CHECK(std::abs(kernels::pairing(kernels::views(nonlinear_term(tg)), kernels::views(tg))) < 1e-13);
}

TEST_CASE("forcing") {
    const GridSpec g(16, DealiasRule::two_thirds);
    ForcingSpec f;
    f.kind = ForcingKind::steady_analytic;
    f.amplitude = 0.5;
    const Forcing F(f, g);
    CHECK(F.factor(3.0) == 1.0);
    CHECK(F.factor_rate(3.0) == 0.0);
    CHECK(relative_divergence(F.shape()) < 1e-15);
    // ABC field at k_f = 1: |f|^2 averages to 3 A^2.
    CHECK(test::rel(l2_norm_sq(F.shape()), 3.0 * 0.25 * box_volume()) < 1e-13);

    ForcingSpec pulse;
    pulse.kind = ForcingKind::concentrated_pulse;
    pulse.amplitude = 2.0;
    pulse.length_scale = 0.8;
    pulse.ramp_time = 0.5;
    const Forcing P(pulse, g);
    CHECK(P.factor(0.0) == 0.0);
    CHECK(P.factor(0.25) == doctest::Approx(0.5));
    CHECK(P.factor(1.0) == 1.0);
    CHECK(P.factor_rate(0.25) == doctest::Approx(2.0));
    CHECK(l2_norm_sq(P.at(0.0)) == 0.0);

    ForcingSpec bad;
    bad.kind = ForcingKind::steady_analytic;
    bad.length_scale = 0.0;
    CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("parameter validation") {
    PhysicsParams p;
    p.nu = 0.0;
    CHECK_THROWS_WITH_AS(p.validate(), "nu must be positive", Error);
    InitialConditionSpec ic;
    ic.concentration = -1.0;
    CHECK_THROWS_AS(ic.validate(), Error);
}
