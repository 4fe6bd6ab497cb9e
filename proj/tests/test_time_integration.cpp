#include <cmath>

#include "doctest.h"
#include "sns/diagnostics.hpp"
#include "sns/error.hpp"
#include "sns/integrator.hpp"
#include "sns/spectral.hpp"
#include "test_support.hpp"

using namespace sns;

namespace {

SpectralField single_mode(const GridSpec& g, const std::array<int, 3>& k) {
    SpectralField u(g);
    // (1, -1, 0) direction is orthogonal to k = (1, 1, 0).
    u.set_mode_pair(k, {Complex(0.3, 0.2), Complex(-0.3, -0.2), Complex{}});
    return u;
}

}  // namespace

TEST_CASE("RK4 amplification on a decaying mode") {
    const GridSpec g(8, DealiasRule::two_thirds);
    PhysicsParams p;
    p.nu = 0.5;  // |k|^2 = 2 gives decay rate 1
    p.nonlinear = false;
    SimulationState s;
    s.field = single_mode(g, {1, 1, 0});
    const SimulationState next = rk4_step(s, 0.1, p);
    const Complex ratio = next.field.mode(0, {1, 1, 0}) / s.field.mode(0, {1, 1, 0});
    const double z = 0.1;
    const double expected = 1 - z + z * z / 2 - z * z * z / 6 + z * z * z * z / 24;
    CHECK(std::abs(ratio.real() - expected) < 1e-15);
    CHECK(std::abs(ratio.imag()) < 1e-15);
    CHECK(ratio.real() == doctest::Approx(0.9048375).epsilon(1e-7));
    CHECK(next.step == 1);
    CHECK(next.t == doctest::Approx(0.1));
    CHECK_THROWS_AS(rk4_step(s, 0.0, p), Error);
}

TEST_CASE("CFL step size") {
    const GridSpec g(32, DealiasRule::two_thirds);
    StepControl c;
    c.cfl_number = 0.5;
    c.dt_max = 1e-2;
    CHECK(cfl_dt(20.0, g, c, 1e-3) == doctest::Approx(0.004908738521234052).epsilon(1e-15));
    // clamped by dt_max for slow flow
    CHECK(cfl_dt(1e-3, g, c, 1e-3) == 1e-2);
    // viscous cap 2 c / (nu k_max^2)
    CHECK(cfl_candidate(1e-3, g, c, 1.0) == doctest::Approx(0.01));
    // zero velocity does not divide by zero
    CHECK(std::isfinite(cfl_candidate(0.0, g, c, 1e-3)));
    StepControl bad = c;
    bad.dt_min = 1.0;
    bad.dt_max = 0.1;
    CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("advance emits one row per step and lands on t_end") {
    const GridSpec g(16, DealiasRule::two_thirds);
    PhysicsParams p;
    p.nu = 0.1;
    const NavierStokesModel model(p, g);
    SimulationState s;
    s.field = make_initial_condition({}, g);
    StepControl c;
    c.t_end = 0.05;
    c.dt_max = 0.004;
    std::vector<DiagnosticsRecord> rows;
    const RunResult r = advance(s, c, model, {[&](const SimulationState&, const DiagnosticsRecord& d) {
                                    rows.push_back(d);
                                }});
    CHECK(r.reason == StopReason::reached_t_end);
    CHECK(r.state.t == 0.05);
    CHECK(rows.size() == static_cast<std::size_t>(r.state.step) + 1);
    CHECK(rows.front().dt == 0.0);
    CHECK(rows.front().residual == 0.0);
    EnergyLedger ledger;
    for (const auto& d : rows) ledger.append(d);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].t == doctest::Approx(rows[i - 1].t + rows[i].dt).epsilon(1e-14));
        CHECK(rows[i].energy < rows[i - 1].energy);
        CHECK(rows[i].bkm_integral == bkm_update(rows[i - 1].bkm_integral, rows[i - 1].max_vorticity, rows[i].dt));
    }
    CHECK(relative_divergence(r.state.field) < 1e-12);
}

TEST_CASE("stop reasons") {
    const GridSpec g(16, DealiasRule::two_thirds);
    PhysicsParams p;
    p.nu = 0.01;
    const NavierStokesModel model(p, g);
    SimulationState s;
    InitialConditionSpec ic;
    ic.amplitude = 1000.0;
    s.field = make_initial_condition(ic, g);

    StepControl c;
    c.t_end = 1.0;
    c.dt_min = 1e-3;  // CFL wants ~1e-4 at this amplitude
    CHECK(advance(s, c, model, {}).reason == StopReason::dt_underflow);

    c.dt_min = 1e-12;
    c.max_steps = 3;
    const RunResult capped = advance(s, c, model, {});
    CHECK(capped.reason == StopReason::max_steps);
    CHECK(capped.state.step == 3);

    // Fixed oversized step: blows up, last row is non-finite.
    StepControl fixed;
    fixed.t_end = 100.0;
    fixed.dt_min = fixed.dt_max = 0.5;
    std::vector<DiagnosticsRecord> rows;
    const RunResult blown = advance(s, fixed, model, {[&](const SimulationState&, const DiagnosticsRecord& d) {
                                        rows.push_back(d);
                                    }});
    CHECK(blown.reason == StopReason::diverged);
    CHECK(blown.state.diverged);
    REQUIRE(rows.size() >= 2);
    CHECK_FALSE(rows.back().finite());
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) CHECK(rows[i].finite());
}

TEST_CASE("step map is deterministic") {
    const GridSpec g(16, DealiasRule::two_thirds);
    PhysicsParams p;
    p.nu = 0.05;
    InitialConditionSpec ic;
    ic.kind = InitialConditionKind::random_analytic;
    ic.seed = 5;
    SimulationState s;
    s.field = make_initial_condition(ic, g);
    const SimulationState a = rk4_step(s, 1e-3, p);
    const SimulationState b = rk4_step(s, 1e-3, p);
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < g.size(); ++i) CHECK(a.field.at(c, i) == b.field.at(c, i));
}
