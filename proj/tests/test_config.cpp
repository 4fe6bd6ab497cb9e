#include <string>

#include "doctest.h"
#include "sns/config.hpp"
#include "sns/error.hpp"

using namespace sns;

namespace {

const char* kMinimal = R"(grid:
  n_points: 32
physics:
  nu: 0.1
initial_condition:
  kind: taylor_green
)";

ConfigError expect_error(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e;
    }
    FAIL("expected ConfigError");
    return ConfigError("", 0, "");
}

}  // namespace

TEST_CASE("minimal config takes documented defaults") {
    const RunConfig c = parse_config(kMinimal);
    CHECK(c.grid.n_points == 32);
    CHECK(c.grid.dealias == DealiasRule::two_thirds);
    CHECK(c.physics.nu == 0.1);
    CHECK(c.physics.nonlinear);
    CHECK(c.physics.forcing.kind == ForcingKind::none);
    CHECK(c.initial_condition.kind == InitialConditionKind::taylor_green);
    CHECK(c.initial_condition.amplitude == 1.0);
    CHECK(c.initial_condition.seed == 0u);
    CHECK(c.step_control.cfl_number == 0.5);
    CHECK(c.step_control.dt_min == 1e-12);
    CHECK(c.step_control.dt_max == 1e-2);
    CHECK(c.step_control.t_end == 1.0);
    CHECK(c.step_control.max_steps == 1000000);
    CHECK_FALSE(c.monitor.epsilon.has_value());
    CHECK_FALSE(c.monitor.energy_cap.has_value());
    CHECK_FALSE(c.monitor.fit_window.has_value());
    CHECK(c.monitor.d_digits == 4.0);
    CHECK(c.monitor.spectrum_every == 10);
    CHECK(c.monitor.time_average == TimeAverage::hermite);
    CHECK(c.output.directory == "run");
    CHECK(c.output.ledger_every == 1);
    CHECK(c.output.snapshot_every == 0);
    CHECK(c.convergence.norm.kind == ErrorNorm::Kind::l2);
    CHECK(c.convergence.reference_factor == 16.0);
}

TEST_CASE("invariant violations name key and line") {
    ConfigError odd = expect_error("grid:\n  n_points: 33\nphysics:\n  nu: 0.1\n");
    CHECK(std::string(odd.what()).find("n_points must be even") != std::string::npos);
    CHECK(odd.key() == "grid.n_points");
    CHECK(odd.line() == 2);

    ConfigError nu = expect_error("grid:\n  n_points: 32\nphysics:\n  nu: 0\n");
    CHECK(std::string(nu.what()).find("nu must be positive") != std::string::npos);
    CHECK(nu.key() == "physics.nu");
    CHECK(nu.line() == 4);
}

TEST_CASE("unknown keys and type mismatches are rejected") {
    ConfigError unknown = expect_error(std::string(kMinimal) + "  amplitud: 2.0\n");
    CHECK(unknown.key() == "initial_condition.amplitud");
    CHECK(unknown.line() == 7);
    CHECK(std::string(unknown.what()).find("unknown key") != std::string::npos);

    ConfigError section = expect_error(std::string(kMinimal) + "extras:\n  a: 1\n");
    CHECK(section.key() == "extras");

    ConfigError type = expect_error("grid:\n  n_points: many\nphysics:\n  nu: 0.1\n");
    CHECK(type.key() == "grid.n_points");
    CHECK(std::string(type.what()).find("expected an integer") != std::string::npos);

    ConfigError kind = expect_error(std::string(kMinimal) + "  amplitude: [1, 2]\n");
    CHECK(kind.key() == "initial_condition.amplitude");

    ConfigError e = expect_error("grid:\n  n_points: 32\nphysics:\n  nu: 0.1\ninitial_condition:\n  kind: vortex\n");
    CHECK(std::string(e.what()).find("taylor_green") != std::string::npos);

    CHECK(expect_error("physics:\n  nu: 0.1\n").key() == "grid.n_points");
    CHECK(expect_error("grid:\n  n_points: 16\n").key() == "physics.nu");
    CHECK_THROWS_AS(parse_config(""), ConfigError);
    CHECK_THROWS_AS(parse_config("grid: [1, 2"), ConfigError);
    CHECK(expect_error(std::string(kMinimal) + "step_control:\n  dt_min: 1\n  dt_max: 0.1\n").key() ==
          "step_control.dt_min");
    CHECK(expect_error(std::string(kMinimal) + "output:\n  ledger_every: 0\n").key() == "output.ledger_every");
}

TEST_CASE("full config and echo round trip") {
    const std::string text = R"(grid:
  n_points: 24
  dealias: none
physics:
  nu: 0.003
  nonlinear: false
  forcing:
    kind: concentrated_pulse
    amplitude: 2.5
    length_scale: 0.5
    center: [1, 2, 3]
    ramp_time: 0.1
initial_condition:
  kind: random_analytic
  amplitude: 0.1
  concentration: 2
  seed: 12345678901
step_control:
  cfl_number: 0.3
  dt_min: 1e-9
  dt_max: 0.001
  t_end: 0.5
  max_steps: 77
monitor:
  epsilon: 1e-5
  energy_cap: auto
  relative_residual: true
  fit_window: [2, 6]
  d_digits: 3
  spectrum_every: 5
  time_average: trapezoid
output:
  directory: out/run 1
  ledger_every: 2
  snapshot_every: 10
convergence:
  norm: h_s
  sobolev_order: 2.5
  t_final: 0.01
  grids: [8, 16, 32]
  spatial_dt: 0.0005
  dts: [0.01, 0.005, 0.0025]
  reference_factor: 8
  pairs: [[8, 0.01], [16, 0.005]]
  reference: [32, 0.001]
)";
    const RunConfig c = parse_config(text);
    CHECK(c.grid.dealias == DealiasRule::none);
    CHECK(c.physics.forcing.center[2] == 3.0);
    CHECK(c.initial_condition.seed == 12345678901ULL);
    CHECK(*c.monitor.epsilon == 1e-5);
    CHECK_FALSE(c.monitor.energy_cap.has_value());
    CHECK(c.monitor.fit_window->hi == 6);
    CHECK(c.output.directory == "out/run 1");
    CHECK(c.convergence.norm.kind == ErrorNorm::Kind::sobolev);
    CHECK(c.convergence.pairs.size() == 2u);
    CHECK(c.convergence.reference.first == 32);

    const std::string echo = echo_config(c);
    const RunConfig again = parse_config(echo);
    CHECK(echo_config(again) == echo);
    CHECK(again.physics.nu == c.physics.nu);
    CHECK(again.step_control.dt_min == c.step_control.dt_min);
    CHECK(again.initial_condition.seed == c.initial_condition.seed);
    CHECK(again.monitor.time_average == TimeAverage::trapezoid);

    const RunConfig minimal = parse_config(kMinimal);
    CHECK(echo_config(parse_config(echo_config(minimal))) == echo_config(minimal));
}
