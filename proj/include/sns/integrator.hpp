#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "sns/dynamics.hpp"
#include "sns/field.hpp"

namespace sns {

struct DiagnosticsRecord;

/// CFL step-size control. dt_min == dt_max selects fixed-step mode, in which
/// the CFL candidate never triggers an underflow stop.
struct StepControl {
    double cfl_number = 0.5;
    double dt_min = 1e-12;
    double dt_max = 1e-2;
    double t_end = 1.0;
    long max_steps = 1000000;

    void validate() const;
    bool fixed_step() const { return dt_min == dt_max; }
};

struct SimulationState {
    double t = 0.0;
    double dt = 0.0;
    long step = 0;
    SpectralField field;
    double bkm_accum = 0.0;
    bool diverged = false;
};

enum class StopReason { reached_t_end, max_steps, dt_underflow, diverged };

const char* to_string(StopReason reason);

/// One classical RK4 step. The result is dealiased and projected; a
/// non-finite stage or result marks it diverged. `rhs_at_start`, when given,
/// must equal model.rhs(state.field, state.t) and is used as the first stage.
/// Throws Error when called on a diverged state or with dt <= 0.
SimulationState rk4_step(const SimulationState& state, double dt, const NavierStokesModel& model,
                         const SpectralField* rhs_at_start = nullptr);

SimulationState rk4_step(const SimulationState& state, double dt, const PhysicsParams& params);

/// Advective candidate cfl * dx / max(|u|_inf, 1e-12) and viscous cap
/// cfl * 2 / (nu k_max^2); the smaller of the two, before clamping.
double cfl_candidate(double max_velocity, const GridSpec& grid, const StepControl& control, double nu);

/// cfl_candidate clamped to [dt_min, dt_max].
double cfl_dt(double max_velocity, const GridSpec& grid, const StepControl& control, double nu);
double cfl_dt(const SpectralField& u, const StepControl& control, const PhysicsParams& params);

/// Receives every ledger row (including the one for the initial state)
/// together with the state it describes. Observers must not keep
/// references to the state beyond the call.
using StepObserver = std::function<void(const SimulationState&, const DiagnosticsRecord&)>;

struct RunOptions {
    /// Residual averaging for the energy balance (see diagnostics.hpp).
    bool hermite_average = true;
};

struct RunResult {
    SimulationState state;
    StopReason reason = StopReason::reached_t_end;
};

/// Steps from state.t to control.t_end, feeding every step's diagnostics
/// to the observers. Never throws on divergence; the terminal state carries
/// diverged = true and the reason says why the loop stopped.
RunResult advance(SimulationState state, const StepControl& control, const NavierStokesModel& model,
                  const std::vector<StepObserver>& observers, const RunOptions& options = {});

}  // namespace sns
