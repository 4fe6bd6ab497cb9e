#include "sns/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sns/diagnostics.hpp"
#include "sns/error.hpp"
#include "sns/kernels.hpp"
#include "sns/spectral.hpp"

namespace sns {

const char* to_string(StopReason reason) {
    switch (reason) {
        case StopReason::reached_t_end: return "reached_t_end";
        case StopReason::max_steps: return "max_steps";
        case StopReason::dt_underflow: return "dt_underflow";
        case StopReason::diverged: return "diverged";
    }
    return "?";
}

void StepControl::validate() const {
    if (!(cfl_number > 0.0 && cfl_number <= 1.0)) throw Error("cfl_number must be in (0, 1]");
    if (!(dt_min > 0.0)) throw Error("dt_min must be positive");
    if (!(dt_max > 0.0)) throw Error("dt_max must be positive");
    if (!(dt_min <= dt_max)) throw Error("dt_min must not exceed dt_max");
    if (!(t_end >= 0.0)) throw Error("t_end must be non-negative");
    if (max_steps < 0) throw Error("max_steps must be non-negative");
}

SimulationState rk4_step(const SimulationState& state, double dt, const NavierStokesModel& model,
                         const SpectralField* rhs_at_start) {
    if (state.diverged) throw Error("rk4_step: state has diverged");
    if (!(dt > 0.0)) throw Error("rk4_step: dt must be positive");

    const SpectralField& u = state.field;
    const GridSpec& g = u.grid();
    SimulationState next;
    next.t = state.t + dt;
    next.dt = dt;
    next.step = state.step + 1;
    next.bkm_accum = state.bkm_accum;

    try {
        const SpectralField k1 = rhs_at_start ? *rhs_at_start : model.rhs(u, state.t);
        const SpectralField k2 = model.rhs(add_scaled(u, 0.5 * dt, k1), state.t + 0.5 * dt);
        const SpectralField k3 = model.rhs(add_scaled(u, 0.5 * dt, k2), state.t + 0.5 * dt);
        const SpectralField k4 = model.rhs(add_scaled(u, dt, k3), state.t + dt);

        next.field = u;
        for (int c = 0; c < 3; ++c) {
            auto out = next.field.component(c);
            kernels::axpy(out, dt / 6.0, k1.component(c));
            kernels::axpy(out, dt / 3.0, k2.component(c));
            kernels::axpy(out, dt / 3.0, k3.component(c));
            kernels::axpy(out, dt / 6.0, k4.component(c));
        }
        kernels::dealias(g, kernels::spans(next.field));
        kernels::leray_project(g, kernels::spans(next.field));
        for (int c = 0; c < 3; ++c) {
            if (!kernels::all_finite(next.field.component(c))) next.diverged = true;
        }
    } catch (const DivergedError&) {
        next.diverged = true;
        if (next.field.grid().n() == 0) next.field = SpectralField(g);
    }
    return next;
}

SimulationState rk4_step(const SimulationState& state, double dt, const PhysicsParams& params) {
    return rk4_step(state, dt, NavierStokesModel(params, state.field.grid()));
}

double cfl_candidate(double max_velocity, const GridSpec& grid, const StepControl& control, double nu) {
    constexpr double u_floor = 1e-12;
    const double advective = control.cfl_number * grid.dx() / std::max(max_velocity, u_floor);
    const double k2 = double(grid.k_max()) * grid.k_max();
    const double viscous = control.cfl_number * 2.0 / (nu * k2);
    return std::min(advective, viscous);
}

double cfl_dt(double max_velocity, const GridSpec& grid, const StepControl& control, double nu) {
    return std::clamp(cfl_candidate(max_velocity, grid, control, nu), control.dt_min, control.dt_max);
}

double cfl_dt(const SpectralField& u, const StepControl& control, const PhysicsParams& params) {
    return cfl_dt(max_velocity(u), u.grid(), control, params.nu);
}

namespace {

DiagnosticsRecord diverged_record(const SimulationState& s) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    DiagnosticsRecord r;
    r.step = s.step;
    r.t = s.t;
    r.dt = s.dt;
    r.energy = kinetic_energy(s.field);
    r.dissipation = r.power_in = r.max_velocity = r.max_vorticity = nan;
    r.bkm_integral = s.bkm_accum;
    r.residual = r.residual_accum = nan;
    return r;
}

}  // namespace

RunResult advance(SimulationState state, const StepControl& control, const NavierStokesModel& model,
                  const std::vector<StepObserver>& observers, const RunOptions& options) {
    control.validate();
    auto emit = [&](const SimulationState& s, const DiagnosticsRecord& r) {
        for (const auto& obs : observers) obs(s, r);
    };
    if (state.diverged) return {std::move(state), StopReason::diverged};
    if (!(state.t < control.t_end)) return {std::move(state), StopReason::reached_t_end};

    const TimeAverage average = options.hermite_average ? TimeAverage::hermite : TimeAverage::trapezoid;
    SpectralField rhs_now;
    StateSample sample;
    try {
        rhs_now = model.rhs(state.field, state.t);
        sample = sample_state(state.field, state.t, model, rhs_now);
    } catch (const DivergedError&) {
        state.diverged = true;
        emit(state, diverged_record(state));
        return {std::move(state), StopReason::diverged};
    }

    DiagnosticsRecord row;
    row.step = state.step;
    row.t = state.t;
    row.dt = 0.0;
    row.energy = sample.energy.energy;
    row.dissipation = sample.energy.dissipation;
    row.power_in = sample.energy.power_in;
    row.max_velocity = sample.max_velocity;
    row.max_vorticity = sample.max_vorticity;
    row.bkm_integral = state.bkm_accum;
    emit(state, row);

    const long first_step = state.step;
    double residual_accum = 0.0;
    for (;;) {
        if (state.step - first_step >= control.max_steps) return {std::move(state), StopReason::max_steps};

        const double candidate = cfl_candidate(sample.max_velocity, model.grid(), control, model.params().nu);
        if (!control.fixed_step() && candidate < control.dt_min) {
            return {std::move(state), StopReason::dt_underflow};
        }
        double dt = std::clamp(candidate, control.dt_min, control.dt_max);
        const double remaining = control.t_end - state.t;
        const bool last = dt >= remaining * (1.0 - 1e-12);
        if (last) dt = remaining;

        SimulationState next = rk4_step(state, dt, model, &rhs_now);
        next.bkm_accum = bkm_update(state.bkm_accum, sample.max_vorticity, dt);
        if (last) next.t = control.t_end;

        SpectralField rhs_next;
        StateSample next_sample;
        if (!next.diverged) {
            try {
                rhs_next = model.rhs(next.field, next.t);
                next_sample = sample_state(next.field, next.t, model, rhs_next);
            } catch (const DivergedError&) {
                next.diverged = true;
            }
        }
        if (!next.diverged) {
            DiagnosticsRecord r;
            r.step = next.step;
            r.t = next.t;
            r.dt = dt;
            r.energy = next_sample.energy.energy;
            r.dissipation = next_sample.energy.dissipation;
            r.power_in = next_sample.energy.power_in;
            r.max_velocity = next_sample.max_velocity;
            r.max_vorticity = next_sample.max_vorticity;
            r.bkm_integral = next.bkm_accum;
            r.residual = energy_residual(sample.energy, next_sample.energy, dt, average);
            residual_accum += std::abs(r.residual);
            r.residual_accum = residual_accum;
            if (r.finite()) {
                emit(next, r);
                state = std::move(next);
                rhs_now = std::move(rhs_next);
                sample = next_sample;
                if (last) return {std::move(state), StopReason::reached_t_end};
                continue;
            }
            next.diverged = true;
        }
        emit(next, diverged_record(next));
        return {std::move(next), StopReason::diverged};
    }
}

}  // namespace sns
