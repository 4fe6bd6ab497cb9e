#include "sns/diagnostics.hpp"

#include <cmath>

#include "sns/error.hpp"
#include "sns/kernels.hpp"
#include "sns/spectral.hpp"

namespace sns {

bool DiagnosticsRecord::finite() const {
    for (double v : {t, dt, energy, dissipation, power_in, max_velocity, max_vorticity, bkm_integral, residual,
                     residual_accum}) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

void EnergyLedger::append(const DiagnosticsRecord& r) {
    if (!records_.empty()) {
        const auto& last = records_.back();
        if (r.step <= last.step) throw Error("ledger steps must strictly increase");
        if (!(r.t > last.t)) throw Error("ledger times must strictly increase");
    }
    records_.push_back(r);
}

double kinetic_energy(const SpectralField& u) { return 0.5 * l2_norm_sq(u); }

double dissipation(const SpectralField& u, double nu) { return nu * grad_norm_sq(u); }

double power_input(const SpectralField& u, const SpectralField& f) {
    if (!(u.grid() == f.grid())) throw Error("power_input: grid mismatch");
    return box_volume() * kernels::pairing(kernels::views(u), kernels::views(f));
}

double max_velocity(const SpectralField& u) {
    return kernels::max_magnitude(kernels::views(inverse_transform_unchecked(u)));
}

double max_vorticity(const SpectralField& u) { return max_velocity(curl(u)); }

double bkm_update(double accum, double max_vort, double dt) {
    if (!(accum >= 0.0) || !(max_vort >= 0.0) || !(dt >= 0.0)) {
        throw Error("bkm_update: inputs must be non-negative");
    }
    return accum + dt * max_vort;
}

double energy_residual(const EnergySample& prev, const EnergySample& next, double dt, TimeAverage average) {
    double d_avg = 0.5 * (prev.dissipation + next.dissipation);
    double p_avg = 0.5 * (prev.power_in + next.power_in);
    if (average == TimeAverage::hermite) {
        d_avg += dt / 12.0 * (prev.dissipation_rate - next.dissipation_rate);
        p_avg += dt / 12.0 * (prev.power_rate - next.power_rate);
    }
    return next.energy - prev.energy + dt * d_avg - dt * p_avg;
}

StateSample sample_state(const SpectralField& u, double t, const NavierStokesModel& model, const SpectralField& rhs) {
    const double nu = model.params().nu;
    const auto uv = kernels::views(u);
    const auto rv = kernels::views(rhs);
    StateSample s;
    s.energy.energy = kinetic_energy(u);
    s.energy.dissipation = dissipation(u, nu);
    s.energy.dissipation_rate = 2.0 * nu * box_volume() * kernels::k2_pairing(u.grid(), uv, rv);

    const Forcing& f = model.forcing();
    if (f.active()) {
        const auto shape = kernels::views(f.shape());
        const double u_dot_f = box_volume() * kernels::pairing(uv, shape);
        const double rhs_dot_f = box_volume() * kernels::pairing(rv, shape);
        s.energy.power_in = f.factor(t) * u_dot_f;
        s.energy.power_rate = f.factor(t) * rhs_dot_f + f.factor_rate(t) * u_dot_f;
    }
    s.max_velocity = max_velocity(u);
    s.max_vorticity = max_vorticity(u);
    return s;
}

}  // namespace sns
