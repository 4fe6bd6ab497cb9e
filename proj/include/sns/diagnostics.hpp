#pragma once

#include <vector>

#include "sns/dynamics.hpp"
#include "sns/field.hpp"

namespace sns {

/// One ledger row. Row n describes the state at t_n; `residual` is the
/// energy-balance defect of the step that ended at t_n (0 on row 0).
/// dissipation and power_in are the instantaneous values at t_n.
struct DiagnosticsRecord {
    long step = 0;
    double t = 0.0;
    double dt = 0.0;
    double energy = 0.0;
    double dissipation = 0.0;
    double power_in = 0.0;
    double max_velocity = 0.0;
    double max_vorticity = 0.0;
    double bkm_integral = 0.0;
    double residual = 0.0;
    double residual_accum = 0.0;

    bool finite() const;
};

/// Append-only sequence of records; steps and times strictly increase.
class EnergyLedger {
public:
    void append(const DiagnosticsRecord& r);
    const std::vector<DiagnosticsRecord>& records() const { return records_; }
    bool empty() const { return records_.empty(); }
    std::size_t size() const { return records_.size(); }
    const DiagnosticsRecord& back() const { return records_.back(); }

private:
    std::vector<DiagnosticsRecord> records_;
};

/// E = 1/2 ||u||^2.
double kinetic_energy(const SpectralField& u);

/// D = nu ||grad u||^2.
double dissipation(const SpectralField& u, double nu);

/// P = integral of u . f, throws on grid mismatch.
double power_input(const SpectralField& u, const SpectralField& f);

/// Grid-sampled sup norm of |u|.
double max_velocity(const SpectralField& u);

/// Grid-sampled sup norm of |curl u|.
double max_vorticity(const SpectralField& u);

/// Left Riemann sum update accum + dt * max_vort.
double bkm_update(double accum, double max_vort, double dt);

/// Energy-balance inputs at one time level. The rates are the exact time
/// derivatives of D and P along the semi-discrete flow.
struct EnergySample {
    double energy = 0.0;
    double dissipation = 0.0;
    double power_in = 0.0;
    double dissipation_rate = 0.0;
    double power_rate = 0.0;
};

enum class TimeAverage {
    trapezoid,  // (g0 + g1) / 2
    hermite,    // (g0 + g1) / 2 + dt (g0' - g1') / 12
};

/// R = E1 - E0 + dt D_avg - dt P_avg.
double energy_residual(const EnergySample& prev, const EnergySample& next, double dt,
                       TimeAverage average = TimeAverage::hermite);

/// Everything the ledger needs about one state, computed once.
struct StateSample {
    EnergySample energy;
    double max_velocity = 0.0;
    double max_vorticity = 0.0;
};

/// `rhs` must be model.rhs(u, t).
StateSample sample_state(const SpectralField& u, double t, const NavierStokesModel& model, const SpectralField& rhs);

}  // namespace sns
