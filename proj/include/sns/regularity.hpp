#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sns/diagnostics.hpp"
#include "sns/field.hpp"

namespace sns {

// A-posteriori regularity analysis: analyticity-strip fits of the spectrum,
// truncation-error bound shapes, the resolution condition and the numerical
// breakdown time. Fitted constants are empirical surrogates, never certified.

enum class ShellStatistic { max, rms };

/// Modes with m < |k| <= m + 1. `radius` is the |k| at which the maximum is
/// attained (m + 1/2 for RMS shells or synthetic profiles).
struct Shell {
    int m = 0;
    double amplitude = 0.0;
    double radius = 0.5;
};

struct FitWindow {
    int lo = 0;
    int hi = 0;
};

struct SpectrumProfile {
    std::vector<Shell> shells;
    bool fitted = false;
    double fit_c_star = 0.0;
    double fit_delta = 0.0;
    double fit_r2 = 0.0;
    FitWindow fit_window;
};

/// Shells 0 .. k_max - 1 of the per-mode Euclidean coefficient magnitude.
SpectrumProfile shell_spectrum(const SpectralField& u, ShellStatistic stat = ShellStatistic::max);

/// Shells [k_max/4, 3 k_max/4].
FitWindow default_fit_window(int k_max);

/// Least-squares line through (radius, log amplitude) over the window.
/// Shells at or below max(1e-30, relative_floor * peak) are skipped.
/// Throws Error("spectrum under-resolved") with fewer than 4 usable shells.
SpectrumProfile fit_strip(const SpectrumProfile& profile, FitWindow window, double relative_floor = 0.0);

enum class BoundNorm { l2, linf };

/// l2: C* (1+K) e^{-delta K};  linf: C* (1+K)^2 e^{-delta K}.
/// Throws Error("no analyticity margin") if fit_delta is 0.
double truncation_bound(const SpectrumProfile& profile, int K, BoundNorm norm);

/// (2pi)^{3/2} C* (sum_{m>=K} N(m) e^{-2 delta m})^{1/2}, with N(m) bounded
/// by the volume of the shell widened by sqrt(3)/2. An upper bound on the
/// L2 norm of the modes with |k| > K for any field whose coefficients lie
/// under C* e^{-delta |k|}.
double tail_sum_bound(const SpectrumProfile& profile, int K);

/// Smallest K >= 1 from which C*(1+K)^2 e^{-delta K} <= eps/2 holds for
/// every larger K.
int required_cutoff(double c_star, double delta, double epsilon);

struct ResolutionReport {
    int k_required = 0;
    std::optional<bool> dt_ok;       // empty when no temporal constant is known
    std::optional<double> dt_limit;  // (eps / (2 c2))^{1/p}
};

ResolutionReport resolution_check(const SpectrumProfile& profile, double epsilon, double dt, int order,
                                  std::optional<double> c2);

/// Estimates the temporal constant c2 from two runs over `horizon` with steps
/// dt and dt/2: c2 = |u_dt - u_dt/2| / ((1 - 2^-p) dt^p).
double estimate_temporal_constant(double error_between_runs, double dt, int order);

enum class StopCondition {
    none,
    residual_budget_exceeded,
    energy_threshold_exceeded,
    non_finite_value,
    resolution_lost,
    ledger_ended,  // data stops before the horizon with no clause broken
};

const char* to_string(StopCondition c);

/// Spectrum-health sample: fit_delta * k_max >= ln(10) * d_digits is healthy.
/// fit_delta is +inf for a spectrum that sits below the noise floor.
struct ResolutionSample {
    long step = 0;
    double t = 0.0;
    double fit_delta = 0.0;
    int k_max = 0;
};

struct BreakdownCriteria {
    double epsilon = 0.0;
    double energy_cap = 0.0;
    /// Compare residual_accum / E(0) with epsilon instead of residual_accum.
    bool relative_residual = false;
    double d_digits = 4.0;
};

struct BreakdownReport {
    double t_num = 0.0;
    long stop_step = -1;
    StopCondition stop_condition = StopCondition::none;
    double epsilon = 0.0;
    double energy_cap = 0.0;
    double energy_at_stop = 0.0;
    double residual_accum_at_stop = 0.0;
    double horizon = 0.0;
};

/// T_num is the time of the last row before the first row that breaks a
/// clause; at equal steps non-finite beats residual beats energy beats
/// resolution. Throws Error on an empty ledger.
BreakdownReport breakdown_monitor(const std::vector<DiagnosticsRecord>& ledger, const BreakdownCriteria& criteria,
                                  double horizon, const std::vector<ResolutionSample>& resolution = {});

bool resolution_healthy(const ResolutionSample& s, double d_digits);

struct TrendEntry {
    int k_max = 0;
    double dt = 0.0;
    BreakdownReport report;
};

struct BreakdownTrend {
    std::vector<TrendEntry> entries;   // sorted by k_max
    bool nondecreasing = false;
    bool nonincreasing = false;
    bool stabilized = false;
    std::optional<double> limit;       // fitted T_num = tau - a / K
    std::string verdict;
};

/// Throws Error with fewer than two entries.
BreakdownTrend breakdown_trend(std::vector<TrendEntry> entries);

}  // namespace sns
