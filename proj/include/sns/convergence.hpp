#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sns/dynamics.hpp"
#include "sns/field.hpp"

namespace sns {

enum class StudyKind { spatial, temporal, combined };
enum class OrderModel { algebraic, exponential };

const char* to_string(StudyKind kind);

struct ErrorNorm {
    enum class Kind { l2, linf, sobolev } kind = Kind::l2;
    double order = 3.0;  // Sobolev order for Kind::sobolev

    std::string name() const;
};

struct ConvergenceSample {
    double parameter = 0.0;  // K for spatial, dt for temporal, K for combined
    double dt = 0.0;
    int n_points = 0;
    double error = 0.0;
    std::string dominant;  // combined studies only
};

struct ConvergenceReport {
    StudyKind kind = StudyKind::spatial;
    ErrorNorm norm;
    std::vector<ConvergenceSample> samples;
    bool fitted = false;
    double fitted_rate = 0.0;  // slope (temporal), decay rate (spatial)
    double fit_r2 = 0.0;
    /// Combined model e = A (1+K)^2 e^{-delta K} + B dt^4.
    double model_spatial_coeff = 0.0;
    double model_delta = 0.0;
    double model_temporal_coeff = 0.0;
    std::vector<std::string> flags;
    std::vector<std::string> notes;

    bool flagged() const { return !flags.empty(); }
};

struct OrderFit {
    double rate = 0.0;
    double r2 = 0.0;
};

/// algebraic: slope of log e against log p; exponential: slope of log e
/// against p. Throws Error with fewer than 3 samples or a non-positive error.
OrderFit observed_order(const std::vector<double>& errors, const std::vector<double>& parameters, OrderModel model);

/// Distance between two fields (on possibly different grids) in `norm`,
/// measured on the finer grid after zero-padding the coarser one.
double field_error(const SpectralField& a, const SpectralField& b, const ErrorNorm& norm);

/// Fixed-step RK4 from the initial condition to t_final with
/// round(t_final / dt) steps. Throws Error if the run diverges or dt does
/// not divide t_final.
SpectralField run_fixed_step(const SpectralField& u0, const PhysicsParams& params, double t_final, double dt);

struct SpatialStudy {
    InitialConditionSpec ic;
    PhysicsParams params;
    double t_final = 0.0;
    double dt = 1e-3;
    std::vector<int> grids;  // finest one is the reference
    DealiasRule dealias = DealiasRule::two_thirds;
    ErrorNorm norm;
};

struct TemporalStudy {
    InitialConditionSpec ic;
    PhysicsParams params;
    int n_points = 16;
    double t_final = 0.0;
    std::vector<double> dts;
    double reference_factor = 16.0;  // reference step = min(dts) / factor
    ErrorNorm norm;
    /// When set, errors are measured against this field instead of a
    /// reference run (exact linear solutions).
    std::optional<SpectralField> exact;
};

struct CombinedStudy {
    InitialConditionSpec ic;
    PhysicsParams params;
    double t_final = 0.0;
    std::vector<std::pair<int, double>> pairs;  // (n, dt) in schedule order
    std::pair<int, double> reference{0, 0.0};
    ErrorNorm norm;
};

ConvergenceReport spatial_study(const SpatialStudy& study);
ConvergenceReport temporal_study(const TemporalStudy& study);
ConvergenceReport combined_study(const CombinedStudy& study);

}  // namespace sns
