#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sns/convergence.hpp"
#include "sns/diagnostics.hpp"
#include "sns/dynamics.hpp"
#include "sns/integrator.hpp"
#include "sns/regularity.hpp"

namespace sns {

// Run configuration, written as YAML. Every section and key is optional
// except grid.n_points and physics.nu; omitted keys take the defaults below.
// Unknown keys are errors.

struct GridConfig {
    int n_points = 0;
    DealiasRule dealias = DealiasRule::two_thirds;
};

struct MonitorConfig {
    /// Residual budget; empty means 1e-6 * E(0).
    std::optional<double> epsilon;
    /// Energy cap; empty means 1e6 * E(0).
    std::optional<double> energy_cap;
    bool relative_residual = false;
    /// Strip-fit window in shells; empty means [k_max/4, 3 k_max/4].
    std::optional<FitWindow> fit_window;
    double d_digits = 4.0;
    /// Spectrum and strip fit every this many steps (and at the last step).
    long spectrum_every = 10;
    TimeAverage time_average = TimeAverage::hermite;
};

struct OutputConfig {
    std::string directory = "run";
    /// Ledger file keeps every k-th row (plus the last one).
    long ledger_every = 1;
    /// Snapshot every k steps; 0 writes only the initial and final state.
    long snapshot_every = 0;
};

struct ConvergenceConfig {
    ErrorNorm norm;
    double t_final = 0.05;
    // spatial
    std::vector<int> grids{16, 24, 32, 48, 64};
    double spatial_dt = 1e-3;
    // temporal (on grid.n_points)
    std::vector<double> dts{2e-3, 1e-3, 5e-4, 2.5e-4};
    double reference_factor = 16.0;
    // combined
    std::vector<std::pair<int, double>> pairs{{16, 4e-3}, {24, 2e-3}, {32, 1e-3}};
    std::pair<int, double> reference{64, 2.5e-4};
};

struct RunConfig {
    GridConfig grid;
    PhysicsParams physics;
    InitialConditionSpec initial_condition;
    StepControl step_control;
    MonitorConfig monitor;
    OutputConfig output;
    ConvergenceConfig convergence;

    GridSpec grid_spec() const { return GridSpec(grid.n_points, grid.dealias); }
};

/// Throws ConfigError naming the offending key and its line.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Effective configuration with every default written out; parses back to
/// the same RunConfig.
std::string echo_config(const RunConfig& config);

}  // namespace sns
