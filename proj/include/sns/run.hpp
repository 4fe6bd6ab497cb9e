#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sns/config.hpp"
#include "sns/diagnostics.hpp"
#include "sns/integrator.hpp"
#include "sns/regularity.hpp"

namespace sns {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
    exit_ok = 0,
    exit_failure = 1,       // I/O or other operational error
    exit_config_error = 2,
    exit_breakdown = 10,    // reached the horizon, breakdown monitor fired
    exit_diverged = 11,
    exit_dt_underflow = 12,
    exit_max_steps = 13,
    exit_flagged = 14,      // convergence report carries flags
};

/// Spectrum-health sample for one state. The strip fit skips shells below
/// 1e-13 of the peak; a spectrum with fewer than 4 shells above that is
/// band-limited and gets fit_delta = +inf.
struct ResolutionProbe {
    SpectrumProfile profile;
    ResolutionSample sample;
};

ResolutionProbe probe_resolution(const SpectralField& u, long step, double t, std::optional<FitWindow> window);

struct RunOutcome {
    RunResult result;
    std::vector<DiagnosticsRecord> ledger;  // every row, before thinning
    std::vector<ResolutionSample> resolution;
    BreakdownCriteria criteria;
    BreakdownReport breakdown;
    int exit_code = exit_ok;
};

/// Runs the configured simulation. With `write_artifacts` the output
/// directory receives config.effective.yaml, ledger.csv, spectrum.csv,
/// strip_fit.csv, snapshots/, breakdown.txt and summary.json; an unwritable
/// directory raises IoError before any step is taken.
RunOutcome run_simulation(const RunConfig& config, bool write_artifacts = true, std::ostream* log = nullptr);

/// Exit code for a finished run.
int exit_code_for(StopReason reason, const BreakdownReport& breakdown);

int run_command(const RunConfig& config, std::ostream& out);
int converge_command(StudyKind kind, const RunConfig& config, std::ostream& out);

/// Breakdown analysis of a stored run directory. Throws IoError("no ledger
/// found ...") when the directory has no ledger.csv.
struct RunAnalysis {
    BreakdownReport report;
    int k_max = 0;
    double dt = 0.0;
};

RunAnalysis analyze_run_dir(const std::filesystem::path& dir);

/// One directory: its breakdown report. Several: reports plus the trend.
int analyze_command(const std::vector<std::filesystem::path>& dirs, std::ostream& out);

int check_resolution_command(const std::filesystem::path& snapshot, double epsilon, std::optional<double> dt,
                             int order, std::optional<double> c2, std::ostream& out);

}  // namespace sns
