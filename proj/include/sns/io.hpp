#pragma once

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "sns/convergence.hpp"
#include "sns/diagnostics.hpp"
#include "sns/field.hpp"
#include "sns/regularity.hpp"

namespace sns::io {

namespace fs = std::filesystem;

/// Shortest "%.17g" rendering; parses back to the same double.
std::string format_double(double v);

// Snapshot: "SNSF1", u32 LE n, f64 LE t, then 3 n^3 (re, im) f64 LE pairs,
// component by component, FFT order, k_x slowest.

inline constexpr char kSnapshotMagic[5] = {'S', 'N', 'S', 'F', '1'};

struct Snapshot {
    SpectralField field;
    double t = 0.0;
};

void write_snapshot(const fs::path& path, const SpectralField& u, double t);
Snapshot read_snapshot(const fs::path& path, DealiasRule rule = DealiasRule::two_thirds);

inline constexpr const char* kLedgerHeader =
    "step,t,dt,energy,dissipation,power_in,max_velocity,max_vorticity,bkm_integral,residual,residual_accum";

std::string ledger_row(const DiagnosticsRecord& r);

/// Append-only ledger file. Every row is flushed as it is written.
class LedgerWriter {
public:
    explicit LedgerWriter(const fs::path& path);
    ~LedgerWriter();
    LedgerWriter(const LedgerWriter&) = delete;
    LedgerWriter& operator=(const LedgerWriter&) = delete;

    void append(const DiagnosticsRecord& r);

private:
    std::FILE* file_ = nullptr;
    fs::path path_;
};

std::vector<DiagnosticsRecord> read_ledger(const fs::path& path);

/// Shell spectra, long format: step,t,m,radius,amplitude.
inline constexpr const char* kSpectrumHeader = "step,t,m,radius,amplitude";
/// One strip fit per spectrum: step,t,k_max,c_star,delta,r2,healthy.
inline constexpr const char* kStripFitHeader = "step,t,k_max,c_star,delta,r2,healthy";

struct StripFitRow {
    long step = 0;
    double t = 0.0;
    int k_max = 0;
    double c_star = 0.0;
    double delta = 0.0;
    double r2 = 0.0;
    bool healthy = true;
};

std::string spectrum_rows(long step, double t, const SpectrumProfile& p);
std::string strip_fit_row(const StripFitRow& r);
std::vector<StripFitRow> read_strip_fits(const fs::path& path);

/// key: value text.
std::string breakdown_report_text(const BreakdownReport& r);
std::string trend_report_text(const BreakdownTrend& t);
std::string convergence_report_text(const ConvergenceReport& r);
std::string convergence_samples_csv(const ConvergenceReport& r);

void write_text(const fs::path& path, const std::string& text);
std::string read_text(const fs::path& path);

}  // namespace sns::io
