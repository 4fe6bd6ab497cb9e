#include "sns/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <memory>

#include "json.hpp"

#include "sns/error.hpp"
#include "sns/io.hpp"
#include "sns/parallel.hpp"

namespace sns {

namespace fs = std::filesystem;

ResolutionProbe probe_resolution(const SpectralField& u, long step, double t, std::optional<FitWindow> window) {
    ResolutionProbe p;
    const int k_max = u.grid().k_max();
    p.sample.step = step;
    p.sample.t = t;
    p.sample.k_max = k_max;
    p.profile = shell_spectrum(u, ShellStatistic::max);
    try {
        p.profile = fit_strip(p.profile, window.value_or(default_fit_window(k_max)), 1e-13);
        p.sample.fit_delta = p.profile.fit_delta;
    } catch (const Error&) {
        p.sample.fit_delta = std::numeric_limits<double>::infinity();
    }
    return p;
}

int exit_code_for(StopReason reason, const BreakdownReport& breakdown) {
    switch (reason) {
        case StopReason::diverged: return exit_diverged;
        case StopReason::dt_underflow: return exit_dt_underflow;
        case StopReason::max_steps: return exit_max_steps;
        case StopReason::reached_t_end: break;
    }
    return breakdown.stop_condition == StopCondition::none ? exit_ok : exit_breakdown;
}

namespace {

std::string fmt(double v) { return io::format_double(v); }

/// Budgets resolved against the initial energy when left on auto.
BreakdownCriteria criteria_for(const MonitorConfig& m, double e0) {
    const double scale = e0 > 0.0 ? e0 : 1.0;
    BreakdownCriteria c;
    c.epsilon = m.epsilon.value_or(1e-6 * scale);
    c.energy_cap = m.energy_cap.value_or(1e6 * scale);
    c.relative_residual = m.relative_residual;
    c.d_digits = m.d_digits;
    return c;
}

class Artifacts {
public:
    Artifacts(const RunConfig& config) : dir_(config.output.directory) {
        std::error_code ec;
        fs::create_directories(dir_ / "snapshots", ec);
        if (ec) throw IoError("cannot create output directory " + dir_.string() + ": " + ec.message());
        io::write_text(dir_ / "config.effective.yaml", echo_config(config));
        ledger_ = std::make_unique<io::LedgerWriter>(dir_ / "ledger.csv");
        spectrum_ = open(dir_ / "spectrum.csv", io::kSpectrumHeader);
        fits_ = open(dir_ / "strip_fit.csv", io::kStripFitHeader);
    }

    ~Artifacts() {
        if (spectrum_) std::fclose(spectrum_);
        if (fits_) std::fclose(fits_);
    }

    void ledger_row(const DiagnosticsRecord& r) {
        ledger_->append(r);
        last_ledger_step_ = r.step;
    }
    long last_ledger_step() const { return last_ledger_step_; }

    void spectrum(const ResolutionProbe& p, double d_digits) {
        std::fputs(io::spectrum_rows(p.sample.step, p.sample.t, p.profile).c_str(), spectrum_);
        io::StripFitRow row;
        row.step = p.sample.step;
        row.t = p.sample.t;
        row.k_max = p.sample.k_max;
        row.c_star = p.profile.fitted ? p.profile.fit_c_star : 0.0;
        row.delta = p.sample.fit_delta;
        row.r2 = p.profile.fit_r2;
        row.healthy = resolution_healthy(p.sample, d_digits);
        std::fprintf(fits_, "%s\n", io::strip_fit_row(row).c_str());
        std::fflush(spectrum_);
        std::fflush(fits_);
    }

    void snapshot(const SimulationState& s) {
        char name[32];
        std::snprintf(name, sizeof name, "snap_%08ld.snsf", s.step);
        io::write_snapshot(dir_ / "snapshots" / name, s.field, s.t);
    }

    const fs::path& dir() const { return dir_; }

private:
    static std::FILE* open(const fs::path& path, const char* header) {
        std::FILE* f = std::fopen(path.c_str(), "w");
        if (!f) throw IoError("cannot write " + path.string());
        std::fprintf(f, "%s\n", header);
        return f;
    }

    fs::path dir_;
    std::unique_ptr<io::LedgerWriter> ledger_;
    std::FILE* spectrum_ = nullptr;
    std::FILE* fits_ = nullptr;
    long last_ledger_step_ = -1;
};

nlohmann::ordered_json record_json(const DiagnosticsRecord& r) {
    auto num = [](double v) -> nlohmann::ordered_json {
        if (std::isfinite(v)) return v;
        return nullptr;
    };
    nlohmann::ordered_json j;
    j["step"] = r.step;
    j["t"] = num(r.t);
    j["dt"] = num(r.dt);
    j["energy"] = num(r.energy);
    j["dissipation"] = num(r.dissipation);
    j["power_in"] = num(r.power_in);
    j["max_velocity"] = num(r.max_velocity);
    j["max_vorticity"] = num(r.max_vorticity);
    j["bkm_integral"] = num(r.bkm_integral);
    j["residual"] = num(r.residual);
    j["residual_accum"] = num(r.residual_accum);
    return j;
}

}  // namespace

RunOutcome run_simulation(const RunConfig& config, bool write_artifacts, std::ostream* log) {
    const GridSpec grid = config.grid_spec();
    std::unique_ptr<Artifacts> art;
    if (write_artifacts) art = std::make_unique<Artifacts>(config);

    const NavierStokesModel model(config.physics, grid);
    SimulationState state;
    state.field = make_initial_condition(config.initial_condition, grid);

    RunOutcome out;
    const auto& mon = config.monitor;
    const long every = config.output.ledger_every;
    const long snap_every = config.output.snapshot_every;

    StepObserver observer = [&](const SimulationState& s, const DiagnosticsRecord& r) {
        out.ledger.push_back(r);
        if (art && r.step % every == 0) art->ledger_row(r);
        if (s.diverged) return;
        if (r.step % mon.spectrum_every == 0) {
            const ResolutionProbe p = probe_resolution(s.field, s.step, s.t, mon.fit_window);
            out.resolution.push_back(p.sample);
            if (art) art->spectrum(p, mon.d_digits);
        }
        if (art && (r.step == 0 || (snap_every > 0 && r.step % snap_every == 0))) art->snapshot(s);
    };

    RunOptions options;
    options.hermite_average = mon.time_average == TimeAverage::hermite;
    out.result = advance(std::move(state), config.step_control, model, {observer}, options);

    const SimulationState& last = out.result.state;
    if (!out.ledger.empty()) {
        const DiagnosticsRecord& tail = out.ledger.back();
        if (art && art->last_ledger_step() != tail.step) art->ledger_row(tail);
        if (!last.diverged && (out.resolution.empty() || out.resolution.back().step != last.step)) {
            const ResolutionProbe p = probe_resolution(last.field, last.step, last.t, mon.fit_window);
            out.resolution.push_back(p.sample);
            if (art) art->spectrum(p, mon.d_digits);
        }
        if (art && !last.diverged && last.step != 0 && !(snap_every > 0 && last.step % snap_every == 0)) {
            art->snapshot(last);
        }
    }

    out.criteria = criteria_for(mon, out.ledger.empty() ? 0.0 : out.ledger.front().energy);
    out.breakdown = breakdown_monitor(out.ledger, out.criteria, config.step_control.t_end, out.resolution);
    out.exit_code = exit_code_for(out.result.reason, out.breakdown);

    if (art) {
        io::write_text(art->dir() / "breakdown.txt", io::breakdown_report_text(out.breakdown));
        nlohmann::ordered_json j;
        j["stop_reason"] = to_string(out.result.reason);
        j["exit_code"] = out.exit_code;
        j["steps"] = last.step;
        j["t_final"] = last.t;
        j["t_num"] = out.breakdown.t_num;
        j["stop_condition"] = to_string(out.breakdown.stop_condition);
        j["stop_step"] = out.breakdown.stop_step;
        j["epsilon"] = out.criteria.epsilon;
        j["energy_cap"] = out.criteria.energy_cap;
        j["final"] = out.ledger.empty() ? nlohmann::ordered_json() : record_json(out.ledger.back());
        j["threads"] = parallel::threads();
        j["config"] = echo_config(config);
        io::write_text(art->dir() / "summary.json", j.dump(2) + "\n");
    }
    if (log) {
        *log << "stop_reason: " << to_string(out.result.reason) << "\n";
        *log << "steps: " << last.step << "\n";
        *log << "t_final: " << fmt(last.t) << "\n";
        *log << io::breakdown_report_text(out.breakdown);
        *log << "exit_code: " << out.exit_code << "\n";
    }
    return out;
}

int run_command(const RunConfig& config, std::ostream& out) {
    out << "# effective config\n" << echo_config(config) << "# end config\n";
    return run_simulation(config, true, &out).exit_code;
}

int converge_command(StudyKind kind, const RunConfig& config, std::ostream& out) {
    const auto& cc = config.convergence;
    ConvergenceReport rep;
    switch (kind) {
        case StudyKind::spatial: {
            SpatialStudy s;
            s.ic = config.initial_condition;
            s.params = config.physics;
            s.t_final = cc.t_final;
            s.dt = cc.spatial_dt;
            s.grids = cc.grids;
            s.dealias = config.grid.dealias;
            s.norm = cc.norm;
            rep = spatial_study(s);
            break;
        }
        case StudyKind::temporal: {
            TemporalStudy s;
            s.ic = config.initial_condition;
            s.params = config.physics;
            s.n_points = config.grid.n_points;
            s.t_final = cc.t_final;
            s.dts = cc.dts;
            s.reference_factor = cc.reference_factor;
            s.norm = cc.norm;
            rep = temporal_study(s);
            break;
        }
        case StudyKind::combined: {
            CombinedStudy s;
            s.ic = config.initial_condition;
            s.params = config.physics;
            s.t_final = cc.t_final;
            s.pairs = cc.pairs;
            s.reference = cc.reference;
            s.norm = cc.norm;
            rep = combined_study(s);
            break;
        }
    }
    const fs::path dir = config.output.directory;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
    const std::string stem = std::string("convergence_") + to_string(kind);
    const std::string text = io::convergence_report_text(rep);
    io::write_text(dir / (stem + ".txt"), text);
    io::write_text(dir / (stem + "_samples.csv"), io::convergence_samples_csv(rep));
    out << text << io::convergence_samples_csv(rep);
    return rep.flagged() ? exit_flagged : exit_ok;
}

RunAnalysis analyze_run_dir(const fs::path& dir) {
    const fs::path ledger_path = dir / "ledger.csv";
    if (!fs::exists(ledger_path)) throw IoError("no ledger found in " + dir.string() + " (expected ledger.csv)");
    const auto ledger = io::read_ledger(ledger_path);
    if (ledger.empty()) throw IoError(ledger_path.string() + ": no ledger rows");

    MonitorConfig mon;
    double horizon = ledger.back().t;
    RunAnalysis a;
    const fs::path cfg_path = dir / "config.effective.yaml";
    if (fs::exists(cfg_path)) {
        const RunConfig cfg = parse_config(io::read_text(cfg_path));
        mon = cfg.monitor;
        horizon = cfg.step_control.t_end;
        a.k_max = cfg.grid_spec().k_max();
        a.dt = cfg.step_control.dt_max;
    }
    std::vector<ResolutionSample> resolution;
    const fs::path fits_path = dir / "strip_fit.csv";
    if (fs::exists(fits_path)) {
        for (const auto& r : io::read_strip_fits(fits_path)) {
            resolution.push_back({r.step, r.t, r.delta, r.k_max});
            if (a.k_max == 0) a.k_max = r.k_max;
        }
    }
    if (ledger.size() > 1) {
        double dt_sum = 0.0;
        for (std::size_t i = 1; i < ledger.size(); ++i) dt_sum += ledger[i].t - ledger[i - 1].t;
        if (a.dt == 0.0) a.dt = dt_sum / double(ledger.size() - 1);
    }
    a.report = breakdown_monitor(ledger, criteria_for(mon, ledger.front().energy), horizon, resolution);
    return a;
}

int analyze_command(const std::vector<fs::path>& dirs, std::ostream& out) {
    if (dirs.empty()) throw Error("analyze needs at least one run directory");
    std::vector<TrendEntry> entries;
    for (const auto& dir : dirs) {
        const RunAnalysis a = analyze_run_dir(dir);
        const std::string text = io::breakdown_report_text(a.report);
        io::write_text(dir / "analysis.txt", text);
        out << "run: " << dir.string() << "\n" << text;
        entries.push_back({a.k_max, a.dt, a.report});
    }
    if (entries.size() >= 2) out << "# trend\n" << io::trend_report_text(breakdown_trend(entries));
    return exit_ok;
}

int check_resolution_command(const fs::path& snapshot, double epsilon, std::optional<double> dt, int order,
                             std::optional<double> c2, std::ostream& out) {
    const io::Snapshot snap = io::read_snapshot(snapshot);
    const int k_max = snap.field.grid().k_max();
    const SpectrumProfile fit =
        fit_strip(shell_spectrum(snap.field, ShellStatistic::max), default_fit_window(k_max), 1e-13);
    const ResolutionReport rep = resolution_check(fit, epsilon, dt.value_or(0.0), order, dt ? c2 : std::nullopt);
    out << "snapshot: " << snapshot.string() << "\n";
    out << "n_points: " << snap.field.grid().n() << "\n";
    out << "t: " << fmt(snap.t) << "\n";
    out << "k_max: " << k_max << "\n";
    out << "c_star: " << fmt(fit.fit_c_star) << "\n";
    out << "delta: " << fmt(fit.fit_delta) << "\n";
    out << "fit_r2: " << fmt(fit.fit_r2) << "\n";
    out << "epsilon: " << fmt(epsilon) << "\n";
    out << "k_required: " << rep.k_required << "\n";
    out << "spatially_resolved: " << (k_max >= rep.k_required ? "true" : "false") << "\n";
    if (dt) {
        out << "dt: " << fmt(*dt) << "\n";
        out << "order: " << order << "\n";
        if (rep.dt_ok) {
            out << "dt_ok: " << (*rep.dt_ok ? "true" : "false") << "\n";
            if (rep.dt_limit) out << "dt_limit: " << fmt(*rep.dt_limit) << "\n";
        } else {
            out << "dt_ok: unknown (no temporal constant; pass --c2)\n";
        }
    }
    return exit_ok;
}

}  // namespace sns
