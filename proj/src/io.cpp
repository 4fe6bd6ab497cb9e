#include "sns/io.hpp"

#include <bit>
#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "sns/error.hpp"

namespace sns::io {

static_assert(std::endian::native == std::endian::little, "snapshot I/O assumes a little-endian host");

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_snapshot(const fs::path& path, const SpectralField& u, double t) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write snapshot " + path.string());
    const auto n = static_cast<std::uint32_t>(u.grid().n());
    out.write(kSnapshotMagic, sizeof kSnapshotMagic);
    out.write(reinterpret_cast<const char*>(&n), sizeof n);
    out.write(reinterpret_cast<const char*>(&t), sizeof t);
    for (int c = 0; c < 3; ++c) {
        const auto comp = u.component(c);
        out.write(reinterpret_cast<const char*>(comp.data()), static_cast<std::streamsize>(comp.size_bytes()));
    }
    if (!out) throw IoError("short write to snapshot " + path.string());
}

Snapshot read_snapshot(const fs::path& path, DealiasRule rule) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open snapshot " + path.string());
    char magic[sizeof kSnapshotMagic];
    in.read(magic, sizeof magic);
    if (!in || std::memcmp(magic, kSnapshotMagic, sizeof magic) != 0) {
        throw IoError(path.string() + ": bad header, expected magic \"SNSF1\"");
    }
    std::uint32_t n = 0;
    Snapshot snap;
    in.read(reinterpret_cast<char*>(&n), sizeof n);
    in.read(reinterpret_cast<char*>(&snap.t), sizeof snap.t);
    if (!in) throw IoError(path.string() + ": truncated header");
    if (n < 4 || n % 2 != 0 || n > 4096) throw IoError(path.string() + ": invalid n_points in header");
    snap.field = SpectralField(GridSpec(static_cast<int>(n), rule));
    for (int c = 0; c < 3; ++c) {
        auto comp = snap.field.component(c);
        in.read(reinterpret_cast<char*>(comp.data()), static_cast<std::streamsize>(comp.size_bytes()));
    }
    if (!in) throw IoError(path.string() + ": truncated coefficient data");
    if (in.peek() != std::char_traits<char>::eof()) throw IoError(path.string() + ": trailing bytes after data");
    return snap;
}

std::string ledger_row(const DiagnosticsRecord& r) {
    std::string s = std::to_string(r.step);
    for (double v : {r.t, r.dt, r.energy, r.dissipation, r.power_in, r.max_velocity, r.max_vorticity,
                     r.bkm_integral, r.residual, r.residual_accum}) {
        s += ',';
        s += format_double(v);
    }
    return s;
}

LedgerWriter::LedgerWriter(const fs::path& path) : path_(path) {
    file_ = std::fopen(path.c_str(), "w");
    if (!file_) throw IoError("cannot write ledger " + path.string());
    std::fprintf(file_, "%s\n", kLedgerHeader);
    std::fflush(file_);
}

LedgerWriter::~LedgerWriter() {
    if (file_) std::fclose(file_);
}

void LedgerWriter::append(const DiagnosticsRecord& r) {
    if (std::fprintf(file_, "%s\n", ledger_row(r).c_str()) < 0 || std::fflush(file_) != 0) {
        throw IoError("write failed on ledger " + path_.string());
    }
}

namespace {

std::vector<std::string> split(const std::string& line, char sep = ',') {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream ss(line);
    while (std::getline(ss, cur, sep)) out.push_back(cur);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

double parse_double(const std::string& s, const fs::path& path, std::size_t line) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || *end != '\0') {
        throw IoError(path.string() + ":" + std::to_string(line) + ": bad number '" + s + "'");
    }
    return v;
}

long parse_long(const std::string& s, const fs::path& path, std::size_t line) {
    char* end = nullptr;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (s.empty() || *end != '\0') {
        throw IoError(path.string() + ":" + std::to_string(line) + ": bad integer '" + s + "'");
    }
    return v;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& path, const char* header, std::size_t columns) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != header) {
        throw IoError(path.string() + ": bad header, expected '" + header + "'");
    }
    std::vector<std::vector<std::string>> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto f = split(line);
        if (f.size() != columns) {
            throw IoError(path.string() + ":" + std::to_string(lineno) + ": expected " + std::to_string(columns) +
                          " fields");
        }
        rows.push_back(std::move(f));
    }
    return rows;
}

}  // namespace

std::vector<DiagnosticsRecord> read_ledger(const fs::path& path) {
    const auto rows = read_csv(path, kLedgerHeader, 11);
    std::vector<DiagnosticsRecord> out;
    out.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& f = rows[i];
        const std::size_t line = i + 2;
        DiagnosticsRecord r;
        r.step = parse_long(f[0], path, line);
        double* dst[] = {&r.t, &r.dt, &r.energy, &r.dissipation, &r.power_in, &r.max_velocity,
                         &r.max_vorticity, &r.bkm_integral, &r.residual, &r.residual_accum};
        for (int k = 0; k < 10; ++k) *dst[k] = parse_double(f[k + 1], path, line);
        out.push_back(r);
    }
    return out;
}

std::string spectrum_rows(long step, double t, const SpectrumProfile& p) {
    std::string s;
    for (const auto& sh : p.shells) {
        s += std::to_string(step) + ',' + format_double(t) + ',' + std::to_string(sh.m) + ',' +
             format_double(sh.radius) + ',' + format_double(sh.amplitude) + '\n';
    }
    return s;
}

std::string strip_fit_row(const StripFitRow& r) {
    return std::to_string(r.step) + ',' + format_double(r.t) + ',' + std::to_string(r.k_max) + ',' +
           format_double(r.c_star) + ',' + format_double(r.delta) + ',' + format_double(r.r2) + ',' +
           (r.healthy ? "1" : "0");
}

std::vector<StripFitRow> read_strip_fits(const fs::path& path) {
    const auto rows = read_csv(path, kStripFitHeader, 7);
    std::vector<StripFitRow> out;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& f = rows[i];
        const std::size_t line = i + 2;
        StripFitRow r;
        r.step = parse_long(f[0], path, line);
        r.t = parse_double(f[1], path, line);
        r.k_max = static_cast<int>(parse_long(f[2], path, line));
        r.c_star = parse_double(f[3], path, line);
        r.delta = parse_double(f[4], path, line);
        r.r2 = parse_double(f[5], path, line);
        r.healthy = parse_long(f[6], path, line) != 0;
        out.push_back(r);
    }
    return out;
}

std::string breakdown_report_text(const BreakdownReport& r) {
    std::string s;
    s += "t_num: " + format_double(r.t_num) + "\n";
    s += "stop_step: " + std::to_string(r.stop_step) + "\n";
    s += std::string("stop_condition: ") + to_string(r.stop_condition) + "\n";
    s += "epsilon: " + format_double(r.epsilon) + "\n";
    s += "energy_cap: " + format_double(r.energy_cap) + "\n";
    s += "energy_at_stop: " + format_double(r.energy_at_stop) + "\n";
    s += "residual_accum_at_stop: " + format_double(r.residual_accum_at_stop) + "\n";
    s += "horizon: " + format_double(r.horizon) + "\n";
    return s;
}

std::string trend_report_text(const BreakdownTrend& t) {
    std::string s;
    s += "entries: " + std::to_string(t.entries.size()) + "\n";
    for (std::size_t i = 0; i < t.entries.size(); ++i) {
        const auto& e = t.entries[i];
        s += "entry_" + std::to_string(i) + ": k_max=" + std::to_string(e.k_max) + " dt=" + format_double(e.dt) +
             " t_num=" + format_double(e.report.t_num) + " stop_condition=" + to_string(e.report.stop_condition) +
             "\n";
    }
    s += std::string("nondecreasing: ") + (t.nondecreasing ? "true" : "false") + "\n";
    s += std::string("nonincreasing: ") + (t.nonincreasing ? "true" : "false") + "\n";
    s += std::string("stabilized: ") + (t.stabilized ? "true" : "false") + "\n";
    s += "limit: " + (t.limit ? format_double(*t.limit) : std::string("none")) + "\n";
    s += "verdict: " + t.verdict + "\n";
    return s;
}

std::string convergence_report_text(const ConvergenceReport& r) {
    std::string s;
    s += std::string("kind: ") + to_string(r.kind) + "\n";
    s += "error_norm: " + r.norm.name() + "\n";
    s += "samples: " + std::to_string(r.samples.size()) + "\n";
    s += std::string("fitted: ") + (r.fitted ? "true" : "false") + "\n";
    s += "fitted_rate: " + format_double(r.fitted_rate) + "\n";
    s += "fit_r2: " + format_double(r.fit_r2) + "\n";
    if (r.kind == StudyKind::combined) {
        s += "model_spatial_coeff: " + format_double(r.model_spatial_coeff) + "\n";
        s += "model_delta: " + format_double(r.model_delta) + "\n";
        s += "model_temporal_coeff: " + format_double(r.model_temporal_coeff) + "\n";
    }
    for (const auto& f : r.flags) s += "flag: " + f + "\n";
    for (const auto& n : r.notes) s += "note: " + n + "\n";
    return s;
}

std::string convergence_samples_csv(const ConvergenceReport& r) {
    std::string s = "parameter,n_points,dt,error,dominant\n";
    for (const auto& x : r.samples) {
        s += format_double(x.parameter) + ',' + std::to_string(x.n_points) + ',' + format_double(x.dt) + ',' +
             format_double(x.error) + ',' + x.dominant + '\n';
    }
    return s;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("write failed on " + path.string());
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace sns::io
