#include "sns/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "sns/error.hpp"

namespace sns {

namespace {

int line_of(const YAML::Node& n) { return n.Mark().line >= 0 ? n.Mark().line + 1 : 0; }

template <class T>
T convert(const YAML::Node& n, const std::string& key, const char* type_name) {
    try {
        return n.as<T>();
    } catch (const YAML::Exception&) {
        throw ConfigError(key, line_of(n), std::string("expected ") + type_name);
    }
}

/// One mapping in the document; records which keys were read so the rest
/// can be rejected.
class Section {
public:
    Section(const YAML::Node& node, std::string path) : node_(node), path_(std::move(path)) {
        if (node_ && !node_.IsNull() && !node_.IsMap()) {
            throw ConfigError(path_, line_of(node_), "expected a mapping");
        }
    }

    std::string key(const char* name) const { return path_.empty() ? name : path_ + "." + name; }

    YAML::Node raw(const char* name) {
        seen_.insert(name);
        if (!node_ || node_.IsNull()) return YAML::Node();
        return node_[name];
    }

    bool has(const char* name) {
        const YAML::Node n = raw(name);
        return n && !n.IsNull();
    }

    int line(const char* name) {
        const YAML::Node n = raw(name);
        return n ? line_of(n) : (node_ ? line_of(node_) : 0);
    }

    void get(const char* name, double& out) { if (auto n = raw(name); n && !n.IsNull()) out = scalar<double>(n, name, "a number"); }
    void get(const char* name, int& out) { if (auto n = raw(name); n && !n.IsNull()) out = scalar<int>(n, name, "an integer"); }
    void get(const char* name, long& out) { if (auto n = raw(name); n && !n.IsNull()) out = scalar<long>(n, name, "an integer"); }
    void get(const char* name, bool& out) { if (auto n = raw(name); n && !n.IsNull()) out = scalar<bool>(n, name, "true or false"); }
    void get(const char* name, std::string& out) { if (auto n = raw(name); n && !n.IsNull()) out = scalar<std::string>(n, name, "a string"); }
    void get(const char* name, std::uint64_t& out) { if (auto n = raw(name); n && !n.IsNull()) out = scalar<std::uint64_t>(n, name, "a non-negative integer"); }

    void get(const char* name, std::array<double, 3>& out) {
        auto n = raw(name);
        if (!n || n.IsNull()) return;
        if (!n.IsSequence() || n.size() != 3) throw ConfigError(key(name), line_of(n), "expected a list of 3 numbers");
        for (int i = 0; i < 3; ++i) out[i] = convert<double>(n[i], key(name), "a number");
    }

    template <class T>
    void get_list(const char* name, std::vector<T>& out, const char* type_name) {
        auto n = raw(name);
        if (!n || n.IsNull()) return;
        if (!n.IsSequence()) throw ConfigError(key(name), line_of(n), std::string("expected a list of ") + type_name);
        out.clear();
        for (const auto& item : n) out.push_back(convert<T>(item, key(name), type_name));
    }

    std::pair<int, double> pair_of(const YAML::Node& n, const char* name) {
        if (!n.IsSequence() || n.size() != 2) throw ConfigError(key(name), line_of(n), "expected [n_points, dt]");
        return {convert<int>(n[0], key(name), "an integer"), convert<double>(n[1], key(name), "a number")};
    }

    /// Returns the enum value whose name matches, or throws listing choices.
    template <class E, std::size_t N>
    void get_enum(const char* name, E& out, const std::array<E, N>& choices) {
        auto n = raw(name);
        if (!n || n.IsNull()) return;
        const auto s = scalar<std::string>(n, name, "a string");
        std::string options;
        for (E e : choices) {
            if (s == to_name(e)) {
                out = e;
                return;
            }
            options += (options.empty() ? "" : ", ") + std::string(to_name(e));
        }
        throw ConfigError(key(name), line_of(n), "unknown value '" + s + "' (expected one of: " + options + ")");
    }

    Section child(const char* name) { return Section(raw(name), key(name)); }

    void reject_unknown() const {
        if (!node_ || !node_.IsMap()) return;
        for (const auto& kv : node_) {
            const auto k = kv.first.as<std::string>();
            if (!seen_.count(k)) throw ConfigError(key(k.c_str()), line_of(kv.first), "unknown key");
        }
    }

    [[noreturn]] void fail(const char* name, const std::string& what) { throw ConfigError(key(name), line(name), what); }

private:
    template <class T>
    T scalar(const YAML::Node& n, const char* name, const char* type_name) {
        if (!n.IsScalar()) throw ConfigError(key(name), line_of(n), std::string("expected ") + type_name);
        return convert<T>(n, key(name), type_name);
    }

    static const char* to_name(DealiasRule r) { return to_string(r); }
    static const char* to_name(ForcingKind k) { return to_string(k); }
    static const char* to_name(InitialConditionKind k) { return to_string(k); }
    static const char* to_name(TimeAverage a) { return a == TimeAverage::hermite ? "hermite" : "trapezoid"; }
    static const char* to_name(ErrorNorm::Kind k) {
        return k == ErrorNorm::Kind::l2 ? "l2" : k == ErrorNorm::Kind::linf ? "linf" : "h_s";
    }

    YAML::Node node_;
    std::string path_;
    std::set<std::string> seen_;
};

/// number or "auto".
std::optional<double> auto_or_number(Section& s, const char* name, std::optional<double> current) {
    auto n = s.raw(name);
    if (!n || n.IsNull()) return current;
    if (n.IsScalar() && n.Scalar() == "auto") return std::nullopt;
    return convert<double>(n, s.key(name), "a number or 'auto'");
}

template <class F>
void checked(Section& s, const char* name, F f) {
    try {
        f();
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        s.fail(name, e.what());
    }
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw ConfigError("", e.mark.line + 1, std::string("malformed config: ") + e.msg);
    }
    if (!root || root.IsNull()) throw ConfigError("", 0, "empty config");
    Section top(root, "");
    RunConfig c;

    {
        Section g = top.child("grid");
        if (!g.has("n_points")) throw ConfigError("grid.n_points", line_of(root), "missing required key");
        g.get("n_points", c.grid.n_points);
        if (c.grid.n_points % 2 != 0) g.fail("n_points", "n_points must be even");
        if (c.grid.n_points < 4) g.fail("n_points", "n_points must be >= 4");
        g.get_enum("dealias", c.grid.dealias, std::array{DealiasRule::two_thirds, DealiasRule::none});
        g.reject_unknown();
    }
    {
        Section p = top.child("physics");
        if (!p.has("nu")) throw ConfigError("physics.nu", line_of(root), "missing required key");
        p.get("nu", c.physics.nu);
        if (!(c.physics.nu > 0.0)) p.fail("nu", "nu must be positive");
        p.get("nonlinear", c.physics.nonlinear);
        Section f = p.child("forcing");
        auto& fs = c.physics.forcing;
        f.get_enum("kind", fs.kind,
                   std::array{ForcingKind::none, ForcingKind::steady_analytic, ForcingKind::concentrated_pulse});
        f.get("amplitude", fs.amplitude);
        f.get("length_scale", fs.length_scale);
        f.get("center", fs.center);
        f.get("ramp_time", fs.ramp_time);
        checked(f, "amplitude", [&] { fs.validate(); });
        f.reject_unknown();
        p.reject_unknown();
    }
    {
        Section i = top.child("initial_condition");
        auto& ic = c.initial_condition;
        i.get_enum("kind", ic.kind,
                   std::array{InitialConditionKind::taylor_green, InitialConditionKind::concentrated_vortex,
                              InitialConditionKind::random_analytic});
        i.get("amplitude", ic.amplitude);
        i.get("concentration", ic.concentration);
        i.get("seed", ic.seed);
        i.get("center", ic.center);
        i.get("axis", ic.axis);
        checked(i, "concentration", [&] { ic.validate(); });
        i.reject_unknown();
    }
    {
        Section s = top.child("step_control");
        auto& sc = c.step_control;
        s.get("cfl_number", sc.cfl_number);
        s.get("dt_min", sc.dt_min);
        s.get("dt_max", sc.dt_max);
        s.get("t_end", sc.t_end);
        s.get("max_steps", sc.max_steps);
        checked(s, "dt_min", [&] { sc.validate(); });
        s.reject_unknown();
    }
    {
        Section m = top.child("monitor");
        auto& mc = c.monitor;
        mc.epsilon = auto_or_number(m, "epsilon", mc.epsilon);
        if (mc.epsilon && !(*mc.epsilon > 0.0)) m.fail("epsilon", "epsilon must be positive");
        mc.energy_cap = auto_or_number(m, "energy_cap", mc.energy_cap);
        if (mc.energy_cap && !(*mc.energy_cap > 0.0)) m.fail("energy_cap", "energy_cap must be positive");
        m.get("relative_residual", mc.relative_residual);
        if (auto n = m.raw("fit_window"); n && !n.IsNull() && !(n.IsScalar() && n.Scalar() == "auto")) {
            std::vector<int> w;
            m.get_list("fit_window", w, "integers");
            if (w.size() != 2 || w[0] < 0 || w[1] < w[0]) m.fail("fit_window", "fit_window must be [lo, hi] with 0 <= lo <= hi");
            mc.fit_window = FitWindow{w[0], w[1]};
        }
        m.get("d_digits", mc.d_digits);
        if (!(mc.d_digits > 0.0)) m.fail("d_digits", "d_digits must be positive");
        m.get("spectrum_every", mc.spectrum_every);
        if (mc.spectrum_every < 1) m.fail("spectrum_every", "spectrum_every must be >= 1");
        m.get_enum("time_average", mc.time_average, std::array{TimeAverage::hermite, TimeAverage::trapezoid});
        m.reject_unknown();
    }
    {
        Section o = top.child("output");
        auto& oc = c.output;
        o.get("directory", oc.directory);
        if (oc.directory.empty()) o.fail("directory", "directory must not be empty");
        o.get("ledger_every", oc.ledger_every);
        if (oc.ledger_every < 1) o.fail("ledger_every", "ledger_every must be >= 1");
        o.get("snapshot_every", oc.snapshot_every);
        if (oc.snapshot_every < 0) o.fail("snapshot_every", "snapshot_every must be >= 0");
        o.reject_unknown();
    }
    {
        Section v = top.child("convergence");
        auto& cc = c.convergence;
        v.get_enum("norm", cc.norm.kind,
                   std::array{ErrorNorm::Kind::l2, ErrorNorm::Kind::linf, ErrorNorm::Kind::sobolev});
        v.get("sobolev_order", cc.norm.order);
        if (!(cc.norm.order >= 0.0)) v.fail("sobolev_order", "sobolev_order must be non-negative");
        v.get("t_final", cc.t_final);
        if (!(cc.t_final >= 0.0)) v.fail("t_final", "t_final must be non-negative");
        v.get_list("grids", cc.grids, "integers");
        for (int n : cc.grids) {
            if (n < 4 || n % 2 != 0) v.fail("grids", "n_points must be even");
        }
        v.get("spatial_dt", cc.spatial_dt);
        if (!(cc.spatial_dt > 0.0)) v.fail("spatial_dt", "spatial_dt must be positive");
        v.get_list("dts", cc.dts, "numbers");
        for (double dt : cc.dts) {
            if (!(dt > 0.0)) v.fail("dts", "dts must be positive");
        }
        v.get("reference_factor", cc.reference_factor);
        if (!(cc.reference_factor >= 1.0)) v.fail("reference_factor", "reference_factor must be >= 1");
        if (auto n = v.raw("pairs"); n && !n.IsNull()) {
            if (!n.IsSequence()) v.fail("pairs", "expected a list of [n_points, dt]");
            cc.pairs.clear();
            for (const auto& item : n) cc.pairs.push_back(v.pair_of(item, "pairs"));
        }
        if (auto n = v.raw("reference"); n && !n.IsNull()) cc.reference = v.pair_of(n, "reference");
        for (const auto& [n, dt] : cc.pairs) {
            if (n < 4 || n % 2 != 0) v.fail("pairs", "n_points must be even");
            if (!(dt > 0.0)) v.fail("pairs", "dt must be positive");
        }
        v.reject_unknown();
    }
    top.reject_unknown();
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s = buf;
    // Keep YAML from reading integral doubles back as a different type.
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
}

std::string vec3(const std::array<double, 3>& v) { return "[" + num(v[0]) + ", " + num(v[1]) + ", " + num(v[2]) + "]"; }

}  // namespace

std::string echo_config(const RunConfig& c) {
    std::ostringstream o;
    o << "grid:\n";
    o << "  n_points: " << c.grid.n_points << "\n";
    o << "  dealias: " << to_string(c.grid.dealias) << "\n";
    o << "physics:\n";
    o << "  nu: " << num(c.physics.nu) << "\n";
    o << "  nonlinear: " << (c.physics.nonlinear ? "true" : "false") << "\n";
    o << "  forcing:\n";
    o << "    kind: " << to_string(c.physics.forcing.kind) << "\n";
    o << "    amplitude: " << num(c.physics.forcing.amplitude) << "\n";
    o << "    length_scale: " << num(c.physics.forcing.length_scale) << "\n";
    o << "    center: " << vec3(c.physics.forcing.center) << "\n";
    o << "    ramp_time: " << num(c.physics.forcing.ramp_time) << "\n";
    const auto& ic = c.initial_condition;
    o << "initial_condition:\n";
    o << "  kind: " << to_string(ic.kind) << "\n";
    o << "  amplitude: " << num(ic.amplitude) << "\n";
    o << "  concentration: " << num(ic.concentration) << "\n";
    o << "  seed: " << ic.seed << "\n";
    o << "  center: " << vec3(ic.center) << "\n";
    o << "  axis: " << vec3(ic.axis) << "\n";
    const auto& sc = c.step_control;
    o << "step_control:\n";
    o << "  cfl_number: " << num(sc.cfl_number) << "\n";
    o << "  dt_min: " << num(sc.dt_min) << "\n";
    o << "  dt_max: " << num(sc.dt_max) << "\n";
    o << "  t_end: " << num(sc.t_end) << "\n";
    o << "  max_steps: " << sc.max_steps << "\n";
    const auto& m = c.monitor;
    o << "monitor:\n";
    o << "  epsilon: " << (m.epsilon ? num(*m.epsilon) : "auto") << "\n";
    o << "  energy_cap: " << (m.energy_cap ? num(*m.energy_cap) : "auto") << "\n";
    o << "  relative_residual: " << (m.relative_residual ? "true" : "false") << "\n";
    if (m.fit_window) o << "  fit_window: [" << m.fit_window->lo << ", " << m.fit_window->hi << "]\n";
    else o << "  fit_window: auto\n";
    o << "  d_digits: " << num(m.d_digits) << "\n";
    o << "  spectrum_every: " << m.spectrum_every << "\n";
    o << "  time_average: " << (m.time_average == TimeAverage::hermite ? "hermite" : "trapezoid") << "\n";
    o << "output:\n";
    o << "  directory: \"" << c.output.directory << "\"\n";
    o << "  ledger_every: " << c.output.ledger_every << "\n";
    o << "  snapshot_every: " << c.output.snapshot_every << "\n";
    const auto& v = c.convergence;
    o << "convergence:\n";
    o << "  norm: "
      << (v.norm.kind == ErrorNorm::Kind::l2 ? "l2" : v.norm.kind == ErrorNorm::Kind::linf ? "linf" : "h_s") << "\n";
    o << "  sobolev_order: " << num(v.norm.order) << "\n";
    o << "  t_final: " << num(v.t_final) << "\n";
    o << "  grids: [";
    for (std::size_t i = 0; i < v.grids.size(); ++i) o << (i ? ", " : "") << v.grids[i];
    o << "]\n";
    o << "  spatial_dt: " << num(v.spatial_dt) << "\n";
    o << "  dts: [";
    for (std::size_t i = 0; i < v.dts.size(); ++i) o << (i ? ", " : "") << num(v.dts[i]);
    o << "]\n";
    o << "  reference_factor: " << num(v.reference_factor) << "\n";
    o << "  pairs: [";
    for (std::size_t i = 0; i < v.pairs.size(); ++i) {
        o << (i ? ", " : "") << "[" << v.pairs[i].first << ", " << num(v.pairs[i].second) << "]";
    }
    o << "]\n";
    o << "  reference: [" << v.reference.first << ", " << num(v.reference.second) << "]\n";
    return o.str();
}

}  // namespace sns
