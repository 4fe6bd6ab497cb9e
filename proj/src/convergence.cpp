#include "sns/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sns/diagnostics.hpp"
#include "sns/error.hpp"
#include "sns/integrator.hpp"
#include "sns/spectral.hpp"

namespace sns {

const char* to_string(StudyKind kind) {
    switch (kind) {
        case StudyKind::spatial: return "spatial";
        case StudyKind::temporal: return "temporal";
        case StudyKind::combined: return "combined";
    }
    return "?";
}

std::string ErrorNorm::name() const {
    switch (kind) {
        case Kind::l2: return "l2";
        case Kind::linf: return "linf";
        case Kind::sobolev: {
            char buf[32];
            std::snprintf(buf, sizeof buf, "h_s(%g)", order);
            return buf;
        }
    }
    return "?";
}

OrderFit observed_order(const std::vector<double>& errors, const std::vector<double>& parameters, OrderModel model) {
    if (errors.size() != parameters.size()) throw Error("observed_order: size mismatch");
    if (errors.size() < 3) throw Error("observed_order: need at least 3 samples");
    std::vector<double> x, y;
    for (std::size_t i = 0; i < errors.size(); ++i) {
        if (!(errors[i] > 0.0)) throw Error("observed_order: non-positive error (exact agreement?)");
        x.push_back(model == OrderModel::algebraic ? std::log(parameters[i]) : parameters[i]);
        y.push_back(std::log(errors[i]));
    }
    const double n = double(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw Error("observed_order: parameters have zero spread");
    OrderFit fit;
    fit.rate = sxy / sxx;
    fit.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return fit;
}

double field_error(const SpectralField& a, const SpectralField& b, const ErrorNorm& norm) {
    const GridSpec& fine = a.grid().n() >= b.grid().n() ? a.grid() : b.grid();
    const SpectralField aa = a.grid() == fine ? a : resample(a, fine);
    const SpectralField bb = b.grid() == fine ? b : resample(b, fine);
    const SpectralField diff = add_scaled(aa, -1.0, bb);
    switch (norm.kind) {
        case ErrorNorm::Kind::l2: return std::sqrt(l2_norm_sq(diff));
        case ErrorNorm::Kind::linf: return max_velocity(diff);
        case ErrorNorm::Kind::sobolev: return sobolev_norm(diff, norm.order);
    }
    return 0.0;
}

SpectralField run_fixed_step(const SpectralField& u0, const PhysicsParams& params, double t_final, double dt) {
    if (!(dt > 0.0)) throw Error("dt must be positive");
    const double ratio = t_final / dt;
    const long steps = std::lround(ratio);
    if (std::abs(ratio - double(steps)) > 1e-9 * std::max(1.0, ratio)) {
        throw Error("dt must divide t_final");
    }
    const NavierStokesModel model(params, u0.grid());
    SimulationState s;
    s.field = u0;
    for (long i = 0; i < steps; ++i) {
        s = rk4_step(s, dt, model);
        s.t = double(i + 1) * dt;
        if (s.diverged) throw Error("reference run diverged");
    }
    return s.field;
}

namespace {

bool strictly_decreasing(const std::vector<ConvergenceSample>& s, double floor) {
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (s[i].error > floor && !(s[i].error < s[i - 1].error)) return false;
    }
    return true;
}

}  // namespace

ConvergenceReport spatial_study(const SpatialStudy& study) {
    if (study.grids.size() < 4) throw Error("spatial study needs at least 3 grids plus the reference");
    std::vector<int> grids = study.grids;
    std::sort(grids.begin(), grids.end());
    if (grids.back() < 4 * grids.front()) throw Error("reference grid must be >= 4x the coarsest grid");

    const GridSpec ref_grid(grids.back(), study.dealias);
    const SpectralField reference =
        run_fixed_step(make_initial_condition(study.ic, ref_grid), study.params, study.t_final, study.dt);

    ConvergenceReport rep;
    rep.kind = StudyKind::spatial;
    rep.norm = study.norm;
    for (std::size_t i = 0; i + 1 < grids.size(); ++i) {
        const GridSpec g(grids[i], study.dealias);
        const SpectralField u =
            run_fixed_step(make_initial_condition(study.ic, g), study.params, study.t_final, study.dt);
        ConvergenceSample s;
        s.parameter = g.k_max();
        s.n_points = g.n();
        s.dt = study.dt;
        s.error = field_error(u, reference, study.norm);
        rep.samples.push_back(s);
    }

    constexpr double floor = 1e-12;
    if (!strictly_decreasing(rep.samples, floor)) rep.flags.push_back("non-spectral behavior");

    std::vector<double> e, k;
    for (const auto& s : rep.samples) {
        if (s.error > 0.0) {
            e.push_back(s.error);
            k.push_back(s.parameter);
        }
    }
    if (e.size() >= 3) {
        const OrderFit fit = observed_order(e, k, OrderModel::exponential);
        rep.fitted = true;
        rep.fitted_rate = -fit.rate;
        rep.fit_r2 = fit.r2;
    } else {
        rep.notes.push_back("fewer than 3 non-zero errors; fit skipped");
    }
    return rep;
}

ConvergenceReport temporal_study(const TemporalStudy& study) {
    if (study.dts.size() < 3) throw Error("temporal study needs at least 3 step sizes");
    const GridSpec grid(study.n_points, DealiasRule::two_thirds);
    const SpectralField u0 = make_initial_condition(study.ic, grid);

    std::vector<double> dts = study.dts;
    std::sort(dts.begin(), dts.end(), std::greater<>());

    SpectralField reference;
    if (study.exact) {
        reference = *study.exact;
    } else {
        reference = run_fixed_step(u0, study.params, study.t_final, dts.back() / study.reference_factor);
    }

    ConvergenceReport rep;
    rep.kind = StudyKind::temporal;
    rep.norm = study.norm;
    for (double dt : dts) {
        ConvergenceSample s;
        s.parameter = dt;
        s.dt = dt;
        s.n_points = grid.n();
        s.error = field_error(run_fixed_step(u0, study.params, study.t_final, dt), reference, study.norm);
        rep.samples.push_back(s);
    }

    std::vector<double> e, h;
    for (const auto& s : rep.samples) {
        if (s.error > 0.0) {
            e.push_back(s.error);
            h.push_back(s.parameter);
        } else {
            rep.notes.push_back("zero error at dt = " + std::to_string(s.dt) + " (matches reference)");
        }
    }
    if (e.size() >= 3) {
        const OrderFit fit = observed_order(e, h, OrderModel::algebraic);
        rep.fitted = true;
        rep.fitted_rate = fit.rate;
        rep.fit_r2 = fit.r2;
        if (fit.rate < 3.5 || fit.rate > 4.5) rep.flags.push_back("observed order outside [3.5, 4.5]");
    } else {
        rep.notes.push_back("fewer than 3 non-zero errors; fit skipped");
    }
    return rep;
}

namespace {

struct TwoTermFit {
    double a = 0.0, b = 0.0, delta = 0.0, cost = std::numeric_limits<double>::infinity();
};

/// min sum ((a s_i + b t_i) / e_i - 1)^2 over a, b >= 0.
TwoTermFit fit_two_terms(const std::vector<double>& s, const std::vector<double>& t, const std::vector<double>& e) {
    double ss = 0, st = 0, tt = 0, s1 = 0, t1 = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        const double x = s[i] / e[i], y = t[i] / e[i];
        ss += x * x, st += x * y, tt += y * y, s1 += x, t1 += y;
    }
    auto cost = [&](double a, double b) {
        double c = 0.0;
        for (std::size_t i = 0; i < e.size(); ++i) {
            const double r = (a * s[i] + b * t[i]) / e[i] - 1.0;
            c += r * r;
        }
        return c;
    };
    TwoTermFit best;
    const double det = ss * tt - st * st;
    if (det > 0.0) {
        const double a = (s1 * tt - t1 * st) / det;
        const double b = (t1 * ss - s1 * st) / det;
        if (a >= 0.0 && b >= 0.0) best = {a, b, 0.0, cost(a, b)};
    }
    if (ss > 0.0) {
        const double a = s1 / ss;
        if (cost(a, 0.0) < best.cost) best = {a, 0.0, 0.0, cost(a, 0.0)};
    }
    if (tt > 0.0) {
        const double b = t1 / tt;
        if (cost(0.0, b) < best.cost) best = {0.0, b, 0.0, cost(0.0, b)};
    }
    return best;
}

}  // namespace

ConvergenceReport combined_study(const CombinedStudy& study) {
    if (study.pairs.empty()) throw Error("combined study needs at least one (n, dt) pair");
    const GridSpec ref_grid(study.reference.first, DealiasRule::two_thirds);
    const SpectralField reference = run_fixed_step(make_initial_condition(study.ic, ref_grid), study.params,
                                                   study.t_final, study.reference.second);

    ConvergenceReport rep;
    rep.kind = StudyKind::combined;
    rep.norm = study.norm;
    for (const auto& [n, dt] : study.pairs) {
        const GridSpec g(n, DealiasRule::two_thirds);
        ConvergenceSample s;
        s.parameter = g.k_max();
        s.n_points = n;
        s.dt = dt;
        s.error = field_error(run_fixed_step(make_initial_condition(study.ic, g), study.params, study.t_final, dt),
                              reference, study.norm);
        rep.samples.push_back(s);
    }

    bool spread = false;
    for (const auto& s : rep.samples) {
        if (s.n_points != rep.samples.front().n_points || s.dt != rep.samples.front().dt) spread = true;
    }
    if (!spread) {
        rep.notes.push_back("all pairs identical: zero spread, model fit skipped");
        return rep;
    }
    if (!strictly_decreasing(rep.samples, 0.0)) rep.flags.push_back("non-monotone error along schedule");

    std::vector<double> e, t;
    std::vector<int> K;
    for (const auto& s : rep.samples) {
        if (s.error > 0.0) {
            e.push_back(s.error);
            t.push_back(std::pow(s.dt, 4));
            K.push_back(static_cast<int>(s.parameter));
        }
    }
    if (e.size() < 3) {
        rep.notes.push_back("fewer than 3 non-zero errors; model fit skipped");
        return rep;
    }
    TwoTermFit best;
    for (int i = 1; i <= 500; ++i) {
        const double delta = 0.01 * i;
        std::vector<double> s;
        for (int k : K) s.push_back((1.0 + k) * (1.0 + k) * std::exp(-delta * k));
        TwoTermFit f = fit_two_terms(s, t, e);
        f.delta = delta;
        if (f.cost < best.cost) best = f;
    }
    rep.fitted = true;
    rep.model_spatial_coeff = best.a;
    rep.model_temporal_coeff = best.b;
    rep.model_delta = best.delta;
    rep.fitted_rate = best.delta;
    double ss_res = 0.0, ss_tot = 0.0, mean = 0.0;
    for (double v : e) mean += std::log(v);
    mean /= double(e.size());
    for (auto& s : rep.samples) {
        const double spatial = best.a * (1.0 + s.parameter) * (1.0 + s.parameter) * std::exp(-best.delta * s.parameter);
        const double temporal = best.b * std::pow(s.dt, 4);
        s.dominant = spatial >= temporal ? "spatial" : "temporal";
        if (s.error > 0.0 && spatial + temporal > 0.0) {
            const double r = std::log(s.error) - std::log(spatial + temporal);
            ss_res += r * r;
            ss_tot += (std::log(s.error) - mean) * (std::log(s.error) - mean);
        }
    }
    rep.fit_r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return rep;
}

}  // namespace sns
