#include "sns/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "sns/error.hpp"
#include "sns/spectral.hpp"

namespace sns {

namespace {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    LineFit f;
    f.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    f.intercept = my - f.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (f.intercept + f.slope * x[i]);
        ss_res += r * r;
    }
    f.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    return f;
}

}  // namespace

SpectrumProfile shell_spectrum(const SpectralField& u, ShellStatistic stat) {
    const GridSpec& g = u.grid();
    const int shells = std::max(g.k_max(), 0);
    SpectrumProfile p;
    p.shells.resize(shells);
    std::vector<double> sum_sq(shells, 0.0);
    std::vector<long> count(shells, 0);
    for (int m = 0; m < shells; ++m) {
        p.shells[m].m = m;
        p.shells[m].radius = m + 0.5;
    }
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto k = g.wavevector(i);
        const double k2 = double(k[0]) * k[0] + double(k[1]) * k[1] + double(k[2]) * k[2];
        if (k2 == 0.0) continue;
        const double r = std::sqrt(k2);
        const int m = static_cast<int>(std::ceil(r)) - 1;
        if (m >= shells) continue;
        const double mag2 = std::norm(u.at(0, i)) + std::norm(u.at(1, i)) + std::norm(u.at(2, i));
        sum_sq[m] += mag2;
        ++count[m];
        const double mag = std::sqrt(mag2);
        Shell& s = p.shells[m];
        if (stat == ShellStatistic::max && mag > 0.0 &&
            (mag > s.amplitude || (mag == s.amplitude && r < s.radius))) {
            s.amplitude = mag;
            s.radius = r;
        }
    }
    if (stat == ShellStatistic::rms) {
        for (int m = 0; m < shells; ++m) {
            p.shells[m].amplitude = count[m] ? std::sqrt(sum_sq[m] / count[m]) : 0.0;
        }
    }
    return p;
}

FitWindow default_fit_window(int k_max) { return {k_max / 4, (3 * k_max) / 4}; }

SpectrumProfile fit_strip(const SpectrumProfile& profile, FitWindow window, double relative_floor) {
    double peak = 0.0;
    for (const auto& s : profile.shells) peak = std::max(peak, s.amplitude);
    const double floor = std::max(1e-30, relative_floor * peak);

    std::vector<double> x, y;
    for (const auto& s : profile.shells) {
        if (s.m < window.lo || s.m > window.hi) continue;
        if (!(s.amplitude > floor)) continue;
        x.push_back(s.radius);
        y.push_back(std::log(s.amplitude));
    }
    if (x.size() < 4) throw Error("spectrum under-resolved");

    const LineFit line = least_squares(x, y);
    SpectrumProfile out = profile;
    out.fitted = true;
    out.fit_window = window;
    out.fit_delta = std::max(0.0, -line.slope);
    out.fit_c_star = std::exp(line.intercept);
    out.fit_r2 = line.r2;
    return out;
}

double truncation_bound(const SpectrumProfile& profile, int K, BoundNorm norm) {
    if (!(profile.fit_delta > 0.0)) throw Error("no analyticity margin");
    const double poly = norm == BoundNorm::l2 ? (1.0 + K) : (1.0 + K) * (1.0 + K);
    return profile.fit_c_star * poly * std::exp(-profile.fit_delta * K);
}

double tail_sum_bound(const SpectrumProfile& profile, int K) {
    if (!(profile.fit_delta > 0.0)) throw Error("no analyticity margin");
    const double a = 2.0 * profile.fit_delta;
    const double h = std::sqrt(3.0) / 2.0;
    double sum = 0.0;
    for (int m = std::max(K, 0);; ++m) {
        const double outer = m + 1 + h;
        const double inner = std::max(0.0, m - h);
        const double count = 4.0 / 3.0 * std::numbers::pi * (outer * outer * outer - inner * inner * inner);
        const double term = count * std::exp(-a * m);
        sum += term;
        if (term < 1e-18 * sum && m > K + 10) break;
    }
    return std::sqrt(box_volume()) * profile.fit_c_star * std::sqrt(sum);
}

int required_cutoff(double c_star, double delta, double epsilon) {
    if (!(delta > 0.0)) throw Error("no analyticity margin");
    if (!(epsilon > 0.0)) throw Error("epsilon must be positive");
    auto holds = [&](int K) {
        return c_star * (1.0 + K) * (1.0 + K) * std::exp(-delta * K) <= 0.5 * epsilon;
    };
    // (1+K)^2 e^{-delta K} increases up to K = 2/delta - 1 and decreases after.
    const int peak = std::max(1, static_cast<int>(std::floor(2.0 / delta - 1.0)));
    if (holds(peak) && holds(peak + 1)) return 1;
    int K = peak;
    while (!holds(K)) {
        ++K;
        if (K > 100000000) throw Error("required cutoff out of range");
    }
    return K;
}

ResolutionReport resolution_check(const SpectrumProfile& profile, double epsilon, double dt, int order,
                                  std::optional<double> c2) {
    if (!(profile.fit_delta > 0.0)) throw Error("no analyticity margin");
    ResolutionReport r;
    r.k_required = required_cutoff(profile.fit_c_star, profile.fit_delta, epsilon);
    if (c2) {
        r.dt_ok = (*c2 * std::pow(dt, order) <= 0.5 * epsilon);
        if (*c2 > 0.0) r.dt_limit = std::pow(epsilon / (2.0 * *c2), 1.0 / order);
    }
    return r;
}

double estimate_temporal_constant(double error_between_runs, double dt, int order) {
    return error_between_runs / ((1.0 - std::pow(2.0, -order)) * std::pow(dt, order));
}

const char* to_string(StopCondition c) {
    switch (c) {
        case StopCondition::none: return "none";
        case StopCondition::residual_budget_exceeded: return "residual_budget_exceeded";
        case StopCondition::energy_threshold_exceeded: return "energy_threshold_exceeded";
        case StopCondition::non_finite_value: return "non_finite_value";
        case StopCondition::resolution_lost: return "resolution_lost";
        case StopCondition::ledger_ended: return "ledger_ended";
    }
    return "?";
}

bool resolution_healthy(const ResolutionSample& s, double d_digits) {
    if (std::isnan(s.fit_delta)) return false;
    return s.fit_delta * s.k_max >= std::log(10.0) * d_digits;
}

BreakdownReport breakdown_monitor(const std::vector<DiagnosticsRecord>& ledger, const BreakdownCriteria& criteria,
                                  double horizon, const std::vector<ResolutionSample>& resolution) {
    if (ledger.empty()) throw Error("breakdown_monitor: empty ledger");
    BreakdownReport rep;
    rep.epsilon = criteria.epsilon;
    rep.energy_cap = criteria.energy_cap;
    rep.horizon = horizon;

    const double e0 = ledger.front().energy;
    const double budget_scale = criteria.relative_residual ? (e0 > 0.0 ? e0 : 1.0) : 1.0;
    std::size_t res_idx = 0;

    for (std::size_t i = 0; i < ledger.size(); ++i) {
        const auto& r = ledger[i];
        StopCondition fired = StopCondition::none;
        if (!r.finite()) fired = StopCondition::non_finite_value;
        else if (r.residual_accum / budget_scale > criteria.epsilon) fired = StopCondition::residual_budget_exceeded;
        else if (r.energy > criteria.energy_cap) fired = StopCondition::energy_threshold_exceeded;
        else {
            while (res_idx < resolution.size() && resolution[res_idx].step < r.step) ++res_idx;
            if (res_idx < resolution.size() && resolution[res_idx].step == r.step &&
                !resolution_healthy(resolution[res_idx], criteria.d_digits)) {
                fired = StopCondition::resolution_lost;
            }
        }
        if (fired != StopCondition::none) {
            rep.stop_condition = fired;
            rep.stop_step = r.step;
            rep.t_num = i > 0 ? ledger[i - 1].t : r.t;
            rep.energy_at_stop = r.energy;
            rep.residual_accum_at_stop = r.residual_accum;
            return rep;
        }
    }
    const auto& last = ledger.back();
    rep.energy_at_stop = last.energy;
    rep.residual_accum_at_stop = last.residual_accum;
    rep.stop_step = last.step;
    rep.t_num = last.t;
    if (last.t < horizon * (1.0 - 1e-12)) {
        // Ended early (step-size underflow, step cap) with every clause intact.
        rep.stop_condition = StopCondition::ledger_ended;
    } else {
        rep.t_num = horizon;
    }
    return rep;
}

BreakdownTrend breakdown_trend(std::vector<TrendEntry> entries) {
    if (entries.size() < 2) throw Error("breakdown_trend needs at least two reports");
    std::sort(entries.begin(), entries.end(), [](const TrendEntry& a, const TrendEntry& b) {
        return a.k_max != b.k_max ? a.k_max < b.k_max : a.dt > b.dt;
    });
    BreakdownTrend trend;
    trend.nondecreasing = trend.nonincreasing = true;
    double lo = entries.front().report.t_num, hi = lo;
    for (std::size_t i = 1; i < entries.size(); ++i) {
        const double a = entries[i - 1].report.t_num, b = entries[i].report.t_num;
        if (b < a) trend.nondecreasing = false;
        if (b > a) trend.nonincreasing = false;
        lo = std::min(lo, b);
        hi = std::max(hi, b);
    }
    trend.stabilized = (hi - lo) <= 0.1 * std::abs(hi);
    if (trend.stabilized) {
        std::vector<double> x, y;
        for (const auto& e : entries) {
            x.push_back(1.0 / std::max(e.k_max, 1));
            y.push_back(e.report.t_num);
        }
        trend.limit = least_squares(x, y).intercept;
        trend.verdict = "stabilized";
    } else {
        trend.verdict = "not stabilized";
    }
    trend.entries = std::move(entries);
    return trend;
}

}  // namespace sns
