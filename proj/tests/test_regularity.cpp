#include <cmath>
#include <limits>

#include "doctest.h"
#include "sns/error.hpp"
#include "sns/regularity.hpp"
#include "sns/spectral.hpp"
#include "test_support.hpp"

using namespace sns;

namespace {

SpectrumProfile synthetic(double c, double delta, int shells) {
    SpectrumProfile p;
    for (int m = 0; m < shells; ++m) p.shells.push_back({m, c * std::exp(-delta * (m + 0.5)), m + 0.5});
    return p;
}

// Dense field with |u_k| = c e^{-delta |k|} on every retained mode.
SpectralField envelope_field(const GridSpec& g, double c, double delta) {
    SpectralField u(g);
    const int km = g.k_max();
    for (int kx = 0; kx <= km; ++kx)
        for (int ky = -km; ky <= km; ++ky)
            for (int kz = -km; kz <= km; ++kz) {
                const std::array<int, 3> k{kx, ky, kz};
                if (kx == 0 && (ky < 0 || (ky == 0 && kz <= 0))) continue;
                const double r = std::sqrt(double(kx * kx + ky * ky + kz * kz));
                // unit vector orthogonal to k
                std::array<double, 3> e = std::abs(kx) < std::abs(kz) || kz == 0 ? std::array<double, 3>{0, double(-kz), double(ky)}
                                                                                 : std::array<double, 3>{double(-ky), double(kx), 0};
                double en = std::hypot(e[0], e[1], e[2]);
                if (en == 0.0) {
                    e = {1, 0, 0};
                    en = 1;
                }
                const double a = c * std::exp(-delta * r) / en;
                u.set_mode_pair(k, {Complex(a * e[0], 0), Complex(a * e[1], 0), Complex(a * e[2], 0)});
            }
    return u;
}

}  // namespace

TEST_CASE("strip fit recovers synthetic decay") {
    for (double delta : {0.25, 0.5, 1.0}) {
        const SpectrumProfile p = fit_strip(synthetic(2.0, delta, 40), {10, 30});
        CHECK(std::abs(p.fit_delta - delta) <= 1e-10 * delta);
        CHECK(p.fit_c_star == doctest::Approx(2.0).epsilon(1e-10));
        CHECK(p.fit_r2 == doctest::Approx(1.0));
    }
}

TEST_CASE("shell spectrum of a dense envelope field") {
    const GridSpec g(32, DealiasRule::two_thirds);
    const SpectralField u = envelope_field(g, 1.0, 0.5);
    const SpectrumProfile s = shell_spectrum(u);
    CHECK(s.shells.size() == 10u);
    const SpectrumProfile f = fit_strip(s, default_fit_window(g.k_max()));
    CHECK(f.fit_delta == doctest::Approx(0.5).epsilon(0.01));
    CHECK(f.fit_c_star == doctest::Approx(1.0).epsilon(0.05));
    CHECK(default_fit_window(10).lo == 2);
    CHECK(default_fit_window(10).hi == 7);
}

TEST_CASE("under-resolved spectra") {
    SpectrumProfile p = synthetic(1.0, 0.5, 20);
    for (int m = 5; m < 20; ++m) p.shells[m].amplitude = 0.0;
    CHECK_THROWS_WITH_AS(fit_strip(p, {2, 15}), "spectrum under-resolved", Error);
    SpectrumProfile flat = synthetic(1.0, 0.0, 20);
    flat = fit_strip(flat, {2, 15});
    CHECK(flat.fit_delta == 0.0);
    CHECK_THROWS_WITH_AS(truncation_bound(flat, 10, BoundNorm::l2), "no analyticity margin", Error);
}

TEST_CASE("truncation bounds") {
    const SpectrumProfile p = fit_strip(synthetic(1.0, 0.5, 40), {10, 30});
    CHECK(truncation_bound(p, 10, BoundNorm::l2) == doctest::Approx(11.0 * std::exp(-5.0)));
    CHECK(truncation_bound(p, 10, BoundNorm::linf) == doctest::Approx(121.0 * std::exp(-5.0)));
    double prev = tail_sum_bound(p, 5);
    for (int K = 6; K < 30; ++K) {
        const double b = tail_sum_bound(p, K);
        CHECK(b < prev);
        prev = b;
    }
    // tail_sum_bound bounds the L2 norm of the modes beyond K on a field under the envelope.
    const GridSpec g(32, DealiasRule::two_thirds);
    const SpectralField u = envelope_field(g, 1.0, 0.5);
    SpectrumProfile env;
    env.fit_c_star = 1.0;
    env.fit_delta = 0.5;
    for (int K : {2, 4, 6}) {
        SpectralField tail = u;
        for (int c = 0; c < 3; ++c)
            for (std::size_t i = 0; i < g.size(); ++i) {
                const auto k = g.wavevector(i);
                if (k[0] * k[0] + k[1] * k[1] + k[2] * k[2] <= K * K) tail.at(c, i) = 0.0;
            }
        CHECK(std::sqrt(l2_norm_sq(tail)) <= tail_sum_bound(env, K));
    }
}

TEST_CASE("required cutoff") {
    CHECK(required_cutoff(1.0, 0.5, 1e-6) == 45);
    auto lhs = [](int K) { return (1.0 + K) * (1.0 + K) * std::exp(-0.5 * K); };
    CHECK(lhs(44) > 0.5e-6);
    CHECK(lhs(45) <= 0.5e-6);
    CHECK(required_cutoff(1e-9, 1.0, 1.0) == 1);
    CHECK_THROWS_AS(required_cutoff(1.0, 0.0, 1e-6), Error);
    CHECK_THROWS_AS(required_cutoff(1.0, 0.5, 0.0), Error);
    const SpectrumProfile p = fit_strip(synthetic(1.0, 0.5, 40), {10, 30});
    const ResolutionReport r = resolution_check(p, 1e-6, 1e-3, 4, std::nullopt);
    CHECK(r.k_required == 45);
    CHECK_FALSE(r.dt_ok.has_value());
    const ResolutionReport t = resolution_check(p, 1e-6, 1e-3, 4, 10.0);
    CHECK(*t.dt_ok);  // 10 * 1e-12 <= 5e-7
    CHECK(*t.dt_limit == doctest::Approx(std::pow(1e-6 / 20.0, 0.25)));
    CHECK(estimate_temporal_constant(15.0 / 16.0, 1.0, 4) == doctest::Approx(1.0));
}

namespace {

std::vector<DiagnosticsRecord> ramp_ledger(int rows, double dt) {
    std::vector<DiagnosticsRecord> l;
    for (int i = 0; i < rows; ++i) {
        DiagnosticsRecord r;
        r.step = i;
        r.t = i * dt;
        r.dt = i ? dt : 0.0;
        r.energy = 1.0;
        r.residual_accum = 1e-9 * i;
        l.push_back(r);
    }
    return l;
}

}  // namespace

TEST_CASE("breakdown monitor") {
    BreakdownCriteria c;
    c.epsilon = 1e-6;
    c.energy_cap = 10.0;

    auto clean = breakdown_monitor(ramp_ledger(11, 0.1), c, 1.0);
    CHECK(clean.stop_condition == StopCondition::none);
    CHECK(clean.t_num == 1.0);

    auto early = breakdown_monitor(ramp_ledger(6, 0.1), c, 1.0);
    CHECK(early.stop_condition == StopCondition::ledger_ended);
    CHECK(early.t_num == doctest::Approx(0.5));

    auto l = ramp_ledger(11, 0.1);
    l[7].residual_accum = 2e-6;
    l[7].energy = 20.0;
    auto res = breakdown_monitor(l, c, 1.0);
    CHECK(res.stop_condition == StopCondition::residual_budget_exceeded);
    CHECK(res.stop_step == 7);
    CHECK(res.t_num == doctest::Approx(0.6));

    l = ramp_ledger(11, 0.1);
    l[4].energy = 11.0;
    l[8].max_vorticity = std::nan("");
    auto en = breakdown_monitor(l, c, 1.0);
    CHECK(en.stop_condition == StopCondition::energy_threshold_exceeded);
    CHECK(en.stop_step == 4);

    l = ramp_ledger(11, 0.1);
    l[3].max_vorticity = std::numeric_limits<double>::infinity();
    l[3].energy = 11.0;
    CHECK(breakdown_monitor(l, c, 1.0).stop_condition == StopCondition::non_finite_value);

    // Resolution: delta * k_max < ln 10 * 4 = 9.21
    std::vector<ResolutionSample> rs{{0, 0.0, 2.0, 10}, {5, 0.5, 0.5, 10}, {10, 1.0, 0.2, 10}};
    auto lost = breakdown_monitor(ramp_ledger(11, 0.1), c, 1.0, rs);
    CHECK(lost.stop_condition == StopCondition::resolution_lost);
    CHECK(lost.stop_step == 5);
    CHECK(lost.t_num == doctest::Approx(0.4));
    rs[1].fit_delta = std::numeric_limits<double>::infinity();
    CHECK(breakdown_monitor(ramp_ledger(11, 0.1), c, 1.0, rs).stop_step == 10);

    // relative residual budget
    BreakdownCriteria rel = c;
    rel.relative_residual = true;
    rel.energy_cap = 1e3;
    auto big = ramp_ledger(11, 0.1);
    for (auto& r : big) r.energy = 100.0;
    big[9].residual_accum = 5e-5;  // 5e-7 relative
    CHECK(breakdown_monitor(big, rel, 1.0).stop_condition == StopCondition::none);
    CHECK_THROWS_AS(breakdown_monitor({}, c, 1.0), Error);
}

TEST_CASE("breakdown trend") {
    auto entry = [](int k, double dt, double t) {
        TrendEntry e;
        e.k_max = k;
        e.dt = dt;
        e.report.t_num = t;
        return e;
    };
    const BreakdownTrend s = breakdown_trend({entry(21, 1e-3, 0.50), entry(10, 4e-3, 0.46), entry(16, 2e-3, 0.49)});
    CHECK(s.entries.front().k_max == 10);
    CHECK(s.nondecreasing);
    CHECK_FALSE(s.nonincreasing);
    CHECK(s.stabilized);
    REQUIRE(s.limit.has_value());
    CHECK(*s.limit > 0.5);
    CHECK(s.verdict == "stabilized");
    const BreakdownTrend u = breakdown_trend({entry(10, 4e-3, 0.2), entry(16, 2e-3, 0.5)});
    CHECK_FALSE(u.stabilized);
    CHECK_FALSE(u.limit.has_value());
    CHECK_THROWS_AS(breakdown_trend({entry(10, 1e-3, 0.2)}), Error);
}
