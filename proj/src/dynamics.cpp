#include "sns/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "sns/error.hpp"
#include "sns/fft.hpp"
#include "sns/kernels.hpp"
#include "sns/spectral.hpp"

namespace sns {

const char* to_string(ForcingKind kind) {
    switch (kind) {
        case ForcingKind::none: return "none";
        case ForcingKind::steady_analytic: return "steady_analytic";
        case ForcingKind::concentrated_pulse: return "concentrated_pulse";
    }
    return "?";
}

const char* to_string(InitialConditionKind kind) {
    switch (kind) {
        case InitialConditionKind::taylor_green: return "taylor_green";
        case InitialConditionKind::concentrated_vortex: return "concentrated_vortex";
        case InitialConditionKind::random_analytic: return "random_analytic";
    }
    return "?";
}

void ForcingSpec::validate() const {
    if (!std::isfinite(amplitude)) throw Error("forcing amplitude must be finite");
    if (!(length_scale > 0.0)) throw Error("forcing length_scale must be positive");
    if (!(ramp_time >= 0.0)) throw Error("forcing ramp_time must be non-negative");
}

void PhysicsParams::validate() const {
    if (!(nu > 0.0)) throw Error("nu must be positive");
    forcing.validate();
}

void InitialConditionSpec::validate() const {
    if (!std::isfinite(amplitude)) throw Error("initial amplitude must be finite");
    if (!(concentration > 0.0)) throw Error("concentration must be positive");
    const double a = std::hypot(axis[0], axis[1], axis[2]);
    if (!(a > 0.0)) throw Error("vortex axis must be non-zero");
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap(double d) {
    d = std::fmod(d, kTwoPi);
    if (d < -std::numbers::pi) d += kTwoPi;
    if (d >= std::numbers::pi) d -= kTwoPi;
    return d;
}

SpectralField finish(SpectralField s) {
    kernels::dealias(s.grid(), kernels::spans(s));
    kernels::leray_project(s.grid(), kernels::spans(s));
    return s;
}

/// Gaussian-enveloped swirl amp * exp(-|d|^2 * inv_width2) * (axis x d),
/// summed over periodic images so the field is smooth across the box edge.
RealField swirl(const GridSpec& grid, double amp, double inv_width2, const std::array<double, 3>& center,
                std::array<double, 3> axis) {
    const double a = std::hypot(axis[0], axis[1], axis[2]);
    for (double& v : axis) v /= a;
    // dropped images sit at distance >= (2R+1)pi, where the envelope is below e^-40
    const int R = std::max(1, static_cast<int>(std::ceil((std::sqrt(40.0 / inv_width2) / std::numbers::pi - 1.0) / 2.0)));
    RealField f(grid);
    const int n = grid.n();
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy)
            for (int iz = 0; iz < n; ++iz) {
                const double w[3] = {wrap(grid.coordinate(ix) - center[0]), wrap(grid.coordinate(iy) - center[1]),
                                     wrap(grid.coordinate(iz) - center[2])};
                double u[3] = {0.0, 0.0, 0.0};
                for (int mx = -R; mx <= R; ++mx)
                    for (int my = -R; my <= R; ++my)
                        for (int mz = -R; mz <= R; ++mz) {
                            const double d[3] = {w[0] + kTwoPi * mx, w[1] + kTwoPi * my, w[2] + kTwoPi * mz};
                            const double env = amp * std::exp(-(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]) * inv_width2);
                            u[0] += env * (axis[1] * d[2] - axis[2] * d[1]);
                            u[1] += env * (axis[2] * d[0] - axis[0] * d[2]);
                            u[2] += env * (axis[0] * d[1] - axis[1] * d[0]);
                        }
                for (int c = 0; c < 3; ++c) f.at(c, ix, iy, iz) = u[c];
            }
    return f;
}

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t mode_seed(std::uint64_t seed, const std::array<int, 3>& k) {
    std::uint64_t h = splitmix(seed);
    for (int v : k) h = splitmix(h ^ static_cast<std::uint64_t>(static_cast<std::int64_t>(v)));
    return h;
}

/// First non-zero component positive: one representative of each {k, -k}.
bool canonical(const std::array<int, 3>& k) {
    if (k[0] != 0) return k[0] > 0;
    if (k[1] != 0) return k[1] > 0;
    return k[2] > 0;
}

SpectralField random_analytic(const InitialConditionSpec& spec, const GridSpec& grid) {
    SpectralField s(grid);
    const int kmax = grid.k_max();
    for (int kx = -kmax; kx <= kmax; ++kx)
        for (int ky = -kmax; ky <= kmax; ++ky)
            for (int kz = -kmax; kz <= kmax; ++kz) {
                const std::array<int, 3> k{kx, ky, kz};
                if (!canonical(k)) continue;
                std::mt19937_64 gen(mode_seed(spec.seed, k));
                std::normal_distribution<double> normal;
                std::array<Complex, 3> v;
                for (auto& c : v) {
                    const double re = normal(gen);
                    const double im = normal(gen);
                    c = {re, im};
                }
                const double k2 = double(kx) * kx + double(ky) * ky + double(kz) * kz;
                const Complex dot = (double(kx) * v[0] + double(ky) * v[1] + double(kz) * v[2]) / k2;
                v[0] -= double(kx) * dot;
                v[1] -= double(ky) * dot;
                v[2] -= double(kz) * dot;
                const double norm = std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
                if (norm == 0.0) continue;
                const double mag = spec.amplitude * std::exp(-std::sqrt(k2) / spec.concentration);
                for (auto& c : v) c *= mag / norm;
                s.set_mode_pair(k, v);
            }
    return s;
}

}  // namespace

SpectralField make_initial_condition(const InitialConditionSpec& spec, const GridSpec& grid) {
    spec.validate();
    switch (spec.kind) {
        case InitialConditionKind::taylor_green: {
            // Eight modes k = (+-1, +-1, +-1), set exactly in Fourier space.
            SpectralField s(grid);
            const Complex I{0.0, 1.0};
            for (int sx : {-1, 1})
                for (int sy : {-1, 1})
                    for (int sz : {-1, 1}) {
                        s.mode(0, {sx, sy, sz}) = -I * double(sx) * spec.amplitude / 8.0;
                        s.mode(1, {sx, sy, sz}) = I * double(sy) * spec.amplitude / 8.0;
                    }
            return finish(s);
        }
        case InitialConditionKind::concentrated_vortex:
            return finish(forward_transform(swirl(grid, spec.amplitude, spec.concentration, spec.center, spec.axis)));
        case InitialConditionKind::random_analytic:
            return finish(random_analytic(spec, grid));
    }
    throw Error("unknown initial condition");
}

Forcing::Forcing(const ForcingSpec& spec, const GridSpec& grid) : spec_(spec), shape_(grid) {
    spec.validate();
    switch (spec.kind) {
        case ForcingKind::none: break;
        case ForcingKind::steady_analytic: {
            const double kf = std::max(1.0, std::round(kTwoPi / spec.length_scale));
            RealField f(grid);
            const int n = grid.n();
            const double a = spec.amplitude;
            for (int ix = 0; ix < n; ++ix)
                for (int iy = 0; iy < n; ++iy)
                    for (int iz = 0; iz < n; ++iz) {
                        const double x = kf * grid.coordinate(ix), y = kf * grid.coordinate(iy),
                                     z = kf * grid.coordinate(iz);
                        f.at(0, ix, iy, iz) = a * (std::sin(z) + std::cos(y));
                        f.at(1, ix, iy, iz) = a * (std::sin(x) + std::cos(z));
                        f.at(2, ix, iy, iz) = a * (std::sin(y) + std::cos(x));
                    }
            shape_ = finish(forward_transform(f));
            break;
        }
        case ForcingKind::concentrated_pulse: {
            const double L = spec.length_scale;
            shape_ = finish(forward_transform(swirl(grid, spec.amplitude / L, 1.0 / (L * L), spec.center, {0, 0, 1})));
            break;
        }
    }
}

double Forcing::factor(double t) const {
    switch (spec_.kind) {
        case ForcingKind::none: return 0.0;
        case ForcingKind::steady_analytic: return 1.0;
        case ForcingKind::concentrated_pulse:
            if (spec_.ramp_time <= 0.0) return 1.0;
            return std::clamp(t / spec_.ramp_time, 0.0, 1.0);
    }
    return 0.0;
}

double Forcing::factor_rate(double t) const {
    if (spec_.kind != ForcingKind::concentrated_pulse || spec_.ramp_time <= 0.0) return 0.0;
    return (t >= 0.0 && t < spec_.ramp_time) ? 1.0 / spec_.ramp_time : 0.0;
}

SpectralField Forcing::at(double t) const {
    const double a = factor(t);
    if (a == 0.0) return SpectralField(shape_.grid());
    return scaled(shape_, a);
}

SpectralField eval_forcing(const ForcingSpec& spec, double t, const GridSpec& grid) {
    return Forcing(spec, grid).at(t);
}

SpectralField nonlinear_term(const SpectralField& u) {
    const GridSpec& g = u.grid();
    const auto& engine = FftEngine::for_size(g.n());
    const RealField velocity = inverse_transform_unchecked(u);
    RealField advection(g);

    std::vector<Complex> spectral(g.size());
    std::vector<double> physical(g.size());
    for (int j = 0; j < 3; ++j) {
        for (int i = 0; i < 3; ++i) {
            kernels::derivative(g, i, u.component(j), spectral);
            engine.inverse(spectral, physical);
            kernels::multiply_add(advection.component(j), velocity.component(i), physical);
        }
    }

    SpectralField n = forward_transform(advection);
    auto s = kernels::spans(n);
    kernels::dealias(g, s);
    kernels::leray_project(g, s);
    for (int c = 0; c < 3; ++c) {
        for (Complex& v : n.component(c)) v = -v;
    }
    return n;
}

NavierStokesModel::NavierStokesModel(const PhysicsParams& params, const GridSpec& grid)
    : params_(params), grid_(grid), forcing_(params.forcing, grid) {
    params.validate();
}

SpectralField NavierStokesModel::rhs(const SpectralField& u, double t) const {
    if (!(u.grid() == grid_)) throw Error("grid mismatch");
    SpectralField out(grid_);
    SpectralField n;
    if (params_.nonlinear) n = nonlinear_term(u);
    SpectralField f;
    if (forcing_.active() && forcing_.factor(t) != 0.0) f = forcing_.at(t);
    for (int c = 0; c < 3; ++c) {
        kernels::assemble_rhs(grid_, params_.nonlinear ? n.component(c) : kernels::CView{}, u.component(c),
                              params_.nu, f.grid().n() ? f.component(c) : kernels::CView{}, out.component(c));
    }
    return out;
}

SpectralField rhs(const SpectralField& u, double t, const PhysicsParams& params) {
    return NavierStokesModel(params, u.grid()).rhs(u, t);
}

}  // namespace sns
