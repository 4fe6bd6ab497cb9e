// OpenMP kernels against the serial reference loops.

#include <cmath>

#include "doctest.h"
#include "sns/kernels.hpp"
#include "sns/parallel.hpp"
#include "sns/spectral.hpp"
#include "test_support.hpp"

using namespace sns;
namespace k = sns::kernels;

namespace {

double max_diff(const SpectralField& a, const SpectralField& b) {
    double d = 0.0;
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < a.grid().size(); ++i) d = std::max(d, std::abs(a.at(c, i) - b.at(c, i)));
    return d;
}

}  // namespace

TEST_CASE("modewise kernels agree with the serial reference") {
    for (int threads : {1, 2, 3}) {
        parallel::set_threads(threads);
        for (int n : {8, 12, 16}) {
            const GridSpec g(n, DealiasRule::two_thirds);
            const SpectralField u = test::random_spectral(g, 21u + n);
            const SpectralField v = test::random_spectral(g, 22u + n);

            SpectralField a = u, b = u;
            k::leray_project(g, k::spans(a));
            k::serial::leray_project(g, k::spans(b));
            CHECK(max_diff(a, b) < 1e-15);

            a = u, b = u;
            k::dealias(g, k::spans(a));
            k::serial::dealias(g, k::spans(b));
            CHECK(max_diff(a, b) == 0.0);

            SpectralField ca(g), cb(g);
            k::curl(g, k::views(u), k::spans(ca));
            k::serial::curl(g, k::views(u), k::spans(cb));
            CHECK(max_diff(ca, cb) == 0.0);

            for (int axis = 0; axis < 3; ++axis) {
                SpectralField da(g), db(g);
                k::derivative(g, axis, u.component(0), da.component(0));
                k::serial::derivative(g, axis, u.component(0), db.component(0));
                CHECK(max_diff(da, db) == 0.0);
            }

            a = u, b = u;
            k::axpy(a.component(1), 0.3, v.component(1));
            k::serial::axpy(b.component(1), 0.3, v.component(1));
            CHECK(max_diff(a, b) == 0.0);

            k::combine(a.component(2), u.component(2), -1.5, v.component(2));
            k::serial::combine(b.component(2), u.component(2), -1.5, v.component(2));
            CHECK(max_diff(a, b) == 0.0);

            k::assemble_rhs(g, v.component(0), u.component(0), 0.1, u.component(1), a.component(0));
            k::serial::assemble_rhs(g, v.component(0), u.component(0), 0.1, u.component(1), b.component(0));
            CHECK(max_diff(a, b) < 1e-14);
            k::assemble_rhs(g, v.component(0), u.component(0), 0.1, {}, a.component(0));
            k::serial::assemble_rhs(g, v.component(0), u.component(0), 0.1, {}, b.component(0));
            CHECK(max_diff(a, b) < 1e-14);

            for (auto w : {k::Weight{k::Weight::Kind::unit}, k::Weight{k::Weight::Kind::k_squared},
                           k::Weight{k::Weight::Kind::sobolev, 3.0}}) {
                CHECK(test::rel(k::weighted_sum(g, k::views(u), w), k::serial::weighted_sum(g, k::views(u), w)) <
                      1e-12);
            }
            CHECK(test::rel(k::pairing(k::views(u), k::views(v)), k::serial::pairing(k::views(u), k::views(v))) <
                  1e-10);
            CHECK(test::rel(k::k2_pairing(g, k::views(u), k::views(v)),
                            k::serial::k2_pairing(g, k::views(u), k::views(v))) < 1e-10);
            CHECK(k::max_divergence(g, k::views(u)) == k::serial::max_divergence(g, k::views(u)));
            CHECK(k::max_coefficient(k::views(u)) == k::serial::max_coefficient(k::views(u)));

            const RealField r = test::random_real(g, 30u + n);
            CHECK(k::max_magnitude(k::views(r)) == k::serial::max_magnitude(k::views(r)));
            RealField pa = r, pb = r;
            k::multiply_add(pa.component(0), r.component(1), r.component(2));
            k::serial::multiply_add(pb.component(0), r.component(1), r.component(2));
            for (std::size_t i = 0; i < g.size(); ++i) CHECK(pa.component(0)[i] == pb.component(0)[i]);
        }
    }
    parallel::set_threads(1);
}

TEST_CASE("reductions do not depend on the thread count") {
    const GridSpec g(16, DealiasRule::two_thirds);
    const SpectralField u = test::random_spectral(g, 41);
    parallel::set_threads(1);
    const double s1 = k::weighted_sum(g, k::views(u), {k::Weight::Kind::k_squared});
    const double p1 = k::pairing(k::views(u), k::views(u));
    for (int threads : {2, 3, 4}) {
        parallel::set_threads(threads);
        CHECK(k::weighted_sum(g, k::views(u), {k::Weight::Kind::k_squared}) == s1);
        CHECK(k::pairing(k::views(u), k::views(u)) == p1);
    }
    parallel::set_threads(1);
}

TEST_CASE("finite checks and NaN propagation") {
    const GridSpec g(8, DealiasRule::two_thirds);
    SpectralField u = test::random_spectral(g, 2);
    CHECK(k::all_finite(u.component(0)));
    u.at(0, 5) = Complex(std::nan(""), 0.0);
    CHECK_FALSE(k::all_finite(u.component(0)));
    CHECK(std::isnan(k::max_coefficient(k::views(u))));
}
