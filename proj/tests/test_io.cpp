#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>

#include "doctest.h"
#include "sns/error.hpp"
#include "sns/io.hpp"
#include "test_support.hpp"

using namespace sns;

TEST_CASE("snapshot round trip is bitwise") {
    const auto dir = test::scratch_dir("io_snapshot");
    const GridSpec g(8, DealiasRule::two_thirds);
    const SpectralField u = test::random_spectral(g, 99);
    io::write_snapshot(dir / "a.snsf", u, 0.125);
    CHECK(std::filesystem::file_size(dir / "a.snsf") == 5 + 4 + 8 + 3 * 512 * 16);
    const io::Snapshot s = io::read_snapshot(dir / "a.snsf");
    CHECK(s.t == 0.125);
    CHECK(s.field.grid().n() == 8);
    for (int c = 0; c < 3; ++c)
        CHECK(std::memcmp(s.field.component(c).data(), u.component(c).data(), u.component(c).size_bytes()) == 0);

    // Header layout
    std::ifstream in(dir / "a.snsf", std::ios::binary);
    char head[17];
    in.read(head, 17);
    CHECK(std::string(head, 5) == "SNSF1");
    std::uint32_t n;
    std::memcpy(&n, head + 5, 4);
    CHECK(n == 8u);
}

TEST_CASE("corrupt snapshots name the file and the magic") {
    const auto dir = test::scratch_dir("io_corrupt");
    io::write_text(dir / "bad.snsf", "NOTASNAPSHOT");
    try {
        io::read_snapshot(dir / "bad.snsf");
        FAIL("expected IoError");
    } catch (const IoError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("bad.snsf") != std::string::npos);
        CHECK(msg.find("SNSF1") != std::string::npos);
    }
    const GridSpec g(8, DealiasRule::two_thirds);
    io::write_snapshot(dir / "t.snsf", SpectralField(g), 0.0);
    std::filesystem::resize_file(dir / "t.snsf", 1000);
    CHECK_THROWS_AS(io::read_snapshot(dir / "t.snsf"), IoError);
    CHECK_THROWS_AS(io::read_snapshot(dir / "missing.snsf"), IoError);
}

TEST_CASE("ledger round trip is lossless") {
    const auto dir = test::scratch_dir("io_ledger");
    std::vector<DiagnosticsRecord> rows;
    for (int i = 0; i < 5; ++i) {
        DiagnosticsRecord r;
        r.step = i;
        r.t = 0.1 * i + 1e-17;
        r.dt = i ? 0.1 / 3.0 : 0.0;
        r.energy = std::exp(-i / 7.0);
        r.dissipation = 1.0 / 3.0;
        r.power_in = -2.0 / 7.0;
        r.max_velocity = 1e-300;
        r.max_vorticity = 1e300;
        r.bkm_integral = std::sqrt(2.0) * i;
        r.residual = -1e-17 * i;
        r.residual_accum = 5e-324;
        rows.push_back(r);
    }
    rows.back().residual = std::numeric_limits<double>::quiet_NaN();
    {
        io::LedgerWriter w(dir / "ledger.csv");
        for (const auto& r : rows) w.append(r);
    }
    const auto back = io::read_ledger(dir / "ledger.csv");
    REQUIRE(back.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(back[i].step == rows[i].step);
        CHECK(back[i].t == rows[i].t);
        CHECK(back[i].dt == rows[i].dt);
        CHECK(back[i].energy == rows[i].energy);
        CHECK(back[i].power_in == rows[i].power_in);
        CHECK(back[i].max_velocity == rows[i].max_velocity);
        CHECK(back[i].max_vorticity == rows[i].max_vorticity);
        CHECK(back[i].bkm_integral == rows[i].bkm_integral);
        CHECK(back[i].residual_accum == rows[i].residual_accum);
    }
    CHECK(std::isnan(back.back().residual));
    const std::string text = io::read_text(dir / "ledger.csv");
    CHECK(text.rfind(std::string(io::kLedgerHeader) + "\n", 0) == 0);

    io::write_text(dir / "broken.csv", "step,t\n1,2\n");
    CHECK_THROWS_AS(io::read_ledger(dir / "broken.csv"), IoError);
    io::write_text(dir / "short.csv", std::string(io::kLedgerHeader) + "\n1,2,3\n");
    CHECK_THROWS_AS(io::read_ledger(dir / "short.csv"), IoError);
}

TEST_CASE("strip fit rows and reports") {
    const auto dir = test::scratch_dir("io_reports");
    io::StripFitRow r{12, 0.5, 10, 1.25, std::numeric_limits<double>::infinity(), 0.99, false};
    io::write_text(dir / "fits.csv", std::string(io::kStripFitHeader) + "\n" + io::strip_fit_row(r) + "\n");
    const auto fits = io::read_strip_fits(dir / "fits.csv");
    REQUIRE(fits.size() == 1u);
    CHECK(fits[0].step == 12);
    CHECK(std::isinf(fits[0].delta));
    CHECK_FALSE(fits[0].healthy);

    BreakdownReport b;
    b.t_num = 0.25;
    b.stop_condition = StopCondition::resolution_lost;
    const std::string text = io::breakdown_report_text(b);
    CHECK(text.find("t_num: 0.25\n") != std::string::npos);
    CHECK(text.find("stop_condition: resolution_lost\n") != std::string::npos);

    ConvergenceReport c;
    c.kind = StudyKind::temporal;
    c.samples = {{0.01, 0.01, 16, 1e-6, ""}};
    c.flags = {"observed order outside [3.5, 4.5]"};
    CHECK(io::convergence_report_text(c).find("flag: observed order") != std::string::npos);
    CHECK(io::convergence_samples_csv(c).find("0.01,16,0.01,9.9999999999999995e-07,") != std::string::npos);

    SpectrumProfile p;
    p.shells = {{0, 1.0, 1.0}, {1, 0.5, 1.5}};
    CHECK(io::spectrum_rows(3, 0.5, p) == "3,0.5,0,1,1\n3,0.5,1,1.5,0.5\n");
}
