#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "emhd/config.hpp"
#include "emhd/csv.hpp"
#include "emhd/errors.hpp"
#include "emhd/experiments.hpp"
#include "emhd/seed.hpp"
#include "emhd/snapshot.hpp"
#include "emhd/spectral_ops.hpp"

using namespace emhd;

namespace {

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("config: minimal file gets the full default table") {
    const RunConfig cfg = load_config("grid.n=64\n");
    CHECK(cfg.n == 64);
    CHECK(cfg.l == 1.0);
    CHECK(cfg.mu == 0.1);
    CHECK(cfg.variant == Variant::emhd1);
    CHECK(cfg.r == 3.0);
    CHECK(cfg.c_r == 0.01);
    CHECK(cfg.s == doctest::Approx(6.0).epsilon(1e-15));  // critical 2r/(r-2)
    CHECK(cfg.seed == 1);
    CHECK(cfg.policy.cfl == 0.5);
}

TEST_CASE("config: comments, whitespace, dotted keys") {
    const RunConfig cfg = load_config(
        "# a comment\n"
        "  grid.n = 32   # trailing comment\n"
        "physics.mu=0.25\n"
        "\n"
        "physics.variant=emhd2\n");
    CHECK(cfg.n == 32);
    CHECK(cfg.mu == 0.25);
    CHECK(cfg.variant == Variant::emhd2);
}

TEST_CASE("config: LPS exponent arithmetic at load") {
    CHECK_NOTHROW(load_config("diag.r=4\ndiag.s=4\n"));  // 2/4 + 2/4 = 1
    CHECK_THROWS_AS(load_config("diag.r=4\ndiag.s=3\n"), ValidationError);
}

TEST_CASE("config: violations are all reported at once") {
    try {
        load_config("grid.n=63\nphysics.mu=-1\nnosuch.key=3\ndiag.cadence=0\n");
        FAIL("expected ValidationError");
    } catch (const ValidationError& err) {
        const std::string what = err.what();
        CHECK(what.find("grid.n") != std::string::npos);
        CHECK(what.find("physics.mu") != std::string::npos);
        CHECK(what.find("unknown key: nosuch.key") != std::string::npos);
        CHECK(what.find("diag.cadence") != std::string::npos);
    }
}

TEST_CASE("config: forcing modes parse and validate") {
    const std::string text =
        "forcing.mode_count=2\n"
        "forcing.mode0.target=b\nforcing.mode0.k1=1\nforcing.mode0.k2=0\n"
        "forcing.mode0.amplitude=0.5\n"
        "forcing.mode1.target=a\nforcing.mode1.k1=0\nforcing.mode1.k2=2\n"
        "forcing.mode1.amplitude=0.1\nforcing.mode1.omega=3\n";
    const RunConfig cfg = load_config(text);
    REQUIRE(cfg.forcing.modes.size() == 2);
    CHECK(cfg.forcing.modes[0].target == ForcingMode::Target::b);
    CHECK(cfg.forcing.modes[1].omega == 3.0);
    // above-cutoff mode rejected against the grid
    CHECK_THROWS_AS(load_config("grid.n=16\nforcing.mode_count=1\n"
                                "forcing.mode0.target=b\nforcing.mode0.k1=9\n"
                                "forcing.mode0.k2=0\nforcing.mode0.amplitude=1\n"),
                    ValidationError);
}

TEST_CASE("config echo is a fixed point of load") {
    RunConfig cfg = load_config("grid.n=48\nphysics.mu=0.325\ndiag.r=3.5\nsync.s=-0.45\n");
    cfg.forcing.modes.push_back({ForcingMode::Target::a, 1, 2, 0.125, 0.7, 2.5});
    const std::string echo1 = echo_config(cfg);
    const RunConfig reloaded = load_config(echo1);
    const std::string echo2 = echo_config(reloaded);
    CHECK(echo1 == echo2);
}

TEST_CASE("snapshot round trip is bit-exact") {
    const TorusGrid g(32, 1.5);
    StateAB st = seeded_low_mode_state(g, 77, 0.5, 0.07);
    st.time = 1.25;
    const auto bytes = save_snapshot(st);
    CHECK(bytes.size() == 40 + 2 * 8 * 32 * 32);
    const StateAB back = load_snapshot(bytes);
    CHECK(back.grid().n() == 32);
    CHECK(back.grid().length() == 1.5);
    CHECK(back.time == 1.25);
    CHECK(back.mu == 0.07);
    CHECK((back.a.physical() == st.a.physical()).all());
    CHECK((back.b.physical() == st.b.physical()).all());
    // and through a file
    const std::string path = temp_path("emhd_snap_test.bin");
    save_snapshot_file(st, path);
    const StateAB back2 = load_snapshot_file(path);
    CHECK((back2.b.physical() == st.b.physical()).all());
    std::remove(path.c_str());
}

TEST_CASE("snapshot rejects corruption with diagnostics") {
    const TorusGrid g(16);
    const StateAB st = seeded_low_mode_state(g, 1, 0.1, 0.1);
    auto bytes = save_snapshot(st);

    SUBCASE("bad magic") {
        auto bad = bytes;
        bad[0] = 'X';
        try {
            load_snapshot(bad);
            FAIL("expected IoError");
        } catch (const IoError& err) {
            CHECK(std::string(err.what()).find("EMHDSNAP") != std::string::npos);
        }
    }
    SUBCASE("unsupported version") {
        auto bad = bytes;
        bad[8] = 2;
        try {
            load_snapshot(bad);
            FAIL("expected IoError");
        } catch (const IoError& err) {
            CHECK(std::string(err.what()).find("version 2") != std::string::npos);
        }
    }
    SUBCASE("truncation") {
        auto bad = bytes;
        bad.resize(bad.size() - 17);
        CHECK_THROWS_AS(load_snapshot(bad), IoError);
    }
    SUBCASE("non-finite payload names the offset") {
        auto bad = bytes;
        // first sample of a sits at offset 40; poison its exponent bits
        for (int i = 0; i < 8; ++i) bad[40 + i] = 0xff;
        try {
            load_snapshot(bad);
            FAIL("expected IoError");
        } catch (const IoError& err) {
            CHECK(std::string(err.what()).find("offset 40") != std::string::npos);
        }
    }
}

TEST_CASE("csv writer format and reparse") {
    const std::string path = temp_path("emhd_csv_test.csv");
    {
        CsvWriter csv(path, {"t", "value"});
        csv.append({0.1, 1.0 / 3.0});
        csv.append({0.2, 12345.678901234567});
    }
    const std::string text = slurp(path);
    CHECK(text.find("t,value\n") == 0);
    CHECK(text.find('.') != std::string::npos);
    // 17 significant digits reproduce doubles exactly on reparse
    std::istringstream lines(text);
    std::string line;
    std::getline(lines, line);  // header
    std::getline(lines, line);
    const auto comma = line.find(',');
    CHECK(std::stod(line.substr(comma + 1)) == 1.0 / 3.0);
    std::remove(path.c_str());

    CsvWriter strict(temp_path("emhd_csv_test2.csv"), {"a", "b"});
    CHECK_THROWS_AS(strict.append({1.0}), IoError);
    std::remove(temp_path("emhd_csv_test2.csv").c_str());
}

TEST_CASE("seeded data: deterministic, mean-free, normalized") {
    const TorusGrid g(64);
    const StateAB s1 = seeded_low_mode_state(g, 42, 1.0, 0.1);
    const StateAB s2 = seeded_low_mode_state(g, 42, 1.0, 0.1);
    CHECK((s1.a.spectral() == s2.a.spectral()).all());
    CHECK((s1.b.spectral() == s2.b.spectral()).all());

    const StateAB s3 = seeded_low_mode_state(g, 43, 1.0, 0.1);
    CHECK((s1.a.spectral() != s3.a.spectral()).any());

    const auto [e, d] = energy_and_dissipation(s1);
    (void)d;
    CHECK(e == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(mean(s1.a)) == 0.0);
    CHECK(std::abs(mean(s1.b)) == 0.0);

    // content confined to |k| < 8 and Hermitian
    const int cut = 8;
    for (int j = 0; j < 64; ++j)
        for (int i = 0; i < 64; ++i) {
            const double radius = std::hypot(static_cast<double>(g.wavenumber(i)),
                                             static_cast<double>(g.wavenumber(j)));
            if (radius >= cut) CHECK(std::abs(s1.a.spectral()(i, j)) == 0.0);
        }
    CHECK(s1.a.hermitian_defect() <= 1e-15);
    CHECK(s1.b.hermitian_defect() <= 1e-15);
}

TEST_CASE("identical configs give bit-identical audit CSV output") {
    RunConfig cfg;
    cfg.n = 32;
    cfg.e0 = 0.01;
    cfg.t_end = 0.02;
    cfg.policy.mode = StepPolicy::Mode::adaptive;
    cfg.policy.dt_max = 1e-3;
    cfg.cadence = 5;

    const std::string p1 = temp_path("emhd_det1.csv");
    const std::string p2 = temp_path("emhd_det2.csv");
    {
        CsvWriter w1(p1, {"t", "E", "D", "work", "residual"});
        run_energy_audit(cfg, &w1);
    }
    {
        CsvWriter w2(p2, {"t", "E", "D", "work", "residual"});
        run_energy_audit(cfg, &w2);
    }
    CHECK(slurp(p1) == slurp(p2));
    CHECK(slurp(p1).size() > 60);
    std::remove(p1.c_str());
    std::remove(p2.c_str());
}
