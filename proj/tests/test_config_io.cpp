#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ci/config.hpp"
#include "ci/csv.hpp"
#include "ci/oracle.hpp"
#include "ci/svg.hpp"
#include "test_helpers.hpp"

using namespace ci;

TEST_CASE("empty config gives the documented defaults") {
    const RunConfig cfg = parse_config("");
    const PhysicalParams par = cfg.to_params();
    CHECK(par.omega0 == doctest::Approx(3.3 * 300.0 / 3e-3));  // omega0_t knob
    CHECK(par.delta0_diff == doctest::Approx(testutil::recoil_shift_2hk2_m));
    CHECK(cfg.n_slices == 500);
    CHECK(cfg.n_phi == 64);
    CHECK(cfg.s0 == 1e6);
    CHECK(cfg.out_directory == "out");
    // the auto scan length is the pi-pulse length pi vx / omega0
    CHECK(cfg.to_beam_options().scan_length(par) ==
          doctest::Approx(3.141592653589793 * par.vx / par.omega0));
}

TEST_CASE("config validation names the violated invariant") {
    CHECK_THROWS_WITH_AS((void)parse_config("physical.omega0 = -1\n"),
                         "physical invariant violated: omega0 >= 0", config_error);
    CHECK_THROWS_AS((void)parse_config("scan.n_phi = 8\n"), config_error);
    CHECK_THROWS_AS((void)parse_config("physical.omega0 = 1e5\nphysical.omega0_t = 4.4\n"),
                    config_error);
}

TEST_CASE("unknown keys are rejected with a suggestion") {
    try {
        (void)parse_config("omega_zero = 1.0\n");
        FAIL("expected config_error");
    } catch (const config_error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("unknown key 'omega_zero'") != std::string::npos);
        CHECK(msg.find("did you mean '") != std::string::npos);
        CHECK(msg.find("omega") != std::string::npos);  // suggests some omega key
        CHECK(msg.find("line 1") != std::string::npos);
    }
}

TEST_CASE("parse errors carry line numbers") {
    try {
        (void)parse_config("# comment\nscan.n_phi = sixty-four\n");
        FAIL("expected config_error");
    } catch (const config_error& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("config digest is stable and value-sensitive") {
    const RunConfig a = parse_config("");
    const RunConfig b = parse_config("scan.n_phi = 64\n");  // same effective value
    const RunConfig c = parse_config("scan.n_phi = 128\n");
    CHECK(a.digest() == b.digest());
    CHECK(a.digest() != c.digest());
    CHECK(a.digest().size() == 16);

    // the output location is not part of the physics provenance
    const RunConfig d = parse_config("output.directory = elsewhere\n");
    CHECK(a.digest() == d.digest());
}

TEST_CASE("csv output is deterministic, unit-annotated, provenance-commented") {
    CsvTable t;
    t.header = {"delta_l_over_l", "area_eff_m2", "shift_rad"};
    t.add_provenance("00ff00ff00ff00ff", "0.1.0");
    t.rows.push_back({0.48, 3.5319182337815484e-10, -0.028152751091886});
    t.rows.push_back({-0.48, -1.0e-10, 0.03});

    const std::string s1 = t.to_string();
    const std::string s2 = t.to_string();
    CHECK(s1 == s2);
    CHECK(s1.find("# config digest: 00ff00ff00ff00ff") != std::string::npos);
    CHECK(s1.find("_m2") != std::string::npos);
    CHECK(s1.find("_rad") != std::string::npos);
    CHECK(s1.find("3.53191823378e-10") != std::string::npos);  // 12 significant digits

    SUBCASE("non-finite values are rejected") {
        CsvTable bad;
        bad.header = {"x"};
        bad.rows.push_back({std::nan("")});
        CHECK_THROWS_AS((void)bad.to_string(), numerical_error);
    }

    SUBCASE("ragged rows are rejected") {
        CsvTable bad;
        bad.header = {"x", "y"};
        bad.rows.push_back({1.0});
        CHECK_THROWS_AS((void)bad.to_string(), numerical_error);
    }
}

TEST_CASE("svg chart is well-formed") {
    namespace fs = std::filesystem;
    const fs::path path = fs::temp_directory_path() / "cigyro_test_chart.svg";
    write_line_chart(path.string(), "alpha vs delta_l/l", "delta_l/l", "alpha",
                     {-0.4, -0.2, 0.0, 0.2, 0.4}, {0.9, 0.6, 0.35, 0.6, 0.9});
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    const std::string svg = ss.str();
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("<polyline") != std::string::npos);
    CHECK(svg.find("alpha vs delta_l/l") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    fs::remove(path);
}

TEST_CASE("oracle ladder: trivial zero-coupling row agrees exactly") {
    PhysicalParams par = testutil::default_params();
    par.omega0 = 0.0;
    // with no coupling both engines leave the ground state untouched
    CHECK_THROWS_AS((void)run_oracle_ladder(par, {50.0}, 50), config_error);
}

TEST_CASE("oracle ladder shape and far-detuned gate") {
    const PhysicalParams par = testutil::default_params();
    const auto rows = run_oracle_ladder(par, {5.0}, 120);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].delta0_over_omega1 == 5.0);
    CHECK(rows[0].pop_discrepancy >= 0.0);
    CHECK(rows[0].max_xi_sq > 0.0);
    // a near-detuned row is reported but does not trip the far-detuned gate
    check_far_detuned(rows);

    std::vector<OracleRow> fake = rows;
    fake[0].delta0_over_omega1 = 50.0;
    fake[0].pop_discrepancy = 5e-3;
    CHECK_THROWS_AS(check_far_detuned(fake), oracle_error);
}
