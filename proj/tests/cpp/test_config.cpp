#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "degenlab/config.hpp"
#include "degenlab/errors.hpp"
#include "degenlab/runner.hpp"

using namespace degenlab;
using nlohmann::json;

namespace {

json base_config() {
    return json::parse(R"({
      "problem": {
        "coefficient": {"kind": "power", "gamma": 0.5},
        "bc": {"mode": "robin", "beta0": 1.0, "beta1": -1.0, "gamma0": 1.0, "gamma1": 1.0},
        "alpha": {"const": 0.0},
        "model": {"kind": "zero"},
        "initial_datum": {"kind": "legendre", "degree": 2},
        "regularity_claim": "h1a"
      },
      "mesh": {"n": 64, "grading": 2.0},
      "time": {"horizon": 0.25, "steps": 32},
      "tolerances": {"picard_tol": 1e-10, "picard_max": 50, "quad_tol": 1e-10},
      "seed": 42,
      "output_dir": "out"
    })");
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("config round trip") {
    const auto cfg = RunConfig::from_json(base_config());
    CHECK(cfg.seed == 42);
    CHECK(cfg.coefficient().kind() == CoefficientKind::PowerLaw);
    CHECK(cfg.boundary().kind == BoundaryMode::Kind::Robin);
    CHECK(cfg.mesh_params().n == 64);
    CHECK(cfg.time_params().horizon == doctest::Approx(0.25));
    CHECK(cfg.tolerances().picard_max == 50);
    CHECK(cfg.hash().size() == 16);
    const auto spec = cfg.problem();
    CHECK(spec.horizon == doctest::Approx(0.25));
}

TEST_CASE("invalid configs name the failing assumption") {
    SUBCASE("trivial Robin data") {
        auto j = base_config();
        j["problem"]["bc"]["beta0"] = 0.0;
        j["problem"]["bc"]["beta1"] = 0.0;
        try {
            RunConfig::from_json(j);
            FAIL("expected rejection");
        } catch (const ConfigError& e) {
            CHECK(e.assumption() == "(A.5_WD)");
        }
    }
    SUBCASE("sign condition violated") {
        auto j = base_config();
        j["problem"]["bc"]["beta0"] = 1.0;
        j["problem"]["bc"]["beta1"] = 1.0;
        CHECK_THROWS_AS(RunConfig::from_json(j), ConfigError);
    }
    SUBCASE("strongly degenerate coefficient with Robin rows") {
        auto j = base_config();
        j["problem"]["coefficient"]["gamma"] = 1.5;
        const auto cfg = RunConfig::from_json(j);
        try {
            cfg.problem();
            FAIL("expected rejection");
        } catch (const ConfigError& e) {
            CHECK(e.assumption() == "(A.5_SD)");
        }
    }
    SUBCASE("growth exponent beyond the admissible range") {
        auto j = base_config();
        j["problem"]["model"] = {{"kind", "pure_power"}, {"g0", 1.0}, {"theta", 4.5}, {"sign", -1}};
        try {
            RunConfig::from_json(j);
            FAIL("expected rejection");
        } catch (const ConfigError& e) {
            CHECK(e.assumption() == "(A.3)");
        }
    }
    SUBCASE("unbounded tabulated reaction field") {
        auto j = base_config();
        j["problem"]["alpha"] = {{"kind", "tabulated"},
                                 {"t_nodes", {0.0, 1.0}},
                                 {"x_nodes", {-1.0, 1.0}},
                                 {"values", {{1.0, 2.0}, {3.0, 4.0}}}};
        j["problem"]["alpha"]["values"][1][1] = std::numeric_limits<double>::infinity();
        CHECK_THROWS_AS(RunConfig::from_json(j), ConfigError);
    }
    SUBCASE("nonpositive interior coefficient") {
        auto j = base_config();
        j["problem"]["coefficient"] = {{"kind", "tabulated"},
                                       {"nodes", {-1.0, 0.0, 1.0}},
                                       {"values", {0.0, -0.5, 0.0}}};
        try {
            RunConfig::from_json(j);
            FAIL("expected rejection");
        } catch (const ConfigError& e) {
            CHECK(e.assumption() == "(A.4)");
        }
    }
    SUBCASE("odd mesh size") {
        auto j = base_config();
        j["mesh"]["n"] = 63;
        CHECK_THROWS_AS(RunConfig::from_json(j), ConfigError);
    }
}

TEST_CASE("field parsing variants") {
    CHECK(parse_field(json::parse("0.5"), "alpha")(0.0, 0.0) == doctest::Approx(0.5));
    CHECK(parse_field(json::parse(R"({"const": -1.5})"), "alpha")(0.3, 0.3) ==
          doctest::Approx(-1.5));
    const auto sep = parse_field(
        json::parse(R"({"kind": "separable", "time_poly": [1.0, 1.0], "space_poly": [0.0, 1.0]})"),
        "alpha");
    CHECK(sep(2.0, 0.5) == doctest::Approx(1.5));
    CHECK(sep.sup_time_derivative(1.0) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("runner determinism across thread counts") {
    auto j = base_config();
    j["mesh"]["n"] = 32;
    j["time"]["steps"] = 16;
    j["stability"] = {{"pairs", 6}};
    const auto cfg = RunConfig::from_json(j);

    const auto base = std::filesystem::temp_directory_path() / "degenlab_test_determinism";
    std::filesystem::remove_all(base);
    RunOptions serial{base / "serial", 1};
    RunOptions threaded{base / "threaded", 4};
    const int rc1 = run_stability(cfg, serial);
    const int rc2 = run_stability(cfg, threaded);
    CHECK(rc1 == rc2);
    CHECK(read_file(serial.out_dir / "stability_pairs.csv") ==
          read_file(threaded.out_dir / "stability_pairs.csv"));
    const std::string report = read_file(serial.out_dir / "stability_report.json");
    CHECK(report.find(cfg.hash()) != std::string::npos);
    std::filesystem::remove_all(base);
}

TEST_CASE("classify pipeline writes reports") {
    auto j = base_config();
    j["classify"] = {{"levels", 10}, {"theta", 2.0}};
    const auto cfg = RunConfig::from_json(j);
    const auto dir = std::filesystem::temp_directory_path() / "degenlab_test_classify";
    std::filesystem::remove_all(dir);
    const int rc = run_classify(cfg, RunOptions{dir, 1});
    CHECK(rc == 0);
    CHECK(std::filesystem::exists(dir / "classify_report.json"));
    CHECK(std::filesystem::exists(dir / "classify_refinement.csv"));
    const auto report = json::parse(read_file(dir / "classify_report.json"));
    CHECK(report["classification"] == "weakly_degenerate");
    CHECK(std::abs(report["k_constant"].get<double>() - 1.7724539) < 1e-4);
    std::filesystem::remove_all(dir);
}
