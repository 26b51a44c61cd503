#include "cdirac/config.hpp"
#include "cdirac/errors.hpp"

#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

using namespace cdirac;
namespace fs = std::filesystem;

namespace {

const std::string kGoodConfig = R"({
  "omega": {"family": "polynomial_even", "omega": 1.0, "c": 1.0, "n": 1},
  "params": {"M": 1.5, "k_v": 2.5, "k_y": 0.0, "L": 6.283185307179586, "sigma": 1},
  "grid": {"x_min": -5.0, "x_max": 5.0, "n_points": 101, "boundary": "dirichlet"}
})";

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "cdirac_cli_tests";
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    return path;
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int run_cli(const std::string& args, const fs::path& log) {
    const std::string cmd = std::string(CDIRAC_CLI_PATH) + " " + args + " > " +
                            log.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("config round-trips through parse and serialize") {
    const RunConfig parsed = parse_config(kGoodConfig);
    const std::string canonical = serialize_config(parsed);
    const RunConfig reparsed = parse_config(canonical);
    CHECK(parsed == reparsed);
    CHECK(serialize_config(reparsed) == canonical);

    RunConfig tabulated;
    tabulated.omega = ConformalFactor::tabulated({-1, 0, 1, 2}, {2, 1, 2, 5});
    tabulated.params = {0.5, 1.5, 0.0, 3.25, -1};
    tabulated.eigen_count = 9;
    tabulated.out_dir = "elsewhere";
    const RunConfig back = parse_config(serialize_config(tabulated));
    CHECK(back == tabulated);

    RunConfig periodic = parsed;
    periodic.boundary = BoundaryCondition::Periodic;
    const RunConfig periodic_back = parse_config(serialize_config(periodic));
    CHECK(periodic_back == periodic);
    CHECK(periodic_back.boundary == BoundaryCondition::Periodic);
}

TEST_CASE("config errors name the offending field") {
    CHECK_THROWS_WITH_AS(parse_config("{}"), doctest::Contains("omega"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"omega": {"family": "polynomial_even", "omega": 1.0, "c": 1.0, "n": 1}})"),
                         doctest::Contains("params"), ConfigError);
    CHECK_THROWS_WITH_AS(
        parse_config(R"({"omega": {"family": "polynomial_even", "omega": 1.0, "n": 1},
                         "params": {"M": 0, "k_v": 1, "k_y": 0, "L": 1, "sigma": 1}})"),
        doctest::Contains("omega.c"), ConfigError);
    CHECK_THROWS_AS(parse_config("not json"), ConfigError);
    // nodeless precondition: c = 0 gives Omega = x^2 with a node at the origin
    CHECK_THROWS_WITH_AS(
        parse_config(R"({"omega": {"family": "polynomial_even", "omega": 1.0, "c": 0.0, "n": 1},
                         "params": {"M": 0, "k_v": 1, "k_y": 0, "L": 1, "sigma": 1}})"),
        doctest::Contains("nodeless"), ConfigError);
}

TEST_CASE("zeromode command writes deterministic summary and profile") {
    const fs::path dir = scratch_dir();
    const fs::path cfg = write_text(dir / "run.json", kGoodConfig);

    const int first = run_cli("zeromode --config " + cfg.string() + " --out " +
                                  (dir / "a").string(),
                              dir / "log_a.txt");
    CHECK(first == 0);
    const int second = run_cli("zeromode --config " + cfg.string() + " --out " +
                                   (dir / "b").string(),
                               dir / "log_b.txt");
    CHECK(second == 0);

    const std::string csv_a = read_text(dir / "a" / "zeromode_profile.csv");
    const std::string csv_b = read_text(dir / "b" / "zeromode_profile.csv");
    CHECK(csv_a == csv_b);
    CHECK(read_text(dir / "a" / "zeromode_summary.json") ==
          read_text(dir / "b" / "zeromode_summary.json"));

    CHECK(csv_a.substr(0, csv_a.find("\r\n")) == "x,re_psi1,im_psi1,re_psi2,im_psi2,P");
    size_t rows = 0;
    for (size_t pos = 0; (pos = csv_a.find("\r\n", pos)) != std::string::npos; ++pos) ++rows;
    CHECK(rows == 102);  // header + 101 grid rows

    const auto summary = nlohmann::json::parse(read_text(dir / "a" / "zeromode_summary.json"));
    CHECK(summary["lambda"]["re"].get<double>() == 0.0);
    CHECK(summary["lambda"]["im"].get<double>() == doctest::Approx(2.0));
    CHECK(summary["degeneracy"].get<int>() == 5);
    CHECK(summary["ky_range"]["max"].get<double>() == doctest::Approx(2.0));
    const double expected_n =
        std::sqrt((2.5 - 1.5) / (2.0 * std::numbers::pi * 6.283185307179586 * 2.5));
    CHECK(summary["norm_constant"].get<double>() == doctest::Approx(expected_n).epsilon(1e-9));

    // x = 0 row carries P(0) = 1/pi
    const std::string needle = "\r\n0,";
    const size_t at = csv_a.find(needle);
    REQUIRE(at != std::string::npos);
    const size_t line_end = csv_a.find("\r\n", at + 2);
    const std::string row = csv_a.substr(at + 2, line_end - at - 2);
    const size_t last_comma = row.rfind(',');
    CHECK(std::stod(row.substr(last_comma + 1)) ==
          doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-12));
}

TEST_CASE("zeromode command rejects inadmissible or degenerate parameters") {
    const fs::path dir = scratch_dir();
    const fs::path bad_ky = write_text(dir / "bad_ky.json", R"({
      "omega": {"family": "polynomial_even", "omega": 1.0, "c": 1.0, "n": 1},
      "params": {"M": 1.5, "k_v": 2.5, "k_y": 5.0, "L": 6.283185307179586, "sigma": 1}
    })");
    CHECK(run_cli("zeromode --config " + bad_ky.string() + " --out " + (dir / "o1").string(),
                  dir / "log1.txt") == 2);
    const std::string log = read_text(dir / "log1.txt");
    CHECK(log.find("k_v^2") != std::string::npos);

    const fs::path degenerate = write_text(dir / "degen.json", R"({
      "omega": {"family": "cosh_power", "alpha": 1.0, "n": 2},
      "params": {"M": 2.5, "k_v": 2.5, "k_y": 0.0, "L": 6.283185307179586, "sigma": 1}
    })");
    CHECK(run_cli("zeromode --config " + degenerate.string() + " --out " + (dir / "o2").string(),
                  dir / "log2.txt") == 2);
}

TEST_CASE("malformed configurations exit with the config status") {
    const fs::path dir = scratch_dir();
    const fs::path empty = write_text(dir / "empty.json", "");
    CHECK(run_cli("zeromode --config " + empty.string(), dir / "log3.txt") == 2);

    const fs::path missing = write_text(dir / "missing.json", R"({
      "omega": {"family": "cosh_power", "alpha": 1.0, "n": 2}
    })");
    CHECK(run_cli("zeromode --config " + missing.string(), dir / "log4.txt") == 2);
    CHECK(read_text(dir / "log4.txt").find("params") != std::string::npos);

    CHECK(run_cli("zeromode --config " + (dir / "nonexistent.json").string(),
                  dir / "log5.txt") == 2);

    const fs::path nodal = write_text(dir / "nodal.json", R"({
      "omega": {"family": "polynomial_even", "omega": 1.0, "c": 0.0, "n": 1},
      "params": {"M": 0.0, "k_v": 1.0, "k_y": 0.0, "L": 1.0, "sigma": 1}
    })");
    CHECK(run_cli("geometry --config " + nodal.string(), dir / "log6.txt") == 2);
    CHECK(read_text(dir / "log6.txt").find("nodeless") != std::string::npos);
}

TEST_CASE("verify command runs the suite and reports the config check") {
    const fs::path dir = scratch_dir();
    const fs::path cfg = write_text(dir / "verify.json", kGoodConfig);
    CHECK(run_cli("verify --config " + cfg.string() + " --out " + (dir / "v").string(),
                  dir / "logv.txt") == 0);
    const auto report = nlohmann::json::parse(read_text(dir / "v" / "verify_report.json"));
    REQUIRE(report["checks"].size() == 9);  // eight criteria plus the config certification
    CHECK(report["checks"].back()["name"].get<std::string>() == "config_zero_mode");

    // degenerate config: the suite still runs, the config check is skipped
    const fs::path degen = write_text(dir / "degen.json", R"({
      "omega": {"family": "polynomial_even", "omega": 1.0, "c": 1.0, "n": 1},
      "params": {"M": 2.5, "k_v": 2.5, "k_y": 0.0, "L": 6.283185307179586, "sigma": 1}
    })");
    CHECK(run_cli("verify --config " + degen.string() + " --out " + (dir / "vd").string(),
                  dir / "logvd.txt") == 0);
    const auto degen_report =
        nlohmann::json::parse(read_text(dir / "vd" / "verify_report.json"));
    CHECK(degen_report["checks"].back()["status"].get<std::string>() == "skipped-degenerate");
    CHECK(read_text(dir / "logvd.txt").find("SKIP config_zero_mode") != std::string::npos);

    // zero tolerance: quadrature-backed checks fail and are named
    CHECK(run_cli("verify --config " + cfg.string() + " --out " + (dir / "v0").string() +
                      " --tol 0",
                  dir / "logv0.txt") == 1);
    const std::string log = read_text(dir / "logv0.txt");
    CHECK(log.find("FAIL normalization_case1_polynomial") != std::string::npos);
    CHECK(log.find("FAIL normalization_case2_cosh") != std::string::npos);
}

TEST_CASE("grid-n flag overrides the profile resolution") {
    const fs::path dir = scratch_dir();
    const fs::path cfg = write_text(dir / "run.json", kGoodConfig);
    CHECK(run_cli("zeromode --config " + cfg.string() + " --out " + (dir / "g51").string() +
                      " --grid-n 51",
                  dir / "log_g.txt") == 0);
    const std::string csv = read_text(dir / "g51" / "zeromode_profile.csv");
    size_t rows = 0;
    for (size_t pos = 0; (pos = csv.find("\r\n", pos)) != std::string::npos; ++pos) ++rows;
    CHECK(rows == 52);

    CHECK(run_cli("zeromode --config " + cfg.string() + " --grid-n 50", dir / "log_e.txt") == 2);
}

TEST_CASE("geometry command verifies the configured factor") {
    const fs::path dir = scratch_dir();
    const fs::path cfg = write_text(dir / "geom.json", R"({
      "omega": {"family": "cosh_power", "alpha": 1.0, "n": 1},
      "params": {"M": 1.5, "k_v": 2.5, "k_y": 0.0, "L": 6.283185307179586, "sigma": 1}
    })");
    CHECK(run_cli("geometry --config " + cfg.string() + " --out " + (dir / "g").string(),
                  dir / "log7.txt") == 0);
    const auto report = nlohmann::json::parse(read_text(dir / "g" / "geometry_report.json"));
    REQUIRE(report["checks"].size() == 2);
    for (const auto& check : report["checks"]) {
        CHECK(check["status"].get<std::string>() == "pass");
    }

    // zero tolerance turns the finite-difference comparison into a failure
    CHECK(run_cli("geometry --config " + cfg.string() + " --out " + (dir / "g0").string() +
                      " --tol 0",
                  dir / "log8.txt") == 1);
}
