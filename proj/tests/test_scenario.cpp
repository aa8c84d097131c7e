#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "fracb/scenario.hpp"
#include "util.hpp"

using namespace fracb;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / name;
    fs::remove_all(p);
    return p;
}

}  // namespace

TEST_CASE("parse_config: defaults and overrides") {
    unsetenv("FRACB_OUT");
    const auto c = parse_config("alpha = 1\n");
    CHECK(c.alpha == 1.0);
    CHECK(c.eps == 0.0);
    CHECK(c.L == 64.0);
    CHECK(c.n == 8192);
    CHECK(c.solver.cfl == 0.4);
    CHECK(std::isinf(c.p));
    CHECK(c.checks.empty());

    const auto d = parse_config(
        "# comment line\n"
        "scenario = demo\n"
        "alpha = 0.5\n"
        "u_minus = -1\n"
        "u_plus = 1   # trailing comment\n"
        "perturbation = gaussian\n"
        "amplitude = 0.2\n"
        "width = 1.5\n"
        "center = -3\n"
        "L = 512\n"
        "n = 4096\n"
        "path = spectral\n"
        "stepper = euler\n"
        "t_min = 2\n"
        "t_max = 30\n"
        "samples = 9\n"
        "p = 2\n"
        "checks = linear, gradient\n"
        "seed = 42\n");
    CHECK(d.scenario == "demo");
    CHECK(d.perturbation.kind == "gaussian");
    CHECK(d.perturbation.center == -3.0);
    CHECK(d.solver.path == LapPath::spectral);
    CHECK(d.solver.stepper == Stepper::euler);
    CHECK(d.window.samples == 9);
    CHECK(d.p == 2.0);
    REQUIRE(d.checks.size() == 2);
    CHECK(d.checks[0] == "linear");
    CHECK(d.checks[1] == "gradient");
    CHECK(d.seed == 42);

    CHECK(std::isinf(parse_config("p = inf\n").p));
}

TEST_CASE("parse_config: field-precise rejections") {
    using IA = std::invalid_argument;
    CHECK(thrown_message<IA>([] { parse_config("alpha = 2.5\n"); }) == "alpha out of (0,2]");
    CHECK(thrown_message<IA>([] { parse_config("u_minus = 1\nu_plus = 0\n"); }) ==
          "u_minus must be <= u_plus");
    CHECK(thrown_message<IA>([] { parse_config("bogus = 1\n"); }) == "unknown key: bogus");
    CHECK(thrown_message<IA>([] { parse_config("alpha = 1\nalpha = 2\n"); }) ==
          "duplicate key: alpha");
    CHECK(thrown_message<IA>([] { parse_config("alpha\n"); }) ==
          "malformed line (expected key=value): alpha");
    CHECK(thrown_message<IA>([] { parse_config("alpha = abc\n"); }) ==
          "alpha: expected a number");
    CHECK(thrown_message<IA>([] { parse_config("n = 100\n"); }) ==
          "n must be a power of two >= 16");
    CHECK(thrown_message<IA>([] { parse_config("path = banana\n"); }) ==
          "path must be spectral or quadrature");
    CHECK(thrown_message<IA>([] { parse_config("checks = stability, bogus\nL = 512\n"); }) ==
          "unknown check: bogus");
    CHECK(thrown_message<IA>([] { parse_config("eps = -1\n"); }) == "eps must be >= 0");
    CHECK(thrown_message<IA>([] { parse_config("p = 0.5\n"); }) ==
          "p must be >= 1 (use inf for the sup norm)");
    // default L = 64 cannot host the default window t_max = 50
    CHECK(thrown_message<IA>([] { parse_config("checks = stability\n"); }) ==
          "grid too small for the requested window: need L >= 4*max|u|*t_max");
}

TEST_CASE("presets") {
    const auto c = preset_scenario("thm14-default");
    CHECK(c.alpha == 1.0);
    CHECK(c.L == 128.0);
    CHECK(c.n == 8192);
    CHECK(c.perturbation.kind == "gaussian");
    CHECK(c.perturbation.amplitude == 0.25);
    REQUIRE(c.checks.size() == 1);
    CHECK(c.checks[0] == "selfsimilar");

    CHECK(preset_scenario("thm12-default").alpha == 0.5);
    CHECK(preset_scenario("rarefaction-default").alpha == 1.5);
    CHECK_THROWS_AS(preset_scenario("nope"), std::invalid_argument);
}

TEST_CASE("run_scenario: snapshots only") {
    unsetenv("FRACB_OUT");
    ScenarioConfig cfg;
    cfg.scenario = "smoke";
    cfg.alpha = 1.0;
    cfg.L = 16.0;
    cfg.n = 512;
    cfg.window = {1.0, 2.0, 8};
    cfg.output_dir = fresh_dir("fracb-test-smoke").string();
    const auto rep = run_scenario(cfg);
    CHECK(rep.all_pass);
    CHECK(rep.results.empty());
    REQUIRE(rep.csv_files.size() == 1);
    CHECK(fs::exists(rep.csv_files[0]));
    CHECK(fs::exists(rep.json_file));
    CHECK(rep.wall_seconds >= 0.0);

    const std::string csv = slurp(rep.csv_files[0]);
    CHECK(csv.rfind("t,x,u", 0) == 0);

    const auto j = nlohmann::json::parse(slurp(rep.json_file));
    CHECK(j["schema_version"] == "1");
    CHECK(j["scenario"] == "smoke");
    CHECK(j["config"]["alpha"] == 1.0);
    CHECK(j["all_pass"] == true);
    CHECK(j["checks"].is_array());
    CHECK(j["versions"].contains("artifact"));
}

TEST_CASE("run_scenario: gradient check end to end with report") {
    unsetenv("FRACB_OUT");
    ScenarioConfig cfg;
    cfg.scenario = "grad";
    cfg.alpha = 1.0;
    cfg.L = 128.0;
    cfg.n = 4096;
    cfg.window = {2.0, 12.0, 8};
    cfg.checks = {"gradient"};
    cfg.output_dir = fresh_dir("fracb-test-grad").string();
    const auto rep = run_scenario(cfg);
    REQUIRE(rep.results.size() == 1);
    CHECK(rep.results[0].name == "gradient");
    CHECK(rep.results[0].verdict.pass);
    CHECK(rep.all_pass);

    const auto j = nlohmann::json::parse(slurp(rep.json_file));
    REQUIRE(j["checks"].size() == 1);
    const auto& chk = j["checks"][0];
    CHECK(chk["name"] == "gradient");
    CHECK(chk["pass"] == true);
    CHECK(chk["fit"]["slope"].is_number());
    CHECK(std::abs(chk["fit"]["slope"].get<double>() + 1.0) <= 0.15);
    CHECK(chk["fit"]["p"] == "inf");

    // a fit check also writes its time-series CSV
    REQUIRE(rep.csv_files.size() == 1);
    const std::string csv = slurp(rep.csv_files[0]);
    CHECK(csv.rfind("t,value", 0) == 0);
}

TEST_CASE("run_scenario: determinism") {
    unsetenv("FRACB_OUT");
    ScenarioConfig cfg;
    cfg.scenario = "det";
    cfg.alpha = 0.5;
    cfg.L = 16.0;
    cfg.n = 512;
    cfg.window = {0.5, 1.5, 8};
    cfg.perturbation = {"gaussian", 0.1, 1.0, 0.0};
    cfg.output_dir = fresh_dir("fracb-test-det-a").string();
    const auto ra = run_scenario(cfg);
    cfg.output_dir = fresh_dir("fracb-test-det-b").string();
    const auto rb = run_scenario(cfg);
    REQUIRE(ra.csv_files.size() == 1);
    REQUIRE(rb.csv_files.size() == 1);
    CHECK(slurp(ra.csv_files[0]) == slurp(rb.csv_files[0]));
}

TEST_CASE("run_scenario: invalid output dir fails before compute") {
    unsetenv("FRACB_OUT");
    const fs::path file = fs::temp_directory_path() / "fracb-test-blocker";
    std::ofstream(file) << "x";
    ScenarioConfig cfg;
    cfg.scenario = "blocked";
    cfg.L = 16.0;
    cfg.n = 512;
    cfg.window = {1.0, 2.0, 8};
    cfg.output_dir = file.string();
    CHECK(thrown_message<std::runtime_error>([&] { run_scenario(cfg); })
              .find("invalid output dir") == 0);
    fs::remove(file);
}

TEST_CASE("report schema is valid JSON and mirrors report keys") {
    const auto schema =
        nlohmann::json::parse(slurp(fs::path(FRACB_SOURCE_DIR) / "schemas/report.schema.json"));
    CHECK(schema["properties"]["schema_version"]["const"] == "1");
    const auto required = schema["required"].get<std::vector<std::string>>();

    unsetenv("FRACB_OUT");
    ScenarioConfig cfg;
    cfg.scenario = "schema";
    cfg.L = 16.0;
    cfg.n = 512;
    cfg.window = {1.0, 2.0, 8};
    cfg.output_dir = fresh_dir("fracb-test-schema").string();
    const auto rep = run_scenario(cfg);
    const auto j = nlohmann::json::parse(report_json(rep));
    for (const auto& key : required) CHECK(j.contains(key));
    for (const auto& [key, val] : j.items())
        CHECK(schema["properties"].contains(key));
}

TEST_CASE("FRACB_OUT overrides the output root") {
    const fs::path root = fresh_dir("fracb-test-envroot");
    setenv("FRACB_OUT", root.c_str(), 1);
    ScenarioConfig cfg;
    cfg.scenario = "envrun";
    cfg.L = 16.0;
    cfg.n = 512;
    cfg.window = {1.0, 2.0, 8};
    cfg.output_dir = "ignored-dir";
    const auto rep = run_scenario(cfg);
    unsetenv("FRACB_OUT");
    CHECK(rep.json_file.rfind(root.string(), 0) == 0);
    CHECK(fs::exists(rep.json_file));
}
