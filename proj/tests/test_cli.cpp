#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

using namespace spiraldim;
namespace fs = std::filesystem;
using cli::json;

namespace {

struct Result {
  int code;
  std::string out;
  json report() const { return json::parse(out); }
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "spiraldim");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream captured;
  auto* old = std::cout.rdbuf(captured.rdbuf());
  const int code = cli::run(static_cast<int>(argv.size()), argv.data());
  std::cout.rdbuf(old);
  return {code, captured.str()};
}

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("spiraldim_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("oracle values") {
  auto r = run({"oracle", "focus_dim", "--k", "3"});
  REQUIRE(r.code == 0);
  CHECK(r.report()["value"].get<double>() == doctest::Approx(12.0 / 7));
  CHECK(r.report()["schema_version"] == cli::schema_version);

  r = run({"oracle", "limit_cycle_dim", "--m", "5"});
  CHECK(r.report()["value"].get<double>() == doctest::Approx(1.8));

  r = run({"oracle", "sphere", "--alpha", "0.25"});
  CHECK(r.report()["value"]["gamma2"].get<double>() == doctest::Approx(1.8));
  CHECK(r.report()["value"]["gamma3"].get<double>() == doctest::Approx(5.0 / 3));

  r = run({"oracle", "mink_content", "--m", "1", "--alpha", "0.5"});
  CHECK(r.report()["value"].get<double>() == doctest::Approx(6.9747).epsilon(1e-4));
}

TEST_CASE("exit codes") {
  CHECK(run({"oracle", "no_such_formula"}).code == cli::usage);
  CHECK(run({"--no-such-flag"}).code == cli::usage);
  CHECK(run({}).code == cli::usage);
  CHECK(run({"--paper-case", "no-such-case"}).code == cli::usage);
  CHECK(run({"oracle", "focus_dim", "--k", "1.5"}).code == cli::usage);
  CHECK(run({"oracle", "focus_dim", "--paper-case", "fig1"}).code == cli::usage);

  const auto dir = scratch_dir("codes");
  CHECK(run({"spiral", "--alpha", "0.25", "--phi-max", "50", "--estimate", "--scales", "3", "--out", dir.string()})
            .code == cli::precondition);
  CHECK(run({"integrate", "--system", R"({"kind":"lienard","coeffs":{"2":1.0}})", "--x0", "10,0", "--t-span", "10",
             "--out", dir.string()})
            .code == cli::numerical);
  fs::remove_all(dir);
}

TEST_CASE("config precedence: defaults < config file < flags") {
  const auto dir = scratch_dir("precedence");
  const auto cfg = dir / "config.json";
  std::ofstream(cfg) << R"({"alpha": 0.5, "phi_max": 40, "out": ")" << dir.string() << R"("})";

  auto r = run({"spiral", "--phi-max", "40", "--out", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(r.report()["model"]["alpha"].get<double>() == 0.25);

  r = run({"spiral", "--config", cfg.string()});
  REQUIRE(r.code == 0);
  CHECK(r.report()["model"]["alpha"].get<double>() == 0.5);

  r = run({"spiral", "--config", cfg.string(), "--alpha", "0.3"});
  REQUIRE(r.code == 0);
  CHECK(r.report()["model"]["alpha"].get<double>() == 0.3);

  std::ofstream(cfg) << R"({"no_such_key": 1})";
  CHECK(run({"spiral", "--config", cfg.string()}).code == cli::usage);
  fs::remove_all(dir);
}

TEST_CASE("determinism: identical runs give identical bytes") {
  const auto a = scratch_dir("det_a"), b = scratch_dir("det_b");
  for (const auto& d : {a, b}) {
    // relative output path so the reports match too
    const auto cwd = fs::current_path();
    fs::current_path(d);
    const auto r = run({"spiral", "--alpha", "0.25", "--phi-max", "300", "--invert", "--estimate", "--eps-max", "1e-2",
                        "--eps-min", "1e-3", "--out", "out"});
    fs::current_path(cwd);
    REQUIRE(r.code == 0);
    std::ofstream(d / "report.json") << r.out;
  }
  int files = 0;
  for (const auto& e : fs::recursive_directory_iterator(a)) {
    if (!e.is_regular_file()) continue;
    ++files;
    CHECK(slurp(e.path()) == slurp(b / fs::relative(e.path(), a)));
  }
  CHECK(files >= 3);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("spiral writes the curve and its variants") {
  const auto dir = scratch_dir("spiral");
  const auto r = run({"spiral", "--alpha", "0.25", "--phi-max", "100", "--invert", "--riemann", "0.5", "--poincare",
                      "1", "--disc", "--out", dir.string()});
  REQUIRE(r.code == 0);
  for (const char* f : {"spiral.csv", "spiral_inverted.csv", "spiral_riemann.csv", "spiral_poincare.csv",
                        "spiral_disc.csv"})
    CHECK(fs::exists(dir / f));
  CHECK(slurp(dir / "spiral_poincare.csv").rfind("coord_system,cartesian3\nx,y,z\n", 0) == 0);
  fs::remove_all(dir);
}

TEST_CASE("dim embeds the oracle and the gap") {
  const auto dir = scratch_dir("dim");
  const auto r = run({"--paper-case", "a-string", "--out", dir.string()});
  REQUIRE(r.code == 0);
  const auto j = r.report();
  CHECK(j["oracle"].get<double>() == doctest::Approx(1.0 / 3));
  CHECK(j["gap"].get<double>() < 0.05);
  CHECK(fs::exists(dir / "dim.json"));
  CHECK(fs::exists(dir / "dim_profile.csv"));
  fs::remove_all(dir);
}

TEST_CASE("sweep with an empty grid reports nothing") {
  const auto dir = scratch_dir("sweep");
  const auto r = run({"sweep", "--family", "hopf_inverted", "--grid", "", "--out", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(r.report()["points"].empty());
  CHECK(run({"sweep", "--family", "hopf_inverted", "--grid", "0.1,0", "--out", dir.string()}).code == cli::usage);
  fs::remove_all(dir);
}

TEST_CASE("string command") {
  const auto dir = scratch_dir("string");
  const auto r = run({"string", "--alpha", "1", "--out", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(r.report()["dimension"].get<double>() == doctest::Approx(0.5).epsilon(0.04));
  fs::remove_all(dir);
}

TEST_CASE("paper cases are well formed") {
  const auto ids = cli::paper_case_ids();
  CHECK(ids.size() == 11);
  for (const auto& id : ids) {
    const auto c = cli::paper_case(id);
    const auto cmd = c.at("command").get<std::string>();
    const auto defaults = cli::command_defaults(cmd);
    for (const auto& [key, _] : c.at("config").items()) CHECK(defaults.contains(key));
  }
}
