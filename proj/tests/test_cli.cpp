#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "scbo/cli.hpp"
#include "scbo/serialize.hpp"

using namespace scbo;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("scbo_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string write_json(const TempDir& dir, const std::string& name, const json& j) {
  const std::string p = dir.file(name);
  std::ofstream out(p);
  out << j.dump(2);
  return p;
}

json run_config() {
  return {{"schema_version", 1},
          {"command", "run"},
          {"objective", {{"id", "example1"}, {"dim", 2}, {"smoother", "logexp"}}},
          {"solver",
           {{"lambda", 1.0}, {"sigma", 1.0}, {"beta", 10.0}, {"n_particles", 40},
            {"h", 0.01}, {"t_max", 1.0}, {"mu0", 0.5}, {"alpha", 0.1},
            {"seed", 11}}},
          {"init", {{"lo", -2.0}, {"hi", 2.0}}}};
}

json load(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  return json::parse(in);
}

}  // namespace

TEST_CASE("cli run writes a valid report") {
  TempDir dir;
  cli::Options opt;
  opt.subcommand = "run";
  opt.config_path = write_json(dir, "run.json", run_config());
  opt.output_path = dir.file("out.json");
  CHECK(cli::execute(opt) == cli::kExitOk);
  const json rep = load(opt.output_path);
  CHECK(validate_run_report_json(rep));
  CHECK(rep["objective"] == "example1");
  CHECK(rep["config"]["seed"] == 11);
}

TEST_CASE("cli seed override reproduces the artifact of a config with that seed") {
  TempDir dir;
  json cfg = run_config();
  cli::Options opt;
  opt.subcommand = "run";
  opt.config_path = write_json(dir, "run.json", cfg);
  opt.output_path = dir.file("a.json");
  opt.seed_override = 777;
  REQUIRE(cli::execute(opt) == cli::kExitOk);

  cfg["solver"]["seed"] = 777;
  cli::Options opt2;
  opt2.subcommand = "run";
  opt2.config_path = write_json(dir, "run777.json", cfg);
  opt2.output_path = dir.file("b.json");
  REQUIRE(cli::execute(opt2) == cli::kExitOk);

  json a = load(dir.file("a.json")), b = load(dir.file("b.json"));
  a.erase("wall_time_s");
  b.erase("wall_time_s");
  CHECK(a == b);
}

TEST_CASE("cli sweep with an empty value list exits with the schema code") {
  TempDir dir;
  const json cfg = {{"schema_version", 1},
                    {"command", "sweep"},
                    {"objectives", {"f1"}},
                    {"vary", "N"},
                    {"values", json::array()},
                    {"solver", {{"beta", 50.0}, {"t_max", 1.0}}},
                    {"init", {{"lo", -5.0}, {"hi", 5.0}}},
                    {"runs_per_cell", 2}};
  cli::Options opt;
  opt.subcommand = "sweep";
  opt.config_path = write_json(dir, "sweep.json", cfg);
  opt.output_path = dir.file("out.json");
  CHECK(cli::execute(opt) == cli::kExitConfig);
}

TEST_CASE("cli unknown benchmark id exits with its own code") {
  TempDir dir;
  json cfg = run_config();
  cfg["objective"]["id"] = "f17";
  cli::Options opt;
  opt.subcommand = "run";
  opt.config_path = write_json(dir, "run.json", cfg);
  opt.output_path = dir.file("out.json");
  CHECK(cli::execute(opt) == cli::kExitUnknownId);
}

TEST_CASE("cli io failures get the io code") {
  TempDir dir;
  cli::Options opt;
  opt.subcommand = "run";
  opt.config_path = dir.file("missing.json");
  CHECK(cli::execute(opt) == cli::kExitIo);

  opt.config_path = write_json(dir, "run.json", run_config());
  opt.output_path = "/proc/definitely/not/writable.json";
  CHECK(cli::execute(opt) == cli::kExitIo);
}

TEST_CASE("cli rejects mismatched command field and bad schema version") {
  TempDir dir;
  json cfg = run_config();
  cfg["command"] = "sweep";
  cli::Options opt;
  opt.subcommand = "run";
  opt.config_path = write_json(dir, "run.json", cfg);
  opt.output_path = dir.file("out.json");
  CHECK(cli::execute(opt) == cli::kExitConfig);

  cfg = run_config();
  cfg["schema_version"] = 2;
  opt.config_path = write_json(dir, "run2.json", cfg);
  CHECK(cli::execute(opt) == cli::kExitConfig);
}

TEST_CASE("cli sweep emits json and csv artifacts") {
  TempDir dir;
  const json cfg = {{"schema_version", 1},
                    {"command", "sweep"},
                    {"objectives", {"f2"}},
                    {"vary", "N"},
                    {"values", {20}},
                    {"solver", {{"beta", 50.0}, {"t_max", 2.0}, {"mu0", 1.0},
                                {"alpha", 0.9}}},
                    {"init", {{"lo", -5.0}, {"hi", 5.0}}},
                    {"runs_per_cell", 3},
                    {"base_seed", 5}};
  cli::Options opt;
  opt.subcommand = "sweep";
  opt.config_path = write_json(dir, "sweep.json", cfg);
  opt.output_path = dir.file("sweep_out.json");
  opt.workers = 2;
  REQUIRE(cli::execute(opt) == cli::kExitOk);
  const json rep = load(dir.file("sweep_out.json"));
  CHECK(rep["kind"] == "sweep_report");
  CHECK(rep["cells"].size() == 1);
  CHECK(fs::exists(dir.file("sweep_out.csv")));
}

#ifdef SCBO_CONFIG_DIR
TEST_CASE("shipped consensus-run config: diameter trace at t = 7 below 1e-3") {
  TempDir dir;
  cli::Options opt;
  opt.subcommand = "run";
  opt.config_path = std::string(SCBO_CONFIG_DIR) + "/consensus_run.json";
  opt.output_path = dir.file("consensus.json");
  REQUIRE(cli::execute(opt) == cli::kExitOk);
  const json rep = load(dir.file("consensus.json"));
  CHECK(validate_run_report_json(rep));
  double at7 = 1e300;
  for (const auto& point : rep["diameter_trace"])
    if (point[0].get<double>() <= 7.0 + 1e-9)
      at7 = std::min(at7, point[1].get<double>());
  CHECK(at7 < 1e-3);
}
#endif

TEST_CASE("cli check-condition and laplace produce reports") {
  TempDir dir;
  const json ccfg = {
      {"schema_version", 1},
      {"command", "check-condition"},
      {"objective", {{"id", "example1"}, {"dim", 1}, {"smoother", "logexp"}}},
      {"condition",
       {{"beta", 0.2}, {"lambda", 0.1}, {"sigma", 0.3}, {"mu0", 0.0005},
        {"alpha", 0.1}, {"delta", 0.01}, {"n_particles", 150},
        {"m_samples", 3000}, {"init", {{"lo", -0.2}, {"hi", 0.2}}},
        {"seed", 4}}}};
  cli::Options opt;
  opt.subcommand = "check-condition";
  opt.config_path = write_json(dir, "cond.json", ccfg);
  opt.output_path = dir.file("cond_out.json");
  REQUIRE(cli::execute(opt) == cli::kExitOk);
  const json rep = load(dir.file("cond_out.json"));
  CHECK(rep.contains("satisfied"));
  CHECK(rep.contains("E_beta"));
  CHECK(rep["inputs"]["gamma"].get<double>() > 0.0);

  const json lcfg = {
      {"schema_version", 1},
      {"command", "laplace"},
      {"objective", {{"id", "example1"}, {"dim", 1}, {"smoother", "logexp"}}},
      {"betas", {1.0, 10.0}},
      {"m_samples", 2000},
      {"seed", 3}};
  cli::Options lopt;
  lopt.subcommand = "laplace";
  lopt.config_path = write_json(dir, "laplace.json", lcfg);
  lopt.output_path = dir.file("laplace_out.json");
  REQUIRE(cli::execute(lopt) == cli::kExitOk);
  CHECK(load(dir.file("laplace_out.json"))["points"].size() == 2);
}
