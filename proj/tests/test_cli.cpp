#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "dwbc/cli.hpp"
#include "json.hpp"

using namespace dwbc;

namespace {

struct TempFile {
  explicit TempFile(std::string name, const std::string& body)
      : path(std::move(name)) {
    std::ofstream f(path);
    f << body;
  }
  ~TempFile() { std::remove(path.c_str()); }
  std::string path;
};

struct RunResult {
  int code;
  std::string out, err;
};

RunResult run(const std::string& cmd, const RunConfig& cfg) {
  std::ostringstream out, err;
  const int code = run_command(cmd, cfg, out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("sampler determinism and ranges") {
  ParamSampler a(7), b(7);
  for (int i = 0; i < 16; ++i) {
    const double u = a.uniform(0.0, 1.0);
    CHECK(u == b.uniform(0.0, 1.0));
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }

  ParamSampler c(7);
  const auto xs = c.rapidities(6);
  REQUIRE(xs.size() == 6);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(xs[i].imag() == 0.0);
    CHECK(xs[i].real() >= 0.05);
    CHECK(xs[i].real() <= 0.95);
    for (std::size_t j = 0; j < i; ++j)
      CHECK(std::abs(xs[i].real() - xs[j].real()) >= 0.02);
  }
  const Complex lam = c.lambda();
  CHECK(lam.imag() == 0.0);
  CHECK(lam.real() >= 0.3);
  CHECK(lam.real() <= 1.5);

  CHECK(mix_seed(1, 2, 3, 4) == mix_seed(1, 2, 3, 4));
  CHECK(mix_seed(1, 2, 3, 4) != mix_seed(1, 2, 4, 3));
  CHECK(mix_seed(1, 2, 3, 4) != mix_seed(2, 2, 3, 4));
}

TEST_CASE("config file parsing") {
  const TempFile ok("cli_test_ok.json", R"({
    "lambda": [0.7, 0.4],
    "x": [0.1, [0.2, 0.05]],
    "y": [0.3, 0.4],
    "seed": 9,
    "n": 2,
    "tolerance": 1e-08,
    "enumeration_cap": 36,
    "trials": 25
  })");
  const RunConfig cfg = parse_config(ok.path);
  REQUIRE(cfg.lambda.has_value());
  CHECK(cfg.lambda->real() == 0.7);
  CHECK(cfg.lambda->imag() == 0.4);
  REQUIRE(cfg.x.size() == 2);
  CHECK(cfg.x[1] == Complex{0.2, 0.05});
  REQUIRE(cfg.y.size() == 2);
  CHECK(cfg.seed == 9);
  CHECK(cfg.n == 2);
  CHECK(cfg.tolerance == 1e-08);
  CHECK(cfg.enumeration_cap == 36);
  CHECK(cfg.trials == 25);

  const TempFile bad("cli_test_bad.json", "{ nope");
  CHECK_THROWS_AS(parse_config(bad.path), ParseError);
  const TempFile unknown("cli_test_unknown.json", R"({"foo": 1})");
  CHECK_THROWS_AS(parse_config(unknown.path), ValidationError);
  const TempFile bad_lambda("cli_test_lambda.json", R"({"lambda": "zero"})");
  CHECK_THROWS_AS(parse_config(bad_lambda.path), ValidationError);
  const TempFile bad_tol("cli_test_tol.json", R"({"tolerance": -1.0})");
  CHECK_THROWS_AS(parse_config(bad_tol.path), ValidationError);
  CHECK_THROWS_AS(parse_config("cli_test_missing.json"), ParseError);
}

TEST_CASE("parameter resolution") {
  RunConfig cfg;
  cfg.seed = 5;
  cfg.x = {{0.1, 0.0}, {0.4, 0.0}};
  cfg.y = {{0.6, 0.0}, {0.9, 0.0}};
  const ModelParams p = resolve_params(cfg, 2);
  CHECK(p.x == cfg.x);
  CHECK(p.y == cfg.y);
  CHECK(resolve_params(cfg, 2).lambda == p.lambda);  // drawn, but seeded

  CHECK_THROWS_AS(resolve_params(cfg, 3), ValidationError);

  RunConfig drawn;
  drawn.seed = 5;
  const ModelParams d1 = resolve_params(drawn, 3);
  const ModelParams d2 = resolve_params(drawn, 3);
  CHECK(d1.x == d2.x);
  CHECK(d1.y == d2.y);
  CHECK(d1.lambda == d2.lambda);
  drawn.seed = 6;
  CHECK(resolve_params(drawn, 3).x != d1.x);
}

TEST_CASE("formatting and digests") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(0.001) == "0.001");
  CHECK(format_complex({1.5, -2.25}) == "1.5-2.25i");
  CHECK(format_complex({0.3, 0.0}) == "0.3+0i");
  CHECK(format_complex({-0.0, -0.0}) == "0+0i");

  RunConfig cfg;
  cfg.r = 2;
  const ModelParams p = resolve_params(cfg, 3);
  const std::string d1 = input_digest("onepoint", cfg, p);
  CHECK(d1.size() == 16);
  CHECK(d1 == input_digest("onepoint", cfg, p));
  cfg.r = 3;
  CHECK(d1 != input_digest("onepoint", cfg, p));
  CHECK(d1 != input_digest("partition", cfg, p));
}

TEST_CASE("partition command is deterministic and oracle-checked") {
  RunConfig cfg;
  cfg.seed = 11;
  cfg.n = 3;
  cfg.oracle = true;
  const RunResult r1 = run("partition", cfg);
  const RunResult r2 = run("partition", cfg);
  CHECK(r1.code == 0);
  CHECK(r1.out == r2.out);  // stdout carries no timing
  CHECK(contains(r1.out, "Z = "));
  CHECK(contains(r1.out, "digest: "));
  CHECK(contains(r1.out, "status: OK"));
  CHECK(contains(r1.err, "# wall"));
  CHECK(!contains(r1.out, "wall"));
}

TEST_CASE("onepoint command sums to one in json mode") {
  RunConfig cfg;
  cfg.seed = 5;
  cfg.n = 3;
  cfg.all_rows = true;
  cfg.json_output = true;
  const RunResult r = run("onepoint", cfg);
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["command"] == "onepoint");
  CHECK(j["status"] == "OK");
  REQUIRE(j["records"].size() == 4);
  const auto& sum = j["records"].back();
  CHECK(sum["name"] == "sum");
  CHECK(sum["deviation"].get<double>() <= 1e-10);
  CHECK(!contains(r.out, "wall"));
}

TEST_CASE("count command") {
  RunConfig cfg;
  cfg.n = 5;
  RunResult r = run("count", cfg);
  CHECK(r.code == 0);
  CHECK(contains(r.out, "configurations = 429"));

  cfg.n = 8;  // 64 vertices, above the default enumeration cap
  cfg.json_output = true;
  r = run("count", cfg);
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["status"] == "SKIPPED");
  CHECK(!j.contains("count"));
}

TEST_CASE("twopoint command with oracle comparison") {
  RunConfig cfg;
  cfg.seed = 4;
  cfg.n = 3;
  cfg.case_id = 3;
  cfg.r = 2;
  cfg.r2 = 1;
  cfg.oracle = true;
  cfg.json_output = true;
  const RunResult r = run("twopoint", cfg);
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["case"] == 3);
  CHECK(j["status"] == "OK");
  CHECK(j["records"][0]["deviation"].get<double>() <= 1e-9);
}

TEST_CASE("usage and failure exit codes") {
  RunConfig cfg;
  cfg.n = 3;
  cfg.case_id = 1;
  cfg.r = 1;  // missing --r2
  RunResult r = run("twopoint", cfg);
  CHECK(r.code == 2);
  CHECK(contains(r.err, "error:"));

  r = run("bogus", RunConfig{});
  CHECK(r.code == 2);

  RunConfig no_row;
  no_row.n = 3;
  CHECK(run("onepoint", no_row).code == 2);

  RunConfig zero;
  zero.n = 0;
  CHECK(run("count", zero).code == 2);

  RunConfig degenerate;
  degenerate.x = {{0.2, 0.0}, {0.2, 0.0}, {0.3, 0.0}};
  degenerate.y = {{0.5, 0.0}, {0.6, 0.0}, {0.7, 0.0}};
  degenerate.n = 3;
  CHECK(run("partition", degenerate).code == 3);
}

TEST_CASE("ybe-check command") {
  RunConfig cfg;
  cfg.seed = 3;
  cfg.trials = 25;
  cfg.tolerance = 1e-12;
  const RunResult r = run("ybe-check", cfg);
  CHECK(r.code == 0);
  CHECK(contains(r.out, "status: OK"));
}
