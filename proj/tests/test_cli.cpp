#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "kmu/report.hpp"

using namespace kmu;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

fs::path scratch_dir() {
  const fs::path d = fs::temp_directory_path() / ("kmu_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

std::string write_file(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
  return p.string();
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(KMU_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("config parsing accepts the documented forms") {
  const RunConfig cfg = parse_config(json::parse(R"({
    "family": {"kind": "sqrt_linear", "a": 1.0, "b": 0.0},
    "sign": "minus",
    "gauges": {"f": "sin", "h": {"kind": "poly", "coeffs": [0, 1]}},
    "points": 7, "seed": 3, "tol": 1e-9, "interval": "0.1:0.5", "grid": 50,
    "beta": 20, "lambda0": 0.3, "step": 0.002, "branch": "increasing",
    "command": "surface-roots", "format": "csv"
  })"));
  REQUIRE(cfg.family.has_value());
  CHECK(cfg.family->describe() == LambdaFamily::sqrt_linear(1.0, 0.0).describe());
  CHECK(cfg.sign == Sign::minus);
  CHECK(cfg.points == 7);
  CHECK(cfg.interval->lo == 0.1);
  CHECK(cfg.command == Command::surface_roots);
  CHECK(cfg.format == OutputFormat::csv);
  CHECK(cfg.foliation.branch == Branch::increasing);
  CHECK(cfg.foliation.step == 0.002);
}

TEST_CASE("config errors list every offending key") {
  try {
    (void)parse_config(json::parse(R"({"famly": 1, "sign": "up", "grid": 1, "colour": "red"})"));
    FAIL("expected a throw");
  } catch (const ConfigError& e) {
    const std::string all = e.what();
    CHECK(e.problems().size() >= 4);
    for (const char* key : {"famly", "sign", "grid", "colour"})
      CHECK(all.find(key) != std::string::npos);
  }
  CHECK_THROWS_AS((void)parse_config(json::parse(R"({"family": {"kind": "power"}, "extra": 1})")),
                  ConfigError);
  CHECK_THROWS_AS((void)parse_config(json::parse(R"({"family": {"kind": "cubic"}})")), ConfigError);
  CHECK_THROWS_AS((void)parse_config(json::parse("[1, 2]")), ConfigError);
}

TEST_CASE("interval strings") {
  const Interval i = parse_interval("0.01:10");
  CHECK(i.lo == 0.01);
  CHECK(i.hi == 10.0);
  CHECK_THROWS((void)parse_interval("3:1"));
  CHECK_THROWS((void)parse_interval("1-2"));
  CHECK_THROWS((void)parse_interval("a:b"));
}

TEST_CASE("reports are deterministic apart from the timestamp") {
  const RunConfig cfg = parse_config(json::parse(R"({"family": {"kind": "power", "n": 0.5}, "points": 10})"));
  for (Command c : {Command::verify, Command::audit, Command::curve_roots}) {
    json a = to_json(run(c, cfg)), b = to_json(run(c, cfg));
    a.erase("timestamp");
    b.erase("timestamp");
    CHECK(a.dump() == b.dump());
  }
}

TEST_CASE("verify and audit exit codes") {
  RunConfig cfg = parse_config(json::parse(R"({"family": {"kind": "power", "n": 0.5}})"));
  const ReportEnvelope v = run(Command::verify, cfg);
  CHECK(v.exit_code() == 0);
  CHECK(v.flag_count == 0);
  const ReportEnvelope a = run(Command::audit, cfg);
  CHECK(a.exit_code() == 2);
  for (const auto& row : a.rows) {
    const bool flagged = std::get<std::string>(row.back()) == "flagged";
    if (flagged) CHECK(std::get<std::string>(row[0]) == identity::kScalarZFormThreeQuarter);
  }
}

TEST_CASE("empty root list gives a header-only CSV") {
  const RunConfig cfg =
      parse_config(json::parse(R"({"family": {"kind": "sqrt_linear", "a": 1, "b": 0}})"));
  const ReportEnvelope r = run(Command::surface_roots, cfg);
  CHECK(r.rows.empty());
  CHECK(r.exit_code() == 0);
  CHECK(to_csv(r) == "c,criterion_residual,lambda,lambda_prime,bitension_norm\n");
}

TEST_CASE("CSV headers and number formatting") {
  RunConfig cfg = parse_config(json::parse(
      R"({"family": {"kind": "power", "n": 0.5}, "interval": "0.01:2", "c": 0.5, "sign": "minus"})"));
  const std::string roots = to_csv(run(Command::curve_roots, cfg));
  CHECK(roots.rfind("c,criterion_residual,lambda,lambda_prime,bitension_norm\n", 0) == 0);
  CHECK(to_csv(run(Command::leaf_report, cfg))
            .rfind("kind,c,criterion_value,lambda_prime,bitension_norm,curvature,verdict,criterion_agrees\n", 0) == 0);
  cfg.foliation.span = 0.01;
  const std::string fol = to_csv(run(Command::foliate, cfg));
  CHECK(fol.rfind("z,lambda,lambda_prime,rhs,F_surf\n", 0) == 0);
  cfg.sign = Sign::minus;
  cfg.foliation.beta_const = 20;
  cfg.foliation.lambda0 = 0.3;
  const ReportEnvelope f = run(Command::foliate, cfg);
  REQUIRE(!f.rows.empty());
  // 17 significant digits round-trip the doubles exactly.
  const std::string csv = to_csv(f);
  const std::string second_line = csv.substr(csv.find('\n') + 1, csv.find('\n', csv.find('\n') + 1) - csv.find('\n') - 1);
  const double lambda = std::stod(second_line.substr(second_line.find(',') + 1));
  CHECK(lambda == std::get<double>(f.rows[0][1]));
}

TEST_CASE("leaf report needs c inside the domain") {
  RunConfig cfg = parse_config(json::parse(R"({"family": {"kind": "power", "n": 0.5}})"));
  CHECK_THROWS_AS((void)run(Command::leaf_report, cfg), ConfigError);
  cfg.c = -1.0;
  CHECK_THROWS_AS((void)run(Command::leaf_report, cfg), ConfigError);
  cfg.interval = Interval{-1.0, 1.0};
  CHECK_THROWS_AS((void)run(Command::curve_roots, cfg), ConfigError);
}

TEST_CASE("non-finite numbers become null in JSON") {
  ReportEnvelope r;
  r.columns = {"x"};
  r.rows.push_back({std::numeric_limits<double>::infinity()});
  CHECK(to_json(r).dump().find(R"("x":null)") != std::string::npos);
}

TEST_CASE("emit reports the failing path") {
  ReportEnvelope r;
  const std::string bad = "/nonexistent_dir_for_kmu/out.json";
  try {
    emit(r, OutputFormat::json, bad);
    FAIL("expected a throw");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find(bad) != std::string::npos);
  }
}

TEST_CASE("command-line exit codes") {
  const fs::path dir = scratch_dir();
  const std::string power = write_file(dir / "power.json", R"({"family": {"kind": "power", "n": 0.5}, "sign": "plus"})");
  const std::string sqrtl = write_file(dir / "sqrt.json", R"({"family": {"kind": "sqrt_linear", "a": 1.0, "b": 0.0}})");
  const std::string bad = write_file(dir / "bad.json", R"({"family": {"kind": "power"}, "bogus": 1, "sign": 3})");

  CHECK(run_cli("--config " + power + " --command verify --points 100 --seed 42") == 0);
  CHECK(run_cli("--config " + power + " --command audit") == 2);
  const fs::path csv = dir / "roots.csv";
  CHECK(run_cli("--config " + sqrtl + " --command surface-roots --format csv --out " + csv.string()) == 0);
  CHECK(read_file(csv) == "c,criterion_residual,lambda,lambda_prime,bitension_norm\n");
  CHECK(run_cli("--config " + bad + " --command verify") == 1);
  CHECK(run_cli("--config " + power) == 1);
  CHECK(run_cli("--config " + power + " --command nope") == 1);
  CHECK(run_cli("--config " + power + " --command curve-roots --interval 5:1") == 1);
  CHECK(run_cli("--no-such-flag") == 1);
  CHECK(run_cli("--config " + (dir / "missing.json").string() + " --command verify") == 1);
  CHECK(run_cli("--command foliate --beta 20 --lambda0 0.3 --sign minus --span 0.1") == 0);

  const fs::path j1 = dir / "a.json", j2 = dir / "b.json";
  CHECK(run_cli("--config " + power + " --command curve-roots --interval 0.01:2 --out " + j1.string()) == 0);
  CHECK(run_cli("--config " + power + " --command curve-roots --interval 0.01:2 --out " + j2.string()) == 0);
  json a = json::parse(read_file(j1)), b = json::parse(read_file(j2));
  CHECK(a["rows"].size() == 1);
  a.erase("timestamp");
  b.erase("timestamp");
  CHECK(a == b);
  fs::remove_all(dir);
}
