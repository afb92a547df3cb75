// Batch entry point: reads a JSON configuration, applies flag overrides and
// runs one command. Exit codes: 0 all pass, 2 flags present, 1 usage error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "kmu/report.hpp"

namespace {

using nlohmann::json;

int usage_error(const std::vector<std::string>& problems) {
  for (const auto& p : problems) std::cerr << "error: " << p << '\n';
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification runs on the generalized (kappa, mu) model spaces"};
  app.set_version_flag("--version", kmu::kToolVersion);

  std::optional<std::string> config_path, command, out, format, interval, branch, sign;
  std::optional<long long> seed, grid, points;
  std::optional<double> tol, beta, lambda0, z0, step, span, c;
  app.add_option("--config", config_path, "JSON configuration file");
  app.add_option("--command", command,
                 "verify | audit | curve-roots | surface-roots | foliate | leaf-report");
  app.add_option("--out", out, "output path (default: stdout)");
  app.add_option("--format", format, "json | csv");
  app.add_option("--seed", seed, "random seed for sampled points");
  app.add_option("--points", points, "number of sampled points");
  app.add_option("--tol", tol, "pass/flag tolerance (overrides command defaults)");
  app.add_option("--interval", interval, "root scan interval lo:hi");
  app.add_option("--grid", grid, "root scan grid size");
  app.add_option("--sign", sign, "plus | minus");
  app.add_option("--c", c, "leaf parameter for leaf-report");
  app.add_option("--beta", beta, "foliation integration constant");
  app.add_option("--lambda0", lambda0, "foliation initial value");
  app.add_option("--z0", z0, "foliation start");
  app.add_option("--step", step, "foliation RK4 step");
  app.add_option("--span", span, "foliation length in z");
  app.add_option("--branch", branch, "increasing | decreasing");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  json doc = json::object();
  if (config_path) {
    std::ifstream in(*config_path);
    if (!in) return usage_error({"cannot open config file '" + *config_path + "'"});
    try {
      in >> doc;
    } catch (const json::parse_error& e) {
      return usage_error({"config file '" + *config_path + "' is not valid JSON: " + e.what()});
    }
    if (!doc.is_object()) return usage_error({"config file '" + *config_path + "' must hold an object"});
  }
  // Flags overlay the document so that one validation pass reports everything.
  if (command) doc["command"] = *command;
  if (out) doc["out"] = *out;
  if (format) doc["format"] = *format;
  if (seed) doc["seed"] = *seed;
  if (points) doc["points"] = *points;
  if (tol) doc["tol"] = *tol;
  if (interval) doc["interval"] = *interval;
  if (grid) doc["grid"] = *grid;
  if (sign) doc["sign"] = *sign;
  if (c) doc["c"] = *c;
  if (beta) doc["beta"] = *beta;
  if (lambda0) doc["lambda0"] = *lambda0;
  if (z0) doc["z0"] = *z0;
  if (step) doc["step"] = *step;
  if (span) doc["span"] = *span;
  if (branch) doc["branch"] = *branch;

  kmu::RunConfig cfg;
  try {
    cfg = kmu::parse_config(doc);
  } catch (const kmu::ConfigError& e) {
    return usage_error(e.problems());
  }
  if (!cfg.command) return usage_error({"no command given (use --command or the 'command' key)"});

  try {
    const kmu::ReportEnvelope report = kmu::run(*cfg.command, cfg);
    kmu::emit(report, cfg.format, cfg.out);
    return report.exit_code();
  } catch (const kmu::ConfigError& e) {
    return usage_error(e.problems());
  } catch (const std::exception& e) {
    return usage_error({e.what()});
  }
}
