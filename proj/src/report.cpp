#include "kmu/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "kmu/checks.hpp"

namespace kmu {

using nlohmann::json;

namespace {

constexpr double kAuditTol = 1e-8;
constexpr double kRootOracleTol = 1e-7;
constexpr double kFoliationTol = 1e-6;
constexpr double kLeafTol = 1e-7;
constexpr double kBisectionTol = 1e-12;

std::string status_of(bool pass) { return pass ? "pass" : "flagged"; }

void count(ReportEnvelope& env, bool pass) {
  if (pass)
    ++env.pass_count;
  else
    ++env.flag_count;
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void run_verify(const RunConfig& cfg, ReportEnvelope& env) {
  const ModelSpace space = cfg.space();
  const auto points = random_points(space, cfg.points, cfg.seed);
  env.columns = {"check", "value", "tolerance", "status"};
  for (const auto& r : structure_checks(space, points, cfg.tol)) {
    env.rows.push_back({r.name, r.value, r.tolerance, status_of(r.pass)});
    count(env, r.pass);
  }
  env.details["points"] = points.size();
}

void run_audit(const RunConfig& cfg, ReportEnvelope& env) {
  const ModelSpace space = cfg.space();
  const auto points = random_points(space, cfg.points, cfg.seed);
  const AuditReport audit = audit_identities(space, points, cfg.tol.value_or(kAuditTol));
  env.columns = {"identity", "point", "z", "lhs", "rhs", "abs_residual", "status"};
  double coeff_sum = 0.0;
  std::size_t coeff_n = 0;
  for (const auto& r : audit.records) {
    const bool pass = r.status == AuditStatus::pass;
    env.rows.push_back({r.name, static_cast<long long>(r.point_index), r.z, r.lhs, r.rhs,
                        r.abs_residual, status_of(pass)});
    count(env, pass);
    if (r.name == identity::kGradCoefficient) {
      coeff_sum += r.lhs;
      ++coeff_n;
    }
  }
  json summary = json::object();
  for (const char* name :
       {identity::kSectionalPhiPlane, identity::kScalarClosedForm, identity::kScalarZFormThreeQuarter,
        identity::kScalarZFormThreeHalf, identity::kGradCoefficient}) {
    summary[name] = {{"max_abs_residual", audit.max_residual(name)}, {"all_pass", audit.all_pass(name)}};
  }
  env.details["identities"] = summary;
  env.details["grad_coefficient_mean"] = coeff_n ? json(coeff_sum / coeff_n) : json(nullptr);
  env.details["grad_coefficient_samples"] = coeff_n;
}

void run_roots(const RunConfig& cfg, SubmanifoldKind which, ReportEnvelope& env) {
  const ModelSpace space = cfg.space();
  const Interval interval = cfg.interval.value_or(space.family.domain().interior(0.999));
  if (!space.family.domain().contains(interval.lo) || !space.family.domain().contains(interval.hi))
    throw ConfigError({"interval " + interval.describe() + " is not inside the family domain " +
                       space.family.domain().describe()});
  const double tol = cfg.tol.value_or(kRootOracleTol);
  env.columns = {"c", "criterion_residual", "lambda", "lambda_prime", "bitension_norm"};
  for (const auto& r : find_roots(space, which, interval, cfg.grid, kBisectionTol)) {
    env.rows.push_back({r.root, r.criterion_residual, r.lambda, r.lambda_prime,
                        r.oracle_bitension_norm});
    count(env, r.oracle_bitension_norm < tol);
  }
  env.details["interval"] = {interval.lo, interval.hi};
  env.details["grid"] = cfg.grid;
  env.details["oracle_tolerance"] = tol;
}

void run_foliate(const RunConfig& cfg, ReportEnvelope& env) {
  FoliationParams params = cfg.foliation;
  params.sign = cfg.sign;
  const OdeSolution sol = integrate_foliation(params);
  const double tol = cfg.tol.value_or(kFoliationTol);
  env.columns = {"z", "lambda", "lambda_prime", "rhs", "F_surf"};
  for (const auto& r : solution_rows(sol, params)) {
    env.rows.push_back({r.z, r.lambda, r.lambda_prime, r.rhs, r.f_surf});
    count(env, std::abs(r.f_surf) < tol);
  }
  env.details["termination"] = to_string(sol.termination);
  env.details["samples"] = sol.samples.size();
  env.details["length"] = sol.empty() ? 0.0 : sol.length();
  if (!sol.empty()) {
    const double drift = invariant_drift(sol, params);
    env.details["invariant_drift"] = drift;
    env.details["drift_per_unit_z"] = sol.length() > 0.0 ? json(drift / sol.length()) : json(nullptr);
  }
  // The interpolated family needs a few nodes for its stencils.
  if (sol.samples.size() >= 4)
    env.details["table_max_abs_F_surf"] = verify_first_integral(space_from_solution(sol, params.sign));
}

void run_leaf_report(const RunConfig& cfg, ReportEnvelope& env) {
  const ModelSpace space = cfg.space();
  if (!cfg.c) throw ConfigError({"leaf-report needs key 'c'"});
  if (!space.family.domain().contains(*cfg.c))
    throw ConfigError({"c is outside the family domain " + space.family.domain().describe()});
  const double tol = cfg.tol.value_or(kLeafTol);
  env.columns = {"kind",      "c",         "criterion_value", "lambda_prime", "bitension_norm",
                 "curvature", "verdict",   "criterion_agrees"};
  for (SubmanifoldKind k : {SubmanifoldKind::curve, SubmanifoldKind::surface}) {
    const BiharmonicityReport r = biharmonicity_report(space, k, *cfg.c, tol);
    env.rows.push_back({to_string(r.kind), r.c, r.criterion_value, r.lambda_prime, r.bitension_norm,
                        r.curvature, to_string(r.verdict), r.criterion_agrees});
    count(env, r.criterion_agrees);
  }
}

json cell_to_json(const Cell& c) {
  return std::visit([](const auto& v) { return json(v); }, c);
}

std::string cell_to_csv(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", *d);
    return buf;
  }
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  return std::get<std::string>(c);
}

}  // namespace

ReportEnvelope run(Command command, const RunConfig& cfg) {
  ReportEnvelope env;
  env.command = command;
  env.config = config_to_json(cfg);
  env.timestamp = utc_now();
  switch (command) {
    case Command::verify:
      run_verify(cfg, env);
      break;
    case Command::audit:
      run_audit(cfg, env);
      break;
    case Command::curve_roots:
      run_roots(cfg, SubmanifoldKind::curve, env);
      break;
    case Command::surface_roots:
      run_roots(cfg, SubmanifoldKind::surface, env);
      break;
    case Command::foliate:
      run_foliate(cfg, env);
      break;
    case Command::leaf_report:
      run_leaf_report(cfg, env);
      break;
  }
  return env;
}

json to_json(const ReportEnvelope& report) {
  json rows = json::array();
  for (const auto& row : report.rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[report.columns[i]] = cell_to_json(row[i]);
    rows.push_back(std::move(obj));
  }
  // nlohmann serializes NaN and ±inf as null.
  return {{"tool_version", report.tool_version},
          {"command", to_string(report.command)},
          {"config", report.config},
          {"columns", report.columns},
          {"rows", rows},
          {"summary", {{"pass_count", report.pass_count}, {"flag_count", report.flag_count}}},
          {"details", report.details},
          {"exit_code", report.exit_code()},
          {"timestamp", report.timestamp}};
}

std::string to_csv(const ReportEnvelope& report) {
  std::ostringstream os;
  for (std::size_t i = 0; i < report.columns.size(); ++i)
    os << (i ? "," : "") << report.columns[i];
  os << '\n';
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_to_csv(row[i]);
    os << '\n';
  }
  return os.str();
}

void emit(const ReportEnvelope& report, OutputFormat format, const std::optional<std::string>& path) {
  const std::string text =
      format == OutputFormat::json ? to_json(report).dump(2) + "\n" : to_csv(report);
  if (!path) {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw std::runtime_error("failed writing report to stdout");
    return;
  }
  std::ofstream out(*path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file '" + *path + "'");
  out << text;
  out.close();
  if (!out) throw std::runtime_error("failed writing output file '" + *path + "'");
}

}  // namespace kmu
