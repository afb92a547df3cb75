#include "kmu/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace kmu {

using nlohmann::json;

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : "; ") + p;
  return out;
}

// Collects problems while reading one JSON object.
class Reader {
 public:
  Reader(const json& obj, std::string where, std::vector<std::string>& problems)
      : obj_(obj), where_(std::move(where)), problems_(problems) {}

  void allow(std::initializer_list<const char*> keys) {
    std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [k, v] : obj_.items())
      if (!allowed.count(k)) problems_.push_back("unknown key '" + path(k) + "'");
  }

  [[nodiscard]] bool has(const char* key) const { return obj_.contains(key); }

  std::optional<double> number(const char* key) {
    if (!obj_.contains(key)) return std::nullopt;
    const json& v = obj_.at(key);
    if (!v.is_number()) {
      problems_.push_back("key '" + path(key) + "' must be a number");
      return std::nullopt;
    }
    return v.get<double>();
  }

  double required_number(const char* key) {
    if (!obj_.contains(key)) {
      problems_.push_back("missing key '" + path(key) + "'");
      return 0.0;
    }
    return number(key).value_or(0.0);
  }

  std::optional<long long> integer(const char* key) {
    if (!obj_.contains(key)) return std::nullopt;
    const json& v = obj_.at(key);
    if (!v.is_number_integer()) {
      problems_.push_back("key '" + path(key) + "' must be an integer");
      return std::nullopt;
    }
    return v.get<long long>();
  }

  std::optional<std::string> string(const char* key) {
    if (!obj_.contains(key)) return std::nullopt;
    const json& v = obj_.at(key);
    if (!v.is_string()) {
      problems_.push_back("key '" + path(key) + "' must be a string");
      return std::nullopt;
    }
    return v.get<std::string>();
  }

  void problem(const char* key, const std::string& what) {
    problems_.push_back("key '" + path(key) + "' " + what);
  }

  [[nodiscard]] std::string path(const std::string& key) const {
    return where_.empty() ? key : where_ + "." + key;
  }

 private:
  const json& obj_;
  std::string where_;
  std::vector<std::string>& problems_;
};

std::optional<Interval> read_interval(const json& v, const std::string& where,
                                      std::vector<std::string>& problems) {
  try {
    if (v.is_string()) return parse_interval(v.get<std::string>());
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
      const Interval out{v[0].get<double>(), v[1].get<double>()};
      if (!(out.lo < out.hi)) throw std::invalid_argument("interval requires lo < hi");
      return out;
    }
  } catch (const std::exception& e) {
    problems.push_back("key '" + where + "': " + e.what());
    return std::nullopt;
  }
  problems.push_back("key '" + where + "' must be \"lo:hi\" or [lo, hi]");
  return std::nullopt;
}

std::optional<LambdaFamily> read_family(const json& v, std::vector<std::string>& problems) {
  if (!v.is_object()) {
    problems.push_back("key 'family' must be an object");
    return std::nullopt;
  }
  Reader r(v, "family", problems);
  const auto kind = r.string("kind");
  std::optional<Interval> domain;
  if (r.has("domain")) domain = read_interval(v.at("domain"), "family.domain", problems);
  const std::size_t before = problems.size();
  try {
    if (kind == "power") {
      r.allow({"kind", "n", "domain"});
      const double n = r.required_number("n");
      if (problems.size() != before) return std::nullopt;
      return domain ? LambdaFamily::power(n, *domain) : LambdaFamily::power(n);
    }
    if (kind == "sqrt_linear") {
      r.allow({"kind", "a", "b", "domain"});
      const double a = r.required_number("a");
      const double b = r.number("b").value_or(0.0);
      if (problems.size() != before) return std::nullopt;
      return domain ? LambdaFamily::sqrt_linear(a, b, *domain) : LambdaFamily::sqrt_linear(a, b);
    }
    if (kind == "constant") {
      r.allow({"kind", "value", "domain"});
      const double value = r.required_number("value");
      if (problems.size() != before) return std::nullopt;
      return domain ? LambdaFamily::constant(value, *domain) : LambdaFamily::constant(value);
    }
  } catch (const DomainError& e) {
    problems.push_back(std::string("family: ") + e.what());
    return std::nullopt;
  }
  r.problem("kind", "must be one of power, sqrt_linear, constant");
  return std::nullopt;
}

std::optional<GaugeFunction> read_gauge(const json& v, const std::string& where,
                                        std::vector<std::string>& problems) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "zero") return GaugeFunction::zero();
    if (s == "sin") return GaugeFunction::sine();
  } else if (v.is_object()) {
    Reader r(v, where, problems);
    const auto kind = r.string("kind");
    if (kind == "poly") {
      r.allow({"kind", "coeffs"});
      if (!v.contains("coeffs") || !v.at("coeffs").is_array()) {
        r.problem("coeffs", "must be an array of numbers");
        return std::nullopt;
      }
      std::vector<double> coeffs;
      for (const auto& c : v.at("coeffs")) {
        if (!c.is_number()) {
          r.problem("coeffs", "must be an array of numbers");
          return std::nullopt;
        }
        coeffs.push_back(c.get<double>());
      }
      return GaugeFunction::poly(std::move(coeffs));
    }
    if (kind == "zero" || kind == "sin") {
      r.allow({"kind"});
      return kind == "zero" ? GaugeFunction::zero() : GaugeFunction::sine();
    }
  }
  problems.push_back("key '" + where + "' must be \"zero\", \"sin\" or {\"kind\":\"poly\",\"coeffs\":[...]}");
  return std::nullopt;
}

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::verify:
      return "verify";
    case Command::audit:
      return "audit";
    case Command::curve_roots:
      return "curve-roots";
    case Command::surface_roots:
      return "surface-roots";
    case Command::foliate:
      return "foliate";
    case Command::leaf_report:
      return "leaf-report";
  }
  return "unknown";
}

std::optional<Command> parse_command(const std::string& name) {
  for (Command c : {Command::verify, Command::audit, Command::curve_roots, Command::surface_roots,
                    Command::foliate, Command::leaf_report})
    if (to_string(c) == name) return c;
  return std::nullopt;
}

std::optional<OutputFormat> parse_format(const std::string& name) {
  if (name == "json") return OutputFormat::json;
  if (name == "csv") return OutputFormat::csv;
  return std::nullopt;
}

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error("invalid configuration: " + join(problems)),
      problems_(std::move(problems)) {}

ModelSpace RunConfig::space() const {
  if (!family) throw ConfigError({"missing key 'family'"});
  return ModelSpace{*family, sign, gauges};
}

Interval parse_interval(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("interval must look like lo:hi");
  std::size_t used_lo = 0, used_hi = 0;
  const std::string lo = text.substr(0, colon), hi = text.substr(colon + 1);
  const double a = std::stod(lo, &used_lo);
  const double b = std::stod(hi, &used_hi);
  if (used_lo != lo.size() || used_hi != hi.size())
    throw std::invalid_argument("interval must look like lo:hi");
  if (!(a < b)) throw std::invalid_argument("interval requires lo < hi");
  return {a, b};
}

RunConfig parse_config(const json& doc) {
  std::vector<std::string> problems;
  RunConfig cfg;
  if (!doc.is_object()) throw ConfigError({"configuration must be a JSON object"});
  Reader r(doc, "", problems);
  r.allow({"family", "sign", "gauges", "points", "seed", "tol", "interval", "grid", "c", "b",
           "beta", "lambda0", "z0", "step", "span", "branch", "command", "out", "format"});

  if (doc.contains("family")) cfg.family = read_family(doc.at("family"), problems);
  if (const auto s = r.string("sign")) {
    if (*s == "plus")
      cfg.sign = Sign::plus;
    else if (*s == "minus")
      cfg.sign = Sign::minus;
    else
      r.problem("sign", "must be \"plus\" or \"minus\"");
  }
  cfg.foliation.sign = cfg.sign;
  if (doc.contains("gauges")) {
    const json& g = doc.at("gauges");
    if (!g.is_object()) {
      problems.push_back("key 'gauges' must be an object");
    } else {
      Reader gr(g, "gauges", problems);
      gr.allow({"f", "h"});
      if (g.contains("f"))
        if (auto f = read_gauge(g.at("f"), "gauges.f", problems)) cfg.gauges.f = *f;
      if (g.contains("h"))
        if (auto h = read_gauge(g.at("h"), "gauges.h", problems)) cfg.gauges.h = *h;
    }
  }
  if (const auto n = r.integer("points")) {
    if (*n < 1)
      r.problem("points", "must be positive");
    else
      cfg.points = static_cast<std::size_t>(*n);
  }
  if (const auto s = r.integer("seed")) {
    if (*s < 0)
      r.problem("seed", "must be non-negative");
    else
      cfg.seed = static_cast<std::uint64_t>(*s);
  }
  if (const auto t = r.number("tol")) {
    if (!(*t > 0.0))
      r.problem("tol", "must be positive");
    else
      cfg.tol = *t;
  }
  if (doc.contains("interval")) cfg.interval = read_interval(doc.at("interval"), "interval", problems);
  if (const auto g = r.integer("grid")) {
    if (*g < 2)
      r.problem("grid", "must be at least 2");
    else
      cfg.grid = static_cast<int>(*g);
  }
  cfg.c = r.number("c");
  cfg.b = r.number("b").value_or(0.0);
  if (const auto v = r.number("beta")) cfg.foliation.beta_const = *v;
  if (const auto v = r.number("lambda0")) {
    if (!(*v > 0.0))
      r.problem("lambda0", "must be positive");
    else
      cfg.foliation.lambda0 = *v;
  }
  if (const auto v = r.number("z0")) cfg.foliation.z0 = *v;
  if (const auto v = r.number("step")) {
    if (!(*v > 0.0))
      r.problem("step", "must be positive");
    else
      cfg.foliation.step = *v;
  }
  if (const auto v = r.number("span")) {
    if (!(*v > 0.0))
      r.problem("span", "must be positive");
    else
      cfg.foliation.span = *v;
  }
  if (const auto v = r.string("branch")) {
    if (*v == "increasing")
      cfg.foliation.branch = Branch::increasing;
    else if (*v == "decreasing")
      cfg.foliation.branch = Branch::decreasing;
    else
      r.problem("branch", "must be \"increasing\" or \"decreasing\"");
  }
  if (const auto v = r.string("command")) {
    cfg.command = parse_command(*v);
    if (!cfg.command) r.problem("command", "is not a known command");
  }
  cfg.out = r.string("out");
  if (const auto v = r.string("format")) {
    if (auto f = parse_format(*v))
      cfg.format = *f;
    else
      r.problem("format", "must be \"json\" or \"csv\"");
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot open config file '" + path + "'"});
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ConfigError({"config file '" + path + "' is not valid JSON: " + e.what()});
  }
  return parse_config(doc);
}

json family_to_json(const LambdaFamily& family) {
  json j;
  if (const auto* k = std::get_if<PowerKind>(&family.kind())) {
    j = {{"kind", "power"}, {"n", k->n}};
  } else if (const auto* k = std::get_if<SqrtLinearKind>(&family.kind())) {
    j = {{"kind", "sqrt_linear"}, {"a", k->a}, {"b", k->b}};
  } else if (const auto* k = std::get_if<ConstantKind>(&family.kind())) {
    j = {{"kind", "constant"}, {"value", k->value}};
  } else {
    j = {{"kind", "table"}, {"samples", std::get<TableKind>(family.kind()).samples.size()}};
  }
  j["domain"] = {family.domain().lo, family.domain().hi};
  return j;
}

json gauge_to_json(const GaugeFunction& g) {
  if (const auto* p = std::get_if<GaugeFunction::Poly>(&g.kind()))
    return {{"kind", "poly"}, {"coeffs", p->coeffs}};
  return g.is_zero() ? json("zero") : json("sin");
}

json config_to_json(const RunConfig& cfg) {
  json j;
  j["family"] = cfg.family ? family_to_json(*cfg.family) : json(nullptr);
  j["sign"] = to_string(cfg.sign);
  j["gauges"] = {{"f", gauge_to_json(cfg.gauges.f)}, {"h", gauge_to_json(cfg.gauges.h)}};
  j["points"] = cfg.points;
  j["seed"] = cfg.seed;
  j["tol"] = cfg.tol ? json(*cfg.tol) : json(nullptr);
  j["interval"] = cfg.interval ? json({cfg.interval->lo, cfg.interval->hi}) : json(nullptr);
  j["grid"] = cfg.grid;
  j["c"] = cfg.c ? json(*cfg.c) : json(nullptr);
  j["b"] = cfg.b;
  j["beta"] = cfg.foliation.beta_const;
  j["lambda0"] = cfg.foliation.lambda0;
  j["z0"] = cfg.foliation.z0;
  j["step"] = cfg.foliation.step;
  j["span"] = cfg.foliation.span;
  j["branch"] = to_string(cfg.foliation.branch);
  j["format"] = cfg.format == OutputFormat::json ? "json" : "csv";
  return j;
}

}  // namespace kmu
