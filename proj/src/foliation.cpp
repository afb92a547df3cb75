#include "kmu/foliation.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include <boost/numeric/odeint/stepper/runge_kutta4.hpp>

namespace kmu {

namespace {

using State = std::array<double, 2>;  // (λ, λ′)

double branch_sign(Branch b) { return b == Branch::increasing ? 1.0 : -1.0; }

double rhs_unchecked(double l, const FoliationParams& prm) {
  const double l2 = l * l;
  return prm.beta_const * l2 * l2 + 16.0 * l2 * l2 * std::log(l) - sigma(prm.sign) * 32.0 * l2 * l -
         8.0 * l2;
}

double rhs_derivative_unchecked(double l, const FoliationParams& prm) {
  const double l2 = l * l, l3 = l2 * l;
  return 4.0 * prm.beta_const * l3 + 64.0 * l3 * std::log(l) + 16.0 * l3 -
         sigma(prm.sign) * 96.0 * l2 - 16.0 * l;
}

void require_positive(double lambda) {
  if (!(lambda > 0.0)) {
    std::ostringstream os;
    os << "foliation rhs requires lambda > 0, got " << lambda;
    throw DomainError(os.str());
  }
}

}  // namespace

std::string to_string(Branch b) { return b == Branch::increasing ? "increasing" : "decreasing"; }

std::string to_string(Termination t) {
  switch (t) {
    case Termination::span_exhausted:
      return "span_exhausted";
    case Termination::rhs_nonpositive:
      return "rhs_nonpositive";
    case Termination::lambda_nonpositive:
      return "lambda_nonpositive";
    case Termination::non_finite:
      return "non_finite";
  }
  return "unknown";
}

double OdeSolution::length() const {
  return samples.empty() ? 0.0 : samples.back().z - samples.front().z;
}

double foliation_rhs(double lambda, const FoliationParams& params) {
  require_positive(lambda);
  return rhs_unchecked(lambda, params);
}

double foliation_rhs_derivative(double lambda, const FoliationParams& params) {
  require_positive(lambda);
  return rhs_derivative_unchecked(lambda, params);
}

OdeSolution integrate_foliation(const FoliationParams& params) {
  if (!(params.step > 0.0)) throw std::invalid_argument("integrate_foliation: step must be positive");
  if (!(params.span > 0.0)) throw std::invalid_argument("integrate_foliation: span must be positive");
  require_positive(params.lambda0);

  OdeSolution sol;
  const double r0 = rhs_unchecked(params.lambda0, params);
  if (!(r0 > 0.0)) {
    sol.termination = Termination::rhs_nonpositive;
    return sol;
  }
  const double dir = branch_sign(params.branch);
  State y{params.lambda0, dir * std::sqrt(r0)};
  sol.samples.push_back({params.z0, y[0], y[1]});

  const auto system = [&params](const State& s, State& dsdz, double /*z*/) {
    dsdz[0] = s[1];
    dsdz[1] = 0.5 * rhs_derivative_unchecked(s[0], params);
  };
  boost::numeric::odeint::runge_kutta4<State> stepper;
  const auto steps = static_cast<long>(std::llround(params.span / params.step));
  sol.termination = Termination::span_exhausted;
  for (long i = 1; i <= steps; ++i) {
    State next = y;
    stepper.do_step(system, next, params.z0 + static_cast<double>(i - 1) * params.step,
                    params.step);
    if (!std::isfinite(next[0]) || !std::isfinite(next[1])) {
      sol.termination = next[0] <= 0.0 ? Termination::lambda_nonpositive : Termination::non_finite;
      break;
    }
    if (next[0] <= 0.0) {
      sol.termination = Termination::lambda_nonpositive;
      break;
    }
    // A sign change of λ′ means the trajectory passed a turning point.
    if (rhs_unchecked(next[0], params) <= 0.0 || next[1] * dir <= 0.0) {
      sol.termination = Termination::rhs_nonpositive;
      break;
    }
    y = next;
    sol.samples.push_back({params.z0 + static_cast<double>(i) * params.step, y[0], y[1]});
  }
  return sol;
}

std::vector<FoliationRow> solution_rows(const OdeSolution& sol, const FoliationParams& params) {
  std::vector<FoliationRow> rows;
  rows.reserve(sol.samples.size());
  const double s = sigma(params.sign);
  for (const auto& smp : sol.samples) {
    FoliationRow r;
    r.z = smp.z;
    r.lambda = smp.lambda;
    r.lambda_prime = smp.lambda_prime;
    r.rhs = foliation_rhs(smp.lambda, params);
    const double l = smp.lambda;
    const double l2nd = 0.5 * foliation_rhs_derivative(l, params);
    const double b = 1.0 + s * l;
    r.f_surf = l * l2nd - 2.0 * smp.lambda_prime * smp.lambda_prime - 8.0 * l * l * b * b;
    rows.push_back(r);
  }
  return rows;
}

double invariant_drift(const OdeSolution& sol, const FoliationParams& params) {
  double worst = 0.0;
  for (const auto& smp : sol.samples)
    worst = std::max(worst, std::abs(smp.lambda_prime * smp.lambda_prime -
                                     foliation_rhs(smp.lambda, params)));
  return worst;
}

ModelSpace space_from_solution(const OdeSolution& sol, Sign sign) {
  return ModelSpace{LambdaFamily::table(sol.samples), sign, {}};
}

double verify_first_integral(const ModelSpace& space, std::size_t sample_count) {
  double worst = 0.0;
  if (const auto* t = std::get_if<TableKind>(&space.family.kind())) {
    for (std::size_t i = 1; i + 1 < t->samples.size(); ++i)
      worst = std::max(worst, std::abs(surface_criterion(space, t->samples[i].z)));
    return worst;
  }
  const std::size_t n = sample_count == 0 ? 100 : sample_count;
  const Interval dom = space.family.domain();
  for (std::size_t i = 1; i <= n; ++i) {
    const double c = dom.lo + dom.width() * static_cast<double>(i) / static_cast<double>(n + 1);
    worst = std::max(worst, std::abs(surface_criterion(space, c)));
  }
  return worst;
}

}  // namespace kmu
