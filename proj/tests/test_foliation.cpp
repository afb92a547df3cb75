#include <doctest.h>

#include <cmath>

#include "kmu/foliation.hpp"

using namespace kmu;

namespace {

FoliationParams params(double beta, Sign s, double lambda0, double step = 1e-3, double span = 1.0) {
  FoliationParams p;
  p.beta_const = beta;
  p.sign = s;
  p.lambda0 = lambda0;
  p.step = step;
  p.span = span;
  return p;
}

}  // namespace

TEST_CASE("right-hand side at lambda = 1") {
  for (double beta : {0.0, 3.5, -10.0}) {
    CHECK(foliation_rhs(1.0, params(beta, Sign::minus, 1.0)) == doctest::Approx(beta + 24.0));
    CHECK(foliation_rhs(1.0, params(beta, Sign::plus, 1.0)) == doctest::Approx(beta - 40.0));
  }
  CHECK(foliation_rhs(1e-3, params(100.0, Sign::minus, 1.0)) < 0.0);
  CHECK_THROWS_AS((void)foliation_rhs(0.0, params(0, Sign::plus, 1.0)), DomainError);
}

TEST_CASE("rhs derivative matches a central difference") {
  const FoliationParams p = params(7.0, Sign::plus, 1.0);
  for (double l : {0.3, 0.9, 1.7}) {
    const double h = 1e-5;
    const double fd = (foliation_rhs(l + h, p) - foliation_rhs(l - h, p)) / (2 * h);
    CHECK(foliation_rhs_derivative(l, p) == doctest::Approx(fd).epsilon(1e-8));
  }
}

TEST_CASE("first-integral identity holds for any lambda") {
  // With λ″ = ½ rhs′ and (λ′)² = rhs, λλ″ − 2(λ′)² − 8λ²(1 ± λ)² vanishes.
  for (Sign s : {Sign::plus, Sign::minus}) {
    for (double beta : {-5.0, 0.0, 20.0}) {
      const FoliationParams p = params(beta, s, 1.0);
      for (double l : {0.2, 0.5, 1.0, 1.5, 3.0}) {
        const double f = l * 0.5 * foliation_rhs_derivative(l, p) - 2 * foliation_rhs(l, p) -
                         8 * l * l * std::pow(1 + sigma(s) * l, 2);
        CHECK(std::abs(f) < 1e-9 * std::max(1.0, std::pow(l, 4) * 50));
      }
    }
  }
}

TEST_CASE("nonpositive start gives an empty solution") {
  const OdeSolution sol = integrate_foliation(params(0.0, Sign::plus, 1.0));
  CHECK(sol.empty());
  CHECK(sol.termination == Termination::rhs_nonpositive);
  CHECK(solution_rows(sol, params(0.0, Sign::plus, 1.0)).empty());
}

TEST_CASE("successful run: positivity, drift and F_surf") {
  const FoliationParams p = params(20.0, Sign::minus, 0.3, 1e-3, 2.0);
  const OdeSolution sol = integrate_foliation(p);
  REQUIRE(sol.samples.size() > 10);
  for (std::size_t i = 1; i < sol.samples.size(); ++i) {
    CHECK(sol.samples[i].lambda > 0.0);
    CHECK(sol.samples[i].z > sol.samples[i - 1].z);
  }
  CHECK(invariant_drift(sol, p) / sol.length() < 1e-8);
  for (const auto& row : solution_rows(sol, p)) CHECK(std::abs(row.f_surf) < 1e-7);
}

TEST_CASE("step halving shows fourth-order convergence") {
  const FoliationParams coarse = params(0.0, Sign::minus, 0.5, 1e-3, 0.4);
  FoliationParams fine = coarse;
  fine.step = 5e-4;
  const OdeSolution a = integrate_foliation(coarse), b = integrate_foliation(fine);
  REQUIRE(a.termination == Termination::span_exhausted);
  REQUIRE(b.termination == Termination::span_exhausted);
  const double ratio = invariant_drift(a, coarse) / invariant_drift(b, fine);
  CHECK(ratio > 8.0);
  CHECK(ratio < 40.0);
}

TEST_CASE("branches move lambda in the chosen direction") {
  FoliationParams p = params(60.0, Sign::plus, 0.8, 1e-3, 0.05);
  const OdeSolution down = integrate_foliation(p);
  p.branch = Branch::increasing;
  const OdeSolution up = integrate_foliation(p);
  REQUIRE(down.samples.size() > 2);
  REQUIRE(up.samples.size() > 2);
  CHECK(down.samples.back().lambda < 0.8);
  CHECK(up.samples.back().lambda > 0.8);
}

TEST_CASE("solution-backed family satisfies the surface criterion") {
  const FoliationParams p = params(20.0, Sign::minus, 0.3, 1e-3, 2.0);
  const OdeSolution sol = integrate_foliation(p);
  const ModelSpace sp = space_from_solution(sol, p.sign);
  CHECK(verify_first_integral(sp) < 1e-6);
  const Interval in = sp.family.domain().interior(0.8);
  for (int i = 0; i < 5; ++i) {
    const double c = in.lo + (i + 0.5) * in.width() / 5;
    CHECK(norm(surface_bitension(sp, {c})) < 1e-6);
  }
}

TEST_CASE("constant lambda as a fake solution is flagged") {
  const ModelSpace sp{LambdaFamily::constant(0.5), Sign::plus, {}};
  const double v = verify_first_integral(sp, 20);
  CHECK(v == doctest::Approx(8 * 0.25 * 2.25));
}
