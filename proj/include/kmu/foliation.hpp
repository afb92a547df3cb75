#pragma once

// Generating functions whose every leaf z = c is a proper biharmonic surface.
// They solve the first-order equation
//
//   (λ′)² = β λ⁴ + 16 λ⁴ ln λ ∓ 32 λ³ − 8 λ²,
//
// whose ∓ is opposite to the sign of the space. Differentiating it gives
// λ″ = ½ d(rhs)/dλ, and then λλ″ − 2(λ′)² − 8λ²(1 ± λ)² ≡ 0.

#include <string>
#include <vector>

#include "kmu/biharmonic.hpp"

namespace kmu {

enum class Branch { increasing, decreasing };
[[nodiscard]] std::string to_string(Branch b);

struct FoliationParams {
  double beta_const = 0.0;  // integration constant of the first integral
  Sign sign = Sign::plus;
  double lambda0 = 1.0;
  double z0 = 0.0;
  double step = 1e-3;
  double span = 1.0;
  Branch branch = Branch::decreasing;
};

enum class Termination { span_exhausted, rhs_nonpositive, lambda_nonpositive, non_finite };
[[nodiscard]] std::string to_string(Termination t);

struct OdeSolution {
  std::vector<TableSample> samples;  // ascending z, starting at z0
  Termination termination = Termination::span_exhausted;

  [[nodiscard]] bool empty() const { return samples.empty(); }
  /// Length in z actually covered.
  [[nodiscard]] double length() const;
};

/// β λ⁴ + 16 λ⁴ ln λ ∓ 32 λ³ − 8 λ². Throws DomainError for λ ≤ 0.
double foliation_rhs(double lambda, const FoliationParams& params);
/// d(rhs)/dλ.
double foliation_rhs_derivative(double lambda, const FoliationParams& params);

/// Classical RK4 with fixed step on the state (λ, λ′) with λ″ = ½ d(rhs)/dλ,
/// started on the chosen branch λ′ = ±√rhs(λ0). Stops at the end of the span,
/// when rhs(λ) ≤ 0 or λ′ changes sign (a turning point), or when λ ≤ 0.
OdeSolution integrate_foliation(const FoliationParams& params);

struct FoliationRow {
  double z = 0.0;
  double lambda = 0.0;
  double lambda_prime = 0.0;
  double rhs = 0.0;
  double f_surf = 0.0;  // λλ″ − 2(λ′)² − 8λ²(1 ± λ)² with λ″ = ½ d(rhs)/dλ
};

std::vector<FoliationRow> solution_rows(const OdeSolution& sol, const FoliationParams& params);

/// max |(λ′)² − rhs(λ)| over the samples.
double invariant_drift(const OdeSolution& sol, const FoliationParams& params);

/// The model space whose generating function is the tabulated solution.
ModelSpace space_from_solution(const OdeSolution& sol, Sign sign);

/// max |F_surf(c)| over the interior samples of a table-backed space (or over
/// `sample_count` evenly spaced interior points for closed-form families).
double verify_first_integral(const ModelSpace& space, std::size_t sample_count = 0);

}  // namespace kmu
