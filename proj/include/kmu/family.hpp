#pragma once

// Generating functions λ(z) for the model spaces, evaluated as exact jets.

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "kmu/jet.hpp"

namespace kmu {

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Open interval (lo, hi).
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  [[nodiscard]] bool contains(double z) const { return z > lo && z < hi; }
  [[nodiscard]] double width() const { return hi - lo; }
  /// The middle `fraction` of the interval, e.g. 0.8 drops 10% at each end.
  [[nodiscard]] Interval interior(double fraction) const {
    const double pad = 0.5 * (1.0 - fraction) * width();
    return {lo + pad, hi - pad};
  }
  [[nodiscard]] std::string describe() const;
};

/// λ(z) = z^{-n}, z > 0.
struct PowerKind {
  double n = 0.5;
};

/// λ(z) = √(1 − a z − b).
struct SqrtLinearKind {
  double a = 1.0;
  double b = 0.0;
};

/// λ(z) = v. Degenerate: only used for geodesic/minimal and negative tests.
struct ConstantKind {
  double value = 1.0;
};

struct TableSample {
  double z = 0.0;
  double lambda = 0.0;
  double lambda_prime = 0.0;
};

/// λ sampled on an ascending z-grid together with λ′ (typically an ODE
/// trajectory). Evaluated by local quintic Hermite interpolation.
struct TableKind {
  std::vector<TableSample> samples;
};

using FamilyKind = std::variant<PowerKind, SqrtLinearKind, ConstantKind, TableKind>;

class LambdaFamily {
 public:
  /// Validates positivity of λ on the closure-interior of `domain`.
  LambdaFamily(FamilyKind kind, Interval domain);

  static LambdaFamily power(double n);
  static LambdaFamily power(double n, Interval domain);
  static LambdaFamily sqrt_linear(double a, double b);
  static LambdaFamily sqrt_linear(double a, double b, Interval domain);
  static LambdaFamily constant(double v);
  static LambdaFamily constant(double v, Interval domain);
  static LambdaFamily table(std::vector<TableSample> samples);

  [[nodiscard]] const FamilyKind& kind() const { return kind_; }
  [[nodiscard]] const Interval& domain() const { return domain_; }
  [[nodiscard]] bool is_constant() const { return std::holds_alternative<ConstantKind>(kind_); }
  [[nodiscard]] bool is_table() const { return std::holds_alternative<TableKind>(kind_); }
  [[nodiscard]] std::string describe() const;

 private:
  FamilyKind kind_;
  Interval domain_;
};

/// λ, λ′, λ″, λ‴ at z. Throws DomainError outside the family's domain.
Jet3 eval_family(const LambdaFamily& family, double z);

struct TableJet {
  Jet3 jet;
  /// Spread between the centred stencil and a neighbouring stencil, per
  /// derivative order; an estimate of the interpolation error.
  std::array<double, 4> error_estimate{};
};

/// Table evaluation with its error estimate. Throws std::invalid_argument for
/// non-table families.
TableJet eval_table(const LambdaFamily& family, double z);

/// Worst relative discrepancy between the analytic jet orders 1..3 and central
/// finite differences of λ with the given step. Relative errors are taken
/// against max(1, |derivative|).
double fd_crosscheck(const LambdaFamily& family, double z, double step);

}  // namespace kmu
