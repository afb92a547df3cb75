#pragma once

// Vector fields near a point of the model space. Every component function has
// the form A(z) + B(z)·x + C(z)·y, with A, B, C carried as jets at the anchor
// z, so x/y partials are exact and z partials come from the jets.

#include <array>

#include "kmu/jet.hpp"

namespace kmu {

class CoefficientField {
 public:
  CoefficientField() = default;
  CoefficientField(Jet3 a, Jet3 b, Jet3 c) : a_(a), b_(b), c_(c) {}

  static CoefficientField constant(double v) { return {Jet3::constant(v), {}, {}}; }
  static CoefficientField of_z(const Jet3& a) { return {a, {}, {}}; }

  [[nodiscard]] const Jet3& a() const { return a_; }
  [[nodiscard]] const Jet3& b() const { return b_; }
  [[nodiscard]] const Jet3& c() const { return c_; }

  /// Value at (x, y) and the anchor z.
  [[nodiscard]] double at(double x, double y) const {
    return a_.value() + b_.value() * x + c_.value() * y;
  }

  [[nodiscard]] bool is_zero() const { return a_.is_zero() && b_.is_zero() && c_.is_zero(); }

  [[nodiscard]] CoefficientField dx() const { return of_z(b_); }
  [[nodiscard]] CoefficientField dy() const { return of_z(c_); }
  [[nodiscard]] CoefficientField dz() const {
    return {a_.derivative(), b_.derivative(), c_.derivative()};
  }

  CoefficientField& operator+=(const CoefficientField& o) {
    a_ += o.a_;
    b_ += o.b_;
    c_ += o.c_;
    return *this;
  }
  CoefficientField& operator-=(const CoefficientField& o) {
    a_ -= o.a_;
    b_ -= o.b_;
    c_ -= o.c_;
    return *this;
  }
  CoefficientField& operator*=(double s) {
    a_ *= s;
    b_ *= s;
    c_ *= s;
    return *this;
  }

  friend CoefficientField operator+(CoefficientField l, const CoefficientField& r) { return l += r; }
  friend CoefficientField operator-(CoefficientField l, const CoefficientField& r) { return l -= r; }
  friend CoefficientField operator-(CoefficientField l) { return l *= -1.0; }
  friend CoefficientField operator*(CoefficientField l, double s) { return l *= s; }
  friend CoefficientField operator*(double s, CoefficientField l) { return l *= s; }

  /// Product; throws std::logic_error if the result has x², xy or y² terms.
  friend CoefficientField operator*(const CoefficientField& l, const CoefficientField& r);

 private:
  Jet3 a_{};
  Jet3 b_{};
  Jet3 c_{};
};

/// Coordinate components (∂x, ∂y, ∂z) of a vector field.
struct VectorField {
  std::array<CoefficientField, 3> comp;

  [[nodiscard]] std::array<double, 3> at(double x, double y) const {
    return {comp[0].at(x, y), comp[1].at(x, y), comp[2].at(x, y)};
  }
};

/// V(F) = Σ_m V^m ∂_m F.
CoefficientField directional(const VectorField& v, const CoefficientField& f);

/// [X, Y]^k = X(Y^k) − Y(X^k), with exact partials.
VectorField lie_bracket(const VectorField& x, const VectorField& y);

}  // namespace kmu
