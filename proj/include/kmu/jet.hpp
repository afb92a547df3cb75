#pragma once

// Order-3 univariate jets: a value bundled with its first three derivatives
// with respect to the coordinate z, propagated exactly through arithmetic.

#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace kmu {

class ArithmeticError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class Jet3 {
 public:
  static constexpr int kMaxOrder = 3;

  constexpr Jet3() = default;
  constexpr Jet3(double v0, double v1, double v2, double v3)
      : d_{v0, v1, v2, v3} {}

  /// A constant: all derivatives vanish exactly.
  static constexpr Jet3 constant(double v) { return {v, 0.0, 0.0, 0.0}; }
  /// The coordinate function itself, z ↦ z.
  static constexpr Jet3 variable(double z) { return {z, 1.0, 0.0, 0.0}; }

  /// Highest derivative order that carries information. Differentiating a jet
  /// lowers it by one; reading past it throws.
  [[nodiscard]] constexpr int order() const { return order_; }

  [[nodiscard]] double operator[](int k) const {
    if (k < 0 || k > order_) {
      throw std::out_of_range("Jet3: derivative order " + std::to_string(k) +
                              " not available (valid up to " +
                              std::to_string(order_) + ")");
    }
    return d_[k];
  }
  [[nodiscard]] constexpr double value() const { return d_[0]; }
  [[nodiscard]] double d1() const { return (*this)[1]; }
  [[nodiscard]] double d2() const { return (*this)[2]; }
  [[nodiscard]] double d3() const { return (*this)[3]; }

  /// Raw storage; entries above order() are zero.
  [[nodiscard]] constexpr const std::array<double, 4>& raw() const { return d_; }

  /// The jet of d/dz of this function, known to one order less.
  [[nodiscard]] Jet3 derivative() const {
    if (order_ == 0) throw std::out_of_range("Jet3: cannot differentiate an order-0 jet");
    Jet3 r(d_[1], d_[2], d_[3], 0.0);
    r.order_ = order_ - 1;
    r.clear_above_order();
    return r;
  }

  /// Compose a scalar function φ with this jet given φ and its first three
  /// derivatives at value() (Faà di Bruno to third order).
  [[nodiscard]] Jet3 compose(double f0, double f1, double f2, double f3) const {
    const double a1 = d_[1], a2 = d_[2], a3 = d_[3];
    Jet3 r(f0, f1 * a1, f2 * a1 * a1 + f1 * a2,
           f3 * a1 * a1 * a1 + 3.0 * f2 * a1 * a2 + f1 * a3);
    r.order_ = order_;
    r.clear_above_order();
    return r;
  }

  [[nodiscard]] bool is_zero() const {
    for (int k = 0; k <= order_; ++k)
      if (d_[k] != 0.0) return false;
    return true;
  }

  [[nodiscard]] std::string describe() const {
    std::ostringstream os;
    os.precision(17);
    os << "(" << d_[0];
    for (int k = 1; k <= order_; ++k) os << ", " << d_[k];
    os << ")";
    return os.str();
  }

  Jet3& operator+=(const Jet3& o) {
    for (int k = 0; k < 4; ++k) d_[k] += o.d_[k];
    merge_order(o);
    return *this;
  }
  Jet3& operator-=(const Jet3& o) {
    for (int k = 0; k < 4; ++k) d_[k] -= o.d_[k];
    merge_order(o);
    return *this;
  }
  Jet3& operator*=(const Jet3& o) {
    const auto& a = d_;
    const auto& b = o.d_;
    std::array<double, 4> r{
        a[0] * b[0],
        a[0] * b[1] + a[1] * b[0],
        a[0] * b[2] + 2.0 * a[1] * b[1] + a[2] * b[0],
        a[0] * b[3] + 3.0 * a[1] * b[2] + 3.0 * a[2] * b[1] + a[3] * b[0]};
    d_ = r;
    merge_order(o);
    return *this;
  }
  Jet3& operator/=(const Jet3& o);
  Jet3& operator*=(double s) {
    for (auto& v : d_) v *= s;
    return *this;
  }
  Jet3& operator+=(double s) {
    d_[0] += s;
    return *this;
  }

  friend Jet3 operator+(Jet3 a, const Jet3& b) { return a += b; }
  friend Jet3 operator-(Jet3 a, const Jet3& b) { return a -= b; }
  friend Jet3 operator*(Jet3 a, const Jet3& b) { return a *= b; }
  friend Jet3 operator/(Jet3 a, const Jet3& b) { return a /= b; }
  friend Jet3 operator*(Jet3 a, double s) { return a *= s; }
  friend Jet3 operator*(double s, Jet3 a) { return a *= s; }
  friend Jet3 operator/(Jet3 a, double s) { return a *= (1.0 / s); }
  friend Jet3 operator+(Jet3 a, double s) { return a += s; }
  friend Jet3 operator+(double s, Jet3 a) { return a += s; }
  friend Jet3 operator-(Jet3 a, double s) { return a += -s; }
  friend Jet3 operator-(double s, const Jet3& a) { return (-a) + s; }
  friend Jet3 operator-(Jet3 a) { return a *= -1.0; }

 private:
  void merge_order(const Jet3& o) {
    if (o.order_ < order_) {
      order_ = o.order_;
      clear_above_order();
    }
  }
  void clear_above_order() {
    for (int k = order_ + 1; k < 4; ++k) d_[k] = 0.0;
  }

  std::array<double, 4> d_{0.0, 0.0, 0.0, 0.0};
  int order_ = kMaxOrder;
};

inline Jet3 recip(const Jet3& a) {
  const double v = a.value();
  if (v == 0.0) throw ArithmeticError("Jet3 recip: zero value in operand " + a.describe());
  const double r = 1.0 / v;
  return a.compose(r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r);
}

inline Jet3& Jet3::operator/=(const Jet3& o) {
  if (o.value() == 0.0)
    throw ArithmeticError("Jet3 div: zero-valued divisor " + o.describe() +
                          " (dividend " + describe() + ")");
  return *this *= recip(o);
}

inline Jet3 ln(const Jet3& a) {
  const double v = a.value();
  if (!(v > 0.0)) throw ArithmeticError("Jet3 ln: non-positive operand " + a.describe());
  const double r = 1.0 / v;
  return a.compose(std::log(v), r, -r * r, 2.0 * r * r * r);
}

/// a^p for real p. Integer p accepts any sign of a (p < 0 excludes zero);
/// fractional p requires a positive operand.
inline Jet3 pow(const Jet3& a, double p) {
  const double v = a.value();
  const bool integral = std::floor(p) == p;
  if (!integral && !(v > 0.0))
    throw ArithmeticError("Jet3 pow: fractional exponent on non-positive operand " + a.describe());
  if (p < 0.0 && v == 0.0)
    throw ArithmeticError("Jet3 pow: negative exponent on zero operand " + a.describe());
  auto term = [&](double c, double e) {
    if (c == 0.0) return 0.0;
    return c * std::pow(v, e);
  };
  return a.compose(std::pow(v, p), term(p, p - 1.0), term(p * (p - 1.0), p - 2.0),
                   term(p * (p - 1.0) * (p - 2.0), p - 3.0));
}

inline Jet3 sqrt(const Jet3& a) {
  const double v = a.value();
  if (!(v > 0.0)) throw ArithmeticError("Jet3 sqrt: non-positive operand " + a.describe());
  const double s = std::sqrt(v);
  return a.compose(s, 0.5 / s, -0.25 / (s * v), 0.375 / (s * v * v));
}

inline Jet3 sin(const Jet3& a) {
  const double s = std::sin(a.value()), c = std::cos(a.value());
  return a.compose(s, c, -s, -c);
}

inline Jet3 cos(const Jet3& a) {
  const double s = std::sin(a.value()), c = std::cos(a.value());
  return a.compose(c, -s, -c, s);
}

}  // namespace kmu
