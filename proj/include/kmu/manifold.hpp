#pragma once

// Model contact metric 3-manifolds on ℝ² × I with κ = 1 − λ² and μ = 2(1 ± λ).
//
// Frame:  e1 = ∂x,  e2 = ∂y,
//         e3 = (±2y + f(z)) ∂x + (2λx − (λ′/2λ) y + h(z)) ∂y + ∂z,
// orthonormal by definition. Contact structure: ξ = e1, η = e1*,
// φe1 = 0, φe2 = ±e3, φe3 = ∓e2. Every ± follows the single Sign of the space.
//
// dη uses the convention dη(X, Y) = ½(X η(Y) − Y η(X) − η([X, Y])), with the
// factor ½. Contact-metric compatibility is then dη(X, Y) = g(X, φY).

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "kmu/family.hpp"
#include "kmu/fields.hpp"

namespace kmu {

enum class Sign { plus, minus };

/// +1 for Sign::plus, −1 for Sign::minus.
[[nodiscard]] constexpr double sigma(Sign s) { return s == Sign::plus ? 1.0 : -1.0; }
[[nodiscard]] std::string to_string(Sign s);

/// An arbitrary smooth function of z used as a frame gauge.
class GaugeFunction {
 public:
  struct Zero {};
  struct Poly {
    std::vector<double> coeffs;  // c0 + c1 z + c2 z² + ...
  };
  struct Sine {};

  GaugeFunction() = default;
  static GaugeFunction zero() { return {}; }
  static GaugeFunction poly(std::vector<double> coeffs);
  static GaugeFunction sine();

  [[nodiscard]] Jet3 eval(double z) const;
  [[nodiscard]] bool is_zero() const { return std::holds_alternative<Zero>(kind_); }
  [[nodiscard]] const std::variant<Zero, Poly, Sine>& kind() const { return kind_; }
  [[nodiscard]] std::string describe() const;

 private:
  explicit GaugeFunction(std::variant<Zero, Poly, Sine> k) : kind_(std::move(k)) {}
  std::variant<Zero, Poly, Sine> kind_{Zero{}};
};

struct GaugeFunctions {
  GaugeFunction f;
  GaugeFunction h;
};

struct ModelSpace {
  LambdaFamily family;
  Sign sign = Sign::plus;
  GaugeFunctions gauges{};

  [[nodiscard]] double sgn() const { return sigma(sign); }
};

struct Point {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// Components in the orthonormal frame (e1, e2, e3).
struct FrameVector {
  std::array<double, 3> u{0.0, 0.0, 0.0};

  static FrameVector basis(std::size_t i) {
    FrameVector v;
    v.u[i] = 1.0;
    return v;
  }
  double& operator[](std::size_t i) { return u[i]; }
  double operator[](std::size_t i) const { return u[i]; }

  FrameVector& operator+=(const FrameVector& o) {
    for (std::size_t i = 0; i < 3; ++i) u[i] += o.u[i];
    return *this;
  }
  FrameVector& operator-=(const FrameVector& o) {
    for (std::size_t i = 0; i < 3; ++i) u[i] -= o.u[i];
    return *this;
  }
  FrameVector& operator*=(double s) {
    for (auto& v : u) v *= s;
    return *this;
  }
  friend FrameVector operator+(FrameVector a, const FrameVector& b) { return a += b; }
  friend FrameVector operator-(FrameVector a, const FrameVector& b) { return a -= b; }
  friend FrameVector operator*(FrameVector a, double s) { return a *= s; }
  friend FrameVector operator*(double s, FrameVector a) { return a *= s; }
  friend FrameVector operator-(FrameVector a) { return a *= -1.0; }
};

/// g(X, Y): the frame is orthonormal.
[[nodiscard]] double dot(const FrameVector& a, const FrameVector& b);
[[nodiscard]] double norm(const FrameVector& a);
/// Largest absolute component.
[[nodiscard]] double max_abs(const FrameVector& a);

/// A vector field given by its frame components.
struct FrameField {
  std::array<CoefficientField, 3> comp;

  static FrameField constant(const FrameVector& v);
  [[nodiscard]] FrameVector at(const Point& p) const;

  FrameField& operator+=(const FrameField& o) {
    for (std::size_t i = 0; i < 3; ++i) comp[i] += o.comp[i];
    return *this;
  }
  FrameField& operator-=(const FrameField& o) {
    for (std::size_t i = 0; i < 3; ++i) comp[i] -= o.comp[i];
    return *this;
  }
  FrameField& operator*=(double s) {
    for (auto& c : comp) c *= s;
    return *this;
  }
  friend FrameField operator+(FrameField a, const FrameField& b) { return a += b; }
  friend FrameField operator-(FrameField a, const FrameField& b) { return a -= b; }
  friend FrameField operator*(FrameField a, double s) { return a *= s; }
  friend FrameField operator*(double s, FrameField a) { return a *= s; }
};

using Matrix3 = std::array<std::array<double, 3>, 3>;

/// The ∂x and ∂y coefficients of e3 near a point, e3 = P∂x + Q∂y + ∂z.
/// Conversions and brackets go through it; build once per point and reuse.
struct FrameChart {
  CoefficientField p;
  CoefficientField q;

  FrameChart(const ModelSpace& space, const Point& pt);

  [[nodiscard]] FrameField to_frame(const VectorField& v) const;
  [[nodiscard]] VectorField to_coordinates(const FrameField& v) const;
  [[nodiscard]] FrameField bracket(const FrameField& x, const FrameField& y) const;
  [[nodiscard]] CoefficientField derivative(const FrameField& x, const CoefficientField& f) const;
};

/// Coordinate-component fields of e1, e2, e3 near p (jets anchored at p.z).
std::array<VectorField, 3> frame_fields(const ModelSpace& space, const Point& p);

/// Row i holds the (∂x, ∂y, ∂z) components of e_{i+1} at p.
Matrix3 frame_at(const ModelSpace& space, const Point& p);

/// Frame components of a coordinate vector at p.
FrameVector coordinate_to_frame(const ModelSpace& space, const Point& p,
                                const std::array<double, 3>& coords);

FrameField to_frame(const ModelSpace& space, const Point& p, const VectorField& v);
VectorField to_coordinates(const ModelSpace& space, const Point& p, const FrameField& v);

/// [X, Y] of frame-component fields, computed through coordinates.
FrameField frame_bracket(const ModelSpace& space, const Point& p, const FrameField& x,
                         const FrameField& y);

/// X(F) for a frame-component field X.
CoefficientField derivative_along(const ModelSpace& space, const Point& p, const FrameField& x,
                                  const CoefficientField& f);

struct ContactStructure {
  FrameVector xi;
  Matrix3 phi{};  // phi[k][j]: component k of φ(e_{j+1})

  [[nodiscard]] double eta(const FrameVector& v) const { return v[0]; }
  [[nodiscard]] FrameVector apply_phi(const FrameVector& v) const;
};

ContactStructure contact_at(const ModelSpace& space, const Point& p);

/// φ applied to a frame-component field.
FrameField apply_phi(const ModelSpace& space, const FrameField& v);

struct StructureResiduals {
  double eta_xi = 0.0;
  double phi_square = 0.0;
  double compatibility = 0.0;
  double contact_condition = 0.0;
  /// max over frame pairs of ‖[φ,φ](X,Y) + 2dη(X,Y)ξ‖; vanishes iff Sasakian.
  double sasakian_defect = 0.0;

  [[nodiscard]] double contact_metric_max() const;
  [[nodiscard]] bool is_contact_metric(double tol) const { return contact_metric_max() < tol; }
};

/// dη(X, Y) per the ½ convention above, from brackets and derivatives.
double d_eta(const ModelSpace& space, const Point& p, const FrameField& x, const FrameField& y);

StructureResiduals verify_structure(const ModelSpace& space, const Point& p);

/// Throws DomainError unless p.z lies in the family domain.
void require_point(const ModelSpace& space, const Point& p);

}  // namespace kmu
