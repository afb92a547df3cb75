#pragma once

// Levi-Civita connection, curvature, the h-operator and the identity audit
// for the model spaces, computed from the frame brackets alone.
//
// Curvature convention: R(X, Y)Z = ∇_X∇_Y Z − ∇_Y∇_X Z − ∇_[X,Y] Z.
// Scalar curvature: S = Σ_{i≠j} g(R(e_i, e_j)e_j, e_i).
// Laplacian: Δλ = −Σ_i {e_i(e_i λ) − (∇_{e_i}e_i) λ} (non-negative spectrum).

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "kmu/manifold.hpp"

namespace kmu {

/// gamma[i][j][k] = g(∇_{e_i} e_j, e_k) at a point (0-based indices).
struct ConnectionTable {
  double gamma[3][3][3]{};

  /// ∇_{e_i} e_j in frame components.
  [[nodiscard]] FrameVector nabla(std::size_t i, std::size_t j) const {
    return {{gamma[i][j][0], gamma[i][j][1], gamma[i][j][2]}};
  }
};

/// R[i][j][k][l] = g(R(e_i, e_j)e_k, e_l).
using CurvatureTensor = std::array<std::array<std::array<std::array<double, 3>, 3>, 3>, 3>;

/// Connection data near one point, built once and reused for covariant
/// derivatives of fields anchored at that point.
class LocalGeometry {
 public:
  LocalGeometry(const ModelSpace& space, const Point& p);

  [[nodiscard]] const ModelSpace& space() const { return space_; }
  [[nodiscard]] const Point& point() const { return p_; }
  [[nodiscard]] const Jet3& lambda() const { return lambda_; }

  /// c[i][j][k] = g([e_i, e_j], e_k) as fields.
  [[nodiscard]] const CoefficientField& structure(std::size_t i, std::size_t j, std::size_t k) const {
    return c_[i][j][k];
  }
  [[nodiscard]] const CoefficientField& christoffel(std::size_t i, std::size_t j,
                                                   std::size_t k) const {
    return gamma_[i][j][k];
  }

  [[nodiscard]] ConnectionTable table() const;

  /// ∇_X Y as a field.
  [[nodiscard]] FrameField covariant(const FrameField& x, const FrameField& y) const;
  [[nodiscard]] FrameField bracket(const FrameField& x, const FrameField& y) const;
  [[nodiscard]] CoefficientField derivative(const FrameField& x, const CoefficientField& f) const;

  /// R(X, Y)Z for fields; evaluate with .at(point()).
  [[nodiscard]] FrameField riemann(const FrameField& x, const FrameField& y,
                                   const FrameField& z) const;
  [[nodiscard]] FrameVector riemann(const FrameVector& x, const FrameVector& y,
                                    const FrameVector& z) const;
  [[nodiscard]] CurvatureTensor curvature_tensor() const;

  /// hX = ½([ξ, φX] − φ[ξ, X]).
  [[nodiscard]] FrameField h(const FrameField& x) const;

 private:
  ModelSpace space_;
  Point p_;
  FrameChart chart_;
  Jet3 lambda_;
  CoefficientField c_[3][3][3];
  CoefficientField gamma_[3][3][3];
};

/// Coordinate components of [X, Y] at p for coordinate-component fields.
std::array<double, 3> lie_bracket(const ModelSpace& space, const VectorField& x,
                                  const VectorField& y, const Point& p);

ConnectionTable connection_coeffs(const ModelSpace& space, const Point& p);

/// ∇_X Y at p for frame-component fields X, Y.
FrameVector covariant_derivative(const ModelSpace& space, const FrameField& x, const FrameField& y,
                                 const Point& p);

FrameVector riemann(const ModelSpace& space, const FrameVector& x, const FrameVector& y,
                    const FrameVector& z, const Point& p);

FrameVector h_operator(const ModelSpace& space, const FrameVector& x, const Point& p);

struct KappaMu {
  double kappa = 0.0;
  /// Empty when h vanishes and μ is not determined by the curvature.
  std::optional<double> mu;
  /// √(sum of squared defects) of R(X,Y)ξ = (κI + μh)(η(Y)X − η(X)Y) over frame pairs.
  double residual = 0.0;
};

KappaMu extract_kappa_mu(const ModelSpace& space, const Point& p);
KappaMu extract_kappa_mu(const LocalGeometry& geo);
/// Reuses a curvature tensor already computed from `geo`.
KappaMu extract_kappa_mu(const LocalGeometry& geo, const CurvatureTensor& r);

double scalar_curvature(const ModelSpace& space, const Point& p);
/// Frame double trace of a precomputed curvature tensor.
double scalar_curvature(const CurvatureTensor& r);

struct LapGrad {
  double laplacian = 0.0;
  double grad_norm_sq = 0.0;
};

LapGrad lap_grad_lambda(const ModelSpace& space, const Point& p);

/// κ = 1 − λ², μ = 2(1 ± λ) from the family directly.
double kappa_closed_form(const ModelSpace& space, double z);
double mu_closed_form(const ModelSpace& space, double z);

enum class AuditStatus { pass, flagged };

struct AuditRecord {
  std::string name;
  std::size_t point_index = 0;
  double z = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_residual = 0.0;
  double tolerance = 0.0;
  AuditStatus status = AuditStatus::pass;
};

struct AuditReport {
  std::vector<AuditRecord> records;  // sorted by (name, point_index)

  [[nodiscard]] std::size_t pass_count() const;
  [[nodiscard]] std::size_t flag_count() const;
  /// Largest residual among records named `name`; 0 if none.
  [[nodiscard]] double max_residual(const std::string& name) const;
  [[nodiscard]] bool all_pass(const std::string& name) const;
};

/// Identity names produced by audit_identities.
namespace identity {
inline constexpr const char* kSectionalPhiPlane = "sectional_curvature_phi_plane";
inline constexpr const char* kScalarClosedForm = "scalar_curvature_closed_form";
inline constexpr const char* kScalarZFormThreeQuarter = "scalar_curvature_z_form_3_4";
inline constexpr const char* kScalarZFormThreeHalf = "scalar_curvature_z_form_3_2";
inline constexpr const char* kGradCoefficient = "scalar_curvature_grad_coefficient";
}  // namespace identity

/// Compares first-principles curvature with the closed forms:
///  - g(R(φe2, e2)e2, φe2) against −Δλ/2λ − ‖grad λ‖²/2λ² − κ − μ;
///  - S against −Δλ/λ − ‖grad λ‖²/λ² + 2(κ − μ);
///  - S against λ″/λ − c (λ′)²/λ² − 2(1 ± λ)² for c = 3/4 and c = 3/2;
///  - the coefficient c recovered from S, against 3/2 (only where (λ′/λ)² > 1e-6).
AuditReport audit_identities(const ModelSpace& space, const std::vector<Point>& points, double tol);

struct IntegrabilityResult {
  /// ‖[ξ, e2] − (1 + ε − μ/2)φe2‖ with ε = g(he2, e2) = ±λ.
  double xi_x_residual = 0.0;
  /// ‖[ξ, φe2] − (ε − 1 + μ/2)e2‖.
  double xi_phix_residual = 0.0;
  double phix_coefficient = 0.0;  // ε − 1 + μ/2
  double bracket_e3_component = 0.0;  // g([ξ, e2], e3)
  bool span_closed = false;           // span{ξ, e2} closed under the bracket
};

IntegrabilityResult integrability_check(const ModelSpace& space, const Point& p);

}  // namespace kmu
