#pragma once

// Tension and bitension of the Legendre curves s ↦ (b, s, c) and of the
// anti-invariant leaves (x, y) ↦ (x, y, c), a first-principles bitension
// oracle for both, the closed-form criteria, and root search over c.
//
// Leaf frame: tangent {e1 = ξ, e2}, unit normal N = φe2 = ±e3. In the
// (ξ, X, φX) notation common for anti-invariant surfaces, X is e2 here.

#include <optional>
#include <string>
#include <vector>

#include "kmu/tensor.hpp"

namespace kmu {

struct LegendreCurve {
  double b = 0.0;
  double c = 0.0;
  double s = 0.0;  // arclength parameter of the evaluation point
  [[nodiscard]] Point point() const { return {b, s, c}; }
};

struct AntiInvariantSurface {
  double c = 0.0;
  double x = 0.0;  // evaluation point on the leaf
  double y = 0.0;
  [[nodiscard]] Point point() const { return {x, y, c}; }
};

struct CurveGeometry {
  FrameVector acceleration;  // ∇_T T, T = e2
  double geodesic_curvature = 0.0;
};

CurveGeometry curve_geometry(const ModelSpace& space, const LegendreCurve& curve);

/// τ₂ = ∇_T∇_T∇_T T + R(∇_T T, T)T along the curve, from the connection and
/// curvature only.
FrameVector curve_bitension(const ModelSpace& space, const LegendreCurve& curve);

/// λλ″ − 2(λ′)² − 8λ²(1 ± λ) at z = c.
double curve_criterion(const ModelSpace& space, double c);

struct SurfaceGeometry {
  double second_fundamental[2][2]{};  // g(B(E_a, E_b), N)
  double shape_operator[2][2]{};      // g(A_N E_a, E_b)
  FrameVector normal;                 // N = φe2
  FrameVector mean_curvature_vector;  // H = ½ trace B
  double mean_curvature = 0.0;        // g(H, N)
  double mean_curvature_sq = 0.0;     // |H|²
  double beta = 0.0;                  // 1 + g(h e2, e2)
  double gamma = 0.0;                 // g(h e2, φe2)
};

SurfaceGeometry surface_geometry(const ModelSpace& space, const AntiInvariantSurface& surf);

/// τ₂ = −Δ_f τ + Σ_a R(τ, E_a)E_a with τ = 2H, where
/// −Δ_f τ = Σ_a (∇_{E_a}∇_{E_a} τ − ∇_{∇_{E_a}E_a} τ) and the inner ∇ is the
/// tangential projection of the ambient connection.
FrameVector surface_bitension(const ModelSpace& space, const AntiInvariantSurface& surf);

/// λλ″ − 2(λ′)² − 8λ²(1 ± λ)² at z = c.
double surface_criterion(const ModelSpace& space, double c);

enum class SubmanifoldKind { curve, surface };
[[nodiscard]] std::string to_string(SubmanifoldKind k);

/// max(1, |λλ″|, (λ′)², |8λ²(1±λ)^p|) with p = 1 for curves and 2 for
/// surfaces; the natural size of the criterion's terms at c.
double criterion_scale(const ModelSpace& space, SubmanifoldKind which, double c);

struct CharacterizationResult {
  double residual = 0.0;       // min over radical signs; +inf if radicand < 0
  int radical_sign = 0;        // +1 or −1 achieving the minimum; 0 if none
  bool radicand_negative = false;
  double radicand = 0.0;       // S/6 − 4|H|²/3
  double scalar_curvature = 0.0;
  double beta = 0.0;
  /// ‖h(φH) − (β − 1)φH‖.
  double h_phi_h_residual = 0.0;
};

/// Evaluates ‖h(φH) − (s√(S/6 − 4|H|²/3) − 1)φH‖ for s = ±1 on the leaf z = c,
/// with S from first-principles curvature.
CharacterizationResult characterization_residual(const ModelSpace& space, double c);

struct RootRecord {
  Interval bracket;
  double root = 0.0;
  double criterion_residual = 0.0;
  double oracle_bitension_norm = 0.0;
  double lambda = 0.0;
  double lambda_prime = 0.0;
};

/// Scans grid_n + 1 equally spaced samples of [interval.lo, interval.hi]
/// (which must lie inside the family domain), bisects every sign change until
/// |F| < tol or the bracket is narrower than 1e-13, and drops roots with
/// |λ′| < 1e-10. Each record carries the bitension oracle norm at the root.
std::vector<RootRecord> find_roots(const ModelSpace& space, SubmanifoldKind which,
                                   Interval interval, int grid_n = 10000, double tol = 1e-12);

enum class Verdict { proper_biharmonic, minimal_or_geodesic, not_biharmonic };
[[nodiscard]] std::string to_string(Verdict v);

struct BiharmonicityReport {
  SubmanifoldKind kind = SubmanifoldKind::surface;
  double c = 0.0;
  double criterion_value = 0.0;
  double lambda_prime = 0.0;
  double bitension_norm = 0.0;
  /// Geodesic curvature for curves, mean curvature |H| for surfaces.
  double curvature = 0.0;
  Verdict verdict = Verdict::not_biharmonic;
  /// Whether the closed-form criterion (|F| < 1e-6·scale) agrees with the oracle.
  bool criterion_agrees = true;
};

/// Threshold on |λ′| below which a curve is a geodesic / a leaf is minimal.
inline constexpr double kDegenerateSlope = 1e-10;

BiharmonicityReport biharmonicity_report(const ModelSpace& space, SubmanifoldKind which, double c,
                                         double tol = 1e-7);

}  // namespace kmu
