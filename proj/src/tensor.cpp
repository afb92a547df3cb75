#include "kmu/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace kmu {

namespace {

FrameField basis_field(std::size_t i) { return FrameField::constant(FrameVector::basis(i)); }

}  // namespace

LocalGeometry::LocalGeometry(const ModelSpace& space, const Point& p)
    : space_(space), p_(p), chart_(space, p), lambda_(eval_family(space.family, p.z)) {
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      const FrameField b = chart_.bracket(basis_field(i), basis_field(j));
      for (std::size_t k = 0; k < 3; ++k) {
        c_[i][j][k] = b.comp[k];
        c_[j][i][k] = -b.comp[k];
      }
    }
  }
  // Koszul formula for an orthonormal frame.
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k)
        gamma_[i][j][k] = 0.5 * (c_[i][j][k] - c_[j][k][i] + c_[k][i][j]);
}

ConnectionTable LocalGeometry::table() const {
  ConnectionTable t;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) t.gamma[i][j][k] = gamma_[i][j][k].at(p_.x, p_.y);
  return t;
}

CoefficientField LocalGeometry::derivative(const FrameField& x, const CoefficientField& f) const {
  return chart_.derivative(x, f);
}

FrameField LocalGeometry::bracket(const FrameField& x, const FrameField& y) const {
  return chart_.bracket(x, y);
}

FrameField LocalGeometry::covariant(const FrameField& x, const FrameField& y) const {
  FrameField out;
  for (std::size_t k = 0; k < 3; ++k) out.comp[k] = derivative(x, y.comp[k]);
  // Frame fields are mostly sparse; skipping zero products is exact.
  for (std::size_t i = 0; i < 3; ++i) {
    if (x.comp[i].is_zero()) continue;
    for (std::size_t j = 0; j < 3; ++j) {
      if (y.comp[j].is_zero()) continue;
      const CoefficientField xy = x.comp[i] * y.comp[j];
      for (std::size_t k = 0; k < 3; ++k) out.comp[k] += xy * gamma_[i][j][k];
    }
  }
  return out;
}

FrameField LocalGeometry::riemann(const FrameField& x, const FrameField& y,
                                  const FrameField& z) const {
  return covariant(x, covariant(y, z)) - covariant(y, covariant(x, z)) -
         covariant(bracket(x, y), z);
}

FrameVector LocalGeometry::riemann(const FrameVector& x, const FrameVector& y,
                                   const FrameVector& z) const {
  return riemann(FrameField::constant(x), FrameField::constant(y), FrameField::constant(z)).at(p_);
}

CurvatureTensor LocalGeometry::curvature_tensor() const {
  // Same expansion as riemann(), with ∇_{e_j}e_k and [e_i, e_j] shared.
  FrameField inner[3][3];
  FrameField brackets[3][3];
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      inner[i][j] = covariant(basis_field(i), basis_field(j));
      brackets[i][j] = bracket(basis_field(i), basis_field(j));
    }
  }
  CurvatureTensor r{};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      for (std::size_t k = 0; k < 3; ++k) {
        const FrameVector v = (covariant(basis_field(i), inner[j][k]) -
                               covariant(basis_field(j), inner[i][k]) -
                               covariant(brackets[i][j], basis_field(k)))
                                  .at(p_);
        for (std::size_t l = 0; l < 3; ++l) r[i][j][k][l] = v[l];
      }
    }
  }
  return r;
}

FrameField LocalGeometry::h(const FrameField& x) const {
  const FrameField xi = basis_field(0);
  return 0.5 * (bracket(xi, apply_phi(space_, x)) - apply_phi(space_, bracket(xi, x)));
}

std::array<double, 3> lie_bracket(const ModelSpace& space, const VectorField& x,
                                  const VectorField& y, const Point& p) {
  require_point(space, p);
  return lie_bracket(x, y).at(p.x, p.y);
}

ConnectionTable connection_coeffs(const ModelSpace& space, const Point& p) {
  return LocalGeometry(space, p).table();
}

FrameVector covariant_derivative(const ModelSpace& space, const FrameField& x, const FrameField& y,
                                 const Point& p) {
  return LocalGeometry(space, p).covariant(x, y).at(p);
}

FrameVector riemann(const ModelSpace& space, const FrameVector& x, const FrameVector& y,
                    const FrameVector& z, const Point& p) {
  return LocalGeometry(space, p).riemann(x, y, z);
}

FrameVector h_operator(const ModelSpace& space, const FrameVector& x, const Point& p) {
  return LocalGeometry(space, p).h(FrameField::constant(x)).at(p);
}

KappaMu extract_kappa_mu(const ModelSpace& space, const Point& p) {
  return extract_kappa_mu(LocalGeometry(space, p));
}

KappaMu extract_kappa_mu(const LocalGeometry& geo) {
  return extract_kappa_mu(geo, geo.curvature_tensor());
}

KappaMu extract_kappa_mu(const LocalGeometry& geo, const CurvatureTensor& r) {
  const Point& p = geo.point();
  // Normal equations for min ‖R(e_i,e_j)ξ − κA − μhA‖², A = η(e_j)e_i − η(e_i)e_j.
  double aa = 0.0, ah = 0.0, hh = 0.0, ar = 0.0, hr = 0.0;
  std::vector<std::array<FrameVector, 3>> rows;  // (lhs, A, hA)
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      const FrameVector ei = FrameVector::basis(i), ej = FrameVector::basis(j);
      const FrameVector a = ej[0] * ei - ei[0] * ej;
      const FrameVector ha = geo.h(FrameField::constant(a)).at(p);
      const FrameVector lhs{{r[i][j][0][0], r[i][j][0][1], r[i][j][0][2]}};
      aa += dot(a, a);
      ah += dot(a, ha);
      hh += dot(ha, ha);
      ar += dot(a, lhs);
      hr += dot(ha, lhs);
      rows.push_back({lhs, a, ha});
    }
  }
  KappaMu out;
  const double det = aa * hh - ah * ah;
  if (hh <= 1e-24 * aa || std::abs(det) <= 1e-14 * aa * hh) {
    out.kappa = ar / aa;
  } else {
    out.kappa = (ar * hh - hr * ah) / det;
    out.mu = (aa * hr - ah * ar) / det;
  }
  const double mu = out.mu.value_or(0.0);
  double sq = 0.0;
  for (const auto& row : rows) {
    const FrameVector d = row[0] - out.kappa * row[1] - mu * row[2];
    sq += dot(d, d);
  }
  out.residual = std::sqrt(sq);
  return out;
}

double scalar_curvature(const ModelSpace& space, const Point& p) {
  return scalar_curvature(LocalGeometry(space, p).curvature_tensor());
}

double scalar_curvature(const CurvatureTensor& r) {
  double s = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (i != j) s += r[i][j][j][i];
  return s;
}

LapGrad lap_grad_lambda(const ModelSpace& space, const Point& p) {
  const LocalGeometry geo(space, p);
  const CoefficientField lam = CoefficientField::of_z(geo.lambda());
  LapGrad out;
  CoefficientField lap;
  for (std::size_t i = 0; i < 3; ++i) {
    const FrameField ei = basis_field(i);
    const CoefficientField ei_lam = geo.derivative(ei, lam);
    const FrameField nabla_ii = geo.covariant(ei, ei);
    lap -= geo.derivative(ei, ei_lam) - geo.derivative(nabla_ii, lam);
    const double g = ei_lam.at(p.x, p.y);
    out.grad_norm_sq += g * g;
  }
  out.laplacian = lap.at(p.x, p.y);
  return out;
}

double kappa_closed_form(const ModelSpace& space, double z) {
  const double l = eval_family(space.family, z).value();
  return 1.0 - l * l;
}

double mu_closed_form(const ModelSpace& space, double z) {
  const double l = eval_family(space.family, z).value();
  return 2.0 * (1.0 + space.sgn() * l);
}

std::size_t AuditReport::pass_count() const {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const auto& r) {
    return r.status == AuditStatus::pass;
  }));
}

std::size_t AuditReport::flag_count() const { return records.size() - pass_count(); }

double AuditReport::max_residual(const std::string& name) const {
  double m = 0.0;
  for (const auto& r : records)
    if (r.name == name) m = std::max(m, r.abs_residual);
  return m;
}

bool AuditReport::all_pass(const std::string& name) const {
  return std::all_of(records.begin(), records.end(), [&](const auto& r) {
    return r.name != name || r.status == AuditStatus::pass;
  });
}

AuditReport audit_identities(const ModelSpace& space, const std::vector<Point>& points,
                             double tol) {
  AuditReport report;
  auto add = [&](const char* name, std::size_t idx, double z, double lhs, double rhs) {
    AuditRecord rec;
    rec.name = name;
    rec.point_index = idx;
    rec.z = z;
    rec.lhs = lhs;
    rec.rhs = rhs;
    rec.abs_residual = std::abs(lhs - rhs);
    rec.tolerance = tol;
    rec.status = rec.abs_residual < tol ? AuditStatus::pass : AuditStatus::flagged;
    report.records.push_back(std::move(rec));
  };

  for (std::size_t idx = 0; idx < points.size(); ++idx) {
    const Point& p = points[idx];
    const LocalGeometry geo(space, p);
    const CurvatureTensor r = geo.curvature_tensor();
    const Jet3& lam = geo.lambda();
    const double l = lam.value(), l1 = lam.d1(), l2 = lam.d2();
    const double s = space.sgn();
    const double kappa = 1.0 - l * l;
    const double mu = 2.0 * (1.0 + s * l);
    const LapGrad lg = lap_grad_lambda(space, p);

    const FrameVector e2 = FrameVector::basis(1);
    const FrameVector phi_e2 = contact_at(space, p).apply_phi(e2);
    const double sectional = dot(geo.riemann(phi_e2, e2, e2), phi_e2);
    add(identity::kSectionalPhiPlane, idx, p.z, sectional,
        -lg.laplacian / (2.0 * l) - lg.grad_norm_sq / (2.0 * l * l) - kappa - mu);

    const double scalar = scalar_curvature(r);
    add(identity::kScalarClosedForm, idx, p.z, scalar,
        -lg.laplacian / l - lg.grad_norm_sq / (l * l) + 2.0 * (kappa - mu));

    const double base = l2 / l - 2.0 * (1.0 + s * l) * (1.0 + s * l);
    const double grad_ratio = (l1 * l1) / (l * l);
    add(identity::kScalarZFormThreeQuarter, idx, p.z, scalar, base - 0.75 * grad_ratio);
    add(identity::kScalarZFormThreeHalf, idx, p.z, scalar, base - 1.5 * grad_ratio);
    if (grad_ratio > 1e-6) {
      // S = λ″/λ − c (λ′/λ)² − 2(1 ± λ)²  ⇒  c = (base − S)/(λ′/λ)².
      add(identity::kGradCoefficient, idx, p.z, (base - scalar) / grad_ratio, 1.5);
    }
  }
  std::stable_sort(report.records.begin(), report.records.end(), [](const auto& a, const auto& b) {
    return a.name != b.name ? a.name < b.name : a.point_index < b.point_index;
  });
  return report;
}

IntegrabilityResult integrability_check(const ModelSpace& space, const Point& p) {
  const LocalGeometry geo(space, p);
  const FrameField xi = basis_field(0);
  const FrameField x = basis_field(1);
  const FrameField phix = apply_phi(space, x);
  const double eps = dot(geo.h(x).at(p), FrameVector::basis(1));
  const KappaMu km = extract_kappa_mu(geo);
  const double mu = km.mu.value_or(mu_closed_form(space, p.z));

  IntegrabilityResult out;
  const FrameVector b1 = geo.bracket(xi, x).at(p);
  const FrameVector b2 = geo.bracket(xi, phix).at(p);
  out.xi_x_residual = norm(b1 - (1.0 + eps - 0.5 * mu) * phix.at(p));
  out.phix_coefficient = eps - 1.0 + 0.5 * mu;
  out.xi_phix_residual = norm(b2 - out.phix_coefficient * x.at(p));
  out.bracket_e3_component = b1[2];
  out.span_closed = std::abs(b1[2]) < 1e-12;
  return out;
}

}  // namespace kmu
