#include "kmu/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace kmu {

std::string to_string(Sign s) { return s == Sign::plus ? "plus" : "minus"; }

GaugeFunction GaugeFunction::poly(std::vector<double> coeffs) {
  return GaugeFunction(Poly{std::move(coeffs)});
}
GaugeFunction GaugeFunction::sine() { return GaugeFunction(Sine{}); }

Jet3 GaugeFunction::eval(double z) const {
  if (const auto* p = std::get_if<Poly>(&kind_)) {
    const Jet3 x = Jet3::variable(z);
    Jet3 acc;
    for (auto it = p->coeffs.rbegin(); it != p->coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
  }
  if (std::holds_alternative<Sine>(kind_)) return sin(Jet3::variable(z));
  return {};
}

std::string GaugeFunction::describe() const {
  if (const auto* p = std::get_if<Poly>(&kind_)) {
    std::ostringstream os;
    os << "poly[";
    for (std::size_t i = 0; i < p->coeffs.size(); ++i) os << (i ? "," : "") << p->coeffs[i];
    os << "]";
    return os.str();
  }
  if (std::holds_alternative<Sine>(kind_)) return "sin";
  return "zero";
}

double dot(const FrameVector& a, const FrameVector& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
double norm(const FrameVector& a) { return std::sqrt(dot(a, a)); }
double max_abs(const FrameVector& a) {
  return std::max({std::abs(a[0]), std::abs(a[1]), std::abs(a[2])});
}

FrameField FrameField::constant(const FrameVector& v) {
  return {{CoefficientField::constant(v[0]), CoefficientField::constant(v[1]),
           CoefficientField::constant(v[2])}};
}

FrameVector FrameField::at(const Point& p) const {
  return {{comp[0].at(p.x, p.y), comp[1].at(p.x, p.y), comp[2].at(p.x, p.y)}};
}

void require_point(const ModelSpace& space, const Point& p) {
  if (!space.family.domain().contains(p.z)) {
    std::ostringstream os;
    os.precision(17);
    os << "point z = " << p.z << " outside family domain " << space.family.domain().describe();
    throw DomainError(os.str());
  }
}

FrameChart::FrameChart(const ModelSpace& space, const Point& pt) {
  require_point(space, pt);
  const Jet3 lam = eval_family(space.family, pt.z);
  if (lam.value() == 0.0) throw ArithmeticError("degenerate structure: lambda vanishes");
  const Jet3 lam_prime = lam.derivative();
  const double s = space.sgn();
  p = CoefficientField(space.gauges.f.eval(pt.z), Jet3{}, Jet3::constant(2.0 * s));
  q = CoefficientField(space.gauges.h.eval(pt.z), 2.0 * lam, -lam_prime / (2.0 * lam));
}

FrameField FrameChart::to_frame(const VectorField& v) const {
  const CoefficientField& u3 = v.comp[2];
  return {{v.comp[0] - p * u3, v.comp[1] - q * u3, u3}};
}

VectorField FrameChart::to_coordinates(const FrameField& v) const {
  const CoefficientField& u3 = v.comp[2];
  return {{v.comp[0] + p * u3, v.comp[1] + q * u3, u3}};
}

FrameField FrameChart::bracket(const FrameField& x, const FrameField& y) const {
  return to_frame(lie_bracket(to_coordinates(x), to_coordinates(y)));
}

CoefficientField FrameChart::derivative(const FrameField& x, const CoefficientField& f) const {
  return directional(to_coordinates(x), f);
}

std::array<VectorField, 3> frame_fields(const ModelSpace& space, const Point& p) {
  const FrameChart c(space, p);
  const auto one = CoefficientField::constant(1.0);
  const CoefficientField zero;
  return {VectorField{{one, zero, zero}}, VectorField{{zero, one, zero}},
          VectorField{{c.p, c.q, one}}};
}

Matrix3 frame_at(const ModelSpace& space, const Point& p) {
  const auto e = frame_fields(space, p);
  Matrix3 m{};
  for (std::size_t i = 0; i < 3; ++i) m[i] = e[i].at(p.x, p.y);
  return m;
}

FrameVector coordinate_to_frame(const ModelSpace& space, const Point& p,
                                const std::array<double, 3>& v) {
  // The frame matrix is unit lower-triangular in the order (e1, e2, e3) vs
  // (∂x, ∂y, ∂z): only e3 carries a ∂z part, so u3 = v_z and the rest follows.
  const FrameChart c(space, p);
  const double u3 = v[2];
  return {{v[0] - c.p.at(p.x, p.y) * u3, v[1] - c.q.at(p.x, p.y) * u3, u3}};
}

FrameField to_frame(const ModelSpace& space, const Point& p, const VectorField& v) {
  return FrameChart(space, p).to_frame(v);
}

VectorField to_coordinates(const ModelSpace& space, const Point& p, const FrameField& v) {
  return FrameChart(space, p).to_coordinates(v);
}

FrameField frame_bracket(const ModelSpace& space, const Point& p, const FrameField& x,
                         const FrameField& y) {
  return FrameChart(space, p).bracket(x, y);
}

CoefficientField derivative_along(const ModelSpace& space, const Point& p, const FrameField& x,
                                  const CoefficientField& f) {
  return FrameChart(space, p).derivative(x, f);
}

FrameVector ContactStructure::apply_phi(const FrameVector& v) const {
  FrameVector out;
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t j = 0; j < 3; ++j) out[k] += phi[k][j] * v[j];
  return out;
}

ContactStructure contact_at(const ModelSpace& space, const Point& p) {
  require_point(space, p);
  const double s = space.sgn();
  ContactStructure cs;
  cs.xi = FrameVector::basis(0);
  // φe2 = ±e3, φe3 = ∓e2.
  cs.phi[2][1] = s;
  cs.phi[1][2] = -s;
  return cs;
}

FrameField apply_phi(const ModelSpace& space, const FrameField& v) {
  const double s = space.sgn();
  return {{CoefficientField{}, -s * v.comp[2], s * v.comp[1]}};
}

double StructureResiduals::contact_metric_max() const {
  return std::max({eta_xi, phi_square, compatibility, contact_condition});
}

namespace {

double d_eta(const FrameChart& chart, const Point& p, const FrameField& x, const FrameField& y) {
  const CoefficientField eta_x = x.comp[0];
  const CoefficientField eta_y = y.comp[0];
  const CoefficientField eta_bracket = chart.bracket(x, y).comp[0];
  const CoefficientField total =
      chart.derivative(x, eta_y) - chart.derivative(y, eta_x) - eta_bracket;
  return 0.5 * total.at(p.x, p.y);
}

}  // namespace

double d_eta(const ModelSpace& space, const Point& p, const FrameField& x, const FrameField& y) {
  return d_eta(FrameChart(space, p), p, x, y);
}

StructureResiduals verify_structure(const ModelSpace& space, const Point& p) {
  const ContactStructure cs = contact_at(space, p);
  const FrameChart chart(space, p);
  StructureResiduals r;
  r.eta_xi = std::abs(cs.eta(cs.xi) - 1.0);

  std::array<FrameVector, 3> e{FrameVector::basis(0), FrameVector::basis(1), FrameVector::basis(2)};
  std::array<FrameField, 3> ef{FrameField::constant(e[0]), FrameField::constant(e[1]),
                               FrameField::constant(e[2])};

  for (std::size_t j = 0; j < 3; ++j) {
    // φ²e_j + e_j − η(e_j)ξ
    const FrameVector lhs = cs.apply_phi(cs.apply_phi(e[j])) + e[j] - cs.eta(e[j]) * cs.xi;
    r.phi_square = std::max(r.phi_square, max_abs(lhs));
  }

  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      const double g_ij = i == j ? 1.0 : 0.0;
      const double compat = dot(cs.apply_phi(e[i]), cs.apply_phi(e[j])) - g_ij +
                            cs.eta(e[i]) * cs.eta(e[j]);
      r.compatibility = std::max(r.compatibility, std::abs(compat));

      const double deta = d_eta(chart, p, ef[i], ef[j]);
      r.contact_condition =
          std::max(r.contact_condition, std::abs(deta - dot(e[i], cs.apply_phi(e[j]))));

      // [φ,φ](X,Y) = φ²[X,Y] + [φX,φY] − φ[φX,Y] − φ[X,φY]
      const FrameField phx = apply_phi(space, ef[i]);
      const FrameField phy = apply_phi(space, ef[j]);
      const FrameField nij =
          apply_phi(space, apply_phi(space, chart.bracket(ef[i], ef[j]))) +
          chart.bracket(phx, phy) - apply_phi(space, chart.bracket(phx, ef[j])) -
          apply_phi(space, chart.bracket(ef[i], phy));
      const FrameVector defect = nij.at(p) + 2.0 * deta * cs.xi;
      r.sasakian_defect = std::max(r.sasakian_defect, norm(defect));
    }
  }
  return r;
}

}  // namespace kmu
