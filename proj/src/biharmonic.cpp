#include "kmu/biharmonic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kmu {

namespace {

FrameField basis_field(std::size_t i) { return FrameField::constant(FrameVector::basis(i)); }

double criterion(const ModelSpace& space, double c, int power) {
  const Jet3 lam = eval_family(space.family, c);
  const double l = lam.value(), l1 = lam.d1(), l2 = lam.d2();
  const double b = 1.0 + space.sgn() * l;
  return l * l2 - 2.0 * l1 * l1 - 8.0 * l * l * (power == 1 ? b : b * b);
}

double criterion(const ModelSpace& space, SubmanifoldKind which, double c) {
  return which == SubmanifoldKind::curve ? curve_criterion(space, c) : surface_criterion(space, c);
}

double oracle_norm(const ModelSpace& space, SubmanifoldKind which, double c) {
  return which == SubmanifoldKind::curve ? norm(curve_bitension(space, {0.0, c}))
                                         : norm(surface_bitension(space, {c}));
}

}  // namespace

std::string to_string(SubmanifoldKind k) { return k == SubmanifoldKind::curve ? "curve" : "surface"; }

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::proper_biharmonic:
      return "proper_biharmonic";
    case Verdict::minimal_or_geodesic:
      return "minimal_or_geodesic";
    case Verdict::not_biharmonic:
      return "not_biharmonic";
  }
  return "unknown";
}

CurveGeometry curve_geometry(const ModelSpace& space, const LegendreCurve& curve) {
  const Point p = curve.point();
  const LocalGeometry geo(space, p);
  const FrameField t = basis_field(1);
  CurveGeometry out;
  out.acceleration = geo.covariant(t, t).at(p);
  out.geodesic_curvature = norm(out.acceleration);
  return out;
}

FrameVector curve_bitension(const ModelSpace& space, const LegendreCurve& curve) {
  const Point p = curve.point();
  const LocalGeometry geo(space, p);
  const FrameField t = basis_field(1);
  const FrameField acc = geo.covariant(t, t);
  const FrameField third = geo.covariant(t, geo.covariant(t, acc));
  return (third + geo.riemann(acc, t, t)).at(p);
}

double curve_criterion(const ModelSpace& space, double c) { return criterion(space, c, 1); }

double surface_criterion(const ModelSpace& space, double c) { return criterion(space, c, 2); }

double criterion_scale(const ModelSpace& space, SubmanifoldKind which, double c) {
  const Jet3 lam = eval_family(space.family, c);
  const double l = lam.value(), l1 = lam.d1(), l2 = lam.d2();
  const double b = 1.0 + space.sgn() * l;
  const double last = 8.0 * l * l * (which == SubmanifoldKind::curve ? b : b * b);
  return std::max({1.0, std::abs(l * l2), l1 * l1, std::abs(last)});
}

SurfaceGeometry surface_geometry(const ModelSpace& space, const AntiInvariantSurface& surf) {
  const Point p = surf.point();
  const LocalGeometry geo(space, p);
  const ContactStructure cs = contact_at(space, p);
  const std::array<FrameField, 2> tangent{basis_field(0), basis_field(1)};

  SurfaceGeometry g;
  g.normal = cs.apply_phi(FrameVector::basis(1));
  const FrameField nfield = FrameField::constant(g.normal);
  for (std::size_t a = 0; a < 2; ++a) {
    const FrameVector dn = geo.covariant(tangent[a], nfield).at(p);
    for (std::size_t b = 0; b < 2; ++b) {
      g.second_fundamental[a][b] = dot(geo.covariant(tangent[a], tangent[b]).at(p), g.normal);
      // A_N E_a = −(∇_{E_a} N)ᵀ
      g.shape_operator[a][b] = -dn[b];
    }
  }
  g.mean_curvature = 0.5 * (g.second_fundamental[0][0] + g.second_fundamental[1][1]);
  g.mean_curvature_vector = g.mean_curvature * g.normal;
  g.mean_curvature_sq = dot(g.mean_curvature_vector, g.mean_curvature_vector);

  const FrameVector he2 = geo.h(tangent[1]).at(p);
  g.beta = 1.0 + dot(he2, FrameVector::basis(1));
  g.gamma = dot(he2, g.normal);
  return g;
}

FrameVector surface_bitension(const ModelSpace& space, const AntiInvariantSurface& surf) {
  const Point p = surf.point();
  const LocalGeometry geo(space, p);
  const ContactStructure cs = contact_at(space, p);
  const FrameVector n = cs.apply_phi(FrameVector::basis(1));
  const std::array<FrameField, 2> tangent{basis_field(0), basis_field(1)};

  // τ = trace B = Σ_a g(∇_{E_a}E_a, N) N, kept as a field so it can be differentiated.
  CoefficientField trace;
  for (std::size_t a = 0; a < 2; ++a) {
    const FrameField acc = geo.covariant(tangent[a], tangent[a]);
    for (std::size_t k = 0; k < 3; ++k) trace += n[k] * acc.comp[k];
  }
  FrameField tau;
  for (std::size_t k = 0; k < 3; ++k) tau.comp[k] = n[k] * trace;

  FrameField out;
  for (std::size_t a = 0; a < 2; ++a) {
    FrameField induced = geo.covariant(tangent[a], tangent[a]);
    induced.comp[2] = CoefficientField{};  // tangential projection onto span{e1, e2}
    out += geo.covariant(tangent[a], geo.covariant(tangent[a], tau)) - geo.covariant(induced, tau);
    out += geo.riemann(tau, tangent[a], tangent[a]);
  }
  return out.at(p);
}

CharacterizationResult characterization_residual(const ModelSpace& space, double c) {
  const AntiInvariantSurface surf{c};
  const Point p = surf.point();
  const SurfaceGeometry g = surface_geometry(space, surf);
  const ContactStructure cs = contact_at(space, p);
  const FrameVector phi_h = cs.apply_phi(g.mean_curvature_vector);
  const FrameVector h_phi_h = h_operator(space, phi_h, p);

  CharacterizationResult r;
  r.scalar_curvature = scalar_curvature(space, p);
  r.beta = g.beta;
  r.radicand = r.scalar_curvature / 6.0 - 4.0 * g.mean_curvature_sq / 3.0;
  r.h_phi_h_residual = norm(h_phi_h - (g.beta - 1.0) * phi_h);
  if (r.radicand < 0.0) {
    r.radicand_negative = true;
    r.residual = std::numeric_limits<double>::infinity();
    return r;
  }
  const double root = std::sqrt(r.radicand);
  r.residual = std::numeric_limits<double>::infinity();
  for (int s : {1, -1}) {
    const double res = norm(h_phi_h - (s * root - 1.0) * phi_h);
    if (res < r.residual) {
      r.residual = res;
      r.radical_sign = s;
    }
  }
  return r;
}

std::vector<RootRecord> find_roots(const ModelSpace& space, SubmanifoldKind which,
                                   Interval interval, int grid_n, double tol) {
  if (grid_n < 2) throw std::invalid_argument("find_roots: grid_n must be at least 2");
  if (!(interval.lo < interval.hi))
    throw std::invalid_argument("find_roots: empty interval " + interval.describe());
  const Interval& dom = space.family.domain();
  if (!dom.contains(interval.lo) || !dom.contains(interval.hi))
    throw DomainError("find_roots: interval " + interval.describe() +
                      " not inside family domain " + dom.describe());

  const auto f = [&](double c) { return criterion(space, which, c); };
  const double h = interval.width() / grid_n;
  auto sample = [&](int i) { return i == grid_n ? interval.hi : interval.lo + i * h; };

  std::vector<Interval> brackets;
  double z0 = sample(0);
  double f0 = f(z0);
  if (f0 == 0.0) brackets.push_back({z0, z0});
  for (int i = 1; i <= grid_n; ++i) {
    const double z1 = sample(i);
    const double f1 = f(z1);
    if (f1 == 0.0) {
      brackets.push_back({z1, z1});
    } else if (f0 != 0.0 && std::signbit(f0) != std::signbit(f1)) {
      brackets.push_back({z0, z1});
    }
    z0 = z1;
    f0 = f1;
  }

  std::vector<RootRecord> out;
  for (const Interval& br : brackets) {
    double lo = br.lo, hi = br.hi;
    double flo = f(lo);
    double root = lo;
    double froot = flo;
    while (hi - lo >= 1e-13 && std::abs(froot) >= tol) {
      const double mid = 0.5 * (lo + hi);
      const double fm = f(mid);
      root = mid;
      froot = fm;
      if (fm == 0.0) break;
      if (std::signbit(fm) == std::signbit(flo)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    const Jet3 lam = eval_family(space.family, root);
    if (std::abs(lam.d1()) < kDegenerateSlope) continue;
    RootRecord rec;
    rec.bracket = br;
    rec.root = root;
    rec.criterion_residual = froot;
    rec.oracle_bitension_norm = oracle_norm(space, which, root);
    rec.lambda = lam.value();
    rec.lambda_prime = lam.d1();
    out.push_back(rec);
  }
  return out;
}

BiharmonicityReport biharmonicity_report(const ModelSpace& space, SubmanifoldKind which, double c,
                                         double tol) {
  BiharmonicityReport r;
  r.kind = which;
  r.c = c;
  r.criterion_value = criterion(space, which, c);
  r.lambda_prime = eval_family(space.family, c).d1();
  r.bitension_norm = oracle_norm(space, which, c);
  r.curvature = which == SubmanifoldKind::curve
                    ? curve_geometry(space, {0.0, c}).geodesic_curvature
                    : std::sqrt(surface_geometry(space, {c}).mean_curvature_sq);

  const bool degenerate = std::abs(r.lambda_prime) < kDegenerateSlope;
  if (degenerate) {
    r.verdict = Verdict::minimal_or_geodesic;
  } else if (r.bitension_norm < tol) {
    r.verdict = Verdict::proper_biharmonic;
  } else {
    r.verdict = Verdict::not_biharmonic;
  }
  if (!degenerate) {
    const bool criterion_zero =
        std::abs(r.criterion_value) < 1e-6 * criterion_scale(space, which, c);
    r.criterion_agrees = criterion_zero == (r.verdict == Verdict::proper_biharmonic);
  }
  return r;
}

}  // namespace kmu
