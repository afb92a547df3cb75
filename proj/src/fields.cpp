#include "kmu/fields.hpp"

#include <stdexcept>

namespace kmu {

CoefficientField operator*(const CoefficientField& l, const CoefficientField& r) {
  const Jet3 xx = l.b() * r.b();
  const Jet3 xy = l.b() * r.c() + l.c() * r.b();
  const Jet3 yy = l.c() * r.c();
  if (!xx.is_zero() || !xy.is_zero() || !yy.is_zero())
    throw std::logic_error("CoefficientField product is not affine in x, y");
  return {l.a() * r.a(), l.a() * r.b() + l.b() * r.a(), l.a() * r.c() + l.c() * r.a()};
}

CoefficientField directional(const VectorField& v, const CoefficientField& f) {
  CoefficientField out = v.comp[0] * f.dx() + v.comp[1] * f.dy();
  // Skipping a vanishing ∂z term keeps the jet order of f intact.
  if (!v.comp[2].is_zero()) out += v.comp[2] * f.dz();
  return out;
}

VectorField lie_bracket(const VectorField& x, const VectorField& y) {
  VectorField out;
  for (std::size_t k = 0; k < 3; ++k)
    out.comp[k] = directional(x, y.comp[k]) - directional(y, x.comp[k]);
  return out;
}

}  // namespace kmu
