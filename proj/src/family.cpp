#include "kmu/family.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace kmu {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

Interval default_sqrt_domain(double a, double b) {
  // λ² = 1 − a z − b vanishes at z* = (1 − b)/a.
  if (a > 0.0) {
    const double zs = (1.0 - b) / a;
    return {zs - 10.0, zs};
  }
  if (a < 0.0) {
    const double zs = (1.0 - b) / a;
    return {zs, zs + 10.0};
  }
  return {-5.0, 5.0};
}

// Quintic Hermite interpolant through (z, λ, λ′) at three consecutive samples,
// evaluated as a jet at z by Horner's rule in Newton form.
Jet3 hermite3(const std::vector<TableSample>& s, std::size_t first, double z) {
  std::array<double, 6> t{};
  std::array<double, 6> c{};
  for (std::size_t k = 0; k < 3; ++k) {
    t[2 * k] = t[2 * k + 1] = s[first + k].z;
    c[2 * k] = c[2 * k + 1] = s[first + k].lambda;
  }
  // Divided differences in place; repeated nodes take the sample derivative.
  for (std::size_t level = 1; level < 6; ++level) {
    for (std::size_t i = 5; i >= level; --i) {
      const double dz = t[i] - t[i - level];
      if (dz == 0.0) {
        c[i] = s[first + i / 2].lambda_prime;
      } else {
        c[i] = (c[i] - c[i - 1]) / dz;
      }
    }
  }
  const Jet3 x = Jet3::variable(z);
  Jet3 p = Jet3::constant(c[5]);
  for (int i = 4; i >= 0; --i) p = p * (x - t[static_cast<std::size_t>(i)]) + c[static_cast<std::size_t>(i)];
  return p;
}

}  // namespace

std::string Interval::describe() const { return "(" + fmt(lo) + ", " + fmt(hi) + ")"; }

LambdaFamily::LambdaFamily(FamilyKind kind, Interval domain)
    : kind_(std::move(kind)), domain_(domain) {
  if (!(domain_.lo < domain_.hi))
    throw DomainError("LambdaFamily: empty domain " + domain_.describe());
  std::visit(
      Overloaded{
          [&](const PowerKind&) {
            if (domain_.lo < 0.0)
              throw DomainError("power family requires z > 0, domain " + domain_.describe());
            if (!std::isfinite(domain_.hi))
              throw DomainError("power family requires a bounded domain");
          },
          [&](const SqrtLinearKind& k) {
            // The radicand is affine, so checking the endpoints covers the
            // interval. An endpoint may sit on the zero up to rounding.
            constexpr double kSlack = 1e-12;
            const double r_lo = 1.0 - k.a * domain_.lo - k.b;
            const double r_hi = 1.0 - k.a * domain_.hi - k.b;
            if (r_lo < -kSlack || r_hi < -kSlack || (r_lo <= kSlack && r_hi <= kSlack))
              throw DomainError("sqrt_linear family: 1 - a z - b must be positive on " +
                                domain_.describe());
          },
          [&](const ConstantKind& k) {
            if (!(k.value > 0.0)) throw DomainError("constant family requires a positive value");
          },
          [&](const TableKind& k) {
            if (k.samples.size() < 4)
              throw DomainError("table family needs at least 4 samples");
            for (std::size_t i = 0; i < k.samples.size(); ++i) {
              if (!(k.samples[i].lambda > 0.0))
                throw DomainError("table family: non-positive lambda at z = " +
                                  fmt(k.samples[i].z));
              if (i > 0 && !(k.samples[i].z > k.samples[i - 1].z))
                throw DomainError("table family: z samples must be strictly ascending");
            }
          }},
      kind_);
}

LambdaFamily LambdaFamily::power(double n) { return power(n, {0.0, 20.0}); }
LambdaFamily LambdaFamily::power(double n, Interval domain) { return {PowerKind{n}, domain}; }
LambdaFamily LambdaFamily::sqrt_linear(double a, double b) {
  return sqrt_linear(a, b, default_sqrt_domain(a, b));
}
LambdaFamily LambdaFamily::sqrt_linear(double a, double b, Interval domain) {
  return {SqrtLinearKind{a, b}, domain};
}
LambdaFamily LambdaFamily::constant(double v) { return constant(v, {-10.0, 10.0}); }
LambdaFamily LambdaFamily::constant(double v, Interval domain) {
  return {ConstantKind{v}, domain};
}
LambdaFamily LambdaFamily::table(std::vector<TableSample> samples) {
  if (samples.size() < 4) throw DomainError("table family needs at least 4 samples");
  const Interval dom{samples.front().z, samples.back().z};
  return {TableKind{std::move(samples)}, dom};
}

std::string LambdaFamily::describe() const {
  return std::visit(
      Overloaded{[](const PowerKind& k) { return "power(n=" + fmt(k.n) + ")"; },
                 [](const SqrtLinearKind& k) {
                   return "sqrt_linear(a=" + fmt(k.a) + ", b=" + fmt(k.b) + ")";
                 },
                 [](const ConstantKind& k) { return "constant(" + fmt(k.value) + ")"; },
                 [](const TableKind& k) {
                   return "table(" + std::to_string(k.samples.size()) + " samples)";
                 }},
      kind_);
}

Jet3 eval_family(const LambdaFamily& family, double z) {
  if (!family.domain().contains(z))
    throw DomainError("z = " + fmt(z) + " outside family domain " + family.domain().describe());
  return std::visit(
      Overloaded{[&](const PowerKind& k) { return pow(Jet3::variable(z), -k.n); },
                 [&](const SqrtLinearKind& k) {
                   return sqrt(1.0 - k.a * Jet3::variable(z) - k.b);
                 },
                 [&](const ConstantKind& k) { return Jet3::constant(k.value); },
                 [&](const TableKind&) { return eval_table(family, z).jet; }},
      family.kind());
}

TableJet eval_table(const LambdaFamily& family, double z) {
  const auto* table = std::get_if<TableKind>(&family.kind());
  if (table == nullptr) throw std::invalid_argument("eval_table: family is not a table");
  if (!family.domain().contains(z))
    throw DomainError("z = " + fmt(z) + " outside family domain " + family.domain().describe());
  const auto& s = table->samples;
  const auto it = std::lower_bound(s.begin(), s.end(), z,
                                   [](const TableSample& a, double v) { return a.z < v; });
  // Index of the nearest sample, kept away from the ends so it can be centred.
  std::size_t hi = static_cast<std::size_t>(it - s.begin());
  std::size_t nearest = (hi > 0 && (hi == s.size() || z - s[hi - 1].z < s[hi].z - z)) ? hi - 1 : hi;
  const std::size_t centre = std::clamp<std::size_t>(nearest, 1, s.size() - 2);
  const std::size_t first = centre - 1;
  // Alternative stencil shifted towards z's side of the centre.
  const bool can_shift_up = first + 3 < s.size();
  const std::size_t alt =
      can_shift_up && (z >= s[centre].z || first == 0) ? first + 1 : first - 1;

  TableJet out;
  out.jet = hermite3(s, first, z);
  const Jet3 other = hermite3(s, alt, z);
  for (std::size_t k = 0; k < 4; ++k)
    out.error_estimate[k] = std::abs(out.jet.raw()[k] - other.raw()[k]);
  return out;
}

double fd_crosscheck(const LambdaFamily& family, double z, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("fd_crosscheck: step must be positive");
  const Interval& dom = family.domain();
  if (!dom.contains(z - 3.0 * step) || !dom.contains(z + 3.0 * step))
    throw DomainError("fd_crosscheck: stencil z ± 3·step leaves domain " + dom.describe());

  const Jet3 centre = eval_family(family, z);
  std::array<Jet3, 4> ring{eval_family(family, z - 2.0 * step), eval_family(family, z - step),
                           eval_family(family, z + step), eval_family(family, z + 2.0 * step)};
  double worst = 0.0;
  for (std::size_t k = 1; k <= 3; ++k) {
    // Fourth-order central difference of the (k−1)-th stored derivative.
    const double fd = (ring[0].raw()[k - 1] - 8.0 * ring[1].raw()[k - 1] +
                       8.0 * ring[2].raw()[k - 1] - ring[3].raw()[k - 1]) /
                      (12.0 * step);
    const double exact = centre.raw()[k];
    worst = std::max(worst, std::abs(exact - fd) / std::max(1.0, std::abs(exact)));
  }
  return worst;
}

}  // namespace kmu
