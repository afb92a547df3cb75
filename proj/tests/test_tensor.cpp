#include <doctest.h>

#include <cmath>

#include "kmu/checks.hpp"

using namespace kmu;

namespace {

GaugeFunctions nonzero_gauges() { return {GaugeFunction::sine(), GaugeFunction::poly({0.0, 1.0})}; }

FrameField basis(std::size_t i) { return FrameField::constant(FrameVector::basis(i)); }

}  // namespace

TEST_CASE("coordinate Lie brackets of the frame") {
  const ModelSpace sp{LambdaFamily::power(0.5), Sign::plus, {}};
  const Point p{0.3, -0.7, 2.0};
  const auto e = frame_fields(sp, p);
  const double lam = eval_family(sp.family, p.z).value();
  const auto b12 = lie_bracket(sp, e[0], e[1], p);
  CHECK(b12 == std::array<double, 3>{0, 0, 0});
  const auto b13 = lie_bracket(sp, e[0], e[2], p);
  CHECK(b13[0] == 0.0);
  CHECK(b13[1] == doctest::Approx(2.0 * lam));
  CHECK(b13[2] == 0.0);
}

TEST_CASE("frame brackets match the structure constants") {
  for (Sign s : {Sign::plus, Sign::minus}) {
    const ModelSpace sp{LambdaFamily::power(0.5), s, nonzero_gauges()};
    const Point p{0.3, -0.7, 2.0};
    const Jet3 lam = eval_family(sp.family, p.z);
    const double l = lam.d1() / (2.0 * lam.value());
    const FrameVector b13 = frame_bracket(sp, p, basis(0), basis(2)).at(p);
    const FrameVector b23 = frame_bracket(sp, p, basis(1), basis(2)).at(p);
    CHECK(max_abs(b13 - 2.0 * lam.value() * FrameVector::basis(1)) < 1e-14);
    CHECK(max_abs(b23 - FrameVector{{2.0 * sigma(s), -l, 0.0}}) < 1e-14);
  }
}

TEST_CASE("connection coefficients") {
  const ModelSpace sp{LambdaFamily::power(0.5), Sign::minus, {}};
  const Point p{0.1, 0.2, 4.0};
  const double lam = 0.5, l = -1.0 / 16.0, s = -1.0;
  const ConnectionTable t = connection_coeffs(sp, p);
  CHECK(t.gamma[0][0][1] == doctest::Approx(0.0));
  CHECK(t.gamma[0][1][2] == doctest::Approx(-(lam + s)));
  CHECK(t.gamma[1][1][2] == doctest::Approx(l));
  CHECK(t.gamma[1][2][0] == doctest::Approx(lam + s));
  CHECK(t.gamma[2][0][1] == doctest::Approx(s - lam));
  CHECK(t.gamma[2][1][0] == doctest::Approx(lam - s));
  CHECK(max_abs(t.nabla(2, 2)) < 1e-15);
  const FrameVector cd = covariant_derivative(sp, basis(1), basis(1), p);
  CHECK(max_abs(cd - l * FrameVector::basis(2)) < 1e-15);
}

TEST_CASE("h operator eigenvalues") {
  for (Sign s : {Sign::plus, Sign::minus}) {
    const ModelSpace sp{LambdaFamily::power(0.5), s, nonzero_gauges()};
    const Point p{-0.4, 0.9, 4.0};
    const FrameVector he2 = h_operator(sp, FrameVector::basis(1), p);
    const FrameVector he3 = h_operator(sp, FrameVector::basis(2), p);
    CHECK(max_abs(he2 - sigma(s) * 0.5 * FrameVector::basis(1)) < 1e-14);
    CHECK(max_abs(he3 + sigma(s) * 0.5 * FrameVector::basis(2)) < 1e-14);
    CHECK(max_abs(h_operator(sp, FrameVector::basis(0), p)) < 1e-14);
  }
}

TEST_CASE("kappa and mu from the curvature") {
  for (Sign s : {Sign::plus, Sign::minus}) {
    for (const auto& fam : {LambdaFamily::power(0.25), LambdaFamily::sqrt_linear(1.0, 0.0),
                            LambdaFamily::constant(1.0)}) {
      const ModelSpace sp{fam, s, {}};
      for (const Point& p : random_points(sp, 10, 5)) {
        const KappaMu km = extract_kappa_mu(sp, p);
        REQUIRE(km.mu.has_value());
        CHECK(km.kappa == doctest::Approx(kappa_closed_form(sp, p.z)).epsilon(1e-10));
        CHECK(*km.mu == doctest::Approx(mu_closed_form(sp, p.z)).epsilon(1e-10));
        CHECK(km.residual < 1e-10);
      }
    }
  }
}

TEST_CASE("scalar curvature and the Laplacian of lambda") {
  for (Sign s : {Sign::plus, Sign::minus}) {
    const ModelSpace sp{LambdaFamily::power(0.75), s, {}};
    const Point p{0.2, 0.3, 1.7};
    const Jet3 lam = eval_family(sp.family, p.z);
    const double l = lam.value(), l1 = lam.d1(), l2 = lam.d2();
    const double expected = l2 / l - 1.5 * l1 * l1 / (l * l) - 2.0 * std::pow(1.0 + sigma(s) * l, 2);
    CHECK(scalar_curvature(sp, p) == doctest::Approx(expected).epsilon(1e-12));
    const LapGrad lg = lap_grad_lambda(sp, p);
    CHECK(lg.laplacian == doctest::Approx(-l2 + l1 * l1 / (2.0 * l)).epsilon(1e-12));
    CHECK(lg.grad_norm_sq == doctest::Approx(l1 * l1).epsilon(1e-12));
  }
}

TEST_CASE("curvature tensor agrees with direct evaluation") {
  const ModelSpace sp{LambdaFamily::power(0.5), Sign::plus, nonzero_gauges()};
  const Point p{0.5, -0.5, 3.0};
  const LocalGeometry geo(sp, p);
  const CurvatureTensor r = geo.curvature_tensor();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) {
        const FrameVector v =
            riemann(sp, FrameVector::basis(i), FrameVector::basis(j), FrameVector::basis(k), p);
        for (std::size_t m = 0; m < 3; ++m) CHECK(std::abs(v[m] - r[i][j][k][m]) < 1e-13);
      }
}

TEST_CASE("audit flags only the printed three-quarter form") {
  const ModelSpace sp{LambdaFamily::power(0.5), Sign::plus, {}};
  const AuditReport a = audit_identities(sp, random_points(sp, 20, 42), 1e-8);
  CHECK(a.all_pass(identity::kSectionalPhiPlane));
  CHECK(a.all_pass(identity::kScalarClosedForm));
  CHECK(a.all_pass(identity::kScalarZFormThreeHalf));
  CHECK(a.all_pass(identity::kGradCoefficient));
  CHECK_FALSE(a.all_pass(identity::kScalarZFormThreeQuarter));
  CHECK(a.flag_count() > 0);
  CHECK(a.pass_count() + a.flag_count() == a.records.size());
  for (std::size_t i = 1; i < a.records.size(); ++i) {
    const auto& x = a.records[i - 1];
    const auto& y = a.records[i];
    CHECK((x.name < y.name || (x.name == y.name && x.point_index < y.point_index)));
  }
  for (const auto& r : a.records) {
    if (r.name == identity::kGradCoefficient) CHECK(r.lhs == doctest::Approx(1.5).epsilon(1e-8));
    CHECK((r.status == AuditStatus::pass) == (r.abs_residual < r.tolerance));
  }
}

TEST_CASE("audit on a constant family has nothing to flag") {
  // λ′ = 0 makes both z-forms coincide; the coefficient record is skipped.
  const ModelSpace sp{LambdaFamily::constant(1.0), Sign::minus, {}};
  const AuditReport a = audit_identities(sp, random_points(sp, 5, 1), 1e-8);
  CHECK(a.flag_count() == 0);
  CHECK(a.max_residual(identity::kGradCoefficient) == 0.0);
}

TEST_CASE("bracket relations of xi with e2") {
  for (Sign s : {Sign::plus, Sign::minus}) {
    const ModelSpace sp{LambdaFamily::sqrt_linear(1.0, 0.0), s, nonzero_gauges()};
    const IntegrabilityResult r = integrability_check(sp, {0.1, 0.4, 0.3});
    CHECK(r.xi_x_residual < 1e-12);
    CHECK(r.xi_phix_residual < 1e-12);
    CHECK(r.span_closed);
    // [ξ, φe2] = ±[e1, e3] = ±2λ e2, so the coefficient is ±2λ.
    CHECK(r.phix_coefficient == doctest::Approx(2.0 * sigma(s) * std::sqrt(0.7)));
  }
}

TEST_CASE("curvature-level quantities are gauge invariant") {
  for (Sign s : {Sign::plus, Sign::minus}) {
    const ModelSpace plain{LambdaFamily::power(0.5), s, {}};
    const ModelSpace gauged{LambdaFamily::power(0.5), s, nonzero_gauges()};
    for (const Point& p : random_points(plain, 10, 17)) {
      const CurvatureTensor a = LocalGeometry(plain, p).curvature_tensor();
      const CurvatureTensor b = LocalGeometry(gauged, p).curvature_tensor();
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
          for (std::size_t k = 0; k < 3; ++k)
            for (std::size_t m = 0; m < 3; ++m) CHECK(std::abs(a[i][j][k][m] - b[i][j][k][m]) < 1e-9);
      CHECK(std::abs(scalar_curvature(plain, p) - scalar_curvature(gauged, p)) < 1e-9);
    }
  }
}

TEST_CASE("structure suite passes and honours a tolerance override") {
  const ModelSpace sp{LambdaFamily::power(0.5), Sign::plus, {}};
  const auto pts = random_points(sp, 20, 42);
  for (const auto& r : structure_checks(sp, pts)) {
    INFO(r.name << " = " << r.value);
    CHECK(r.pass);
  }
  bool any_flag = false;
  for (const auto& r : structure_checks(sp, pts, 1e-300)) {
    if (r.is_lower_bound) CHECK(r.pass);
    any_flag = any_flag || !r.pass;
  }
  CHECK(any_flag);
}
