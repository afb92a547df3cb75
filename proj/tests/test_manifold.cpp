#include <doctest.h>

#include <cmath>

#include "kmu/checks.hpp"

using namespace kmu;

namespace {

ModelSpace power_space(Sign s, GaugeFunctions g = {}) {
  return {LambdaFamily::power(0.5), s, std::move(g)};
}

GaugeFunctions nonzero_gauges() { return {GaugeFunction::sine(), GaugeFunction::poly({0.0, 1.0})}; }

}  // namespace

TEST_CASE("e3 at the origin of a leaf is the z-direction") {
  const Matrix3 m = frame_at(power_space(Sign::plus), {0, 0, 2.0});
  CHECK(m[2][0] == 0.0);
  CHECK(m[2][1] == 0.0);
  CHECK(m[2][2] == 1.0);
  CHECK(m[0] == std::array<double, 3>{1, 0, 0});
  CHECK(m[1] == std::array<double, 3>{0, 1, 0});
}

TEST_CASE("e3 coefficients follow the sign and lambda") {
  CHECK(frame_at(power_space(Sign::plus), {0, 1, 2.0})[2][0] == 2.0);
  CHECK(frame_at(power_space(Sign::minus), {0, 1, 2.0})[2][0] == -2.0);
  const ModelSpace one{LambdaFamily::constant(1.0), Sign::plus, {}};
  const Matrix3 m = frame_at(one, {1, 1, 0.0});
  CHECK(m[2] == std::array<double, 3>{2, 2, 1});
}

TEST_CASE("gauges enter the e3 coefficients") {
  const Matrix3 m = frame_at(power_space(Sign::plus, nonzero_gauges()), {0, 0, 2.0});
  CHECK(m[2][0] == doctest::Approx(std::sin(2.0)));
  CHECK(m[2][1] == doctest::Approx(2.0));
}

TEST_CASE("coordinate to frame conversion") {
  const ModelSpace sp = power_space(Sign::plus);
  const Point p{0, 1, 2.0};
  const FrameVector ex = coordinate_to_frame(sp, p, {1, 0, 0});
  CHECK(ex[0] == 1.0);
  CHECK(ex[1] == 0.0);
  CHECK(ex[2] == 0.0);
  const Matrix3 m = frame_at(sp, p);
  const FrameVector e3 = coordinate_to_frame(sp, p, m[2]);
  CHECK(max_abs(e3 - FrameVector::basis(2)) < 1e-15);
  // ∂z = e3 − 2e1 + (λ′/2λ)e2 at y = 1; for λ = z^{-1/2}, λ′/2λ = −1/(4z).
  const FrameVector dz = coordinate_to_frame(sp, p, {0, 0, 1});
  CHECK(dz[0] == doctest::Approx(-2.0));
  CHECK(dz[1] == doctest::Approx(-1.0 / 8.0));
  CHECK(dz[2] == 1.0);
}

TEST_CASE("contact structure at a point") {
  const ContactStructure cp = contact_at(power_space(Sign::plus), {0.2, -0.3, 1.5});
  CHECK(cp.eta(cp.xi) == 1.0);
  CHECK(max_abs(cp.apply_phi(FrameVector::basis(1)) - FrameVector::basis(2)) == 0.0);
  CHECK(max_abs(cp.apply_phi(cp.apply_phi(FrameVector::basis(1))) + FrameVector::basis(1)) == 0.0);
  const ContactStructure cm = contact_at(power_space(Sign::minus), {0.2, -0.3, 1.5});
  CHECK(max_abs(cm.apply_phi(FrameVector::basis(1)) + FrameVector::basis(2)) == 0.0);
}

TEST_CASE("d eta on the frame carries the one-half factor") {
  const ModelSpace sp = power_space(Sign::plus);
  const Point p{0.4, 0.1, 3.0};
  const FrameField e2 = FrameField::constant(FrameVector::basis(1));
  const FrameField e3 = FrameField::constant(FrameVector::basis(2));
  // [e2, e3] has e1-component 2, so dη(e2, e3) = −½·2 = −1 = g(e2, φe3).
  CHECK(d_eta(sp, p, e2, e3) == doctest::Approx(-1.0));
}

TEST_CASE("structure residuals and the Sasakian defect") {
  for (Sign s : {Sign::plus, Sign::minus}) {
    for (const auto& fam : {LambdaFamily::power(0.5), LambdaFamily::constant(1.0),
                            LambdaFamily::sqrt_linear(1.0, 0.0)}) {
      const ModelSpace sp{fam, s, nonzero_gauges()};
      for (const Point& p : random_points(sp, 20, 3)) {
        const StructureResiduals r = verify_structure(sp, p);
        CHECK(r.contact_metric_max() < 1e-10);
        CHECK(r.is_contact_metric(1e-10));
        const double lam = eval_family(fam, p.z).value();
        CHECK(r.sasakian_defect == doctest::Approx(2.0 * lam).epsilon(1e-10));
      }
    }
  }
  CHECK(verify_structure(power_space(Sign::plus), {0.1, 0.2, 1.0}).sasakian_defect > 0.1);
}

TEST_CASE("points outside the domain are rejected") {
  CHECK_THROWS_AS((void)frame_at(power_space(Sign::plus), {0, 0, -1.0}), DomainError);
  CHECK_THROWS_AS((void)verify_structure(power_space(Sign::plus), {0, 0, 0.0}), DomainError);
}

TEST_CASE("frame properties over random points") {
  const ModelSpace sp = power_space(Sign::minus, nonzero_gauges());
  for (const Point& p : random_points(sp, 100, 9)) {
    const Matrix3 m = frame_at(sp, p);
    const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                       m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                       m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    CHECK(det == 1.0);
    const std::array<double, 3> v{p.x - 0.3, 1.7, p.y + 0.2};
    const FrameVector u = coordinate_to_frame(sp, p, v);
    for (std::size_t k = 0; k < 3; ++k)
      CHECK(std::abs(u[0] * m[0][k] + u[1] * m[1][k] + u[2] * m[2][k] - v[k]) < 1e-12);
    const ContactStructure cs = contact_at(sp, p);
    for (std::size_t i = 0; i < 3; ++i) CHECK(cs.eta(cs.apply_phi(FrameVector::basis(i))) == 0.0);
    CHECK(max_abs(cs.apply_phi(cs.xi)) == 0.0);
  }
}

TEST_CASE("random points are seeded and stay in the interior") {
  const ModelSpace sp = power_space(Sign::plus);
  const auto a = random_points(sp, 50, 42), b = random_points(sp, 50, 42);
  const Interval in = sp.family.domain().interior(0.8);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].x == b[i].x);
    CHECK(a[i].z == b[i].z);
    CHECK(in.contains(a[i].z));
    CHECK(std::abs(a[i].x) <= 1.0);
    CHECK(std::abs(a[i].y) <= 1.0);
  }
}
