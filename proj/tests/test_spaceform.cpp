#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "rotsurf/spaceform.hpp"

using namespace rotsurf;

namespace {

AmbientPoint hyperboloid_point(double a, double b, double c) {
  return {{std::sqrt(1.0 + a * a + b * b + c * c), a, b, c}, Frame::minkowski};
}

}  // namespace

TEST(SpaceForm, Basics) {
  EXPECT_EQ(SpaceForm::sphere().kappa(), 1);
  EXPECT_EQ(SpaceForm::hyperbolic().kappa(), -1);
  EXPECT_EQ(SpaceForm::sphere().frame(), Frame::euclidean);
  EXPECT_EQ(SpaceForm::hyperbolic(Basis::pseudo_orthonormal).frame(), Frame::minkowski_null);
  EXPECT_EQ(SpaceForm::sphere().name(), "s3");
}

TEST(SpaceForm, RotationSigns) {
  EXPECT_EQ(rotation_signs(RotationKind::elliptic, SpaceForm::sphere()).kappa2, 1);
  EXPECT_EQ(rotation_signs(RotationKind::elliptic, SpaceForm::hyperbolic()).kappa2, -1);
  EXPECT_EQ(rotation_signs(RotationKind::hyperbolic, SpaceForm::hyperbolic()).kappa1, -1);
  EXPECT_THROW(rotation_signs(RotationKind::parabolic, SpaceForm::sphere()), spec_error);
  EXPECT_THROW(require_compatible(RotationKind::hyperbolic, SpaceForm::sphere()), spec_error);
}

TEST(SpaceForm, InnerProducts) {
  const AmbientPoint e{{1, 2, 3, 4}, Frame::euclidean};
  EXPECT_DOUBLE_EQ(inner(e, e), 30.0);
  const AmbientPoint m{{1, 2, 3, 4}, Frame::minkowski};
  EXPECT_DOUBLE_EQ(inner(m, m), 28.0);
  // v and o are null with <v, o> = -1.
  const AmbientPoint v{{1, 0, 0, 0}, Frame::minkowski_null};
  const AmbientPoint o{{0, 0, 1, 0}, Frame::minkowski_null};
  EXPECT_DOUBLE_EQ(inner(v, v), 0.0);
  EXPECT_DOUBLE_EQ(inner(o, o), 0.0);
  EXPECT_DOUBLE_EQ(inner(v, o), -1.0);
  EXPECT_THROW(inner(e, m), frame_error);
}

TEST(SpaceForm, NullFrameRoundTrip) {
  const AmbientPoint x = hyperboloid_point(0.3, -1.2, 0.7);
  const AmbientPoint y = to_pseudo_orthonormal(x);
  EXPECT_EQ(y.frame, Frame::minkowski_null);
  EXPECT_NEAR(inner(y, y), -1.0, 1e-14);
  const AmbientPoint z = to_orthonormal(y);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(z[i], x[i], 1e-14);
  EXPECT_THROW(to_pseudo_orthonormal(AmbientPoint{{1, 0, 0, 0}, Frame::euclidean}), frame_error);
}

TEST(SpaceForm, RotationsAreIsometries) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    const AmbientPoint a = hyperboloid_point(u(rng), u(rng), u(rng));
    const AmbientPoint b = hyperboloid_point(u(rng), u(rng), u(rng));
    const double th = u(rng);
    EXPECT_NEAR(inner(rotate(RotationKind::elliptic, th, a), rotate(RotationKind::elliptic, th, b)), inner(a, b),
                1e-11);
    EXPECT_NEAR(inner(rotate(RotationKind::hyperbolic, th, a), rotate(RotationKind::hyperbolic, th, b)),
                inner(a, b), 1e-10);
    const AmbientPoint an = to_pseudo_orthonormal(a);
    const AmbientPoint bn = to_pseudo_orthonormal(b);
    EXPECT_NEAR(inner(rotate(RotationKind::parabolic, th, an), rotate(RotationKind::parabolic, th, bn)),
                inner(an, bn), 1e-10);
  }
  const AmbientPoint s{{0.5, 0.5, 0.5, 0.5}, Frame::euclidean};
  const AmbientPoint r = rotate(RotationKind::elliptic, 0.8, s);
  EXPECT_NEAR(inner(r, r), 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(r[2], 0.5);
  EXPECT_THROW(rotate(RotationKind::hyperbolic, 0.1, s), frame_error);
  EXPECT_THROW(rotate(RotationKind::parabolic, 0.1, hyperboloid_point(0, 0, 0)), frame_error);
}

TEST(SpaceForm, RotationGroupLaw) {
  const AmbientPoint a = to_pseudo_orthonormal(hyperboloid_point(0.4, 0.1, -0.3));
  const AmbientPoint two = rotate(RotationKind::parabolic, 0.3, rotate(RotationKind::parabolic, 0.5, a));
  const AmbientPoint one = rotate(RotationKind::parabolic, 0.8, a);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(two[i], one[i], 1e-14);
}

TEST(SpaceForm, Projections) {
  const AmbientPoint north{{0, 0, 0, 1}, Frame::euclidean};
  const Point3 p = project(north);
  EXPECT_DOUBLE_EQ(p[0], 0.0);
  EXPECT_THROW(project(AmbientPoint{{0, 0, 0, -1}, Frame::euclidean}), singular_error);
  const AmbientPoint eq{{1, 0, 0, 0}, Frame::euclidean};
  EXPECT_DOUBLE_EQ(project(eq)[0], 1.0);

  const AmbientPoint x = hyperboloid_point(3.0, -2.0, 1.0);
  const Point3 q = project(x);
  EXPECT_LT(q[0] * q[0] + q[1] * q[1] + q[2] * q[2], 1.0);
  const Point3 qn = project(to_pseudo_orthonormal(x));
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(qn[i], q[i], 1e-14);
  EXPECT_THROW(project(AmbientPoint{{-2.0, 0, 0, std::sqrt(3.0)}, Frame::minkowski}), singular_error);
}

TEST(SpaceForm, CrossProductIsOrthogonal) {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (Frame f : {Frame::euclidean, Frame::minkowski, Frame::minkowski_null}) {
    for (int i = 0; i < 50; ++i) {
      const AmbientPoint a{{u(rng), u(rng), u(rng), u(rng)}, f};
      const AmbientPoint b{{u(rng), u(rng), u(rng), u(rng)}, f};
      const AmbientPoint c{{u(rng), u(rng), u(rng), u(rng)}, f};
      const AmbientPoint x = cross(a, b, c);
      EXPECT_EQ(x.frame, f);
      EXPECT_NEAR(inner(x, a), 0.0, 1e-13);
      EXPECT_NEAR(inner(x, b), 0.0, 1e-13);
      EXPECT_NEAR(inner(x, c), 0.0, 1e-13);
    }
  }
}

TEST(SpaceForm, CrossOfFrameVectors) {
  // e1 x e2 x e3 = +-e0, timelike in R^{3,1}.
  const AmbientPoint e1{{0, 1, 0, 0}, Frame::minkowski};
  const AmbientPoint e2{{0, 0, 1, 0}, Frame::minkowski};
  const AmbientPoint e3{{0, 0, 0, 1}, Frame::minkowski};
  const AmbientPoint x = minkowski_cross(e1, e2, e3);
  EXPECT_DOUBLE_EQ(std::abs(x[0]), 1.0);
  EXPECT_DOUBLE_EQ(inner(x, x), -1.0);
  EXPECT_THROW(minkowski_cross(e1, e2, AmbientPoint{{0, 0, 0, 1}, Frame::euclidean}), frame_error);
  EXPECT_THROW(euclidean_cross(e1, e2, e3), frame_error);
}

TEST(SpaceForm, ParallelSurface) {
  const AmbientPoint f = hyperboloid_point(0.2, 0.0, 0.0);
  // unit tangent normal along e2
  const AmbientPoint n{{0, 0, 1, 0}, Frame::minkowski};
  const AmbientPoint g = parallel_surface(f, n, 0.7, SpaceForm::hyperbolic());
  EXPECT_NEAR(inner(g, g), -1.0, 1e-14);
  EXPECT_NEAR(std::acosh(-inner(f, g)), 0.7, 1e-12);

  const AmbientPoint s{{1, 0, 0, 0}, Frame::euclidean};
  const AmbientPoint sn{{0, 1, 0, 0}, Frame::euclidean};
  const AmbientPoint sg = parallel_surface(s, sn, std::numbers::pi / 2, SpaceForm::sphere());
  EXPECT_NEAR(sg[1], 1.0, 1e-15);

  EXPECT_THROW(parallel_surface(f, n, 0.1, SpaceForm::sphere()), frame_error);
  EXPECT_THROW(parallel_surface(f, AmbientPoint{{0, 0, 2, 0}, Frame::minkowski}, 0.1, SpaceForm::hyperbolic()),
               domain_error);
  EXPECT_THROW(parallel_surface(f, AmbientPoint{{0, 1, 0, 0}, Frame::minkowski}, 0.1, SpaceForm::hyperbolic()),
               domain_error);
}
