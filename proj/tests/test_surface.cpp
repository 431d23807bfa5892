#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "rotsurf/surface.hpp"
#include "support.hpp"

using namespace rotsurf;

namespace {

double max_membership_error(const Immersion& s, int n) {
  double worst = 0.0;
  const Interval th = s.default_theta_range();
  const Interval tr = clip_hyperbolic_chart(s.profile(), s.profile().domain()).first;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      const AmbientPoint x = s.point(th.at(double(j) / n), tr.at(0.02 + 0.96 * i / n));
      worst = std::max(worst, std::abs(inner(x, x) - s.space_curvature()) / std::max(1.0, coordinate_norm(x) * coordinate_norm(x)));
    }
  }
  return worst;
}

}  // namespace

TEST(Surface, ChartSelection) {
  const auto sphere = solve_profile(SurfaceSpec::cmc(SpaceForm::sphere(), RotationKind::elliptic, 1.0, 0.2));
  EXPECT_EQ(chart_for(sphere), Chart::sphere);
  EXPECT_EQ(chart_frame(Chart::sphere), Frame::euclidean);
  const auto par = solve_profile(
      SurfaceSpec::cmc(SpaceForm::hyperbolic(Basis::pseudo_orthonormal), RotationKind::parabolic, 2.0, 0.4));
  EXPECT_EQ(chart_for(par), Chart::parabolic);
  EXPECT_EQ(chart_frame(Chart::parabolic), Frame::minkowski_null);
  const auto spacelike =
      solve_profile(SurfaceSpec::chc(SpaceForm::hyperbolic(), RotationKind::elliptic, 1.0, 0.5));
  EXPECT_EQ(chart_for(spacelike), Chart::elliptic_spacelike);
}

TEST(Surface, ChartDerivativesMatchFiniteDifferences) {
  const double h = 1e-6;
  for (const SurfaceSpec& spec : rotsurf::testing::random_specs(11, 1)) {
    const ProfileSolution p = solve_profile(spec);
    const Chart c = chart_for(p);
    const double t = p.domain().at(0.41);
    const double th = 0.3;
    const ProfileState s = profile_state(p, t);
    const AmbientPoint dt = display_dt(c, s, th);
    const AmbientPoint dth = display_dtheta(c, s, th);
    const AmbientPoint fdt = (1.0 / (2 * h)) * (display(c, profile_state(p, t + h), th) - display(c, profile_state(p, t - h), th));
    const AmbientPoint fdth = (1.0 / (2 * h)) * (display(c, s, th + h) - display(c, s, th - h));
    const double scale = std::max(1.0, coordinate_norm(dt));
    EXPECT_LT(coordinate_norm(dt - fdt), 1e-6 * scale) << describe(spec);
    EXPECT_LT(coordinate_norm(dth - fdth), 1e-6 * std::max(1.0, coordinate_norm(dth))) << describe(spec);
  }
}

TEST(Surface, PointsLieInTheSpaceForm) {
  for (const SurfaceSpec& spec : rotsurf::testing::random_specs(12, 2)) {
    const Immersion s(solve_profile(spec));
    EXPECT_LT(max_membership_error(s, 12), 1e-10) << describe(spec);
  }
}

TEST(Surface, NormalIsUnitAndTangentToTheSpaceForm) {
  for (const SurfaceSpec& spec : rotsurf::testing::random_specs(13, 1)) {
    const Immersion s(solve_profile(spec));
    const double t = s.profile().domain().at(0.45);
    const double th = s.default_theta_range().at(0.2);
    const AmbientPoint x = s.point(th, t);
    const AmbientPoint n = s.normal(th, t);
    EXPECT_NEAR(inner(n, n), 1.0, 1e-9) << describe(spec);
    EXPECT_NEAR(inner(n, x), 0.0, 1e-9 * std::max(1.0, coordinate_norm(x))) << describe(spec);
  }
}

TEST(Surface, RotationsActOnTheAngleParameter) {
  for (const SurfaceSpec& spec : rotsurf::testing::random_specs(14, 1)) {
    if (!spec.is_cmc()) continue;
    const Immersion s(solve_profile(spec));
    const double t = s.profile().domain().at(0.5);
    const double a = 0.25;
    const double b = 0.4;
    const AmbientPoint moved = rotate(spec.rotation, b, s.point(a, t));
    const AmbientPoint direct = s.point(a + b, t);
    EXPECT_LT(coordinate_norm(moved - direct), 1e-11 * std::max(1.0, coordinate_norm(direct))) << describe(spec);
  }
}

TEST(Surface, CliffordTorusIsFlatProduct) {
  const Immersion s(solve_profile(SurfaceSpec::cmc(SpaceForm::sphere(), RotationKind::elliptic, 0.0, 0.5)));
  const AmbientPoint x = s.point(0.7, 1.3);
  EXPECT_NEAR(x[0] * x[0] + x[1] * x[1], 0.5, 1e-15);
  EXPECT_NEAR(x[2] * x[2] + x[3] * x[3], 0.5, 1e-15);
}

TEST(Surface, ChcGaussMapIsOrthogonalToTheSurface) {
  const SpaceForm h3 = SpaceForm::hyperbolic();
  for (const auto& spec : {SurfaceSpec::chc(h3, RotationKind::elliptic, 2.0, 0.4),
                           SurfaceSpec::chc(h3, RotationKind::hyperbolic, -1.5, 0.7),
                           SurfaceSpec::chc(h3, RotationKind::hyperbolic, 1.0, 0.5)}) {
    const ProfileSolution p = solve_profile(spec);
    const double t = p.domain().at(0.6);
    const GaussPair g = chc_immerse(spec, p, 0.2, t);
    EXPECT_NEAR(inner(g.point, g.point), -1.0, 1e-10);
    EXPECT_NEAR(inner(g.gauss, g.gauss), 1.0, 1e-10);
    EXPECT_NEAR(inner(g.point, g.gauss), 0.0, 1e-10);
    EXPECT_GT(g.point[0], 0.0);
  }
  EXPECT_THROW(chc_immerse(SurfaceSpec::cmc(h3, RotationKind::elliptic, 2.0, 0.4),
                           solve_profile(SurfaceSpec::cmc(h3, RotationKind::elliptic, 2.0, 0.4)), 0.0, 0.0),
               spec_error);
}

TEST(Surface, ImmerseRejectsChcSpecs) {
  const auto spec = SurfaceSpec::chc(SpaceForm::hyperbolic(), RotationKind::elliptic, 2.0, 0.4);
  EXPECT_THROW(immerse(spec, solve_profile(spec), 0.0, 0.0), spec_error);
}

TEST(Mesh, LayoutAndFaces) {
  const Immersion s(solve_profile(SurfaceSpec::cmc(SpaceForm::sphere(), RotationKind::elliptic, 1.0, 0.3)));
  const SurfaceMesh m = sample_mesh(s, 5, 4);
  EXPECT_EQ(m.points.size(), 20u);
  EXPECT_EQ(m.projected.size(), 20u);
  EXPECT_EQ(m.faces.size(), 12u);
  EXPECT_EQ(m.index(2, 3), 13u);
  EXPECT_EQ(m.params[m.index(1, 0)].second, m.t_range.at(1.0 / 3.0));
  EXPECT_DOUBLE_EQ(m.params[m.index(0, 4)].first, 2.0 * std::numbers::pi);
  const auto& f = m.faces.front();
  EXPECT_EQ(f[0], 0u);
  EXPECT_EQ(f[1], 1u);
  EXPECT_EQ(f[2], 6u);
  EXPECT_EQ(f[3], 5u);
  EXPECT_THROW(sample_mesh(s, 1, 4), domain_error);
}

TEST(Mesh, PeriodicProfilesAcceptAnyRange) {
  const Immersion s(solve_profile(SurfaceSpec::cmc(SpaceForm::sphere(), RotationKind::elliptic, 1.0, 0.3)));
  EXPECT_NO_THROW(sample_mesh(s, 4, 4, std::nullopt, Interval{-20.0, 20.0}));
  const Immersion open(solve_profile(SurfaceSpec::cmc(SpaceForm::hyperbolic(), RotationKind::elliptic, 0.5, 0.4)));
  const Interval d = open.profile().domain();
  EXPECT_THROW(sample_mesh(open, 4, 4, std::nullopt, Interval{d.lo - 1.0, d.hi}), domain_error);
}

TEST(Mesh, HyperbolicChartIsClipped) {
  const auto spec = SurfaceSpec::cmc(SpaceForm::hyperbolic(), RotationKind::hyperbolic, 2.0, 2.5);
  const Immersion s(solve_profile(spec));
  const SurfaceMesh m = sample_mesh(s, 6, 40);
  for (double t : {m.t_range.lo, m.t_range.mid(), m.t_range.hi}) EXPECT_GT(s.profile().r(t), 1.0);
  double worst = 0.0;
  for (const auto& x : m.points) worst = std::max(worst, std::abs(inner(x, x) + 1.0) / std::max(1.0, coordinate_norm(x) * coordinate_norm(x)));
  EXPECT_LT(worst, 1e-10);
}

TEST(Mesh, ProjectionModes) {
  const AmbientPoint s{{0.5, 0.5, 0.5, 0.5}, Frame::euclidean};
  const AmbientPoint h{{std::sqrt(2.0), 1.0, 0.0, 0.0}, Frame::minkowski};
  EXPECT_NO_THROW(project(s, Projection::stereographic));
  EXPECT_THROW(project(s, Projection::poincare), spec_error);
  EXPECT_THROW(project(h, Projection::stereographic), spec_error);
  const Point3 raw = project(h, Projection::none);
  EXPECT_DOUBLE_EQ(raw[0], std::sqrt(2.0));
  const Point3 ball = project(h, Projection::poincare);
  EXPECT_LT(ball[0] * ball[0] + ball[1] * ball[1] + ball[2] * ball[2], 1.0);
}
