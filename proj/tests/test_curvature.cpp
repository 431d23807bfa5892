#include <cmath>

#include <gtest/gtest.h>

#include "rotsurf/curvature.hpp"

using namespace rotsurf;

namespace {

// Flat torus at distance rho from the (x2,x3) circle; principal curvatures
// tan(rho) and -cot(rho) for one orientation.
AmbientPoint product_torus(double rho, double u, double v) {
  return {{std::cos(rho) * std::cos(u), std::cos(rho) * std::sin(u), std::sin(rho) * std::cos(v),
           std::sin(rho) * std::sin(v)},
          Frame::euclidean};
}

AmbientPoint horosphere(double u, double v) {
  return {{0.5 + 0.5 * (u * u + v * v), u, 1.0, v}, Frame::minkowski_null};
}

AmbientPoint geodesic_plane(double u, double v) {
  return {{std::cosh(u) * std::cosh(v), std::sinh(u) * std::cosh(v), std::sinh(v), 0.0}, Frame::minkowski};
}

}  // namespace

TEST(Curvature, CliffordTorus) {
  const auto surf = [](double u, double v) { return product_torus(M_PI / 4, u, v); };
  for (double u : {0.1, 1.3, 4.0}) {
    const Curvatures k = numerical_curvatures(surf, u, 0.7, 1e-3);
    EXPECT_NEAR(k.mean, 0.0, 1e-9);
    EXPECT_NEAR(k.gauss, -1.0, 1e-9);
    EXPECT_NEAR(k.k1, -1.0, 1e-8);
    EXPECT_NEAR(k.k2, 1.0, 1e-8);
  }
}

TEST(Curvature, ProductTori) {
  for (double rho : {0.3, 0.6, 1.1}) {
    const auto surf = [rho](double u, double v) { return product_torus(rho, u, v); };
    const Curvatures k = numerical_curvatures(surf, 0.4, 2.2, 1e-3);
    EXPECT_NEAR(std::abs(k.mean), std::abs(std::tan(rho) - 1.0 / std::tan(rho)) / 2.0, 1e-8);
    EXPECT_NEAR(k.gauss, -1.0, 1e-8);
  }
}

TEST(Curvature, Horosphere) {
  const Curvatures k = numerical_curvatures(horosphere, 0.3, -0.8, 1e-3);
  EXPECT_NEAR(std::abs(k.mean), 1.0, 1e-8);
  EXPECT_NEAR(k.gauss, 1.0, 1e-8);
  EXPECT_EQ(k.normal.frame, Frame::minkowski_null);
  EXPECT_NEAR(inner(k.normal, k.normal), 1.0, 1e-10);
  EXPECT_NEAR(inner(k.normal, horosphere(0.3, -0.8)), 0.0, 1e-10);
}

TEST(Curvature, TotallyGeodesicPlane) {
  const Curvatures k = numerical_curvatures(geodesic_plane, 0.5, -0.2, 1e-3);
  EXPECT_NEAR(k.mean, 0.0, 1e-9);
  EXPECT_NEAR(k.gauss, 0.0, 1e-9);
}

TEST(Curvature, ReferenceNormalFixesOrientation) {
  const auto surf = horosphere;
  const Curvatures a = numerical_curvatures(surf, 0.1, 0.2);
  const Curvatures b = numerical_curvatures(surf, 0.1, 0.2, 1e-4, -1.0 * a.normal);
  EXPECT_NEAR(a.mean, -b.mean, 1e-7);
  EXPECT_NEAR(a.gauss, b.gauss, 1e-7);
}

TEST(Curvature, StepAndDegeneracyErrors) {
  EXPECT_THROW(numerical_curvatures(horosphere, 0, 0, 1e-2), domain_error);
  EXPECT_THROW(numerical_curvatures(horosphere, 0, 0, 1e-8), domain_error);
  const auto line = [](double u, double) { return product_torus(0.5, u, 0.0); };
  EXPECT_THROW(numerical_curvatures(line, 0.3, 0.3), singular_error);
}
