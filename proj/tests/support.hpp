#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "rotsurf/profile.hpp"
#include "rotsurf/surface.hpp"

namespace rotsurf::testing {

inline SpaceForm h3_for(RotationKind kind) {
  return SpaceForm::hyperbolic(kind == RotationKind::parabolic ? Basis::pseudo_orthonormal : Basis::orthonormal);
}

// C drawn from the feasible set intersected with [-3, 3], kept 5% away from
// finite endpoints and at least 0.1 away from an excluded zero.
inline double draw_C(const FeasibleSet& fs, std::mt19937_64& rng) {
  const double lo = std::isfinite(fs.lo) ? fs.lo : -3.0;
  const double hi = std::isfinite(fs.hi) ? fs.hi : std::max(lo + 1.0, 3.0);
  const double pad = 0.05 * (hi - lo);
  std::uniform_real_distribution<double> u(lo + pad, hi - pad);
  for (;;) {
    const double C = u(rng);
    if (fs.excludes_zero && std::abs(C) < 0.1) continue;
    if (fs.contains(C)) return C;
  }
}

struct Family {
  SpaceForm space;
  RotationKind rotation;
  SurfaceClass surface_class;
  double curvature_lo;
  double curvature_hi;
};

// Families covering every regime and rotation kind.
inline std::vector<Family> families() {
  const auto E = RotationKind::elliptic;
  const auto Hy = RotationKind::hyperbolic;
  const auto P = RotationKind::parabolic;
  std::vector<Family> out{{SpaceForm::sphere(), E, SurfaceClass::cmc, 0.0, 3.0}};
  for (auto k : {E, Hy, P}) {
    out.push_back({h3_for(k), k, SurfaceClass::cmc, 1.2, 3.0});   // delaunay
    out.push_back({h3_for(k), k, SurfaceClass::cmc, 0.0, 0.9});   // sub-horospherical
    out.push_back({h3_for(k), k, SurfaceClass::cmc, 1.0, 1.0});   // horospherical
    out.push_back({h3_for(k), k, SurfaceClass::chc, 1.2, 3.0});   // chc generic
    out.push_back({h3_for(k), k, SurfaceClass::chc, 1.0, 1.0});   // chc bryant
  }
  return out;
}

inline SurfaceSpec draw_spec(const Family& f, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(f.curvature_lo, f.curvature_hi);
  SurfaceSpec s{f.space, f.rotation, f.surface_class, u(rng), 0.0};
  s.C = draw_C(feasible_interval(s), rng);
  s.validate();
  return s;
}

// `per_family` draws from each family, in a fixed order.
inline std::vector<SurfaceSpec> random_specs(std::uint64_t seed, int per_family) {
  std::mt19937_64 rng(seed);
  std::vector<SurfaceSpec> out;
  for (const Family& f : families()) {
    for (int i = 0; i < per_family; ++i) out.push_back(draw_spec(f, rng));
  }
  return out;
}

// r'' = (2 kappa- r^3 + beta r) / Delta^2, the t-derivative of the r'^2 equation,
// with beta rebuilt from the regime constants.
inline double radial_acceleration(const ProfileSolution& p, double r) {
  const Regime& g = p.regime();
  const double d2 = g.delta * g.delta;
  const double beta = (p.parabolic() ? 0.0 : d2 / p.kappa1()) + 2.0 * g.epsilon * p.spec().C;
  return (2.0 * g.kappa_minus * r * r * r + beta * r) / d2;
}

// Classical RK4 on (r, r', psi) from t0 to t1 started from the closed-form
// state at t0. Returns the state at t1.
inline std::array<double, 3> rk4_profile(const ProfileSolution& p, double t0, double t1, int steps) {
  using State = std::array<double, 3>;
  const auto rhs = [&](const State& y) {
    return State{y[1], radial_acceleration(p, y[0]), p.dpsi_rhs(y[0])};
  };
  State y{p.r(t0), p.dr(t0), p.psi(t0)};
  const double h = (t1 - t0) / steps;
  const auto axpy = [](const State& a, double s, const State& b) {
    return State{a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]};
  };
  for (int i = 0; i < steps; ++i) {
    const State k1 = rhs(y);
    const State k2 = rhs(axpy(y, 0.5 * h, k1));
    const State k3 = rhs(axpy(y, 0.5 * h, k2));
    const State k4 = rhs(axpy(y, h, k3));
    for (int j = 0; j < 3; ++j) y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
  }
  return y;
}

// Profile with r shifted by a constant: the negative control.
struct ShiftedProfile {
  const ProfileSolution& base;
  double shift;

  double r(double t) const { return base.r(t) + shift; }
  double dr(double t) const { return base.dr(t); }
  double psi(double t) const { return base.psi(t); }
  double d(double t) const { return base.d(t); }
};

// Surface rebuilt from the profile with r shifted by a constant and the point
// pulled back onto the space form. For chc the shift enters the Gauss map.
inline auto shifted_surface(const Immersion& s, double shift) {
  return [&s, shift](double th, double t) {
    ProfileState st = profile_state(s.profile(), t);
    st.r += shift;
    const Chart c = s.chart();
    AmbientPoint x = display(c, st, th);
    if (!s.spec().is_cmc()) x = cross(x, display_dt(c, st, th), display_dtheta(c, st, th));
    x = (1.0 / std::sqrt(std::abs(inner(x, x)))) * x;
    if (x.frame != Frame::euclidean && to_orthonormal(x)[0] < 0.0) x = -1.0 * x;
    return x;
  };
}

}  // namespace rotsurf::testing
