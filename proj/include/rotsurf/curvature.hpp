#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>

#include "rotsurf/errors.hpp"
#include "rotsurf/spaceform.hpp"

namespace rotsurf {

// Principal curvatures (sorted), mean and extrinsic Gauss curvature, and the
// unit normal used to measure them.
struct Curvatures {
  double k1 = 0.0;
  double k2 = 0.0;
  double mean = 0.0;
  double gauss = 0.0;
  AmbientPoint normal;
};

// Shape operator of a parametrized surface (u,v) -> AmbientPoint by fourth-order
// central differences with step h. The normal is the normalized cross product
// of f, f_u, f_v; if `reference` is given the normal is flipped to agree with it.
template <class Surface>
Curvatures numerical_curvatures(const Surface& surface, double u, double v, double h = 1e-4,
                                const std::optional<AmbientPoint>& reference = std::nullopt) {
  if (!(h >= 1e-6 && h <= 1e-3)) throw domain_error("finite-difference step outside [1e-6, 1e-3]");

  constexpr std::array<int, 4> offsets{-2, -1, 1, 2};
  constexpr std::array<double, 4> first{1.0, -8.0, 8.0, -1.0};      // / 12h
  constexpr std::array<double, 4> second{-1.0, 16.0, 16.0, -1.0};   // -30 f0, / 12h^2

  const auto eval = [&](int i, int j) { return to_orthonormal(surface(u + i * h, v + j * h)); };
  const AmbientPoint raw = surface(u, v);
  const AmbientPoint f0 = to_orthonormal(raw);

  AmbientPoint fu{{}, f0.frame}, fv{{}, f0.frame}, fuu = -30.0 * f0, fvv = -30.0 * f0, fuv{{}, f0.frame};
  for (std::size_t a = 0; a < offsets.size(); ++a) {
    const AmbientPoint pu = eval(offsets[a], 0);
    const AmbientPoint pv = eval(0, offsets[a]);
    fu = fu + first[a] * pu;
    fv = fv + first[a] * pv;
    fuu = fuu + second[a] * pu;
    fvv = fvv + second[a] * pv;
    for (std::size_t b = 0; b < offsets.size(); ++b) fuv = fuv + (first[a] * first[b]) * eval(offsets[a], offsets[b]);
  }
  fu = (1.0 / (12.0 * h)) * fu;
  fv = (1.0 / (12.0 * h)) * fv;
  fuu = (1.0 / (12.0 * h * h)) * fuu;
  fvv = (1.0 / (12.0 * h * h)) * fvv;
  fuv = (1.0 / (144.0 * h * h)) * fuv;

  const double e = inner(fu, fu);
  const double f = inner(fu, fv);
  const double g = inner(fv, fv);
  const double det = e * g - f * f;
  if (det < 1e-10) throw singular_error("degenerate first fundamental form (axis or singular point)");

  AmbientPoint n = cross(f0, fu, fv);
  const double nn = inner(n, n);
  if (!(nn > 0.0)) throw singular_error("surface normal is not spacelike");
  n = (1.0 / std::sqrt(nn)) * n;
  if (reference && inner(n, to_orthonormal(*reference)) < 0.0) n = -1.0 * n;

  const double l = inner(fuu, n);
  const double m = inner(fuv, n);
  const double nv = inner(fvv, n);

  Curvatures out;
  out.mean = (e * nv - 2.0 * f * m + g * l) / (2.0 * det);
  out.gauss = (l * nv - m * m) / det;
  const double disc = std::sqrt(std::max(0.0, out.mean * out.mean - out.gauss));
  out.k1 = out.mean - disc;
  out.k2 = out.mean + disc;
  out.normal = raw.frame == Frame::minkowski_null ? to_pseudo_orthonormal(n) : n;
  return out;
}

}  // namespace rotsurf
