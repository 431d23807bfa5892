#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "rotsurf/curvature.hpp"
#include "rotsurf/errors.hpp"
#include "rotsurf/profile.hpp"
#include "rotsurf/spaceform.hpp"

namespace rotsurf {

// Coordinate display of a rotational surface (or Gauss map) in terms of the
// profile (r, psi, d) and the rotation angle theta.
enum class Chart {
  sphere,              // (r cos th, r sin th, d cos psi, d sin psi)        in R^4
  elliptic,            // (d cosh psi, d sinh psi, r cos th, r sin th)      in R^{3,1}
  elliptic_spacelike,  // (d sinh psi, d cosh psi, r cos th, r sin th)      in R^{3,1}
  hyperbolic,          // (r cosh th, r sinh th, d cos psi, d sin psi)      in R^{3,1}
  parabolic            // (d + r (psi^2 + th^2)/2, r th, r, r psi)          in (v, e1, o, e2)
};

// Profile values and their t-derivatives at one parameter value.
struct ProfileState {
  double r = 0.0;
  double dr = 0.0;
  double psi = 0.0;
  double dpsi = 0.0;
  double d = 0.0;
  double dd = 0.0;
};

inline ProfileState profile_state(const ProfileSolution& p, double t) {
  return {p.r(t), p.dr(t), p.psi(t), p.dpsi(t), p.d(t), p.dd(t)};
}

inline Chart chart_for(const ProfileSolution& p) {
  switch (p.spec().rotation) {
    case RotationKind::parabolic: return Chart::parabolic;
    case RotationKind::hyperbolic: return Chart::hyperbolic;
    case RotationKind::elliptic:
      if (p.spec().space_form.is_sphere()) return Chart::sphere;
      return p.spacelike() ? Chart::elliptic_spacelike : Chart::elliptic;
  }
  return Chart::sphere;
}

inline Frame chart_frame(Chart c) {
  switch (c) {
    case Chart::sphere: return Frame::euclidean;
    case Chart::parabolic: return Frame::minkowski_null;
    default: return Frame::minkowski;
  }
}

inline AmbientPoint display(Chart c, const ProfileState& s, double th) {
  const double r = s.r;
  const double d = s.d;
  switch (c) {
    case Chart::sphere:
      return {{r * std::cos(th), r * std::sin(th), d * std::cos(s.psi), d * std::sin(s.psi)}, Frame::euclidean};
    case Chart::elliptic:
      return {{d * std::cosh(s.psi), d * std::sinh(s.psi), r * std::cos(th), r * std::sin(th)}, Frame::minkowski};
    case Chart::elliptic_spacelike:
      return {{d * std::sinh(s.psi), d * std::cosh(s.psi), r * std::cos(th), r * std::sin(th)}, Frame::minkowski};
    case Chart::hyperbolic:
      return {{r * std::cosh(th), r * std::sinh(th), d * std::cos(s.psi), d * std::sin(s.psi)}, Frame::minkowski};
    case Chart::parabolic:
      return {{d + 0.5 * r * (s.psi * s.psi + th * th), r * th, r, r * s.psi}, Frame::minkowski_null};
  }
  return {};
}

inline AmbientPoint display_dt(Chart c, const ProfileState& s, double th) {
  const double ch = std::cosh(s.psi);
  const double sh = std::sinh(s.psi);
  const double cp = std::cos(s.psi);
  const double sp = std::sin(s.psi);
  const double w = s.d * s.dpsi;
  switch (c) {
    case Chart::sphere:
      return {{s.dr * std::cos(th), s.dr * std::sin(th), s.dd * cp - w * sp, s.dd * sp + w * cp}, Frame::euclidean};
    case Chart::elliptic:
      return {{s.dd * ch + w * sh, s.dd * sh + w * ch, s.dr * std::cos(th), s.dr * std::sin(th)}, Frame::minkowski};
    case Chart::elliptic_spacelike:
      return {{s.dd * sh + w * ch, s.dd * ch + w * sh, s.dr * std::cos(th), s.dr * std::sin(th)}, Frame::minkowski};
    case Chart::hyperbolic:
      return {{s.dr * std::cosh(th), s.dr * std::sinh(th), s.dd * cp - w * sp, s.dd * sp + w * cp},
              Frame::minkowski};
    case Chart::parabolic:
      return {{s.dd + 0.5 * s.dr * (s.psi * s.psi + th * th) + s.r * s.psi * s.dpsi, s.dr * th, s.dr,
               s.dr * s.psi + s.r * s.dpsi},
              Frame::minkowski_null};
  }
  return {};
}

inline AmbientPoint display_dtheta(Chart c, const ProfileState& s, double th) {
  const double r = s.r;
  switch (c) {
    case Chart::sphere: return {{-r * std::sin(th), r * std::cos(th), 0.0, 0.0}, Frame::euclidean};
    case Chart::elliptic:
    case Chart::elliptic_spacelike: return {{0.0, 0.0, -r * std::sin(th), r * std::cos(th)}, Frame::minkowski};
    case Chart::hyperbolic: return {{r * std::sinh(th), r * std::cosh(th), 0.0, 0.0}, Frame::minkowski};
    case Chart::parabolic: return {{r * th, r, 0.0, 0.0}, Frame::minkowski_null};
  }
  return {};
}

namespace detail {

inline constexpr double radicand_tol = 1e-12;

inline void require_chart(const ProfileSolution& profile, double t) {
  if (profile.parabolic()) return;
  const double d2 = profile.d_squared(t);
  if ((profile.spacelike() ? -d2 : d2) < -radicand_tol) {
    throw domain_error("profile leaves the chart at t = " + std::to_string(t) + " (negative radicand)");
  }
}

inline AmbientPoint unit(const AmbientPoint& v, const char* what) {
  const double nn = inner(v, v);
  if (!(std::abs(nn) > 1e-28)) throw singular_error(std::string(what) + ": null or degenerate vector");
  return (1.0 / std::sqrt(std::abs(nn))) * v;
}

}  // namespace detail

// Coordinate display of a cmc surface: frame euclidean (S3), minkowski (H3) or
// minkowski_null (parabolic rotation).
inline AmbientPoint immerse(const SurfaceSpec& spec, const ProfileSolution& profile, double theta, double t) {
  if (!spec.is_cmc()) throw spec_error("immerse needs a cmc spec; use chc_immerse for chc surfaces");
  detail::require_chart(profile, t);
  return display(chart_for(profile), profile_state(profile, t), theta);
}

struct GaussPair {
  AmbientPoint gauss;  // n, unit spacelike
  AmbientPoint point;  // f, on the upper sheet of H3
};

// chc surface recovered from its Gauss map: f is the normalized cross product
// of n, n_t and n_theta, taken on the sheet with positive time component.
inline GaussPair chc_immerse(const SurfaceSpec& spec, const ProfileSolution& profile, double theta, double t) {
  if (spec.is_cmc()) throw spec_error("chc_immerse needs a chc spec");
  detail::require_chart(profile, t);
  const Chart c = chart_for(profile);
  const ProfileState s = profile_state(profile, t);
  const AmbientPoint n = display(c, s, theta);
  const AmbientPoint nt = display_dt(c, s, theta);
  const AmbientPoint nth = display_dtheta(c, s, theta);
  AmbientPoint f = cross(n, nt, nth);
  if (!(inner(f, f) < -1e-28)) throw singular_error("Gauss map frame is degenerate at t = " + std::to_string(t));
  f = detail::unit(f, "recovered point");
  if (to_orthonormal(f)[0] < 0.0) f = -1.0 * f;
  return {n, f};
}

// A rotational surface with an oriented unit normal.
//   cmc: normal chosen so the mean curvature is >= 0 at the base point
//   chc: normal is +-(Gauss map), sign chosen so that K/H = +Hbar
class Immersion {
 public:
  explicit Immersion(ProfileSolution profile)
      : profile_(std::move(profile)), chart_(chart_for(profile_)) {
    const auto surf = [this](double th, double t) { return point(th, t); };
    // chc surfaces may have singular curves; take the first regular candidate.
    for (double frac : {0.5, 0.3, 0.7, 0.15, 0.85, 0.4, 0.6}) {
      const double t0 = profile_.domain().at(frac);
      try {
        const auto k = numerical_curvatures(surf, 0.0, t0, 1e-4, normal(0.0, t0));
        if (spec().is_cmc()) {
          const double target = spec().curvature == 0.0 ? 1.0 : spec().curvature;
          if (k.mean * target < 0.0) orientation_ = -1;
        } else if ((k.gauss / k.mean) * spec().curvature < 0.0) {
          orientation_ = -1;
        }
        return;
      } catch (const singular_error&) {
      }
    }
    throw singular_error("no regular base point to orient the surface");
  }

  const SurfaceSpec& spec() const noexcept { return profile_.spec(); }
  const ProfileSolution& profile() const noexcept { return profile_; }
  Chart chart() const noexcept { return chart_; }
  Frame frame() const noexcept {
    return chart_ == Chart::parabolic ? Frame::minkowski_null
                                      : (spec().space_form.is_sphere() ? Frame::euclidean : Frame::minkowski);
  }
  int orientation() const noexcept { return orientation_; }
  int space_curvature() const noexcept { return spec().space_form.kappa(); }

  AmbientPoint point(double theta, double t) const {
    if (spec().is_cmc()) return immerse(spec(), profile_, theta, t);
    return chc_immerse(spec(), profile_, theta, t).point;
  }

  AmbientPoint normal(double theta, double t) const {
    if (!spec().is_cmc()) {
      detail::require_chart(profile_, t);
      return static_cast<double>(orientation_) * display(chart_, profile_state(profile_, t), theta);
    }
    detail::require_chart(profile_, t);
    const ProfileState s = profile_state(profile_, t);
    const AmbientPoint f = display(chart_, s, theta);
    const AmbientPoint n = cross(f, display_dt(chart_, s, theta), display_dtheta(chart_, s, theta));
    return static_cast<double>(orientation_) * detail::unit(n, "surface normal");
  }

  Interval default_theta_range() const {
    if (spec().rotation == RotationKind::hyperbolic) return {-1.0, 1.0};
    return {0.0, 2.0 * std::numbers::pi};
  }

 private:
  ProfileSolution profile_;
  Chart chart_;
  int orientation_ = 1;
};

enum class Projection { automatic, stereographic, poincare, none };

struct SurfaceMesh {
  std::size_t ntheta = 0;
  std::size_t nt = 0;
  Interval theta_range;
  Interval t_range;
  bool clipped = false;
  int space_curvature = 1;
  std::vector<AmbientPoint> points;  // row-major in (t, theta)
  std::vector<Point3> projected;
  std::vector<std::pair<double, double>> params;  // (theta, t)
  std::vector<std::array<std::size_t, 4>> faces;

  std::size_t index(std::size_t it, std::size_t ith) const { return it * ntheta + ith; }
};

// Shrinks a t-range of a hyperbolic-rotation cmc profile to where r > 1 + 1e-9
// (the chart needs sqrt(r^2 - 1)). Assumes r is largest at the interval middle.
inline std::pair<Interval, bool> clip_hyperbolic_chart(const ProfileSolution& profile, Interval range) {
  if (!profile.spec().is_cmc() || profile.spec().rotation != RotationKind::hyperbolic) return {range, false};
  constexpr double floor = 1.0 + 1e-9;
  const auto ok = [&](double t) { return profile.r(t) > floor; };
  const double mid = range.mid();
  if (!ok(mid)) throw domain_error("hyperbolic chart: r <= 1 at the middle of the t-range");
  bool clipped = false;
  const auto shrink = [&](double bad, double good) {
    for (int i = 0; i < 200 && std::abs(bad - good) > 1e-15 * std::max(1.0, std::abs(good)); ++i) {
      const double m = 0.5 * (bad + good);
      (ok(m) ? good : bad) = m;
    }
    return good;
  };
  if (!ok(range.lo)) range.lo = shrink(range.lo, mid), clipped = true;
  if (!ok(range.hi)) range.hi = shrink(range.hi, mid), clipped = true;
  return {range, clipped};
}

inline Point3 project(const AmbientPoint& x, Projection mode) {
  const bool sphere = x.frame == Frame::euclidean;
  switch (mode) {
    case Projection::automatic: return project(x);
    case Projection::stereographic:
      if (!sphere) throw spec_error("stereographic projection applies to S3 points");
      return project(x);
    case Projection::poincare:
      if (sphere) throw spec_error("Poincare ball projection applies to H3 points");
      return project(x);
    case Projection::none: return {x[0], x[1], x[2]};
  }
  return {};
}

inline SurfaceMesh sample_mesh(const Immersion& surface, std::size_t ntheta, std::size_t nt,
                               std::optional<Interval> theta_range = std::nullopt,
                               std::optional<Interval> t_range = std::nullopt,
                               Projection projection = Projection::automatic) {
  if (ntheta < 2 || nt < 2) throw domain_error("mesh resolution must be at least 2 x 2");
  SurfaceMesh mesh;
  mesh.ntheta = ntheta;
  mesh.nt = nt;
  mesh.space_curvature = surface.space_curvature();
  mesh.theta_range = theta_range.value_or(surface.default_theta_range());
  const Interval domain = surface.profile().domain();
  Interval tr = t_range.value_or(domain);
  const double slack = 1e-12 * std::max(1.0, domain.length());
  if (!surface.profile().periodic() && (tr.lo < domain.lo - slack || tr.hi > domain.hi + slack)) {
    throw domain_error("t-range leaves the profile domain");
  }
  std::tie(tr, mesh.clipped) = clip_hyperbolic_chart(surface.profile(), tr);
  mesh.t_range = tr;

  mesh.points.reserve(ntheta * nt);
  mesh.projected.reserve(ntheta * nt);
  mesh.params.reserve(ntheta * nt);
  for (std::size_t it = 0; it < nt; ++it) {
    const double t = tr.at(static_cast<double>(it) / static_cast<double>(nt - 1));
    for (std::size_t ith = 0; ith < ntheta; ++ith) {
      const double th = mesh.theta_range.at(static_cast<double>(ith) / static_cast<double>(ntheta - 1));
      const AmbientPoint x = surface.point(th, t);
      mesh.points.push_back(x);
      mesh.projected.push_back(project(x, projection));
      mesh.params.emplace_back(th, t);
    }
  }
  for (std::size_t it = 0; it + 1 < nt; ++it) {
    for (std::size_t ith = 0; ith + 1 < ntheta; ++ith) {
      mesh.faces.push_back(
          {mesh.index(it, ith), mesh.index(it, ith + 1), mesh.index(it + 1, ith + 1), mesh.index(it + 1, ith)});
    }
  }
  return mesh;
}

}  // namespace rotsurf
