#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rotsurf/curvature.hpp"
#include "rotsurf/errors.hpp"
#include "rotsurf/profile.hpp"
#include "rotsurf/spaceform.hpp"
#include "rotsurf/surface.hpp"

namespace rotsurf {

struct Check {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  std::size_t samples = 0;
  std::size_t skipped = 0;

  bool passed() const { return max_residual <= tolerance; }  // NaN fails
};

class VerificationReport {
 public:
  void add(Check c) {
    const auto at = std::lower_bound(checks_.begin(), checks_.end(), c.name,
                                     [](const Check& a, const std::string& n) { return a.name < n; });
    checks_.insert(at, std::move(c));
  }

  void merge(const VerificationReport& other) {
    for (const Check& c : other.checks_) add(c);
  }

  bool passed() const {
    return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.passed(); });
  }

  const std::vector<Check>& checks() const noexcept { return checks_; }

  const Check& find(const std::string& name) const {
    for (const Check& c : checks_) {
      if (c.name == name) return c;
    }
    throw domain_error("no check named " + name);
  }

  std::string to_text() const {
    std::ostringstream out;
    for (const Check& c : checks_) {
      out << (c.passed() ? "PASS " : "FAIL ") << c.name << std::setprecision(3) << std::scientific
          << " max=" << c.max_residual << " tol=" << c.tolerance << std::defaultfloat << " n=" << c.samples
          << " skipped=" << c.skipped << '\n';
    }
    return out.str();
  }

 private:
  std::vector<Check> checks_;
};

struct Tolerances {
  double ode = 1e-8;
  double membership = 1e-9;
  double mean_curvature = 1e-5;
  double chc_relation = 1e-4;
  double weingarten = 1e-4;
  double parallel = 1e-4;

  void set(const std::string& name, double value) {
    if (!(value > 0.0) || !std::isfinite(value)) throw spec_error("tolerance must be positive: " + name);
    if (name == "ode") ode = value;
    else if (name == "membership") membership = value;
    else if (name == "mean_curvature") mean_curvature = value;
    else if (name == "chc_relation") chc_relation = value;
    else if (name == "weingarten") weingarten = value;
    else if (name == "parallel") parallel = value;
    else throw spec_error("unknown tolerance name: " + name);
  }
};

// Central part of an interval; verification stays off the guarded edges,
// where psi' and the curvatures blow up.
inline constexpr double grid_margin = 0.05;

inline std::vector<double> interior_grid(Interval range, std::size_t n) {
  if (n < 2) throw domain_error("grid needs at least 2 points");
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = range.at(grid_margin + (1.0 - 2.0 * grid_margin) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  return out;
}

namespace detail {

inline constexpr double psi_step = 1e-4;

inline void track(double& worst, double value) {
  if (std::isnan(value) || std::isnan(worst)) worst = std::numeric_limits<double>::quiet_NaN();
  else worst = std::max(worst, value);
}

}  // namespace detail

// ODE residuals of a profile curve against the equations of `equations`.
// `curve` provides r, dr, psi and d; pass the solution itself, or a perturbed
// copy for negative controls. Residuals are relative to max(1, |rhs|).
template <class Curve>
VerificationReport verify_ode(const Curve& curve, const ProfileSolution& equations, std::size_t samples = 400,
                              const Tolerances& tol = {}) {
  double er = 0.0, epsi = 0.0, ed = 0.0;
  for (double t : interior_grid(equations.domain(), samples)) {
    const double r = curve.r(t);
    const double dr = curve.dr(t);
    const double rhs_r = equations.rdot2_rhs(r);
    detail::track(er, std::abs(dr * dr - rhs_r) / std::max(1.0, std::abs(rhs_r)));

    const double h = detail::psi_step;
    const double fd =
        (8.0 * (curve.psi(t + h) - curve.psi(t - h)) - (curve.psi(t + 2.0 * h) - curve.psi(t - 2.0 * h))) / (12.0 * h);
    const double rhs_psi = equations.dpsi_rhs(r);
    detail::track(epsi, std::abs(fd - rhs_psi) / std::max(1.0, std::abs(rhs_psi)));

    const double d = curve.d(t);
    detail::track(ed, std::abs(equations.d_residual(r, d)) / std::max(1.0, d * d));
  }
  VerificationReport rep;
  rep.add({"ode.r", er, tol.ode, samples, 0});
  rep.add({"ode.psi", epsi, tol.ode, samples, 0});
  rep.add({"ode.d", ed, tol.ode, samples, 0});
  return rep;
}

inline VerificationReport verify_ode(const ProfileSolution& profile, std::size_t samples = 400,
                                     const Tolerances& tol = {}) {
  return verify_ode(profile, profile, samples, tol);
}

// |<f,f> - kappa| over the mesh vertices, relative to max(1, |f|^2) in coordinates.
inline VerificationReport verify_membership(const SurfaceMesh& mesh, const Tolerances& tol = {}) {
  double worst = 0.0;
  for (const AmbientPoint& x : mesh.points) {
    const double scale = std::max(1.0, coordinate_norm(x) * coordinate_norm(x));
    detail::track(worst, std::abs(inner(x, x) - mesh.space_curvature) / scale);
  }
  VerificationReport rep;
  rep.add({"membership", worst, tol.membership, mesh.points.size(), 0});
  return rep;
}

// a K + 2 b H + c = 0
struct Weingarten {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double operator()(double gauss, double mean) const { return a * gauss + 2.0 * b * mean + c; }

  static Weingarten of(const SurfaceSpec& spec) {
    if (spec.is_cmc()) return {0.0, 1.0, -2.0 * spec.curvature};
    return {1.0, -0.5 * spec.curvature, 0.0};
  }
};

inline constexpr double curvature_step = 1e-3;

// Curvature checks on an n x n grid of (theta, t). `point` and `normal` are
// callables (theta, t) -> AmbientPoint; the normal only fixes orientation.
template <class PointFn, class NormalFn>
VerificationReport verify_curvature(const SurfaceSpec& spec, const PointFn& point, const NormalFn& normal,
                                    Interval theta_range, Interval t_range, std::size_t n = 20,
                                    const Tolerances& tol = {},
                                    std::optional<Weingarten> relation = std::nullopt) {
  const Weingarten w = relation.value_or(Weingarten::of(spec));
  double main = 0.0, lw = 0.0;
  std::size_t used = 0, skipped = 0;
  for (double t : interior_grid(t_range, n)) {
    for (double th : interior_grid(theta_range, n)) {
      Curvatures k;
      try {
        k = numerical_curvatures(point, th, t, curvature_step, normal(th, t));
      } catch (const singular_error&) {
        ++skipped;
        continue;
      }
      ++used;
      detail::track(main, spec.is_cmc() ? std::abs(k.mean - spec.curvature)
                                        : std::abs(k.gauss - spec.curvature * k.mean));
      detail::track(lw, std::abs(w(k.gauss, k.mean)));
    }
  }
  if (used == 0) main = lw = std::numeric_limits<double>::quiet_NaN();
  VerificationReport rep;
  if (spec.is_cmc()) rep.add({"curvature.mean", main, tol.mean_curvature, used, skipped});
  else rep.add({"curvature.chc", main, tol.chc_relation, used, skipped});
  rep.add({"curvature.weingarten", lw, tol.weingarten, used, skipped});
  return rep;
}

inline Interval verification_t_range(const Immersion& s) {
  return clip_hyperbolic_chart(s.profile(), s.profile().domain()).first;
}

inline VerificationReport verify_curvature(const Immersion& s, std::size_t n = 20, const Tolerances& tol = {}) {
  return verify_curvature(
      s.spec(), [&](double th, double t) { return s.point(th, t); },
      [&](double th, double t) { return s.normal(th, t); }, s.default_theta_range(), verification_t_range(s), n, tol);
}

// Linear Weingarten relation through two (K, H) samples, unit-normalized.
inline std::optional<Weingarten> fit_weingarten(const Curvatures& p, const Curvatures& q) {
  const std::array<double, 3> u{p.gauss, 2.0 * p.mean, 1.0};
  const std::array<double, 3> v{q.gauss, 2.0 * q.mean, 1.0};
  Weingarten w{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
  const double norm = std::sqrt(w.a * w.a + w.b * w.b + w.c * w.c);
  if (!(norm > 1e-8)) return std::nullopt;
  return Weingarten{w.a / norm, w.b / norm, w.c / norm};
}

struct ParallelFit {
  double offset = 0.0;
  std::optional<Weingarten> relation;
  double residual = std::numeric_limits<double>::quiet_NaN();
  std::size_t skipped = 0;
};

inline constexpr std::size_t parallel_fit_points = 2;
inline constexpr std::size_t parallel_test_points = 50;

// Parallel surfaces cosh(s) f + sinh(s) n of an H3 surface: fit (a,b,c) from
// the first samples along t and measure the relation at the remaining ones.
inline ParallelFit fit_parallel(const Immersion& s, double offset) {
  if (s.spec().space_form.is_sphere()) throw spec_error("parallel surfaces are checked in H3 only");
  const SpaceForm sf = s.spec().space_form;
  const auto g = [&](double th, double t) { return parallel_surface(s.point(th, t), s.normal(th, t), offset, sf); };
  const auto gn = [&](double th, double t) {
    return std::sinh(offset) * s.point(th, t) + std::cosh(offset) * s.normal(th, t);
  };
  const double th = s.default_theta_range().at(0.37);
  const auto ts = interior_grid(verification_t_range(s), parallel_fit_points + parallel_test_points);

  ParallelFit fit;
  fit.offset = offset;
  std::vector<Curvatures> ks;
  for (double t : ts) {
    try {
      ks.push_back(numerical_curvatures(g, th, t, curvature_step, gn(th, t)));
    } catch (const singular_error&) {
      ++fit.skipped;
    }
  }
  if (ks.size() <= parallel_fit_points) return fit;
  // Fit through the two samples farthest apart in (K, H).
  std::size_t far = 1;
  for (std::size_t i = 1; i < ks.size(); ++i) {
    const auto dist = [&](std::size_t j) { return std::hypot(ks[j].gauss - ks[0].gauss, ks[j].mean - ks[0].mean); };
    if (dist(i) > dist(far)) far = i;
  }
  fit.relation = fit_weingarten(ks[0], ks[far]);
  if (!fit.relation) return fit;
  fit.residual = 0.0;
  for (std::size_t i = 1; i < ks.size(); ++i) {
    if (i != far) detail::track(fit.residual, std::abs((*fit.relation)(ks[i].gauss, ks[i].mean)));
  }
  return fit;
}

// Bonnet-type class of a relation a K + 2 b H + c = 0 in H3: |(a + c)/2| < |b|.
inline double bonnet_margin(const Weingarten& w) { return std::abs(0.5 * (w.a + w.c)) - std::abs(w.b); }

// The class is preserved along parallel families; checked when the surface starts in it.
inline bool in_bonnet_class(const SurfaceSpec& spec) {
  return spec.is_cmc() ? spec.curvature < 1.0 : std::abs(spec.curvature) > 1.0;
}

inline VerificationReport verify_parallel(const Immersion& s, const std::vector<double>& offsets,
                                          const Tolerances& tol = {}) {
  double worst = 0.0, klass = 0.0;
  std::size_t skipped = 0;
  for (double o : offsets) {
    const ParallelFit fit = fit_parallel(s, o);
    skipped += fit.skipped;
    detail::track(worst, fit.residual);
    detail::track(klass, fit.relation ? std::max(0.0, bonnet_margin(*fit.relation))
                                      : std::numeric_limits<double>::quiet_NaN());
  }
  VerificationReport rep;
  rep.add({"parallel.weingarten", worst, tol.parallel, offsets.size() * parallel_test_points, skipped});
  if (in_bonnet_class(s.spec())) rep.add({"parallel.bonnet_class", klass, tol.parallel, offsets.size(), 0});
  return rep;
}

}  // namespace rotsurf
