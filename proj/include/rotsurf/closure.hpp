#pragma once

// Embedded cmc tori of revolution in S3: the profile closes after n periods
// of r when the angle advances by 2 pi / n per period.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "rotsurf/errors.hpp"
#include "rotsurf/profile.hpp"
#include "rotsurf/surface.hpp"

namespace rotsurf {

inline constexpr double closure_tol = 1e-10;
inline constexpr double bracket_shrink = 1e-6;
inline constexpr int bracket_cells = 64;

inline SurfaceSpec torus_spec(double H, double C) {
  return SurfaceSpec::cmc(SpaceForm::sphere(), RotationKind::elliptic, H, C);
}

// Angle gained by psi over one period of r.
inline double period_advance(const ProfileSolution& profile) {
  return profile.psi(profile.period()) - profile.psi(0.0);
}

// n |psi(alpha) - psi(0)| - 2 pi.
inline double closure_defect(double H, double C, int n) {
  if (n < 1) throw domain_error("lobe count must be a positive integer");
  const ProfileSolution profile = solve_profile(torus_spec(H, C));
  if (!profile.periodic()) throw infeasible_error("C is on the boundary of the feasible interval", "");
  return n * std::abs(period_advance(profile)) - 2.0 * std::numbers::pi;
}

// Open feasible interval of C, shrunk at both ends.
inline Interval default_bracket(double H) {
  const FeasibleSet fs = feasible_interval(torus_spec(H, 0.0));
  const double pad = bracket_shrink * (fs.hi - fs.lo);
  return {fs.lo + pad, fs.hi - pad};
}

struct DefectSample {
  double C = 0.0;
  double defect = 0.0;
};

// Values of C where the defect is not continuous: C = 0 (p = 1, the period
// diverges) and C = H (profile through the axis, psi jumps by pi).
inline std::vector<double> defect_breakpoints(double H) { return H == 0.0 ? std::vector{0.0} : std::vector{0.0, H}; }

inline constexpr double jump_gap = 1e-7;

inline bool straddles_breakpoint(double H, double lo, double hi) {
  const auto bps = defect_breakpoints(H);
  return std::any_of(bps.begin(), bps.end(), [&](double b) { return lo < b && b < hi; });
}

// Samples of the defect on a uniform grid plus both sides of each breakpoint.

inline std::vector<DefectSample> defect_table(double H, int n, Interval bracket, int cells = bracket_cells) {
  std::vector<double> cs;
  for (int i = 0; i <= cells; ++i) cs.push_back(bracket.at(static_cast<double>(i) / cells));
  for (double b : defect_breakpoints(H)) {
    for (double c : {b - jump_gap, b + jump_gap}) {
      if (c > bracket.lo && c < bracket.hi) cs.push_back(c);
    }
  }
  std::sort(cs.begin(), cs.end());
  std::vector<DefectSample> table;
  table.reserve(cs.size());
  for (double C : cs) {
    double defect = std::numeric_limits<double>::quiet_NaN();
    try {
      defect = closure_defect(H, C, n);
    } catch (const range_error&) {
    } catch (const infeasible_error&) {
    }
    table.push_back({C, defect});
  }
  return table;
}

inline std::string format_table(const std::vector<DefectSample>& table) {
  std::ostringstream out;
  out.precision(10);
  out << "C defect\n";
  for (const auto& s : table) out << s.C << ' ' << s.defect << '\n';
  return out.str();
}

struct TorusSolution {
  int n = 0;
  double C = 0.0;
  double period = 0.0;
  double advance = 0.0;  // psi(alpha) - psi(0)
  double defect = 0.0;
  bool embedded = false;  // C < 0
  ProfileSolution profile;
};

// All roots of the closure defect in the bracket, ordered by C.
// Sign changes at the 2 pi jump (C = H) are rejected by the residual check.
inline std::vector<TorusSolution> solve_torus(double H, int n, std::optional<Interval> bracket = std::nullopt) {
  if (!(H >= 0.0)) throw domain_error("torus closure needs H >= 0");
  const Interval b = bracket.value_or(default_bracket(H));
  const FeasibleSet fs = feasible_interval(torus_spec(H, 0.0));
  if (!(b.lo < b.hi) || b.lo <= fs.lo || b.hi >= fs.hi) {
    throw domain_error("bracket must lie inside the open feasible interval " + fs.describe());
  }
  const auto table = defect_table(H, n, b);
  const auto f = [&](double C) { return closure_defect(H, C, n); };

  std::vector<TorusSolution> roots;
  for (std::size_t i = 0; i + 1 < table.size(); ++i) {
    const DefectSample lo = table[i];
    const DefectSample hi = table[i + 1];
    if (std::isnan(lo.defect) || std::isnan(hi.defect) || straddles_breakpoint(H, lo.C, hi.C)) continue;
    double C = 0.0;
    if (lo.defect == 0.0) {
      C = lo.C;
    } else if (hi.defect == 0.0 || (lo.defect > 0.0) == (hi.defect > 0.0)) {
      continue;
    } else {
      std::uintmax_t iters = 200;
      const auto [a, c] = boost::math::tools::toms748_solve(f, lo.C, hi.C, lo.defect, hi.defect,
                                                            boost::math::tools::eps_tolerance<double>(52), iters);
      C = std::abs(f(a)) <= std::abs(f(c)) ? a : c;
    }
    const double defect = f(C);
    if (std::abs(defect) >= closure_tol) continue;
    ProfileSolution profile = solve_profile(torus_spec(H, C));
    const double alpha = profile.period();
    roots.push_back({n, C, alpha, period_advance(profile), defect, C < 0.0, std::move(profile)});
  }
  if (roots.empty()) {
    throw not_found_error("no closure root for H = " + std::to_string(H) + ", n = " + std::to_string(n),
                          format_table(table));
  }
  return roots;
}

// Largest coordinate distance between f(theta, t0 + n alpha) and f(theta, t0)
// over `samples` angles.
inline double seam_gap(const TorusSolution& torus, double t0 = 0.0, std::size_t samples = 64) {
  const Immersion surface(torus.profile);
  const double span = torus.n * torus.period;
  double gap = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double th = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(samples);
    gap = std::max(gap, coordinate_norm(surface.point(th, t0 + span) - surface.point(th, t0)));
  }
  return gap;
}

inline SurfaceMesh torus_mesh(const TorusSolution& torus, std::size_t ntheta, std::size_t nt,
                              Projection projection = Projection::stereographic) {
  const Immersion surface(torus.profile);
  return sample_mesh(surface, ntheta, nt, Interval{0.0, 2.0 * std::numbers::pi},
                     Interval{0.0, torus.n * torus.period}, projection);
}

}  // namespace rotsurf
