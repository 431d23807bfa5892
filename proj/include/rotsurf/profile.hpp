#pragma once

// Rotational cmc/chc profiles: regime classification, the root quadratic and
// the coordinate functions r(t), psi(t), d(t) of the profile curve.
//
// The ODE system, with (kappa+, kappa-, eps, Delta) from classify():
//   r'^2 = (kappa- r^4 + beta r^2 + kappa+ C^2) / Delta^2,
//          beta = Delta^2/kappa1 + 2 eps C   (non-parabolic),  2 eps C   (parabolic)
//   psi' = (eps r^2 + kappa+ C) / (kappa+ Delta + kappa1 r^2)  (non-parabolic)
//   psi' = (eps r^2 + kappa+ C) / r^2                          (parabolic)
//   kappa2 d^2 + kappa+ Delta + kappa1 r^2 = 0                (non-parabolic)
//   d = kappa+ Delta / (2 r)                                   (parabolic)
// The square-root prefactors of psi' equal 1 in every admissible case.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>

#include "rotsurf/elliptic.hpp"
#include "rotsurf/errors.hpp"
#include "rotsurf/spaceform.hpp"

namespace rotsurf {

enum class SurfaceClass { cmc, chc };

inline const char* to_string(SurfaceClass c) { return c == SurfaceClass::cmc ? "cmc" : "chc"; }

struct SurfaceSpec {
  SpaceForm space_form = SpaceForm::sphere();
  RotationKind rotation = RotationKind::elliptic;
  SurfaceClass surface_class = SurfaceClass::cmc;
  double curvature = 0.0;  // H for cmc, Hbar for chc
  double C = 0.0;

  static SurfaceSpec cmc(SpaceForm sf, RotationKind kind, double H, double C) {
    SurfaceSpec s{sf, kind, SurfaceClass::cmc, H, C};
    s.validate();
    return s;
  }

  static SurfaceSpec chc(SpaceForm sf, RotationKind kind, double Hbar, double C) {
    SurfaceSpec s{sf, kind, SurfaceClass::chc, Hbar, C};
    s.validate();
    return s;
  }

  bool is_parabolic() const noexcept { return rotation == RotationKind::parabolic; }
  bool is_cmc() const noexcept { return surface_class == SurfaceClass::cmc; }

  void validate() const {
    require_compatible(rotation, space_form);
    if (!std::isfinite(curvature) || !std::isfinite(C)) throw spec_error("curvature and C must be finite");
    if (is_cmc() && curvature < 0.0) throw spec_error("cmc surfaces are normalized to H >= 0");
    if (!is_cmc()) {
      if (space_form.is_sphere()) throw spec_error("chc surfaces are generated in H3 only");
      if (std::abs(curvature) < 1.0 - 1e-12) throw spec_error("chc surfaces need |Hbar| >= 1");
    }
  }
};

inline std::string describe(const SurfaceSpec& s) {
  std::ostringstream out;
  out.precision(17);
  out << s.space_form.name() << ' ' << to_string(s.rotation) << ' ' << to_string(s.surface_class) << ' '
      << (s.is_cmc() ? "H=" : "Hbar=") << s.curvature << " C=" << s.C;
  return out.str();
}

enum class RegimeTag { delaunay, horospherical, sub_horospherical, chc_generic, chc_bryant };

inline const char* to_string(RegimeTag t) {
  switch (t) {
    case RegimeTag::delaunay: return "delaunay";
    case RegimeTag::horospherical: return "horospherical";
    case RegimeTag::sub_horospherical: return "sub_horospherical";
    case RegimeTag::chc_generic: return "chc_generic";
    case RegimeTag::chc_bryant: return "chc_bryant";
  }
  return "?";
}

struct Regime {
  RegimeTag tag = RegimeTag::delaunay;
  double kappa_plus = 0.0;
  double kappa_minus = 0.0;
  double epsilon = 0.0;
  double delta = 0.0;
};

inline constexpr double degenerate_tol = 1e-12;

inline Regime classify(const SurfaceSpec& spec) {
  Regime g;
  if (spec.is_cmc()) {
    const double H = spec.curvature;
    const int kappa = spec.space_form.kappa();
    g.kappa_plus = -1.0;
    g.kappa_minus = -(H * H + kappa);
    g.epsilon = H;
    g.delta = kappa;
    const double s = H * H + kappa;
    g.tag = std::abs(s) <= degenerate_tol ? RegimeTag::horospherical
            : s > 0.0                      ? RegimeTag::delaunay
                                           : RegimeTag::sub_horospherical;
    if (g.tag == RegimeTag::horospherical) g.kappa_minus = 0.0;
  } else {
    const double Hbar = spec.curvature;
    g.kappa_plus = 1.0;
    g.kappa_minus = 1.0 / (Hbar * Hbar) - 1.0;
    g.epsilon = -1.0 / Hbar;
    g.delta = -1.0;
    g.tag = std::abs(g.kappa_minus) <= degenerate_tol ? RegimeTag::chc_bryant : RegimeTag::chc_generic;
    if (g.tag == RegimeTag::chc_bryant) g.kappa_minus = 0.0;
  }
  return g;
}

// a x^2 + b x + c, normalized so that c = C^2.
struct Quadratic {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double operator()(double x) const { return (a * x + b) * x + c; }
  double discriminant() const { return b * b - 4.0 * a * c; }

  // Real roots, larger first. A slightly negative discriminant from rounding is snapped to 0.
  std::pair<double, double> roots() const {
    if (a == 0.0) throw domain_error("quadratic is degenerate");
    double disc = discriminant();
    const double scale = std::max({b * b, std::abs(4.0 * a * c), 1e-300});
    if (disc < 0.0 && disc >= -1e-13 * scale) disc = 0.0;
    if (disc < 0.0) throw infeasible_error("root quadratic has no real roots (negative discriminant)", "");
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (b + std::copysign(sq, b));
    double r1 = q / a;
    double r2 = q != 0.0 ? c / q : 0.0;
    if (r1 < r2) std::swap(r1, r2);
    return {r1, r2};
  }
};

inline Quadratic polynomial(const SurfaceSpec& spec) {
  const Regime g = classify(spec);
  if (g.tag == RegimeTag::horospherical || g.tag == RegimeTag::chc_bryant) {
    throw domain_error("root quadratic is degenerate (kappa- = 0); use bryant_profile");
  }
  const double C = spec.C;
  if (spec.is_parabolic()) return {g.kappa_plus * g.kappa_minus, 2.0 * g.kappa_plus * g.epsilon * C, C * C};
  const double k1 = rotation_signs(spec.rotation, spec.space_form).kappa1;
  return {g.kappa_plus * g.kappa_minus, g.kappa_plus * k1 * (g.delta * g.delta + 2.0 * k1 * g.epsilon * C), C * C};
}

// Admissible values of C: an interval, optionally with 0 removed.
struct FeasibleSet {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool lo_closed = false;
  bool hi_closed = false;
  bool excludes_zero = false;

  bool contains(double C) const {
    if (C < lo || (C == lo && !lo_closed)) return false;
    if (C > hi || (C == hi && !hi_closed)) return false;
    return !(excludes_zero && C == 0.0);
  }

  std::string describe() const {
    std::ostringstream out;
    out.precision(17);
    out << (lo_closed ? '[' : '(') << lo << ", " << hi << (hi_closed ? ']' : ')');
    if (excludes_zero) out << " \\ {0}";
    return out.str();
  }
};

inline FeasibleSet feasible_interval(const SurfaceSpec& spec) {
  const Regime g = classify(spec);
  const double inf = std::numeric_limits<double>::infinity();
  const bool par = spec.is_parabolic();
  switch (g.tag) {
    case RegimeTag::delaunay: {
      if (par) return {0.0, inf, false, false, false};
      const double H = spec.curvature;
      const int kappa = spec.space_form.kappa();
      const int k1 = rotation_signs(spec.rotation, spec.space_form).kappa1;
      const double root = std::sqrt(H * H + kappa);
      const double xp = kappa / (2.0 * k1) * (H + root);
      const double xm = kappa / (2.0 * k1) * (H - root);
      if (kappa > 0) return {std::min(xp, xm), std::max(xp, xm), true, true, false};
      return {std::max(xp, xm), inf, true, false, false};
    }
    case RegimeTag::sub_horospherical: {
      if (par) return {-inf, inf, false, false, true};
      const int k1 = rotation_signs(spec.rotation, spec.space_form).kappa1;
      return {-inf, inf, false, false, k1 > 0};
    }
    case RegimeTag::horospherical: {
      if (par) return {0.0, inf, false, false, false};
      const int k1 = rotation_signs(spec.rotation, spec.space_form).kappa1;
      return {-0.5 * k1, inf, false, false, true};
    }
    case RegimeTag::chc_generic:
    case RegimeTag::chc_bryant: return {-inf, inf, false, false, true};
  }
  return {};
}

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  double at(double fraction) const { return lo + fraction * (hi - lo); }
};

// r(t) = amplitude * law(rate t)
enum class RadiusLaw { dn, inverse_cn, cn, cosh, sinh, sin, linear };

// psi(t) = linear t + coefficient * I(t), I depending on the law.
enum class AngleLaw {
  linear,        // I = 0
  third_kind,    // I = ell_pi(k, p, rate t) / rate
  second_kind,   // I = ell_e_arg(rate t, p)
  tanh,          // I = tanh(rate t)
  artanh_tanh,   // I = artanh(tanh(rate t) / q1) / q2
  atan_tanh,     // I = -atan(q1 tanh(rate t)) / q2
  sinh_quad,     // I = int_0^t dt / (kappa1 r^2 - 1),  r = amplitude sinh(rate t)
  sin_quad,      // I = int_0^t dt / (kappa1 r^2 - 1),  r = amplitude sin(rate t)
  linear_quad,   // I = int_0^t dt / (kappa1 r^2 - 1),  r = amplitude t
  coth,          // I = coth(rate t)
  cot,           // I = cot(rate t)
  reciprocal     // I = 1 / t
};

// Guard band kept away from blow-ups and axis points of the profile domain.
inline constexpr double domain_guard = 1e-3;

class ProfileSolution {
 public:
  struct Data {
    SurfaceSpec spec;
    Regime regime;
    int kappa1 = 0;  // 0 for parabolic rotations
    int kappa2 = 0;
    double root_first = std::numeric_limits<double>::quiet_NaN();
    double root_second = std::numeric_limits<double>::quiet_NaN();
    EllipticModulus modulus;
    bool elliptic = false;
    double xi = std::numeric_limits<double>::quiet_NaN();
    double k = std::numeric_limits<double>::quiet_NaN();
    double bryant_a = std::numeric_limits<double>::quiet_NaN();
    RadiusLaw radius = RadiusLaw::dn;
    double amplitude = 0.0;
    double rate = 0.0;
    AngleLaw angle = AngleLaw::linear;
    double linear = 0.0;
    double coefficient = 0.0;
    double q1 = 0.0;
    double q2 = 0.0;
    bool spacelike = false;
    Interval domain;
  };

  explicit ProfileSolution(Data data) : d_(std::move(data)) {}

  const SurfaceSpec& spec() const noexcept { return d_.spec; }
  const Regime& regime() const noexcept { return d_.regime; }
  int kappa1() const noexcept { return d_.kappa1; }
  int kappa2() const noexcept { return d_.kappa2; }
  bool parabolic() const noexcept { return d_.spec.is_parabolic(); }
  // First root is the one under the radical in r; NaN for the degenerate regimes.
  double root_first() const noexcept { return d_.root_first; }
  double root_second() const noexcept { return d_.root_second; }
  bool is_elliptic() const noexcept { return d_.elliptic; }
  const EllipticModulus& modulus() const noexcept { return d_.modulus; }
  double scale() const noexcept { return d_.xi; }
  double third_kind_parameter() const noexcept { return d_.k; }
  double bryant_a() const noexcept { return d_.bryant_a; }
  double linear_coefficient() const noexcept { return d_.linear; }
  RadiusLaw radius_law() const noexcept { return d_.radius; }
  AngleLaw angle_law() const noexcept { return d_.angle; }
  // d is measured along a spacelike direction (chc elliptic profile inside r < 1).
  bool spacelike() const noexcept { return d_.spacelike; }
  const Interval& domain() const noexcept { return d_.domain; }

  // r is periodic and psi is defined for every real t.
  bool periodic() const noexcept { return d_.radius == RadiusLaw::dn && !d_.modulus.is_hyperbolic(); }

  // Period of r for dn profiles: alpha = 2 K(p) / Xi.
  double period() const {
    if (!periodic()) throw domain_error("profile radius is not periodic");
    return 2.0 * complete_f(d_.modulus) / d_.xi;
  }

  double r(double t) const {
    const double u = d_.rate * t;
    switch (d_.radius) {
      case RadiusLaw::dn: return d_.amplitude * jacobi(u, d_.modulus).dn;
      case RadiusLaw::inverse_cn: return d_.amplitude / jacobi(u, d_.modulus).cn;
      case RadiusLaw::cn: return d_.amplitude * jacobi(u, d_.modulus).cn;
      case RadiusLaw::cosh: return d_.amplitude * std::cosh(u);
      case RadiusLaw::sinh: return d_.amplitude * std::sinh(u);
      case RadiusLaw::sin: return d_.amplitude * std::sin(u);
      case RadiusLaw::linear: return d_.amplitude * t;
    }
    return 0.0;
  }

  double dr(double t) const {
    const double u = d_.rate * t;
    const double s = d_.amplitude * d_.rate;
    switch (d_.radius) {
      case RadiusLaw::dn: {
        const auto j = jacobi(u, d_.modulus);
        return -s * d_.modulus.parameter() * j.sn * j.cn;
      }
      case RadiusLaw::inverse_cn: {
        const auto j = jacobi(u, d_.modulus);
        return s * j.sn * j.dn / (j.cn * j.cn);
      }
      case RadiusLaw::cn: {
        const auto j = jacobi(u, d_.modulus);
        return -s * j.sn * j.dn;
      }
      case RadiusLaw::cosh: return s * std::sinh(u);
      case RadiusLaw::sinh: return s * std::cosh(u);
      case RadiusLaw::sin: return s * std::cos(u);
      case RadiusLaw::linear: return d_.amplitude;
    }
    return 0.0;
  }

  double psi(double t) const { return d_.linear * t + d_.coefficient * angle_term(t); }

  // psi' as prescribed by the ODE at the implemented r(t).
  double dpsi(double t) const { return dpsi_rhs(r(t)); }

  double dpsi_rhs(double r) const {
    const Regime& g = d_.regime;
    const double C = d_.spec.C;
    const double num = g.epsilon * r * r + g.kappa_plus * C;
    if (parabolic()) return num / (r * r);
    return num / (g.kappa_plus * g.delta + d_.kappa1 * r * r);
  }

  double rdot2_rhs(double r) const {
    const Regime& g = d_.regime;
    const double C = d_.spec.C;
    const double d2 = g.delta * g.delta;
    const double beta = (parabolic() ? 0.0 : d2 / d_.kappa1) + 2.0 * g.epsilon * C;
    const double x = r * r;
    return ((g.kappa_minus * x + beta) * x + g.kappa_plus * C * C) / d2;
  }

  // Signed d^2 from the algebraic relation; negative where the profile is spacelike-polar.
  double d_squared(double t) const {
    const Regime& g = d_.regime;
    const double rr = r(t);
    if (parabolic()) {
      const double d = g.kappa_plus * g.delta / (2.0 * rr);
      return d * d;
    }
    return -(g.kappa_plus * g.delta + d_.kappa1 * rr * rr) / d_.kappa2;
  }

  double d(double t) const {
    const Regime& g = d_.regime;
    if (parabolic()) return g.kappa_plus * g.delta / (2.0 * r(t));
    const double d2 = d_squared(t);
    return std::sqrt(std::max(0.0, d_.spacelike ? -d2 : d2));
  }

  double dd(double t) const {
    const Regime& g = d_.regime;
    const double rr = r(t);
    const double rp = dr(t);
    if (parabolic()) return -g.kappa_plus * g.delta * rp / (2.0 * rr * rr);
    const double sign = d_.spacelike ? -1.0 : 1.0;
    const double dv = d(t);
    if (dv == 0.0) return 0.0;
    return -sign * d_.kappa1 * rr * rp / (d_.kappa2 * dv);
  }

  // Residual of the d relation for a given (r, d) pair.
  double d_residual(double r, double d) const {
    const Regime& g = d_.regime;
    if (parabolic()) return d - g.kappa_plus * g.delta / (2.0 * r);
    const double sign = d_.spacelike ? -1.0 : 1.0;
    return d_.kappa2 * sign * d * d + g.kappa_plus * g.delta + d_.kappa1 * r * r;
  }

 private:
  double angle_term(double t) const {
    const double u = d_.rate * t;
    switch (d_.angle) {
      case AngleLaw::linear: return 0.0;
      case AngleLaw::third_kind: return ell_pi(d_.k, d_.modulus, u) / d_.rate;
      case AngleLaw::second_kind: return ell_e_arg(u, d_.modulus);
      case AngleLaw::tanh: return std::tanh(u);
      case AngleLaw::artanh_tanh: return std::atanh(std::tanh(u) / d_.q1) / d_.q2;
      case AngleLaw::atan_tanh: return -std::atan(d_.q1 * std::tanh(u)) / d_.q2;
      case AngleLaw::sinh_quad: return inverse_quadratic(d_.q1, std::tanh(u)) / d_.rate;
      case AngleLaw::linear_quad: return inverse_quadratic(d_.q1, t);
      case AngleLaw::sin_quad: return -sine_integral(d_.q1, u) / d_.rate;
      case AngleLaw::coth: return 1.0 / std::tanh(u);
      case AngleLaw::cot: return 1.0 / std::tan(u);
      case AngleLaw::reciprocal: return 1.0 / t;
    }
    return 0.0;
  }

  // int_0^s dx / (g x^2 - 1), on the branch containing 0.
  static double inverse_quadratic(double g, double s) {
    if (g > 0.0) return -std::atanh(std::sqrt(g) * s) / std::sqrt(g);
    if (g < 0.0) return -std::atan(std::sqrt(-g) * s) / std::sqrt(-g);
    return -s;
  }

  // int_0^x dy / (1 - l sin^2 y), on the branch containing 0.
  static double sine_integral(double l, double x) {
    if (l < 1.0) {
      const double w = std::sqrt(1.0 - l);
      return std::atan2(w * std::sin(x), std::cos(x)) / w;
    }
    if (l > 1.0) {
      const double w = std::sqrt(l - 1.0);
      return std::atanh(w * std::tan(x)) / w;
    }
    return std::tan(x);
  }

  Data d_;
};

namespace detail {

inline bool near_zero(double x, double scale) { return std::abs(x) <= 1e-13 * std::max(1.0, scale); }

inline void require_feasible(const SurfaceSpec& spec) {
  const auto set = feasible_interval(spec);
  if (!set.contains(spec.C)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "C = " << spec.C << " is not admissible for " << describe(spec) << "; admissible set " << set.describe();
    throw infeasible_error(msg.str(), set.describe());
  }
}

// Symmetric half-width in Jacobi argument for profiles that blow up or leave
// the valid chart at the quarter period.
inline Interval guarded(double half_width_u, double rate) {
  const double u = (1.0 - domain_guard) * half_width_u;
  return {-u / rate, u / rate};
}

inline ProfileSolution::Data base(const SurfaceSpec& spec) {
  ProfileSolution::Data d;
  d.spec = spec;
  d.regime = classify(spec);
  if (!spec.is_parabolic()) {
    const auto signs = rotation_signs(spec.rotation, spec.space_form);
    d.kappa1 = signs.kappa1;
    d.kappa2 = signs.kappa2;
  }
  return d;
}

inline ProfileSolution delaunay(ProfileSolution::Data d) {
  const double H = d.spec.curvature;
  const double C = d.spec.C;
  const auto [c1, c2] = polynomial(d.spec).roots();
  if (c1 <= 0.0 || c2 < -1e-15 * std::max(1.0, c1)) {
    throw infeasible_error("both roots of the root quadratic are negative; the ODE has no real solution", "");
  }
  d.root_first = c1;
  d.root_second = std::max(c2, 0.0);
  d.elliptic = true;
  d.radius = RadiusLaw::dn;
  d.amplitude = std::sqrt(c1);

  if (d.spec.is_parabolic()) {
    // roots C/(H-1) > C/(H+1); psi = H t - (H-1)/Xi Pi(p^2; Xi t)
    d.modulus = EllipticModulus::from_parameters(2.0 / (H + 1.0), (H - 1.0) / (H + 1.0));
    d.xi = std::sqrt(C * (H + 1.0));
    d.linear = H;
    d.k = d.modulus.parameter();
    d.coefficient = -(H - 1.0);
    d.angle = AngleLaw::third_kind;
  } else {
    const double kappa = d.spec.space_form.kappa();
    const double k1 = d.kappa1;
    d.modulus = EllipticModulus::from_parameters((c1 - d.root_second) / c1, d.root_second / c1);
    d.xi = std::sqrt((H * H + kappa) * c1);
    d.linear = H / k1;
    if (near_zero(k1 * C - kappa * H, std::max(std::abs(C), H))) {
      d.angle = AngleLaw::linear;
    } else {
      d.k = k1 * (c1 - d.root_second) / (k1 * c1 - kappa);
      d.coefficient = -(k1 * C - kappa * H) / (k1 * c1 - kappa) / k1;
      d.angle = AngleLaw::third_kind;
    }
  }
  d.rate = d.xi;
  const double half = d.modulus.is_hyperbolic() ? 3.0 : complete_f(d.modulus);
  d.domain = {-half / d.xi, half / d.xi};
  return ProfileSolution(std::move(d));
}

inline ProfileSolution sub_horospherical(ProfileSolution::Data d) {
  const double H = d.spec.curvature;
  const double C = d.spec.C;
  d.elliptic = true;
  d.radius = RadiusLaw::inverse_cn;

  if (d.spec.is_parabolic()) {
    // first root = C/(H+1) for C > 0, C/(H-1) for C < 0; psi = sgn(C) (t - (2/Xi) E(am(Xi t)))
    const bool positive = C > 0.0;
    d.root_first = positive ? C / (H + 1.0) : C / (H - 1.0);
    d.root_second = positive ? C / (H - 1.0) : C / (H + 1.0);
    d.modulus = positive ? EllipticModulus::from_parameters(0.5 * (1.0 + H), 0.5 * (1.0 - H))
                         : EllipticModulus::from_parameters(0.5 * (1.0 - H), 0.5 * (1.0 + H));
    d.xi = std::sqrt(2.0 * std::abs(C));
    const double sign = positive ? 1.0 : -1.0;
    d.linear = sign;
    d.coefficient = -2.0 * sign / d.xi;
    d.angle = AngleLaw::second_kind;
  } else {
    const double kappa = d.spec.space_form.kappa();
    const double k1 = d.kappa1;
    const auto [cp, cm] = polynomial(d.spec).roots();
    if (cp <= 0.0) throw infeasible_error("root quadratic has no positive root; the ODE has no real solution", "");
    d.root_first = cp;
    d.root_second = std::min(cm, 0.0);
    const double spread = cp - d.root_second;
    d.modulus = EllipticModulus::from_parameters(-d.root_second / spread, cp / spread);
    d.xi = std::sqrt(-(H * H + kappa) * spread);
    if (near_zero(k1 * C - kappa * H, std::max(std::abs(C), H))) {
      d.linear = H / k1;
      d.angle = AngleLaw::linear;
    } else {
      d.linear = C / kappa;
      d.k = kappa / (kappa - k1 * cp);
      d.coefficient = cp * (H * kappa - C * k1) / (k1 * cp - kappa) / kappa;
      d.angle = AngleLaw::third_kind;
    }
  }
  d.amplitude = std::sqrt(d.root_first);
  d.rate = d.xi;
  d.domain = guarded(complete_f(d.modulus), d.xi);
  return ProfileSolution(std::move(d));
}

inline ProfileSolution chc_generic(ProfileSolution::Data d) {
  const double Hbar = d.spec.curvature;
  const double C = d.spec.C;
  const auto [cp, cm] = polynomial(d.spec).roots();
  d.root_first = cp;
  d.root_second = cm;
  const double spread = cp - cm;
  d.elliptic = true;
  d.modulus = EllipticModulus::from_parameters(cp / spread, -cm / spread);
  d.xi = std::sqrt(1.0 - 1.0 / (Hbar * Hbar)) * std::sqrt(spread);
  d.radius = RadiusLaw::cn;
  d.amplitude = std::sqrt(cp);
  d.rate = d.xi;
  const double quarter = complete_f(d.modulus);

  if (d.spec.is_parabolic()) {
    // psi = -t/Hbar + (C / first root)/Xi Pi(1; Xi t), singular where cn = 0
    d.linear = -1.0 / Hbar;
    d.k = 1.0;
    d.coefficient = C / cp;
    d.angle = AngleLaw::third_kind;
    d.domain = guarded(quarter, d.xi);
    return ProfileSolution(std::move(d));
  }

  const double k1 = d.kappa1;
  d.linear = -k1 / Hbar;
  if (near_zero(Hbar * C - k1, std::abs(Hbar * C))) {
    d.angle = AngleLaw::linear;
  } else {
    d.k = k1 * cp / (k1 * cp - 1.0);
    d.coefficient = (Hbar * C - k1) / (k1 * cp - 1.0) / Hbar;
    d.angle = AngleLaw::third_kind;
  }

  if (k1 > 0 && d.angle == AngleLaw::linear) {
    // first root = 1: r <= 1 throughout, d measured along the spacelike polar direction.
    d.spacelike = true;
    d.domain = {domain_guard * quarter / d.xi, (1.0 - domain_guard) * quarter / d.xi};
  } else if (k1 > 0) {
    // first root > 1: keep the central arc where r > 1; psi' blows up at r = 1.
    d.domain = guarded(ell_f(std::acos(1.0 / std::sqrt(cp)), d.modulus), d.xi);
  } else {
    d.domain = guarded(quarter, d.xi);
  }
  return ProfileSolution(std::move(d));
}

inline ProfileSolution bryant(ProfileSolution::Data d) {
  const Regime& g = d.regime;
  const double C = d.spec.C;
  const double d2 = g.delta * g.delta;
  const bool par = d.spec.is_parabolic();
  const double A = (par ? 0.0 : 1.0 / d.kappa1) + 2.0 * g.epsilon * C / d2;
  d.bryant_a = A;
  const double a_tol = 1e-14;

  if (g.kappa_plus < 0.0) {
    // cmc H = 1: r'^2 = A r^2 - C^2 needs A > 0.
    if (!(A > a_tol)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "no solution: A = " << A << " <= 0 for " << describe(d.spec);
      throw infeasible_error(msg.str(), feasible_interval(d.spec).describe());
    }
    const double sa = std::sqrt(A);
    d.radius = RadiusLaw::cosh;
    d.amplitude = std::abs(C) / sa;
    d.rate = sa;
    d.domain = {-2.0 / sa, 2.0 / sa};
    if (par) {
      d.linear = 1.0;
      d.coefficient = -2.0 / sa;
      d.angle = AngleLaw::tanh;
      return ProfileSolution(std::move(d));
    }
    const double k1 = d.kappa1;
    const double w = 1.0 + k1 * C;
    d.linear = 1.0 / k1;
    if (near_zero(w, std::abs(C))) {
      d.angle = AngleLaw::linear;
    } else if (k1 > 0) {
      d.coefficient = -w / k1;
      d.q1 = std::sqrt(1.0 + C * C / A);
      d.q2 = std::abs(w);
      d.angle = AngleLaw::artanh_tanh;
    } else {
      d.coefficient = -w / k1;
      d.q1 = sa / std::abs(w);
      d.q2 = std::abs(w);
      d.angle = AngleLaw::atan_tanh;
    }
    return ProfileSolution(std::move(d));
  }

  // chc |Hbar| = 1: r'^2 = A r^2 + C^2, r(0) = 0.
  const double Hbar = d.spec.curvature;
  const double absC = std::abs(C);
  double end = 0.0;
  if (A > a_tol) {
    d.radius = RadiusLaw::sinh;
    d.rate = std::sqrt(A);
    d.amplitude = absC / d.rate;
    end = 2.0 / d.rate;
  } else if (A < -a_tol) {
    d.radius = RadiusLaw::sin;
    d.rate = std::sqrt(-A);
    d.amplitude = absC / d.rate;
    end = (1.0 - domain_guard) * std::numbers::pi / d.rate;
  } else {
    d.radius = RadiusLaw::linear;
    d.rate = 1.0;
    d.amplitude = absC;
    end = 2.0 / absC;
  }

  if (par) {
    d.linear = -1.0 / Hbar;
    if (d.radius == RadiusLaw::linear) {
      d.coefficient = -1.0 / C;
      d.angle = AngleLaw::reciprocal;
    } else {
      d.coefficient = -d.rate / C;
      d.angle = d.radius == RadiusLaw::sinh ? AngleLaw::coth : AngleLaw::cot;
    }
  } else {
    // psi' = alpha/kappa1 + (beta + alpha/kappa1) / (kappa1 r^2 - 1), alpha = -1/Hbar, beta = C
    const double k1 = d.kappa1;
    const double alpha = -1.0 / Hbar;
    d.linear = alpha / k1;
    d.coefficient = C + alpha / k1;
    const double a2 = d.amplitude * d.amplitude;
    switch (d.radius) {
      case RadiusLaw::sinh:
        d.q1 = k1 * a2 + 1.0;
        d.angle = AngleLaw::sinh_quad;
        break;
      case RadiusLaw::sin:
        d.q1 = k1 * a2;
        d.angle = AngleLaw::sin_quad;
        break;
      default:
        d.q1 = k1 * a2;
        d.angle = AngleLaw::linear_quad;
        break;
    }
    if (k1 > 0) {
      // Stay inside r < 1, where psi' is regular and d is spacelike.
      d.spacelike = true;
      double reach = end;
      if (d.radius == RadiusLaw::sinh) reach = std::asinh(1.0 / d.amplitude) / d.rate;
      if (d.radius == RadiusLaw::sin && d.amplitude > 1.0) reach = std::asin(1.0 / d.amplitude) / d.rate;
      if (d.radius == RadiusLaw::linear) reach = 1.0 / absC;
      end = std::min(end, (1.0 - domain_guard) * reach);
    }
  }
  d.domain = {domain_guard * end, end};
  return ProfileSolution(std::move(d));
}

}  // namespace detail

inline ProfileSolution bryant_profile(const SurfaceSpec& spec) {
  spec.validate();
  const Regime g = classify(spec);
  if (g.tag != RegimeTag::horospherical && g.tag != RegimeTag::chc_bryant) {
    throw domain_error("bryant_profile needs kappa- = 0 (H = 1 cmc in H3 or |Hbar| = 1 chc)");
  }
  auto d = detail::base(spec);
  // cmc cases report A <= 0 as "no solution" from the table itself.
  if (spec.C == 0.0 || g.kappa_plus > 0.0) detail::require_feasible(spec);
  return detail::bryant(std::move(d));
}

inline ProfileSolution solve_profile(const SurfaceSpec& spec) {
  spec.validate();
  const Regime g = classify(spec);
  if (g.tag == RegimeTag::horospherical || g.tag == RegimeTag::chc_bryant) return bryant_profile(spec);
  detail::require_feasible(spec);
  auto d = detail::base(spec);
  switch (g.tag) {
    case RegimeTag::delaunay: return detail::delaunay(std::move(d));
    case RegimeTag::sub_horospherical: return detail::sub_horospherical(std::move(d));
    default: return detail::chc_generic(std::move(d));
  }
}

}  // namespace rotsurf
