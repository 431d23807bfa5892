#pragma once

// Jacobi elliptic functions and elliptic integrals of the first, second and
// third kind in double precision.
//
// Conventions: the modulus is p (not the parameter m = p^2). ell_f and ell_e
// take an amplitude; ell_pi takes a Jacobi argument:
//
//   ell_pi(k, p, s) = integral_0^s du / (1 - k sn^2(u, p)).

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "rotsurf/errors.hpp"

namespace rotsurf {

// Modulus p in [0,1] together with its complement p' = sqrt(1 - p^2).
class EllipticModulus {
 public:
  static constexpr double snap_band = 1e-14;

  EllipticModulus() = default;

  explicit EllipticModulus(double p) {
    if (!std::isfinite(p)) throw domain_error("elliptic modulus is not finite");
    if (p < 0.0 && p >= -snap_band) p = 0.0;
    if (p > 1.0 && p <= 1.0 + snap_band) p = 1.0;
    if (p < 0.0 || p > 1.0) {
      throw domain_error("elliptic modulus " + std::to_string(p) + " outside [0,1]");
    }
    p_ = p;
    m_ = p * p;
    mc_ = (1.0 - p) * (1.0 + p);
    pc_ = std::sqrt(mc_);
  }

  // From the parameter m = p^2 and its complement 1 - m, when the caller can
  // form the complement without cancellation (e.g. m = (C1 - C2)/C1, 1 - m = C2/C1).
  static EllipticModulus from_parameters(double m, double mc) {
    if (!std::isfinite(m) || !std::isfinite(mc)) {
      throw domain_error("elliptic parameter is not finite");
    }
    if (std::abs(m + mc - 1.0) > 1e-12) throw domain_error("parameter and complement do not sum to 1");
    if (m < 0.0 && m >= -snap_band) m = 0.0, mc = 1.0;
    if (mc < 0.0 && mc >= -snap_band) m = 1.0, mc = 0.0;
    if (m < 0.0 || mc < 0.0) {
      throw domain_error("elliptic parameter " + std::to_string(m) + " outside [0,1]");
    }
    EllipticModulus out;
    out.m_ = m;
    out.mc_ = mc;
    out.p_ = std::sqrt(m);
    out.pc_ = std::sqrt(mc);
    return out;
  }

  static EllipticModulus from_parameter(double m) { return from_parameters(m, 1.0 - m); }

  double modulus() const noexcept { return p_; }
  double complement() const noexcept { return pc_; }
  double parameter() const noexcept { return m_; }
  double complementary_parameter() const noexcept { return mc_; }
  bool is_circular() const noexcept { return m_ == 0.0; }
  bool is_hyperbolic() const noexcept { return mc_ == 0.0; }

 private:
  double p_ = 0.0;
  double pc_ = 1.0;
  double m_ = 0.0;
  double mc_ = 1.0;
};

struct JacobiTriple {
  double sn = 0.0;
  double cn = 1.0;
  double dn = 1.0;
  double am = 0.0;
};

struct JacobiDerivatives {
  double dsn = 1.0;
  double dcn = 0.0;
  double ddn = 0.0;
};

namespace carlson {

inline double rc(double x, double y) {
  constexpr double errtol = 0.0012;
  if (!(x >= 0.0) || !(y > 0.0)) throw domain_error("carlson R_C needs x >= 0, y > 0");
  double ave = 0.0;
  double s = 0.0;
  for (;;) {
    const double lambda = 2.0 * std::sqrt(x) * std::sqrt(y) + y;
    x = 0.25 * (x + lambda);
    y = 0.25 * (y + lambda);
    ave = (x + y + y) / 3.0;
    s = (y - ave) / ave;
    if (std::abs(s) <= errtol) break;
  }
  return (1.0 + s * s * (0.3 + s * (1.0 / 7.0 + s * (0.375 + s * 9.0 / 22.0)))) / std::sqrt(ave);
}

inline double rf(double x, double y, double z) {
  constexpr double errtol = 0.0025;
  if (std::min({x, y, z}) < 0.0 || std::min({x + y, x + z, y + z}) <= 0.0) {
    throw domain_error("carlson R_F needs non-negative arguments with at most one zero");
  }
  double ave = 0.0;
  double dx = 0.0;
  double dy = 0.0;
  double dz = 0.0;
  for (;;) {
    const double sx = std::sqrt(x);
    const double sy = std::sqrt(y);
    const double sz = std::sqrt(z);
    const double lambda = sx * (sy + sz) + sy * sz;
    x = 0.25 * (x + lambda);
    y = 0.25 * (y + lambda);
    z = 0.25 * (z + lambda);
    ave = (x + y + z) / 3.0;
    dx = (ave - x) / ave;
    dy = (ave - y) / ave;
    dz = (ave - z) / ave;
    if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) <= errtol) break;
  }
  const double e2 = dx * dy - dz * dz;
  const double e3 = dx * dy * dz;
  return (1.0 + (e2 / 24.0 - 0.1 - 3.0 / 44.0 * e3) * e2 + e3 / 14.0) / std::sqrt(ave);
}

inline double rd(double x, double y, double z) {
  constexpr double errtol = 0.0015;
  if (std::min(x, y) < 0.0 || x + y <= 0.0 || z <= 0.0) {
    throw domain_error("carlson R_D needs x, y >= 0 (not both zero) and z > 0");
  }
  double sum = 0.0;
  double fac = 1.0;
  double ave = 0.0;
  double dx = 0.0;
  double dy = 0.0;
  double dz = 0.0;
  for (;;) {
    const double sx = std::sqrt(x);
    const double sy = std::sqrt(y);
    const double sz = std::sqrt(z);
    const double lambda = sx * (sy + sz) + sy * sz;
    sum += fac / (sz * (z + lambda));
    fac *= 0.25;
    x = 0.25 * (x + lambda);
    y = 0.25 * (y + lambda);
    z = 0.25 * (z + lambda);
    ave = 0.2 * (x + y + 3.0 * z);
    dx = (ave - x) / ave;
    dy = (ave - y) / ave;
    dz = (ave - z) / ave;
    if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) <= errtol) break;
  }
  constexpr double c1 = 3.0 / 14.0;
  constexpr double c2 = 1.0 / 6.0;
  constexpr double c3 = 9.0 / 22.0;
  constexpr double c4 = 3.0 / 26.0;
  constexpr double c5 = 0.25 * c3;
  constexpr double c6 = 1.5 * c4;
  const double ea = dx * dy;
  const double eb = dz * dz;
  const double ec = ea - eb;
  const double ed = ea - 6.0 * eb;
  const double ee = ed + ec + ec;
  return 3.0 * sum +
         fac * (1.0 + ed * (-c1 + c5 * ed - c6 * dz * ee) + dz * (c2 * ee + dz * (-c3 * ec + dz * c4 * ea))) /
             (ave * std::sqrt(ave));
}

inline double rj(double x, double y, double z, double p) {
  constexpr double errtol = 0.0015;
  if (std::min({x, y, z}) < 0.0 || std::min({x + y, x + z, y + z}) <= 0.0 || !(p > 0.0)) {
    throw domain_error("carlson R_J needs non-negative x, y, z (at most one zero) and p > 0");
  }
  double sum = 0.0;
  double fac = 1.0;
  double ave = 0.0;
  double dx = 0.0;
  double dy = 0.0;
  double dz = 0.0;
  double dp = 0.0;
  for (;;) {
    const double sx = std::sqrt(x);
    const double sy = std::sqrt(y);
    const double sz = std::sqrt(z);
    const double lambda = sx * (sy + sz) + sy * sz;
    const double alpha = std::pow(p * (sx + sy + sz) + sx * sy * sz, 2);
    const double beta = p * std::pow(p + lambda, 2);
    sum += fac * rc(alpha, beta);
    fac *= 0.25;
    x = 0.25 * (x + lambda);
    y = 0.25 * (y + lambda);
    z = 0.25 * (z + lambda);
    p = 0.25 * (p + lambda);
    ave = 0.2 * (x + y + z + p + p);
    dx = (ave - x) / ave;
    dy = (ave - y) / ave;
    dz = (ave - z) / ave;
    dp = (ave - p) / ave;
    if (std::max({std::abs(dx), std::abs(dy), std::abs(dz), std::abs(dp)}) <= errtol) break;
  }
  constexpr double c1 = 3.0 / 14.0;
  constexpr double c2 = 1.0 / 3.0;
  constexpr double c3 = 3.0 / 22.0;
  constexpr double c4 = 3.0 / 26.0;
  constexpr double c5 = 0.75 * c3;
  constexpr double c6 = 1.5 * c4;
  constexpr double c7 = 0.5 * c2;
  constexpr double c8 = c3 + c3;
  const double ea = dx * (dy + dz) + dy * dz;
  const double eb = dx * dy * dz;
  const double ec = dp * dp;
  const double ed = ea - 3.0 * ec;
  const double ee = eb + 2.0 * dp * (ea - ec);
  return 3.0 * sum + fac *
                         (1.0 + ed * (-c1 + c5 * ed - c6 * ee) + eb * (c7 + dp * (-c8 + dp * c4)) +
                          dp * ea * (c2 - dp * c3) - c2 * dp * ec) /
                         (ave * std::sqrt(ave));
}

}  // namespace carlson

namespace detail {

struct Agm {
  static constexpr int max_steps = 16;
  std::array<double, max_steps + 1> a{};
  std::array<double, max_steps + 1> c{};
  int steps = 0;
};

inline Agm descend(const EllipticModulus& mod) {
  Agm agm;
  double b = mod.complement();
  agm.a[0] = 1.0;
  agm.c[0] = mod.modulus();
  constexpr double eps = std::numeric_limits<double>::epsilon();
  int i = 0;
  while (std::abs(agm.c[i]) > eps * agm.a[i] && i < Agm::max_steps) {
    agm.a[i + 1] = 0.5 * (agm.a[i] + b);
    agm.c[i + 1] = 0.5 * (agm.a[i] - b);
    b = std::sqrt(agm.a[i] * b);
    ++i;
  }
  agm.steps = i;
  return agm;
}

inline void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw domain_error(std::string(what) + " is not finite");
}

}  // namespace detail

// Complete integral of the first kind K(p) = F(pi/2, p).
inline double complete_f(const EllipticModulus& mod) {
  if (mod.is_hyperbolic()) throw range_error("complete integral of the first kind diverges at p = 1");
  const auto agm = detail::descend(mod);
  return std::numbers::pi / (2.0 * agm.a[agm.steps]);
}

// Complete integral of the second kind E(p) = E(pi/2, p).
inline double complete_e(const EllipticModulus& mod) {
  if (mod.is_hyperbolic()) return 1.0;
  const auto agm = detail::descend(mod);
  double sum = 0.5 * agm.c[0] * agm.c[0];
  double weight = 0.5;
  for (int i = 1; i <= agm.steps; ++i) {
    weight *= 2.0;
    sum += weight * agm.c[i] * agm.c[i];
  }
  return std::numbers::pi / (2.0 * agm.a[agm.steps]) * (1.0 - sum);
}

inline JacobiTriple jacobi(double u, const EllipticModulus& mod) {
  detail::require_finite(u, "jacobi argument");
  if (mod.is_circular()) return {std::sin(u), std::cos(u), 1.0, u};
  if (mod.is_hyperbolic()) {
    const double sech = 1.0 / std::cosh(u);
    return {std::tanh(u), sech, sech, std::atan(std::sinh(u))};
  }

  const auto agm = detail::descend(mod);
  const double quarter = std::numbers::pi / (2.0 * agm.a[agm.steps]);
  const double periods = std::nearbyint(u / (2.0 * quarter));
  const double u0 = u - periods * 2.0 * quarter;

  double phi = std::ldexp(agm.a[agm.steps] * u0, agm.steps);
  for (int i = agm.steps; i >= 1; --i) {
    phi = 0.5 * (phi + std::asin(agm.c[i] / agm.a[i] * std::sin(phi)));
  }
  const double sign = std::fmod(periods, 2.0) == 0.0 ? 1.0 : -1.0;
  const double sn = std::sin(phi);
  const double cn = std::cos(phi);
  const double dn = std::sqrt(mod.complementary_parameter() + mod.parameter() * cn * cn);
  return {sign * sn, sign * cn, dn, phi + periods * std::numbers::pi};
}

inline JacobiDerivatives jacobi_deriv(double u, const EllipticModulus& mod) {
  const auto j = jacobi(u, mod);
  return {j.cn * j.dn, -j.sn * j.dn, -mod.parameter() * j.sn * j.cn};
}

namespace detail {

// Reduce an amplitude to phi0 in [-pi/2, pi/2]: phi = phi0 + half_turns * pi.
struct ReducedAmplitude {
  double phi0;
  double half_turns;
};

inline ReducedAmplitude reduce_amplitude(double phi) {
  const double turns = std::nearbyint(phi / std::numbers::pi);
  return {phi - turns * std::numbers::pi, turns};
}

inline void require_finite_f(const EllipticModulus& mod, const ReducedAmplitude& r) {
  if (!mod.is_hyperbolic()) return;
  if (r.half_turns != 0.0 || std::cos(r.phi0) <= 8.0 * std::numeric_limits<double>::epsilon()) {
    throw range_error("incomplete integral of the first kind diverges at p = 1 beyond |phi| < pi/2");
  }
}

// Legendre third-kind integral on |phi| <= pi/2, characteristic n with 1 - n sin^2 phi > 0.
inline double legendre_pi(double n, double phi, const EllipticModulus& mod) {
  const double s = std::sin(phi);
  const double c = std::cos(phi);
  const double c2 = c * c;
  const double delta2 = 1.0 - mod.parameter() * s * s;
  const double q = 1.0 - n * s * s;
  const double first = s * carlson::rf(c2, delta2, 1.0);
  if (n == 0.0 || s == 0.0) return first;
  return first + n / 3.0 * s * s * s * carlson::rj(c2, delta2, 1.0, q);
}

}  // namespace detail

// Incomplete integral of the first kind, amplitude convention.
inline double ell_f(double phi, const EllipticModulus& mod) {
  detail::require_finite(phi, "amplitude");
  const auto r = detail::reduce_amplitude(phi);
  detail::require_finite_f(mod, r);
  const double s = std::sin(r.phi0);
  const double c = std::cos(r.phi0);
  const double local = s * carlson::rf(c * c, 1.0 - mod.parameter() * s * s, 1.0);
  return r.half_turns == 0.0 ? local : local + 2.0 * r.half_turns * complete_f(mod);
}

// Incomplete integral of the second kind, amplitude convention.
inline double ell_e(double phi, const EllipticModulus& mod) {
  detail::require_finite(phi, "amplitude");
  const auto r = detail::reduce_amplitude(phi);
  const double s = std::sin(r.phi0);
  const double c = std::cos(r.phi0);
  const double delta2 = 1.0 - mod.parameter() * s * s;
  double local = s * carlson::rf(c * c, delta2, 1.0);
  if (mod.parameter() != 0.0 && s != 0.0) {
    local -= mod.parameter() / 3.0 * s * s * s * carlson::rd(c * c, delta2, 1.0);
  }
  return r.half_turns == 0.0 ? local : local + 2.0 * r.half_turns * complete_e(mod);
}

// E(am(s, p), p): the second-kind integral in the Jacobi-argument convention.
inline double ell_e_arg(double s, const EllipticModulus& mod) { return ell_e(jacobi(s, mod).am, mod); }

// Complete third-kind integral over a quarter period; requires k < 1.
inline double complete_pi(double k, const EllipticModulus& mod) {
  detail::require_finite(k, "third-kind parameter");
  if (k >= 1.0) throw range_error("complete third-kind integral is singular for k >= 1");
  if (mod.is_hyperbolic()) throw range_error("complete third-kind integral diverges at p = 1");
  const double mc = mod.complementary_parameter();
  const double first = carlson::rf(0.0, mc, 1.0);
  if (k == 0.0) return first;
  return first + k / 3.0 * carlson::rj(0.0, mc, 1.0, 1.0 - k);
}

// Third-kind integral in the Jacobi-argument convention (see file comment).
inline double ell_pi(double k, const EllipticModulus& mod, double s) {
  detail::require_finite(k, "third-kind parameter");
  detail::require_finite(s, "jacobi argument");
  if (s == 0.0) return 0.0;

  if (k >= 1.0) {
    // sn^2 first reaches 1/k at u* with am(u*) = asin(1/sqrt(k)).
    const double first_singular =
        k == 1.0 ? (mod.is_hyperbolic() ? std::numeric_limits<double>::infinity() : complete_f(mod))
                 : ell_f(std::asin(1.0 / std::sqrt(k)), mod);
    if (std::abs(s) >= first_singular) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "third-kind integral path crosses 1 - k sn^2 = 0 (k = " << k << ") at u = "
          << std::copysign(first_singular, s);
      throw range_error(msg.str());
    }
  }

  if (mod.is_hyperbolic()) return detail::legendre_pi(k, jacobi(s, mod).am, mod);

  const double quarter = complete_f(mod);
  const double periods = std::nearbyint(s / (2.0 * quarter));
  const double s0 = s - periods * 2.0 * quarter;
  const double local = detail::legendre_pi(k, jacobi(s0, mod).am, mod);
  return periods == 0.0 ? local : local + 2.0 * periods * complete_pi(k, mod);
}

}  // namespace rotsurf
