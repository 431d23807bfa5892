#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "rotsurf/errors.hpp"

namespace rotsurf {

using Vec4 = std::array<double, 4>;
using Point3 = std::array<double, 3>;

// Coordinate convention of a 4-vector.
//   euclidean:      orthonormal R^4, signature (++++)
//   minkowski:      orthonormal R^{3,1}, signature (-+++)
//   minkowski_null: pseudo-orthonormal R^{3,1} in the order (v, e1, o, e2), (v,o) = -1
enum class Frame { euclidean, minkowski, minkowski_null };

inline const char* to_string(Frame f) {
  switch (f) {
    case Frame::euclidean: return "euclidean";
    case Frame::minkowski: return "minkowski";
    case Frame::minkowski_null: return "minkowski_null";
  }
  return "?";
}

enum class Basis { orthonormal, pseudo_orthonormal };

class SpaceForm {
 public:
  static SpaceForm sphere() { return SpaceForm(1, Basis::orthonormal); }
  static SpaceForm hyperbolic(Basis basis = Basis::orthonormal) { return SpaceForm(-1, basis); }

  SpaceForm(int kappa, Basis basis) : kappa_(kappa), basis_(basis) {
    if (kappa != 1 && kappa != -1) throw spec_error("space form curvature must be +1 or -1");
    if (kappa == 1 && basis == Basis::pseudo_orthonormal) {
      throw spec_error("pseudo-orthonormal basis exists only for the hyperbolic space form");
    }
  }

  int kappa() const noexcept { return kappa_; }
  Basis basis() const noexcept { return basis_; }
  bool is_sphere() const noexcept { return kappa_ == 1; }
  Frame frame() const noexcept {
    if (kappa_ == 1) return Frame::euclidean;
    return basis_ == Basis::orthonormal ? Frame::minkowski : Frame::minkowski_null;
  }
  std::string name() const { return kappa_ == 1 ? "s3" : "h3"; }

  friend bool operator==(const SpaceForm&, const SpaceForm&) = default;

 private:
  int kappa_;
  Basis basis_;
};

enum class RotationKind { elliptic, hyperbolic, parabolic };

inline const char* to_string(RotationKind k) {
  switch (k) {
    case RotationKind::elliptic: return "elliptic";
    case RotationKind::hyperbolic: return "hyperbolic";
    case RotationKind::parabolic: return "parabolic";
  }
  return "?";
}

// Signs (kappa1, kappa2) of the rotation plane and its orthogonal complement.
struct RotationSigns {
  int kappa1;
  int kappa2;
};

inline void require_compatible(RotationKind kind, const SpaceForm& sf) {
  if (sf.is_sphere() && kind != RotationKind::elliptic) {
    throw spec_error(std::string(to_string(kind)) + " rotations exist only in H3");
  }
}

inline RotationSigns rotation_signs(RotationKind kind, const SpaceForm& sf) {
  require_compatible(kind, sf);
  switch (kind) {
    case RotationKind::elliptic: return sf.is_sphere() ? RotationSigns{1, 1} : RotationSigns{1, -1};
    case RotationKind::hyperbolic: return {-1, 1};
    case RotationKind::parabolic: break;
  }
  throw spec_error("parabolic rotations carry no plane signature");
}

struct AmbientPoint {
  Vec4 x{};
  Frame frame = Frame::euclidean;

  double operator[](std::size_t i) const { return x[i]; }
  double& operator[](std::size_t i) { return x[i]; }
};

namespace detail {

inline void require_same_frame(const AmbientPoint& a, const AmbientPoint& b) {
  if (a.frame != b.frame) {
    throw frame_error(std::string("frame mismatch: ") + to_string(a.frame) + " vs " + to_string(b.frame));
  }
}

}  // namespace detail

inline AmbientPoint operator+(const AmbientPoint& a, const AmbientPoint& b) {
  detail::require_same_frame(a, b);
  AmbientPoint out{{}, a.frame};
  for (std::size_t i = 0; i < 4; ++i) out[i] = a[i] + b[i];
  return out;
}

inline AmbientPoint operator-(const AmbientPoint& a, const AmbientPoint& b) {
  detail::require_same_frame(a, b);
  AmbientPoint out{{}, a.frame};
  for (std::size_t i = 0; i < 4; ++i) out[i] = a[i] - b[i];
  return out;
}

inline AmbientPoint operator*(double s, const AmbientPoint& a) {
  AmbientPoint out{{}, a.frame};
  for (std::size_t i = 0; i < 4; ++i) out[i] = s * a[i];
  return out;
}

inline double inner(const AmbientPoint& a, const AmbientPoint& b) {
  detail::require_same_frame(a, b);
  switch (a.frame) {
    case Frame::euclidean: return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
    case Frame::minkowski: return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
    case Frame::minkowski_null: return -a[0] * b[2] - a[2] * b[0] + a[1] * b[1] + a[3] * b[3];
  }
  return 0.0;
}

// Euclidean length of the coordinate vector, independent of signature.
inline double coordinate_norm(const AmbientPoint& a) {
  return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + a[3] * a[3]);
}

// v = (e0 + e3)/sqrt2, o = (e0 - e3)/sqrt2.
inline AmbientPoint to_orthonormal(const AmbientPoint& a) {
  if (a.frame != Frame::minkowski_null) return a;
  constexpr double s = std::numbers::sqrt2 / 2.0;
  return {{s * (a[0] + a[2]), a[1], a[3], s * (a[0] - a[2])}, Frame::minkowski};
}

inline AmbientPoint to_pseudo_orthonormal(const AmbientPoint& a) {
  if (a.frame == Frame::minkowski_null) return a;
  if (a.frame != Frame::minkowski) throw frame_error("only R^{3,1} points have a pseudo-orthonormal form");
  constexpr double s = std::numbers::sqrt2 / 2.0;
  return {{s * (a[0] + a[3]), a[1], s * (a[0] - a[3]), a[2]}, Frame::minkowski_null};
}

// Plane rotation of coordinates (i, j) by theta; an isometry for spacelike planes.
inline AmbientPoint rotate_plane(const AmbientPoint& a, std::size_t i, std::size_t j, double theta) {
  AmbientPoint out = a;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  out[i] = c * a[i] - s * a[j];
  out[j] = s * a[i] + c * a[j];
  return out;
}

// One-parameter isometry groups used to sweep profiles:
//   euclidean frame, elliptic:   rotation of (x0, x1)
//   minkowski frame, elliptic:   rotation of (x2, x3)
//   minkowski frame, hyperbolic: boost of (x0, x1)
//   null frame, parabolic:       v -> v, e1 -> e1 + t v, o -> o + t e1 + t^2/2 v
inline AmbientPoint rotate(RotationKind kind, double theta, const AmbientPoint& a) {
  switch (kind) {
    case RotationKind::elliptic:
      if (a.frame == Frame::euclidean) return rotate_plane(a, 0, 1, theta);
      if (a.frame == Frame::minkowski) return rotate_plane(a, 2, 3, theta);
      break;
    case RotationKind::hyperbolic:
      if (a.frame == Frame::minkowski) {
        const double ch = std::cosh(theta);
        const double sh = std::sinh(theta);
        return {{ch * a[0] + sh * a[1], sh * a[0] + ch * a[1], a[2], a[3]}, a.frame};
      }
      break;
    case RotationKind::parabolic:
      if (a.frame == Frame::minkowski_null) {
        return {{a[0] + theta * a[1] + 0.5 * theta * theta * a[2], a[1] + theta * a[2], a[2], a[3]}, a.frame};
      }
      break;
  }
  throw frame_error(std::string(to_string(kind)) + " rotation is not defined on the " + to_string(a.frame) +
                    " frame");
}

// S3: stereographic projection from (0,0,0,-1). H3: Poincare ball.
inline Point3 project(const AmbientPoint& a) {
  constexpr double pole_tol = 1e-12;
  if (a.frame == Frame::euclidean) {
    const double den = 1.0 + a[3];
    if (den < pole_tol) throw singular_error("point at the stereographic pole (0,0,0,-1)");
    return {a[0] / den, a[1] / den, a[2] / den};
  }
  const auto o = to_orthonormal(a);
  const double den = 1.0 + o[0];
  if (den < pole_tol) throw singular_error("point outside the upper hyperboloid sheet");
  return {o[1] / den, o[2] / den, o[3] / den};
}

namespace detail {

inline double det3(const Vec4& a, const Vec4& b, const Vec4& c, int skip) {
  std::array<int, 3> cols{};
  for (int i = 0, k = 0; i < 4; ++i) {
    if (i != skip) cols[k++] = i;
  }
  const auto m = [&](const Vec4& r, int k) { return r[cols[k]]; };
  return m(a, 0) * (m(b, 1) * m(c, 2) - m(b, 2) * m(c, 1)) - m(a, 1) * (m(b, 0) * m(c, 2) - m(b, 2) * m(c, 0)) +
         m(a, 2) * (m(b, 0) * m(c, 1) - m(b, 1) * m(c, 0));
}

inline Vec4 cofactor_cross(const Vec4& u, const Vec4& v, const Vec4& w, const Vec4& row) {
  Vec4 out{};
  for (int i = 0; i < 4; ++i) {
    const double sign = i % 2 == 0 ? 1.0 : -1.0;
    out[i] = row[i] * sign * det3(u, v, w, i);
  }
  return out;
}

}  // namespace detail

// Formal determinant with first row (-e0, e1, e2, e3).
inline AmbientPoint minkowski_cross(const AmbientPoint& u, const AmbientPoint& v, const AmbientPoint& w) {
  if (u.frame != Frame::minkowski || v.frame != Frame::minkowski || w.frame != Frame::minkowski) {
    throw frame_error("minkowski_cross needs orthonormal R^{3,1} inputs");
  }
  return {detail::cofactor_cross(u.x, v.x, w.x, {-1.0, 1.0, 1.0, 1.0}), Frame::minkowski};
}

// Formal determinant with first row (e0, e1, e2, e3).
inline AmbientPoint euclidean_cross(const AmbientPoint& u, const AmbientPoint& v, const AmbientPoint& w) {
  if (u.frame != Frame::euclidean || v.frame != Frame::euclidean || w.frame != Frame::euclidean) {
    throw frame_error("euclidean_cross needs R^4 inputs");
  }
  return {detail::cofactor_cross(u.x, v.x, w.x, {1.0, 1.0, 1.0, 1.0}), Frame::euclidean};
}

// Cross product in whichever frame the inputs share; null-frame inputs are
// converted to orthonormal coordinates and the result converted back.
inline AmbientPoint cross(const AmbientPoint& u, const AmbientPoint& v, const AmbientPoint& w) {
  detail::require_same_frame(u, v);
  detail::require_same_frame(u, w);
  switch (u.frame) {
    case Frame::euclidean: return euclidean_cross(u, v, w);
    case Frame::minkowski: return minkowski_cross(u, v, w);
    case Frame::minkowski_null:
      return to_pseudo_orthonormal(minkowski_cross(to_orthonormal(u), to_orthonormal(v), to_orthonormal(w)));
  }
  return {};
}

// Point at signed distance t along the unit normal n.
inline AmbientPoint parallel_surface(const AmbientPoint& f, const AmbientPoint& n, double t, const SpaceForm& sf) {
  constexpr double tol = 1e-8;
  if (sf.is_sphere() != (f.frame == Frame::euclidean)) {
    throw frame_error("point frame does not belong to the space form");
  }
  if (std::abs(inner(f, f) - sf.kappa()) > tol) throw domain_error("base point is not on the space form");
  if (std::abs(inner(n, n) - 1.0) > tol) throw domain_error("normal is not a unit spacelike vector");
  if (std::abs(inner(f, n)) > tol) throw domain_error("normal is not tangent to the space form at the base point");
  if (sf.is_sphere()) return std::cos(t) * f + std::sin(t) * n;
  return std::cosh(t) * f + std::sinh(t) * n;
}

}  // namespace rotsurf
