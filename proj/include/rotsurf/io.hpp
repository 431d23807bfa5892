#pragma once

#include <cmath>
#include <cstddef>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rotsurf/errors.hpp"
#include "rotsurf/profile.hpp"
#include "rotsurf/surface.hpp"
#include "rotsurf/verify.hpp"

namespace rotsurf {

inline constexpr int export_digits = 17;

inline void write_obj(std::ostream& out, const SurfaceMesh& mesh) {
  out.precision(export_digits);
  for (const Point3& p : mesh.projected) out << "v " << p[0] << ' ' << p[1] << ' ' << p[2] << '\n';
  for (const auto& f : mesh.faces) {
    out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << ' ' << f[3] + 1 << '\n';
  }
}

struct ProfileRow {
  double t = 0.0;
  double r = 0.0;
  double psi = 0.0;
  double d = 0.0;
};

inline std::vector<ProfileRow> sample_profile(const ProfileSolution& p, Interval range, std::size_t n) {
  if (n < 2) throw domain_error("profile table needs at least 2 rows");
  std::vector<ProfileRow> rows;
  rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = range.at(static_cast<double>(i) / static_cast<double>(n - 1));
    rows.push_back({t, p.r(t), p.psi(t), p.d(t)});
  }
  return rows;
}

inline void write_profile_csv(std::ostream& out, const std::vector<ProfileRow>& rows) {
  out.precision(export_digits);
  out << "t,r,psi,d\n";
  for (const auto& row : rows) out << row.t << ',' << row.r << ',' << row.psi << ',' << row.d << '\n';
}

inline std::vector<ProfileRow> read_profile_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("t,r,psi,d", 0) != 0) {
    throw domain_error("profile table must start with the header t,r,psi,d");
  }
  std::vector<ProfileRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream fields(line);
    ProfileRow row;
    char c1 = 0, c2 = 0, c3 = 0;
    if (!(fields >> row.t >> c1 >> row.r >> c2 >> row.psi >> c3 >> row.d) || c1 != ',' || c2 != ',' || c3 != ',') {
      throw domain_error("malformed profile row at line " + std::to_string(lineno));
    }
    rows.push_back(row);
  }
  return rows;
}

// Tabulated (t, r, psi, d) against the closed-form profile; residuals are
// relative to max(1, |value|).
inline VerificationReport verify_profile_table(const ProfileSolution& p, const std::vector<ProfileRow>& rows,
                                               double tolerance = 1e-10) {
  double worst = 0.0;
  const auto rel = [](double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); };
  for (const auto& row : rows) {
    const double e = std::max({rel(row.r, p.r(row.t)), rel(row.psi, p.psi(row.t)), rel(row.d, p.d(row.t))});
    worst = std::isnan(e) ? e : std::max(worst, e);
  }
  VerificationReport rep;
  rep.add({"profile.table", rows.empty() ? std::numeric_limits<double>::quiet_NaN() : worst, tolerance,
           rows.size(), 0});
  return rep;
}

inline nlohmann::json to_json(const Interval& i) { return nlohmann::json::array({i.lo, i.hi}); }

inline nlohmann::json to_json(const SurfaceSpec& s) {
  return {{"space", s.space_form.name()},
          {"rotation", to_string(s.rotation)},
          {"class", to_string(s.surface_class)},
          {s.is_cmc() ? "H" : "Hbar", s.curvature},
          {"C", s.C}};
}

namespace detail {

inline nlohmann::json finite_or_null(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(); }

}  // namespace detail

inline nlohmann::json profile_metadata(const ProfileSolution& p) {
  nlohmann::json j;
  j["spec"] = to_json(p.spec());
  j["regime"] = to_string(p.regime().tag);
  j["roots"] = nlohmann::json::array({detail::finite_or_null(p.root_first()), detail::finite_or_null(p.root_second())});
  if (p.is_elliptic()) {
    j["p"] = p.modulus().modulus();
    j["Xi"] = p.scale();
  } else {
    j["p"] = nullptr;
    j["Xi"] = nullptr;
  }
  j["domain"] = to_json(p.domain());
  j["period"] = p.periodic() ? nlohmann::json(p.period()) : nlohmann::json();
  j["spacelike_profile"] = p.spacelike();
  return j;
}

inline nlohmann::json mesh_metadata(const SurfaceMesh& m) {
  return {{"ntheta", m.ntheta},
          {"nt", m.nt},
          {"theta_range", to_json(m.theta_range)},
          {"t_range", to_json(m.t_range)},
          {"clipped", m.clipped},
          {"vertices", m.points.size()},
          {"faces", m.faces.size()}};
}

inline nlohmann::json to_json(const VerificationReport& rep) {
  nlohmann::json checks = nlohmann::json::array();
  for (const Check& c : rep.checks()) {
    checks.push_back({{"name", c.name},
                      {"max_residual", detail::finite_or_null(c.max_residual)},
                      {"tolerance", c.tolerance},
                      {"samples", c.samples},
                      {"skipped", c.skipped},
                      {"pass", c.passed()}});
  }
  return {{"pass", rep.passed()}, {"checks", checks}};
}

}  // namespace rotsurf
