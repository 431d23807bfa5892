#pragma once

// Command-line front end: generate, verify, torus.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rotsurf/rotsurf.hpp"

namespace rotsurf::cli {

enum ExitCode : int { ok = 0, verification_failed = 1, invalid = 2, io_failure = 3, no_root = 4 };

class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct JobConfig {
  std::string command;
  std::string space = "s3";
  std::string rotation = "elliptic";
  std::optional<double> cmc;
  std::optional<double> chc;
  double C = 0.0;
  std::size_t ntheta = 64;
  std::size_t nt = 128;
  std::optional<Interval> trange;
  std::string out;
  std::string name = "surface";
  std::vector<std::string> tol;
  std::string project = "auto";
  std::string profile_csv;
  std::vector<double> parallel;
  double torus_H = 2.0;
  std::string torus_n = "5..6";

  SurfaceSpec spec() const {
    if (cmc && chc) throw spec_error("--cmc and --chc are mutually exclusive");
    if (!cmc && !chc) throw spec_error("one of --cmc H or --chc HBAR is required");
    if (space != "s3" && space != "h3") throw spec_error("--space must be s3 or h3");
    RotationKind kind;
    if (rotation == "elliptic") kind = RotationKind::elliptic;
    else if (rotation == "hyperbolic") kind = RotationKind::hyperbolic;
    else if (rotation == "parabolic") kind = RotationKind::parabolic;
    else throw spec_error("--rotation must be elliptic, hyperbolic or parabolic");
    const SpaceForm sf = space == "s3" ? SpaceForm::sphere()
                                       : SpaceForm::hyperbolic(kind == RotationKind::parabolic ? Basis::pseudo_orthonormal
                                                                                               : Basis::orthonormal);
    return cmc ? SurfaceSpec::cmc(sf, kind, *cmc, C) : SurfaceSpec::chc(sf, kind, *chc, C);
  }

  Tolerances tolerances() const {
    Tolerances t;
    for (const std::string& item : tol) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw spec_error("--tol expects name=value, got " + item);
      t.set(item.substr(0, eq), std::stod(item.substr(eq + 1)));
    }
    return t;
  }

  Projection projection() const {
    if (project == "auto") return Projection::automatic;
    if (project == "stereo") return Projection::stereographic;
    if (project == "poincare") return Projection::poincare;
    if (project == "none") return Projection::none;
    throw spec_error("--project must be stereo, poincare or none");
  }
};

inline Interval parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw spec_error("range must be a:b, got " + text);
  std::size_t used = 0;
  const std::string a = text.substr(0, colon);
  const std::string b = text.substr(colon + 1);
  Interval r;
  try {
    r.lo = std::stod(a, &used);
    if (used != a.size()) throw spec_error("");
    r.hi = std::stod(b, &used);
    if (used != b.size()) throw spec_error("");
  } catch (const std::exception&) {
    throw spec_error("range must be a:b with numbers, got " + text);
  }
  if (!(r.lo < r.hi)) throw spec_error("range needs a < b, got " + text);
  return r;
}

// "5", "5..6" or "5:6"
inline std::pair<int, int> parse_lobes(const std::string& text) {
  const auto parse = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      throw spec_error("malformed lobe count: " + text);
    }
    if (used != s.size() || v < 1) throw spec_error("malformed lobe count: " + text);
    return v;
  };
  auto sep = text.find("..");
  std::size_t skip = 2;
  if (sep == std::string::npos) sep = text.find(':'), skip = 1;
  if (sep == std::string::npos) {
    const int n = parse(text);
    return {n, n};
  }
  const int lo = parse(text.substr(0, sep));
  const int hi = parse(text.substr(sep + skip));
  if (lo > hi) throw spec_error("malformed lobe range: " + text);
  return {lo, hi};
}

inline void apply_json(JobConfig& c, const nlohmann::json& j) {
  const auto get = [&](const char* key, auto& field) {
    if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
  };
  get("space", c.space);
  get("rotation", c.rotation);
  if (j.contains("cmc")) c.cmc = j.at("cmc").get<double>();
  if (j.contains("chc")) c.chc = j.at("chc").get<double>();
  get("C", c.C);
  get("ntheta", c.ntheta);
  get("nt", c.nt);
  if (j.contains("trange")) {
    const auto& t = j.at("trange");
    c.trange = t.is_string() ? parse_range(t.get<std::string>()) : Interval{t.at(0).get<double>(), t.at(1).get<double>()};
  }
  get("out", c.out);
  get("name", c.name);
  if (j.contains("tol")) {
    for (const auto& [k, v] : j.at("tol").items()) {
      std::ostringstream s;
      s.precision(17);
      s << k << '=' << v.get<double>();
      c.tol.push_back(s.str());
    }
  }
  get("project", c.project);
  get("profile", c.profile_csv);
  get("parallel", c.parallel);
  get("H", c.torus_H);
  if (j.contains("n")) c.torus_n = j.at("n").is_string() ? j.at("n").get<std::string>() : std::to_string(j.at("n").get<int>());
}

inline JobConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot read config file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw spec_error(std::string("malformed config file: ") + e.what());
  }
  JobConfig c;
  try {
    apply_json(c, j);
  } catch (const nlohmann::json::exception& e) {
    throw spec_error(std::string("bad config value: ") + e.what());
  }
  return c;
}

namespace detail {

inline std::filesystem::path prepare_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw io_error("cannot create output directory " + dir + ": " + ec.message());
  return dir;
}

template <class Writer>
void write_file(const std::filesystem::path& path, Writer&& writer) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot write " + path.string());
  writer(out);
  out.flush();
  if (!out) throw io_error("write failed for " + path.string());
}

inline void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  write_file(path, [&](std::ostream& o) { o << j.dump(2) << '\n'; });
}

}  // namespace detail

inline int cmd_generate(const JobConfig& c, std::ostream& out) {
  const SurfaceSpec spec = c.spec();
  const ProfileSolution profile = solve_profile(spec);
  const Immersion surface(profile);
  const SurfaceMesh mesh = sample_mesh(surface, c.ntheta, c.nt, std::nullopt, c.trange, c.projection());
  const auto rows = sample_profile(profile, mesh.t_range, c.nt);

  const std::string dir = c.out.empty() ? "." : c.out;
  const auto base = detail::prepare_dir(dir) / c.name;
  nlohmann::json meta = profile_metadata(profile);
  meta["mesh"] = mesh_metadata(mesh);
  meta["projection"] = c.project;
  detail::write_file(base.string() + ".obj", [&](std::ostream& o) { write_obj(o, mesh); });
  detail::write_file(base.string() + ".csv", [&](std::ostream& o) { write_profile_csv(o, rows); });
  detail::write_json(base.string() + ".json", meta);

  out << describe(spec) << " regime=" << to_string(profile.regime().tag) << " vertices=" << mesh.points.size()
      << (mesh.clipped ? " clipped" : "") << '\n';
  return ok;
}

inline VerificationReport run_suites(const JobConfig& c, const ProfileSolution& profile) {
  const Tolerances tol = c.tolerances();
  const Immersion surface(profile);
  VerificationReport rep = verify_ode(profile, 400, tol);
  rep.merge(verify_curvature(surface, 20, tol));
  rep.merge(verify_membership(sample_mesh(surface, 32, 32, std::nullopt, c.trange, Projection::none), tol));
  if (!c.parallel.empty()) rep.merge(verify_parallel(surface, c.parallel, tol));
  if (!c.profile_csv.empty()) {
    std::ifstream in(c.profile_csv);
    if (!in) throw io_error("cannot read profile table " + c.profile_csv);
    rep.merge(verify_profile_table(profile, read_profile_csv(in)));
  }
  return rep;
}

inline int cmd_verify(const JobConfig& c, std::ostream& out) {
  const SurfaceSpec spec = c.spec();
  const ProfileSolution profile = solve_profile(spec);
  const VerificationReport rep = run_suites(c, profile);
  out << describe(spec) << '\n' << rep.to_text();
  if (!spec.is_cmc()) {
    const Check& k = rep.find("curvature.chc");
    out << std::scientific << std::setprecision(3) << "|K - Hbar*H| max=" << k.max_residual
        << " tol=" << k.tolerance << std::defaultfloat << '\n';
  }
  if (!c.out.empty()) {
    const auto base = detail::prepare_dir(c.out) / c.name;
    detail::write_file(base.string() + ".report.txt", [&](std::ostream& o) { o << rep.to_text(); });
    nlohmann::json j = to_json(rep);
    j["spec"] = to_json(spec);
    detail::write_json(base.string() + ".report.json", j);
  }
  return rep.passed() ? ok : verification_failed;
}

inline int cmd_torus(const JobConfig& c, std::ostream& out) {
  const auto [lo, hi] = parse_lobes(c.torus_n);
  std::vector<TorusSolution> found;
  for (int n = lo; n <= hi; ++n) {
    try {
      for (auto& s : solve_torus(c.torus_H, n)) found.push_back(std::move(s));
    } catch (const not_found_error&) {
    }
  }
  out.precision(17);
  out << "n C embedded period seam_gap\n";
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& s : found) {
    const double gap = seam_gap(s);
    out << s.n << ' ' << s.C << ' ' << (s.embedded ? "yes" : "no") << ' ' << s.period << ' ' << gap << '\n';
    rows.push_back({{"n", s.n}, {"C", s.C}, {"embedded", s.embedded}, {"period", s.period}, {"seam_gap", gap}});
  }
  if (!c.out.empty() && !found.empty()) {
    const auto dir = detail::prepare_dir(c.out);
    for (const auto& s : found) {
      const SurfaceMesh mesh = torus_mesh(s, c.ntheta, c.nt, c.project == "none" ? Projection::none
                                                                                  : Projection::stereographic);
      std::ostringstream stem;
      stem.precision(6);
      stem << c.name << "_n" << s.n << "_C" << s.C;
      detail::write_file(dir / (stem.str() + ".obj"), [&](std::ostream& o) { write_obj(o, mesh); });
    }
    detail::write_json(dir / (c.name + "_tori.json"), {{"H", c.torus_H}, {"tori", rows}});
  }
  if (found.empty()) {
    out << "no closure root for n in " << c.torus_n << '\n';
    return no_root;
  }
  return ok;
}

// Parses argv, merges --config (flags override the file) and dispatches.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Rotational cmc and chc surfaces in S3 and H3"};
  app.require_subcommand(1);
  JobConfig flags;
  std::string config_path;
  std::string trange_text;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON job file; flags override it");
    sub->add_option("--space", flags.space, "s3 or h3");
    sub->add_option("--rotation", flags.rotation, "elliptic, hyperbolic or parabolic");
    auto* cmc = sub->add_option("--cmc", flags.cmc, "constant mean curvature H");
    auto* chc = sub->add_option("--chc", flags.chc, "constant harmonic mean curvature HBAR");
    cmc->excludes(chc);
    sub->add_option("--C", flags.C, "integration constant");
    sub->add_option("--ntheta", flags.ntheta, "mesh samples in theta");
    sub->add_option("--nt", flags.nt, "mesh samples in t");
    sub->add_option("--trange", trange_text, "t-range a:b");
    sub->add_option("--out", flags.out, "output directory");
    sub->add_option("--name", flags.name, "output file stem");
    sub->add_option("--tol", flags.tol, "tolerance override name=value")->take_all();
    sub->add_option("--project", flags.project, "stereo, poincare or none");
  };

  auto* gen = app.add_subcommand("generate", "write mesh (OBJ), profile (CSV) and metadata (JSON)");
  add_common(gen);
  auto* ver = app.add_subcommand("verify", "run the verification suites");
  add_common(ver);
  ver->add_option("--profile", flags.profile_csv, "profile table t,r,psi,d to check");
  ver->add_option("--parallel", flags.parallel, "parallel-surface offsets (H3)")->take_all();
  auto* tor = app.add_subcommand("torus", "solve the closure condition for embedded tori in S3");
  tor->add_option("--config", config_path, "JSON job file; flags override it");
  tor->add_option("--H", flags.torus_H, "mean curvature");
  tor->add_option("--n", flags.torus_n, "lobe count n or range a..b");
  tor->add_option("--out", flags.out, "output directory for torus meshes");
  tor->add_option("--name", flags.name, "output file stem");
  tor->add_option("--ntheta", flags.ntheta, "mesh samples in theta");
  tor->add_option("--nt", flags.nt, "mesh samples in t");
  tor->add_option("--project", flags.project, "stereo or none");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return invalid;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    JobConfig job = config_path.empty() ? JobConfig{} : load_config(config_path);
    const auto given = [&](const char* name) {
      const CLI::Option* opt = sub->get_option_no_throw(name);
      return opt != nullptr && opt->count() > 0;
    };
    if (given("--space")) job.space = flags.space;
    if (given("--rotation")) job.rotation = flags.rotation;
    if (given("--cmc")) job.cmc = flags.cmc, job.chc.reset();
    if (given("--chc")) job.chc = flags.chc, job.cmc.reset();
    if (given("--C")) job.C = flags.C;
    if (given("--ntheta")) job.ntheta = flags.ntheta;
    if (given("--nt")) job.nt = flags.nt;
    if (given("--trange")) job.trange = parse_range(trange_text);
    if (given("--out")) job.out = flags.out;
    if (given("--name")) job.name = flags.name;
    if (given("--tol")) job.tol.insert(job.tol.end(), flags.tol.begin(), flags.tol.end());
    if (given("--project")) job.project = flags.project;
    if (given("--profile")) job.profile_csv = flags.profile_csv;
    if (given("--parallel")) job.parallel = flags.parallel;
    if (given("--H")) job.torus_H = flags.torus_H;
    if (given("--n")) job.torus_n = flags.torus_n;
    job.command = sub->get_name();

    if (job.command == "generate") return cmd_generate(job, out);
    if (job.command == "verify") return cmd_verify(job, out);
    return cmd_torus(job, out);
  } catch (const infeasible_error& e) {
    err << "infeasible: " << e.what() << '\n';
    if (!e.admissible().empty()) err << "admissible C: " << e.admissible() << '\n';
    return invalid;
  } catch (const io_error& e) {
    err << "i/o error: " << e.what() << '\n';
    return io_failure;
  } catch (const not_found_error& e) {
    err << e.what() << '\n' << e.table();
    return no_root;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return invalid;
  }
}

}  // namespace rotsurf::cli
