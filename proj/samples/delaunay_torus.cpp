// Finds the embedded five-lobed torus with H = 2 in S3, checks it, and writes
// its stereographic image as an OBJ file.
//
//   sample_delaunay [out.obj]

#include <fstream>
#include <iostream>

#include "rotsurf/rotsurf.hpp"

int main(int argc, char** argv) {
  using namespace rotsurf;
  const char* path = argc > 1 ? argv[1] : "delaunay_torus.obj";

  const TorusSolution torus = solve_torus(2.0, 5).front();
  std::cout.precision(12);
  std::cout << "C = " << torus.C << ", period = " << torus.period << ", advance = " << torus.advance
            << ", seam gap = " << seam_gap(torus) << '\n';

  const Immersion surface(torus.profile);
  VerificationReport report = verify_ode(torus.profile);
  report.merge(verify_curvature(surface, 12));
  std::cout << report.to_text();

  std::ofstream out(path);
  if (!out) {
    std::cerr << "cannot write " << path << '\n';
    return 3;
  }
  write_obj(out, torus_mesh(torus, 48, 400));
  std::cout << "wrote " << path << '\n';
  return report.passed() ? 0 : 1;
}
