#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "minarea/core.hpp"
#include "minarea/domains.hpp"
#include "minarea/field.hpp"
#include "minarea/io.hpp"
#include "minarea/profiles.hpp"
#include "minarea/run.hpp"
#include "minarea/sphere_geodesics.hpp"
#include "minarea/surfaces.hpp"

namespace {

using namespace minarea;

std::string fd(double v) { return format_double(v); }

int cmd_verify(int kappa, int k, int n, double R, double s_y, long samples,
               std::uint64_t seed, const std::string& out) {
  if (n < 0) n = k + 1;
  const Setup st(kappa, n, k, R, s_y);
  const std::vector<SuiteResult> suites = verify_all(st, samples, seed);
  bool all = true;
  ordered_json j;
  j["schema"] = "minarea-verify/1";
  j["config"] = {{"kappa", kappa}, {"k", k},       {"n", n},
                 {"R", R},         {"s_y", s_y},   {"samples", samples},
                 {"seed", seed}};
  j["suites"] = ordered_json::array();
  for (const SuiteResult& s : suites) {
    ordered_json e;
    e["suite"] = s.suite;
    e["samples"] = s.samples;
    e["max_err"] = s.max_err;
    e["pass"] = s.pass;
    if (!s.note.empty()) e["note"] = s.note;
    j["suites"].push_back(e);
    all = all && s.pass;
  }
  j["pass"] = all;
  write_text(out, j.dump(2) + "\n");
  return all ? 0 : 1;
}

int cmd_sweep_sphere(int k, int grid, int scan, const std::string& out) {
  CsvTable csv({"s_y", "R", "k", "min_lhs", "simple_condition", "certified"});
  const double step = (kPi / 2 - 0.02) / (grid + 1);
  bool sound = true;
  for (int i = 1; i <= grid; ++i) {
    const double s_y = i * step;
    for (int jj = i + 1; jj <= grid + 1; ++jj) {
      const double R = jj * step;
      if (R >= kPi / 2 - 0.01) break;
      const SphereCondition sc =
          sphere_condition_scan(k, BallData(R, s_y), scan);
      csv.add_row({fd(s_y), fd(R), std::to_string(k), fd(sc.min_lhs),
                   sc.simple ? "1" : "0", sc.certified ? "1" : "0"});
      if (sc.simple && !sc.certified) sound = false;
    }
  }
  write_text(out, csv.str());
  return sound ? 0 : 1;
}

int cmd_geodesic(double s_y, double R, int grid, const std::string& out) {
  const ChordProblem p(s_y, R);
  CsvTable csv({"kind", "alpha", "total_length"});
  double max_resid = 0.0;
  for (int i = 0; i <= grid; ++i) {
    const double alpha = kPi * i / grid;
    csv.add_row({"grid", fd(alpha), fd(total_length(p, alpha))});
    max_resid = std::max(max_resid,
                         std::abs(chord_identity_residual(p, alpha)));
  }
  const ChordMinimum m = minimize_chord(p);
  csv.add_row({"minimizer", fd(m.alpha_star), fd(m.length_star)});
  write_text(out, csv.str());
  std::cerr << "alpha_star=" << fd(m.alpha_star)
            << " length_star=" << fd(m.length_star)
            << " two_r_under=" << fd(2 * underline_r(1, BallData(R, s_y)))
            << " max_identity_residual=" << fd(max_resid) << "\n";
  return max_resid <= 1e-10 ? 0 : 1;
}

int cmd_domain(int kappa, int k, double s_y, double R, double R0,
               const std::string& out) {
  const BallData ball(R, s_y);
  if (R0 <= 0.0) R0 = underline_r(kappa, ball);
  const OptimalDomain dom =
      optimal_profile(kappa, k, s_y, R0, s_y + R);
  const DomainProfile ballp = ball_profile(kappa, k, R, s_y);
  CsvTable csv(
      {"branch", "delta", "s", "u", "up", "R_star", "R_bar", "contained"});
  bool contained = true;
  auto emit = [&](const IntegratedBranch& br, double sign,
                  const char* name) {
    for (size_t i = 0; i < br.delta.size(); ++i) {
      const double d = br.delta[i];
      const double s = s_y + sign * d;
      const double rstar = domain_radius_from_u(kappa, br.u[i], d);
      std::string rbar_cell, cont_cell = "1";
      if (s > -R + 1e-9 && s < R - 1e-9) {
        const double rbar = ballp.Rfun(s);
        rbar_cell = fd(rbar);
        const bool ok = rstar <= rbar + 1e-6;
        cont_cell = ok ? "1" : "0";
        if (!ok) contained = false;
      }
      csv.add_row({name, fd(d), fd(s), fd(br.u[i]), fd(br.up[i]), fd(rstar),
                   rbar_cell, cont_cell});
    }
  };
  emit(dom.right, 1.0, "right");
  emit(dom.left, -1.0, "left");
  write_text(out, csv.str());
  std::cerr << "right_termination=" << dom.right.termination
            << " left_termination=" << dom.left.termination
            << " delta_sensitivity=" << fd(dom.delta_sensitivity)
            << " contained=" << (contained ? 1 : 0);
  if (!dom.flag.empty()) std::cerr << " flag=" << dom.flag;
  std::cerr << "\n";
  return contained ? 0 : 1;
}

int cmd_monotonicity(const std::string& surface, int kappa, int n, int k,
                     double R, double s_y, double tilt, double alpha,
                     double neck, int grid, int resolution,
                     const std::string& out) {
  const SampledSubmanifold sub = [&]() -> SampledSubmanifold {
    if (surface == "disk") {
      if (n < 0) n = k + 1;
      return tilted_disk(kappa, n, k, BallData(R, s_y), tilt, resolution);
    }
    if (surface == "catenoid") return catenoid_patch(R, neck, resolution);
    if (surface == "clifford") return clifford_patch(R, resolution);
    if (surface == "chord")
      return chord_submanifold(kappa, n < 0 ? 2 : n, BallData(R, s_y),
                               alpha, resolution);
    throw std::invalid_argument("surface must be one of disk, catenoid, "
                                "clifford, chord");
  }();
  std::vector<double> t_grid(grid);
  const double lo = 0.05 * R, hi = R * (1.0 - 1e-3);
  for (int i = 0; i < grid; ++i)
    t_grid[i] = lo + (hi - lo) * i / (grid - 1.0);
  const MonotonicityReport q = Q_profile(sub, t_grid);
  const MonotonicityReport qp = Qpartial_profile(sub, t_grid);
  CsvTable csv({"t", "Q", "Q_partial"});
  for (int i = 0; i < grid; ++i)
    csv.add_row({fd(t_grid[i]), fd(q.values[i]), fd(qp.values[i])});
  write_text(out, csv.str());
  std::cerr << "min_forward_difference_Q=" << fd(q.min_forward_difference)
            << " min_forward_difference_Q_partial="
            << fd(qp.min_forward_difference) << "\n";
  const bool pass = q.min_forward_difference >= -1e-6 &&
                    qp.min_forward_difference >= -1e-6;
  return pass ? 0 : 1;
}

int cmd_wedge(int grid, const std::string& out) {
  CsvTable csv({"R", "s_y", "r_under", "r_over", "obstruction"});
  for (int i = 1; i <= grid; ++i) {
    const double R = 0.05 * i;
    if (R >= kPi / 2 - 1e-3) break;
    for (int jj = 1; jj < i; ++jj) {
      const double s_y = 0.05 * jj;
      const WedgeResult w = wedge_compare(R, s_y);
      csv.add_row({fd(R), fd(s_y), fd(w.r_under), fd(w.r_over),
                   w.obstruction ? "1" : "0"});
    }
  }
  write_text(out, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification toolkit for prescribed-point area bounds on "
               "minimal submanifolds in space forms"};
  app.require_subcommand(1);

  int kappa = 0, k = 2, n = -1, grid = 12, scan = 1001, resolution = 64;
  double R = 1.0, s_y = 0.3, R0 = -1.0, tilt = 0.3, alpha = kPi / 3,
         neck = 0.3;
  long samples = 100000;
  std::uint64_t seed = 0;
  std::string out, surface;

  auto* v = app.add_subcommand("verify", "Field certification suites");
  v->add_option("--kappa", kappa, "curvature sign, -1/0/1")->required();
  v->add_option("--k", k, "submanifold dimension")->required();
  v->add_option("--n", n, "ambient dimension (default k+1)");
  v->add_option("--R", R, "ball radius");
  v->add_option("--sy", s_y, "axial coordinate of the prescribed point");
  v->add_option("--samples", samples, "sample count");
  v->add_option("--seed", seed, "root seed")->required();
  v->add_option("--out", out, "output path (default stdout)");

  auto* sw = app.add_subcommand("sweep-sphere",
                                "Spherical certification sweep over "
                                "(s_y, R)");
  sw->add_option("--k", k, "submanifold dimension")->required();
  sw->add_option("--grid", grid, "lattice resolution");
  sw->add_option("--scan", scan, "axis scan points per cell");
  sw->add_option("--out", out, "output path (default stdout)");

  auto* ge = app.add_subcommand("geodesic",
                                "Chord lengths through the prescribed "
                                "point on the sphere");
  ge->add_option("--sy", s_y, "axial coordinate of the prescribed point")
      ->required();
  ge->add_option("--R", R, "ball radius")->required();
  ge->add_option("--grid", grid, "alpha grid resolution")->default_val(180);
  ge->add_option("--out", out, "output path (default stdout)");

  auto* dm = app.add_subcommand("domain",
                                "Integrate the equality profile and compare "
                                "with the ball");
  dm->add_option("--kappa", kappa, "curvature sign, -1/0/1")->required();
  dm->add_option("--k", k, "submanifold dimension")->required();
  dm->add_option("--sy", s_y, "axial coordinate of the prescribed point")
      ->required();
  dm->add_option("--R", R, "containing ball radius")->required();
  dm->add_option("--R0", R0,
                 "starting radius at s_y (default: orthogonal disk radius)");
  dm->add_option("--out", out, "output path (default stdout)");

  auto* mo = app.add_subcommand("monotonicity",
                                "Area-ratio profiles Q and Q_partial");
  mo->add_option("--surface", surface, "disk | catenoid | clifford | chord")
      ->required();
  mo->add_option("--kappa", kappa, "curvature sign, -1/0/1");
  mo->add_option("--n", n, "ambient dimension");
  mo->add_option("--k", k, "submanifold dimension");
  mo->add_option("--R", R, "ball radius");
  mo->add_option("--sy", s_y, "axial coordinate of the prescribed point");
  mo->add_option("--tilt", tilt, "disk tilt angle");
  mo->add_option("--alpha", alpha, "chord angle");
  mo->add_option("--neck", neck, "catenoid neck radius");
  mo->add_option("--grid", grid, "t-grid points")->default_val(50);
  mo->add_option("--resolution", resolution, "surface sampling resolution");
  mo->add_option("--out", out, "output path (default stdout)");

  auto* we = app.add_subcommand("wedge",
                                "Wedge comparison radii over a lattice");
  we->add_option("--grid", grid, "lattice extent in steps of 0.05")
      ->default_val(50);
  we->add_option("--out", out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (v->parsed()) return cmd_verify(kappa, k, n, R, s_y, samples, seed,
                                       out);
    if (sw->parsed()) return cmd_sweep_sphere(k, grid, scan, out);
    if (ge->parsed()) return cmd_geodesic(s_y, R, grid, out);
    if (dm->parsed()) return cmd_domain(kappa, k, s_y, R, R0, out);
    if (mo->parsed())
      return cmd_monotonicity(surface, kappa, n, k, R, s_y, tilt, alpha,
                              neck, grid, resolution, out);
    if (we->parsed()) return cmd_wedge(grid, out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
