// Acceptance checks for the verification toolkit: one line per criterion,
// PASS or FAIL with the governing metric. Exit status is the number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "minarea/core.hpp"
#include "minarea/domains.hpp"
#include "minarea/field.hpp"
#include "minarea/profiles.hpp"
#include "minarea/run.hpp"
#include "minarea/sphere_geodesics.hpp"
#include "minarea/surfaces.hpp"

namespace {

using namespace minarea;

int failures = 0;

void report(int idx, bool pass, const char* what, const std::string& detail) {
  std::printf("[%2d] %s  %s (%s)\n", idx, pass ? "PASS" : "FAIL", what,
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0,
                double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), f, a, b, c, d);
  return std::string(buf);
}

// 1. Closed tangential divergence against the numeric one over random
//    configurations, points and planes.
void criterion_divergence_identity() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(20260815);
  double worst = 0.0;
  long done = 0, attempts = 0;
  while (done < 1000 && attempts < 40000) {
    ++attempts;
    const int kappa = static_cast<int>(rng.uniform(0.0, 3.0)) - 1;
    const int k = 1 + static_cast<int>(rng.uniform(0.0, 5.0));
    const int n = k + 1 +
                  static_cast<int>(rng.uniform(0.0, 7.0 - k - 1 + 1e-9));
    double R, s_y;
    if (kappa > 0) {
      R = rng.uniform(0.3, 1.2);
      s_y = rng.uniform(0.05, std::min(R - 0.02, kPi / 2 - R - 0.05));
      if (!(s_y > 0.05)) continue;
    } else {
      R = rng.uniform(0.4, 1.5);
      s_y = rng.uniform(0.05, R - 0.02);
    }
    const Setup st(kappa, n, k, R, s_y);
    Vec x;
    try {
      x = sample_ball_point(st, rng);
    } catch (const EvalError&) {
      continue;
    }
    double closed, numeric;
    try {
      const std::vector<Vec> frame = st.sf.haar_tangent_frame(rng, x, k);
      closed = div_W_plane(st, x, frame);
      numeric = div_W_numeric(st, x, frame);
    } catch (const EvalError&) {
      continue;
    }
    worst = std::max(worst,
                     std::abs(closed - numeric) / (1.0 + std::abs(closed)));
    ++done;
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  report(1, done >= 1000 && worst <= 1e-6 && secs <= 60.0,
         "divergence identity, closed vs numeric",
         fmt("tuples=%.0f max_rel=%.3g secs=%.1f", double(done), worst,
             secs));
}

struct V1Config {
  int kappa, k, n;
  double R, s_y;
};

const std::vector<V1Config>& v1_configs() {
  static const std::vector<V1Config> cfgs = [] {
    std::vector<V1Config> v;
    for (int k : {1, 2, 3, 5}) {
      v.push_back({-1, k, k + 1, 1.2, 0.4});
      v.push_back({0, k, k + 1, 1.0, 0.3});
    }
    // Spherical cases under the simple certification condition
    // cos(s_y + R) >= sqrt(2/k).
    v.push_back({1, 8, 9, 0.6, 0.2});
    v.push_back({1, 10, 11, 0.5, 0.15});
    return v;
  }();
  return cfgs;
}

// 2. Divergence bound: no sample exceeds 1 + 1e-9 anywhere in the ball.
void criterion_v1() {
  double worst = -1e300;
  long violations = 0, total = 0;
  for (const V1Config& c : v1_configs()) {
    const Setup st(c.kappa, c.n, c.k, c.R, c.s_y);
    const V1Report rep = certify_V1(st, 100000, 99000 + c.k + 10 * c.kappa);
    violations += rep.violations;
    total += rep.samples;
    worst = std::max(worst, rep.max_div);
  }
  report(2, violations == 0,
         "divergence bound over ten configurations x 1e5 samples",
         fmt("violations=%.0f max_div-1=%.3g", double(violations),
             worst - 1.0));
}

// 3. Residue at the prescribed point equals -A(underline r).
void criterion_residue() {
  double worst = 0.0;
  int configs = 0;
  Rng rng(7311);
  std::vector<V1Config> cfgs;
  for (int k : {1, 2, 3, 4, 5}) {
    cfgs.push_back({-1, k, k + 1, 1.2, 0.4});
    cfgs.push_back({-1, k, k + 2, 0.9, 0.25});
    cfgs.push_back({0, k, k + 1, 1.0, 0.3});
    cfgs.push_back({0, k, k + 2, 1.3, 0.5});
  }
  cfgs.push_back({1, 8, 9, 0.6, 0.2});
  cfgs.push_back({1, 10, 11, 0.5, 0.15});
  for (const V1Config& c : cfgs) {
    const Setup st(c.kappa, c.n, c.k, c.R, c.s_y);
    const double target = A_fun(st.prof, st.underline_radius());
    for (int dir = 0; dir < 3; ++dir) {
      const Vec v = st.sf.haar_tangent_frame(rng, st.chart.y(), 1)[0];
      const double res = residue_at_point(st, v);
      worst = std::max(worst, std::abs(res + target));
    }
    ++configs;
  }
  report(3, worst <= 1e-6, "pointwise residue -A(r) at the marked point",
         fmt("configs=%.0f max_abs_err=%.3g", double(configs), worst));
}

// 4. The field vanishes on the ball boundary, and on the hemisphere wall
//    when that wall crosses the ball.
void criterion_boundary() {
  double worst = 0.0;
  int total = 0;
  std::vector<V1Config> cfgs = v1_configs();
  cfgs.push_back({1, 3, 4, 1.4, 0.4});  // wall crosses the ball
  for (const V1Config& c : cfgs) {
    const Setup st(c.kappa, c.n, c.k, c.R, c.s_y);
    const BoundaryScan scan = boundary_check(st, 1000, 5150 + c.k);
    worst = std::max(worst, scan.max_norm);
    total += scan.samples;
  }
  report(4, worst <= 1e-10, "field vanishes on domain boundaries",
         fmt("points=%.0f max_norm=%.3g", double(total), worst));
}

// 5. Flat-space field agrees with its closed Euclidean form.
void criterion_euclidean() {
  double worst = 0.0;
  for (int k : {3, 4, 5}) {
    const Setup st(0, k + 1, k, 1.0, 0.3);
    const SuiteResult r = suite_euclidean(st, 10000, 4242 + k);
    worst = std::max(worst, r.max_err);
    if (!r.pass) {
      report(5, false, "euclidean closed-form reduction",
             fmt("k=%.0f max_abs=%.3g", double(k), r.max_err));
      return;
    }
  }
  report(5, true, "euclidean closed-form reduction",
         fmt("max_componentwise=%.3g", worst));
}

// 6. Closed derivative of the comparison flux F against finite differences.
void criterion_fprime() {
  double worst_rel = 0.0, worst_flat2 = 0.0;
  for (int kappa : {-1, 0, 1}) {
    for (int k = 1; k <= 6; ++k) {
      const ProfileContext ctx(kappa, k);
      const double R = kappa > 0 ? 0.7 : 1.1;
      const BallData ball(R, 0.3);
      for (int i = 1; i < 400; ++i) {
        const double s = -R + 0.02 + (2 * R - 0.04) * i / 400.0;
        if (std::abs(s) < 0.03) continue;
        const double closed = Fprime_closed(ctx, ball, s);
        if (kappa == 0 && k == 2) {
          worst_flat2 = std::max(worst_flat2, std::abs(closed));
          continue;
        }
        const double fd = richardson_derivative(
            [&](double t) { return F_fun(ctx, ball, t); }, s, 1e-4);
        const double rel =
            std::abs(closed - fd) / std::max(1e-12, std::abs(closed));
        worst_rel = std::max(worst_rel, rel);
      }
    }
  }
  report(6, worst_rel <= 1e-8 && worst_flat2 == 0.0,
         "closed flux derivative vs finite differences",
         fmt("max_rel=%.3g flat_k2_max=%.3g", worst_rel, worst_flat2));
}

// 7. Chord length through the marked point is minimized by the orthogonal
//    one, with the matched length.
void criterion_chords() {
  Rng rng(1897);
  double worst_alpha = 0.0, worst_len = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double R = rng.uniform(0.2, kPi / 2 - 0.05);
    const double s_y = rng.uniform(0.03, R - 0.02);
    const ChordProblem p(s_y, R);
    const ChordMinimum m = minimize_chord(p);
    worst_alpha = std::max(worst_alpha, std::abs(m.alpha_star - kPi / 2));
    worst_len = std::max(
        worst_len,
        std::abs(m.length_star - 2.0 * underline_r(1, BallData(R, s_y))));
  }
  report(7, worst_alpha <= 1e-6 && worst_len <= 1e-8,
         "orthogonal chord minimizes total length",
         fmt("max|alpha-pi/2|=%.3g max|L-2r|=%.3g", worst_alpha, worst_len));
}

// 8. Explicit surfaces: tilted disks are minimized at zero tilt with the
//    closed value, catenoid and chord areas beat the bound.
void criterion_surface_areas() {
  struct DiskCfg {
    int kappa, n, k;
    double R, s_y;
  };
  const DiskCfg cfgs[] = {
      {-1, 3, 2, 1.1, 0.35}, {0, 4, 3, 1.0, 0.3}, {1, 4, 3, 0.45, 0.15}};
  double worst_rel = 0.0;
  bool order_ok = true;
  for (const DiskCfg& c : cfgs) {
    const BallData ball(c.R, c.s_y);
    const ProfileContext prof(c.kappa, c.k);
    const double bound =
        A_fun(prof, underline_r(c.kappa, ball)) * unit_sphere_area(c.k);
    const SampledSubmanifold flat =
        tilted_disk(c.kappa, c.n, c.k, ball, 0.0, 24);
    const double base = flat.annulus(0.0, c.R, AnnulusIntegrand::One);
    worst_rel = std::max(worst_rel, std::abs(base / bound - 1.0));
    for (double tilt : {0.12, 0.25, 0.4, 0.6, 0.9, 1.2}) {
      const SampledSubmanifold sub =
          tilted_disk(c.kappa, c.n, c.k, ball, tilt, 24);
      if (sub.annulus(0.0, c.R, AnnulusIntegrand::One) < base - 1e-9)
        order_ok = false;
    }
  }
  const SampledSubmanifold cat = catenoid_patch(1.0, 0.3, 96);
  Vec y_cat(3);
  y_cat[0] = 0.3;
  const AreaCheck cat_chk = prescribed_point_check(cat, y_cat);
  const SampledSubmanifold chord =
      chord_submanifold(1, 3, BallData(0.8, 0.3), kPi / 3);
  const AreaCheck chord_chk =
      prescribed_point_check(chord, AxisChart(chord.sf, 0.3).y());
  report(8,
         worst_rel <= 1e-6 && order_ok && cat_chk.pass && chord_chk.pass,
         "areas of disks, catenoid and chords against the bounds",
         fmt("disk_rel=%.3g catenoid_margin=%.3g chord_margin=%.3g",
             worst_rel, cat_chk.area / cat_chk.bound - 1.0,
             chord_chk.area / chord_chk.bound - 1.0));
}

// 9. Monotone density ratios on fifty-point grids.
void criterion_monotonicity() {
  double worst = 1e300;
  const auto run_grid = [&](const SampledSubmanifold& sub, double lo,
                            double hi) {
    std::vector<double> grid(50);
    for (int i = 0; i < 50; ++i) grid[i] = lo + (hi - lo) * i / 49.0;
    const MonotonicityReport q = Q_profile(sub, grid);
    const MonotonicityReport qp = Qpartial_profile(sub, grid);
    worst = std::min({worst, q.min_forward_difference,
                      qp.min_forward_difference});
  };
  run_grid(tilted_disk(0, 4, 2, BallData(1.0, 0.3), 0.6, 24), 0.05, 0.98);
  run_grid(catenoid_patch(1.0, 0.3, 96), 0.05, 0.98);
  run_grid(clifford_patch(1.0, 96), 0.05, 0.98);
  run_grid(chord_submanifold(1, 3, BallData(0.8, 0.3), kPi / 2), 0.04,
           0.78);
  report(9, worst >= -1e-6, "density ratios nondecreasing on four surfaces",
         fmt("min_forward_difference=%.3g", worst));
}

// 10. Wedge comparison radii at the documented configuration.
void criterion_wedge() {
  const WedgeResult w = wedge_compare(1.5, 0.4);
  const bool pass = std::abs(w.r_over - 1.3354) <= 1e-3 &&
                    std::abs(w.r_under - 1.4939) <= 1e-3 && w.obstruction;
  report(10, pass, "wedge obstruction radii",
         fmt("r_over=%.6f r_under=%.6f", w.r_over, w.r_under));
}

// 11. Sweep soundness: the simple condition only ever certifies, and never
//     holds for k = 2.
void criterion_sweep_soundness() {
  bool sound = true, k2_simple = false;
  long cells = 0;
  for (int k : {2, 3, 4, 8}) {
    const double step = (kPi / 2 - 0.02) / 13.0;
    for (int i = 1; i <= 12; ++i) {
      for (int j = i + 1; j <= 13; ++j) {
        const double s_y = i * step, R = j * step;
        if (R >= kPi / 2 - 0.01) break;
        const SphereCondition sc =
            sphere_condition_scan(k, BallData(R, s_y), 1001);
        if (sc.simple && !sc.certified) sound = false;
        if (k == 2 && sc.simple) k2_simple = true;
        ++cells;
      }
    }
  }
  report(11, sound && !k2_simple, "spherical sweep soundness",
         fmt("cells=%.0f", double(cells)));
}

// 12. Profile identity suite plus the small-radius asymptotics.
void criterion_identities() {
  double worst_suite = 0.0, worst_asym = 0.0, worst_G = 0.0, worst_log = 0.0;
  bool pass = true;
  for (int kappa : {-1, 0, 1}) {
    for (int k = 1; k <= 6; ++k) {
      const Setup st(kappa, k + 1, k, kappa > 0 ? 0.7 : 1.0, 0.3);
      const SuiteResult r = suite_identities(st);
      worst_suite = std::max(worst_suite, r.max_err);
      pass = pass && r.pass;
      const ProfileContext prof(kappa, k);
      for (double r0 : {1e-4, 1e-3}) {
        worst_asym = std::max(
            worst_asym,
            std::abs(Aprime_fun(prof, r0) * std::pow(r0, 1 - k) - 1.0));
        worst_asym = std::max(
            worst_asym,
            std::abs(A_fun(prof, r0) * k * std::pow(r0, -k) - 1.0));
        if (k != 2) {
          // The anchor constant of G enters one power of r above the leading
          // term when k = 3, so this ratio converges like r.
          const double lead = -std::pow(r0, 2.0 - k) / (k - 2.0);
          worst_G = std::max(worst_G, std::abs(G_fun(prof, r0) / lead - 1.0));
        }
      }
      if (k == 2) {
        const double r0 = 1e-8;
        worst_log = std::max(
            worst_log, std::abs(G_fun(prof, r0) / std::log(r0) - 1.0));
      }
    }
  }
  report(12,
         pass && worst_asym <= 1e-5 && worst_G <= 1e-2 && worst_log <= 0.05,
         "profile identities and small-radius asymptotics",
         fmt("suite_max=%.3g asym_max=%.3g G_ratio_max=%.3g log_ratio_max=%.3g",
             worst_suite, worst_asym, worst_G, worst_log));
}

// 13. Integrated equality domains sit inside the comparison ball profile
//     wherever both are defined.
void criterion_containment() {
  const V1Config cfgs[] = {{-1, 2, 3, 1.2, 0.4},
                           {-1, 5, 6, 1.0, 0.3},
                           {0, 3, 4, 1.0, 0.5},
                           {0, 4, 5, 0.9, 0.35},
                           {1, 8, 9, 0.8, 0.2}};
  double worst = -1e300;
  long checked = 0;
  bool enough = true;
  for (const V1Config& c : cfgs) {
    const BallData ball(c.R, c.s_y);
    const double R0 = underline_r(c.kappa, ball);
    const OptimalDomain dom =
        optimal_profile(c.kappa, c.k, c.s_y, R0, c.R + c.s_y);
    const DomainProfile ballp = ball_profile(c.kappa, c.k, c.R, c.s_y);
    long here = 0;
    const auto scan = [&](const IntegratedBranch& br, double sign) {
      for (size_t i = 0; i < br.delta.size(); ++i) {
        const double s = c.s_y + sign * br.delta[i];
        if (s <= -c.R + 1e-9 || s >= c.R - 1e-9) continue;
        const double rstar =
            domain_radius_from_u(c.kappa, br.u[i], br.delta[i]);
        worst = std::max(worst, rstar - ballp.Rfun(s));
        ++here;
      }
    };
    scan(dom.right, 1.0);
    scan(dom.left, -1.0);
    checked += here;
    if (here <= 50) enough = false;
  }
  report(13, worst <= 1e-6 && enough,
         "equality domains contained in the ball profile",
         fmt("max_excess=%.3g points=%.0f", worst, double(checked)));
}

}  // namespace

int main() {
  criterion_divergence_identity();
  criterion_v1();
  criterion_residue();
  criterion_boundary();
  criterion_euclidean();
  criterion_fprime();
  criterion_chords();
  criterion_surface_areas();
  criterion_monotonicity();
  criterion_wedge();
  criterion_sweep_soundness();
  criterion_identities();
  criterion_containment();
  std::printf("%s: %d of 13 criteria failed\n",
              failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
              failures);
  return failures;
}
