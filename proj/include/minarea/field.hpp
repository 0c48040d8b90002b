#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "minarea/core.hpp"
#include "minarea/profiles.hpp"
#include "minarea/spaceform.hpp"

namespace minarea {

// Full problem setup: curvature kappa, ambient dimension n, submanifold
// dimension k, geodesic ball radius R, and the axial offset s_y of the
// prescribed point from the centre.
struct Setup {
  SpaceForm sf;
  ProfileContext prof;
  BallData ball;
  AxisChart chart;

  Setup(int kappa, int n, int k, double R, double s_y)
      : sf(kappa, n), prof(kappa, k), ball(R, s_y), chart(sf, s_y) {
    if (k < 1 || k > n - 1) throw std::invalid_argument("1 <= k <= n-1");
    if (!(R < half_diam(kappa) / (kappa > 0 ? 1.0 : 1.0)))
      throw std::invalid_argument("R below half diameter");
    if (kappa > 0 && !(R < kPi / 2))
      throw std::invalid_argument("R < pi/2 on the sphere");
  }

  double underline_radius() const { return underline_r(sf.kappa, ball); }

  // On the sphere, whether the far wall of the hemisphere around y cuts
  // into the ball; in that regime the field is restricted to the wedge
  // B_R intersected with the hemisphere around y.
  bool hemisphere_cut() const {
    return sf.kappa > 0 && ball.s_y + ball.R > kPi / 2;
  }
};

// Chart data cached per evaluation point.
struct ChartPoint {
  double s = 0.0;
  double r_y = 0.0;
  double u = 0.0;
  Vec grad_ry;
  Vec dsv;
};

inline ChartPoint chart_point(const Setup& st, const Vec& x) {
  ChartPoint cp;
  cp.s = st.chart.s_coord(x);
  cp.r_y = st.chart.r_y(x);
  cp.u = u_ball(st.sf.kappa, st.ball, cp.s);
  cp.grad_ry = st.chart.grad_r_y(x);
  cp.dsv = st.chart.ds_vec(x);
  return cp;
}

// The comparison field
//   W = [A(r_y) - A(u(s))]/A'(r_y) * grad r_y
//     + [B(r_y) - B(u(s))] * A'(u) u'(s) cs(s-s_y)^2 * ds_vec.
// It vanishes on the boundary sphere (where r_y = u(s)), has the flux
// singularity -A(underline r) at y, and is undefined at y itself.
inline Vec eval_W(const Setup& st, const Vec& x) {
  const ChartPoint cp = chart_point(st, x);
  if (cp.r_y < 1e-12) throw EvalError("eval_W: at the prescribed point");
  const double dA = A_diff(st.prof, cp.r_y, cp.u);
  const double dB = B_diff(st.prof, cp.r_y, cp.u);
  const double radial = dA / Aprime_fun(st.prof, cp.r_y);
  const double csd = trig_cs(st.sf.kappa, cp.s - st.ball.s_y);
  const double axial = dB * Aprime_fun(st.prof, cp.u) *
                       uprime_ball(st.sf.kappa, st.ball, cp.s) * csd * csd;
  Vec w(x.size());
  for (int i = 0; i < x.size(); ++i)
    w[i] = radial * cp.grad_ry[i] + axial * cp.dsv[i];
  return w;
}

// Trace of the covariant derivative of W over the span of a model
// orthonormal tangent frame e_1..e_k at x. The closed form
//   div_P W = 1 - c_perp * |normal part of grad r_y|^2
//               - c_s * cs(rho)^2 |tangential part of grad s|^2
// follows from the space-form Hessian of r_y, the Killing property of
// ds_vec, and the Pythagorean identity cs(r_y) = cs(rho) cs(s - s_y),
// which cancels the mixed grad-r/grad-s terms. Here
//   c_perp = 1 - k ct(r_y) [A(r_y) - A(u)]/A'(r_y),
//   c_s    = u'^2 cs(s-s_y)^2 / cs(u)^2 - [B(r_y) - B(u)] F'(s),
// with F(s) = A'(u) u' cs(s-s_y)^2.
inline double div_W_plane(const Setup& st, const Vec& x,
                          const std::vector<Vec>& frame) {
  if (static_cast<int>(frame.size()) != st.prof.k)
    throw std::invalid_argument("frame size must equal k");
  const ChartPoint cp = chart_point(st, x);
  if (cp.r_y < 1e-12) throw EvalError("div_W_plane: at the prescribed point");
  const double dA = A_diff(st.prof, cp.r_y, cp.u);
  const double dB = B_diff(st.prof, cp.r_y, cp.u);

  double tan_r_sq = 0.0, tan_s_sq = 0.0;
  const Vec grad_s = st.chart.grad_s(x);
  for (const Vec& e : frame) {
    const double cr = st.sf.dot(cp.grad_ry, e);
    const double cs = st.sf.dot(grad_s, e);
    tan_r_sq += cr * cr;
    tan_s_sq += cs * cs;
  }
  const double perp_sq = std::max(0.0, 1.0 - tan_r_sq);
  const double rho = st.chart.rho_coord(x);
  const double cs_rho = trig_cs(st.sf.kappa, rho);
  const double s_tan_sq = cs_rho * cs_rho * tan_s_sq;

  const double c_perp = 1.0 - st.prof.k * trig_ct(st.sf.kappa, cp.r_y) * dA /
                                  Aprime_fun(st.prof, cp.r_y);
  const double up = uprime_ball(st.sf.kappa, st.ball, cp.s);
  const double csd = trig_cs(st.sf.kappa, cp.s - st.ball.s_y);
  const double csu = trig_cs(st.sf.kappa, cp.u);
  const double c_s = up * up * csd * csd / (csu * csu) -
                     dB * Fprime_closed(st.prof, st.ball, cp.s);
  return 1.0 - c_perp * perp_sq - c_s * s_tan_sq;
}

// Classical radial comparison fields about a point z, for the centred
// problem: W1 = grad r / A'(r) and W2 = (A/A') grad r.
inline Vec field_W1(const ProfileContext& prof, const SpaceForm& sf,
                    const Vec& z, const Vec& x) {
  const double r = sf.distance(x, z);
  Vec g = sf.grad_r(x, z);
  g *= 1.0 / Aprime_fun(prof, r);
  return g;
}

inline Vec field_W2(const ProfileContext& prof, const SpaceForm& sf,
                    const Vec& z, const Vec& x) {
  const double r = sf.distance(x, z);
  Vec g = sf.grad_r(x, z);
  g *= A_fun(prof, r) / Aprime_fun(prof, r);
  return g;
}

// div_P W1 = k (ct(r)/A'(r)) |normal part of grad r|^2.
inline double div_W1_plane(const ProfileContext& prof, const SpaceForm& sf,
                           const Vec& z, const Vec& x,
                           const std::vector<Vec>& frame) {
  const double r = sf.distance(x, z);
  const Vec g = sf.grad_r(x, z);
  double tan_sq = 0.0;
  for (const Vec& e : frame) {
    const double c = sf.dot(g, e);
    tan_sq += c * c;
  }
  const double perp_sq = std::max(0.0, 1.0 - tan_sq);
  return prof.k * trig_ct(sf.kappa, r) / Aprime_fun(prof, r) * perp_sq;
}

// div_P W2 = 1 - (1 - k (A/A') ct(r)) |normal part of grad r|^2; the
// coefficient of the normal term carries the sign of the curvature.
inline double div_W2_plane(const ProfileContext& prof, const SpaceForm& sf,
                           const Vec& z, const Vec& x,
                           const std::vector<Vec>& frame) {
  const double r = sf.distance(x, z);
  const Vec g = sf.grad_r(x, z);
  double tan_sq = 0.0;
  for (const Vec& e : frame) {
    const double c = sf.dot(g, e);
    tan_sq += c * c;
  }
  const double perp_sq = std::max(0.0, 1.0 - tan_sq);
  const double coeff = 1.0 - prof.k * A_fun(prof, r) /
                                 Aprime_fun(prof, r) *
                                 trig_ct(sf.kappa, r);
  return 1.0 - coeff * perp_sq;
}

// Closed elementary form of the comparison field in flat space for a ball
// of radius R about the origin and prescribed point y, |y| < R:
//   u(x)^2 = R^2 - 2<x,y> + |y|^2,  d = x - y,
//   k >= 3: W = (1 - u^k/|d|^k) d / k + (u^{k-2}/|d|^{k-2} - 1) y / (k-2)
//   k  = 2: W = (1 - u^2/|d|^2) d / 2 + log(u/|d|) y.
inline Vec euclidean_closed_field(int k, double R, const Vec& y,
                                  const Vec& x) {
  if (k < 2) throw std::invalid_argument("k >= 2");
  Vec d = x;
  d -= y;
  const double dist = norm(d);
  if (dist < 1e-12) throw EvalError("euclidean_closed_field: at the point");
  const double u =
      std::sqrt(R * R - 2.0 * dot(x, y) + dot(y, y));
  const double ratio = u / dist;
  double cd, cy;
  if (k == 2) {
    cd = (1.0 - ratio * ratio) / 2.0;
    cy = std::log(ratio);
  } else {
    cd = (1.0 - std::pow(ratio, k)) / k;
    cy = (std::pow(ratio, k - 2) - 1.0) / (k - 2);
  }
  Vec w(x.size());
  for (int i = 0; i < x.size(); ++i) w[i] = cd * d[i] + cy * y[i];
  return w;
}

// Radial flux density r^{k-1} <W, grad r_y> along the geodesic from y with
// initial direction v, extrapolated to r = 0. The limit is -A(underline r).
// Two low-k subtleties:
//   k = 2: the axial part contributes a t log t term (B grows like log near
//   zero) that a polynomial extrapolant cannot represent; its coefficient is
//   the zero-radius limit of A'(u) u' <ds_vec, grad r_y>, so it is removed
//   before extrapolating.
//   k = 1: the axial part has a finite limit that is odd in the direction,
//   and the sphere around y is an antipodal pair, so the flux density is the
//   mean over the two approaches.
inline double residue_at_point(const Setup& st, const Vec& v,
                               double base_radius = 0.08, int levels = 6) {
  if (levels > 16) throw std::invalid_argument("too many levels");
  auto one_direction = [&](const Vec& dir) {
    double xs[16], ys[16];
    double log_coef = 0.0;
    if (st.prof.k == 2) {
      const double r0 = st.underline_radius();
      const double up0 = uprime_ball(st.sf.kappa, st.ball, st.ball.s_y);
      log_coef = Aprime_fun(st.prof, r0) * up0 *
                 st.sf.dot(st.chart.ds_vec(st.chart.y()), dir);
    }
    for (int j = 0; j < levels; ++j) {
      const double t = base_radius * std::pow(2.0, -j);
      const Vec x = st.sf.exp(st.chart.y(), dir, t);
      const Vec w = eval_W(st, x);
      const Vec g = st.chart.grad_r_y(x);
      ys[j] = std::pow(t, st.prof.k - 1) * st.sf.dot(w, g) -
              log_coef * t * std::log(t);
      xs[j] = t;
    }
    return neville_to_zero(xs, ys, levels);
  };
  if (st.prof.k == 1) {
    Vec neg = v;
    neg *= -1.0;
    return 0.5 * (one_direction(v) + one_direction(neg));
  }
  return one_direction(v);
}

struct BoundaryScan {
  double max_norm = 0.0;
  int samples = 0;
};

// Maximum model norm of W over quasi-uniform samples of the boundary
// sphere, the two axis endpoints, and, when the hemisphere wall crosses
// the ball, samples of the wall disk as well.
inline BoundaryScan boundary_check(const Setup& st, int samples,
                                   std::uint64_t seed) {
  Rng rng(seed);
  BoundaryScan scan;
  const Vec o = st.chart.origin();
  auto consider = [&](const Vec& x) {
    const Vec w = eval_W(st, x);
    scan.max_norm = std::max(scan.max_norm, st.sf.tangent_norm(w));
    ++scan.samples;
  };
  consider(st.sf.exp(o, st.chart.axis(), st.ball.R));
  {
    Vec neg = st.chart.axis();
    neg *= -1.0;
    consider(st.sf.exp(o, neg, st.ball.R));
  }
  for (int i = 0; i < samples; ++i) {
    const Vec v = st.sf.haar_tangent_frame(rng, o, 1)[0];
    consider(st.sf.exp(o, v, st.ball.R));
  }
  if (st.hemisphere_cut()) {
    const Vec y = st.chart.y();
    int kept = 0, guard = 0;
    while (kept < samples / 2 && guard < 100 * samples + 1000) {
      ++guard;
      const Vec v = st.sf.haar_tangent_frame(rng, y, 1)[0];
      const Vec x = st.sf.exp(y, v, kPi / 2);
      if (st.sf.distance(x, o) <= st.ball.R) {
        consider(x);
        ++kept;
      }
    }
  }
  return scan;
}

// Rejection sampler for interior points in chart coordinates: s uniform on
// the admissible axial range, rho uniform on (0, rho_max(s)), direction
// uniform among the perpendicular directions. Points within 1e-3 of the
// prescribed point are rejected, as is a 1e-3 margin inside the hemisphere
// wall when it cuts the ball.
inline Vec sample_ball_point(const Setup& st, Rng& rng) {
  const double R = st.ball.R;
  double s_lo = -R, s_hi = R;
  if (st.hemisphere_cut()) s_lo = st.ball.s_y - kPi / 2 + 1e-3;
  const std::vector<Vec> basis = st.chart.perp_basis();
  for (int guard = 0; guard < 100000; ++guard) {
    const double s = rng.uniform(s_lo, s_hi);
    double rho_max;
    if (st.sf.kappa == 0) {
      rho_max = std::sqrt(std::max(0.0, R * R - s * s));
    } else {
      const double c = trig_cs(st.sf.kappa, R) / trig_cs(st.sf.kappa, s);
      if (st.sf.kappa > 0 && (c < -1.0 || c > 1.0)) continue;
      if (st.sf.kappa < 0 && c < 1.0) continue;
      rho_max = arc_cs(st.sf.kappa, c);
    }
    if (rho_max <= 1e-9) continue;
    const double rho = rng.uniform(0.0, rho_max);
    Vec w(st.sf.ambient_dim());
    double nw = 0.0;
    while (nw < 1e-8) {
      Vec g(st.sf.ambient_dim());
      for (const Vec& b : basis) {
        const double c = rng.normal();
        for (int i = 0; i < g.size(); ++i) g[i] += c * b[i];
      }
      nw = norm(g);
      if (nw >= 1e-8) {
        g *= 1.0 / nw;
        w = g;
      }
    }
    const Vec x = st.chart.from_chart(s, rho, w);
    if (st.chart.r_y(x) < 1e-3) continue;
    return x;
  }
  throw EvalError("sample_ball_point: rejection failed");
}

}  // namespace minarea
