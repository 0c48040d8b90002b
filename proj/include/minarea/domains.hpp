#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "minarea/core.hpp"
#include "minarea/profiles.hpp"

namespace minarea {

// Rotationally symmetric domain over the axis: at axial coordinate s the
// domain reaches axial distance Rfun(s). The prescribed point sits at s_y.
struct DomainProfile {
  int kappa = 0;
  int k = 1;
  double s_y = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  std::function<double(double)> Rfun;
  bool is_ball = false;
  double ball_R = 0.0;
  // Optional direct evaluators for u(s) and its s-derivatives. When unset,
  // u comes from Rfun and the derivatives from finite differences.
  std::function<double(double)> ufun;
  std::function<double(double)> upfun;
  std::function<double(double)> uppfun;
};

// The geodesic ball of radius R about the origin as a profile:
// cs(Rbar(s)) = cs(R)/cs(s), or sqrt(R^2 - s^2) in flat space.
inline DomainProfile ball_profile(int kappa, int k, double R, double s_y) {
  check_kappa(kappa);
  if (!(R > 0.0 && R < half_diam(kappa)))
    throw std::invalid_argument("0 < R < half diameter");
  if (!(s_y > -R && s_y < R)) throw std::invalid_argument("|s_y| < R");
  DomainProfile p;
  p.kappa = kappa;
  p.k = k;
  p.s_y = s_y;
  p.lo = -R;
  p.hi = R;
  p.is_ball = true;
  p.ball_R = R;
  p.Rfun = [kappa, R](double s) {
    if (std::abs(s) >= R) return 0.0;
    if (kappa == 0) return std::sqrt(R * R - s * s);
    return arc_cs(kappa, trig_cs(kappa, R) / trig_cs(kappa, s));
  };
  return p;
}

// Boundary distance from the prescribed point at axial coordinate s:
// cs(u) = cs(s - s_y) cs(Rfun(s)).
inline double u_of_profile(const DomainProfile& p, double s) {
  if (s < p.lo - 1e-12 || s > p.hi + 1e-12)
    throw EvalError("u_of_profile: s outside the interval");
  if (p.ufun) return p.ufun(s);
  const double Rs = p.Rfun(s);
  if (p.kappa == 0) return std::hypot(Rs, s - p.s_y);
  return arc_cs(p.kappa,
                trig_cs(p.kappa, s - p.s_y) * trig_cs(p.kappa, Rs));
}

inline double uprime_of_profile(const DomainProfile& p, double s,
                                double h = 1e-5) {
  if (p.upfun) return p.upfun(s);
  if (p.is_ball) return uprime_ball(p.kappa, BallData(p.ball_R, p.s_y), s);
  return richardson_derivative([&](double t) { return u_of_profile(p, t); },
                               s, h);
}

inline double usecond_of_profile(const DomainProfile& p, double s,
                                 double h = 1e-3) {
  if (p.uppfun) return p.uppfun(s);
  return richardson_second_derivative(
      [&](double t) { return u_of_profile(p, t); }, s, h);
}

// Left-hand side of the profile inequality at s:
//   C1 * u'^2 + (B(u) - B(|s - s_y|)) * d/ds[A'(u) u' cs(s-s_y)^2]
// with the domain-general coefficient C1 = cs(s-s_y)^2/cs(u)^2. Passing
// printed_coefficient switches to cs(s)^2/cs(R)^2, the ball-radius form;
// on balls cs(u) = cs(R) cs(s-s_y)/cs(s) makes the two coincide, and for
// other profiles the effective radius is read off the same relation.
inline double odi_lhs(const DomainProfile& p, double s,
                      bool printed_coefficient = false) {
  if (std::abs(s - p.s_y) <= 1e-6)
    throw EvalError("odi_lhs: puncture at the prescribed point");
  const ProfileContext prof(p.kappa, p.k);
  const double u = u_of_profile(p, s);
  const double delta = s - p.s_y;
  const double cs_d = trig_cs(p.kappa, delta);
  const double sn_d = trig_sn(p.kappa, delta);
  const double up = uprime_of_profile(p, s);
  const double dB = B_diff(prof, u, std::abs(delta));
  double c1;
  if (printed_coefficient) {
    const double cs_s = trig_cs(p.kappa, s);
    const double cs_R = p.is_ball ? trig_cs(p.kappa, p.ball_R)
                                  : trig_cs(p.kappa, u) * cs_s / cs_d;
    c1 = cs_s * cs_s / (cs_R * cs_R);
  } else {
    const double cs_u = trig_cs(p.kappa, u);
    c1 = cs_d * cs_d / (cs_u * cs_u);
  }
  double dds_F;
  if (p.is_ball) {
    dds_F = Fprime_closed(prof, BallData(p.ball_R, p.s_y), s);
  } else {
    const double upp = usecond_of_profile(p, s);
    dds_F = cs_d * cs_d * (Asecond_fun(prof, u) * up * up +
                           Aprime_fun(prof, u) * upp) -
            2.0 * p.kappa * cs_d * sn_d * Aprime_fun(prof, u) * up;
  }
  return c1 * up * up + dB * dds_F;
}

struct Admissibility {
  bool ok = false;
  double min_lhs = 0.0;
  double argmin_s = 0.0;
};

// Sign verdict of the inequality over a caller-supplied grid, which must be
// punctured at s_y.
inline Admissibility profile_admissible(const DomainProfile& p,
                                        const std::vector<double>& grid) {
  Admissibility adm;
  adm.min_lhs = std::numeric_limits<double>::infinity();
  for (double s : grid) {
    const double v = odi_lhs(p, s);
    if (v < adm.min_lhs) {
      adm.min_lhs = v;
      adm.argmin_s = s;
    }
  }
  adm.ok = adm.min_lhs >= -1e-8;
  return adm;
}

struct WedgeResult {
  double r_under = 0.0;
  double r_over = 0.0;
  bool obstruction = false;
};

// Spherical wedge comparison: the hemisphere wall around y admits totally
// geodesic disks through y of radius r_over = (R + pi/2 - s_y)/2 inside the
// wedge; when r_over < r_under those have less area than the orthogonal
// disk, obstructing any monotone-density proof on the wedge.
inline WedgeResult wedge_compare(double R, double s_y) {
  if (!(0.0 < s_y && s_y < R && R < kPi / 2))
    throw std::invalid_argument("0 < s_y < R < pi/2");
  WedgeResult w;
  w.r_under = underline_r(1, BallData(R, s_y));
  w.r_over = (R + kPi / 2 - s_y) / 2.0;
  w.obstruction = w.r_over < w.r_under;
  return w;
}

// One branch of the equality profile in the offset variable
// delta = |s - s_y|, sampled at the accepted integrator steps.
struct IntegratedBranch {
  std::vector<double> delta;
  std::vector<double> u;
  std::vector<double> up;
  std::vector<double> upp;
  std::string termination;
};

// Value and first two s-derivatives of a profile's boundary distance.
struct ProfileJet {
  double u = 0.0;
  double up = 0.0;
  double upp = 0.0;
};

struct OptimalDomain {
  int kappa = 0;
  int k = 1;
  double s_y = 0.0;
  double R0 = 0.0;
  double w0 = 0.0;   // initial slope of the right branch
  double u2 = 0.0;   // forced initial curvature
  double delta0 = 0.0;
  IntegratedBranch right;
  IntegratedBranch left;
  double delta_sensitivity = 0.0;
  std::string flag;
};

namespace domain_detail {

// Second derivative of u from the equality case of the inequality:
//   u'' = -[C1 u'^2 + dB (cs^2 A'' u'^2 - 2 kappa cs sn A' u')]
//         / (dB cs^2 A').
inline double equality_upp(const ProfileContext& prof, double delta,
                           double u, double up) {
  const double cs_d = trig_cs(prof.kappa, delta);
  const double sn_d = trig_sn(prof.kappa, delta);
  const double ap = Aprime_fun(prof, u);
  const double app = Asecond_fun(prof, u);
  const double dB = B_diff(prof, u, delta);
  const double cs_u = trig_cs(prof.kappa, u);
  const double c1 = cs_d * cs_d / (cs_u * cs_u);
  const double den = dB * cs_d * cs_d * ap;
  if (std::abs(den) < 1e-300) throw EvalError("equality ode degenerate");
  const double num =
      c1 * up * up +
      dB * (cs_d * cs_d * app * up * up -
            2.0 * prof.kappa * cs_d * sn_d * ap * up);
  return -num / den;
}

struct OdeState {
  double u;
  double up;
};

// Dormand-Prince 5(4) step.
template <typename F>
bool dp45_step(F&& f, double& x, OdeState& y, double& h, double tol_scale) {
  static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                      c5 = 8.0 / 9;
  const OdeState k1 = f(x, y);
  auto adv = [&](double hh, std::initializer_list<double> cs,
                 std::initializer_list<const OdeState*> ks) {
    OdeState out = y;
    auto ci = cs.begin();
    for (const OdeState* k : ks) {
      out.u += hh * (*ci) * k->u;
      out.up += hh * (*ci) * k->up;
      ++ci;
    }
    return out;
  };
  const OdeState k2 = f(x + c2 * h, adv(h, {1.0 / 5}, {&k1}));
  const OdeState k3 = f(x + c3 * h, adv(h, {3.0 / 40, 9.0 / 40}, {&k1, &k2}));
  const OdeState k4 =
      f(x + c4 * h,
        adv(h, {44.0 / 45, -56.0 / 15, 32.0 / 9}, {&k1, &k2, &k3}));
  const OdeState k5 =
      f(x + c5 * h, adv(h,
                        {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561,
                         -212.0 / 729},
                        {&k1, &k2, &k3, &k4}));
  const OdeState k6 =
      f(x + h, adv(h,
                   {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176,
                    -5103.0 / 18656},
                   {&k1, &k2, &k3, &k4, &k5}));
  const OdeState y5 = adv(
      h, {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784,
          11.0 / 84},
      {&k1, &k2, &k3, &k4, &k5, &k6});
  const OdeState k7 = f(x + h, y5);
  const OdeState y4 = adv(
      h,
      {5179.0 / 57600, 0.0, 7571.0 / 16695, 393.0 / 640, -92097.0 / 339200,
       187.0 / 2100, 1.0 / 40},
      {&k1, &k2, &k3, &k4, &k5, &k6, &k7});
  const double err = std::max(std::abs(y5.u - y4.u), std::abs(y5.up - y4.up));
  const double tol = tol_scale * std::abs(h);
  if (err <= tol) {
    x += h;
    y = y5;
    const double fac =
        err == 0.0 ? 5.0 : 0.9 * std::pow(tol / err, 0.2);
    h *= std::min(5.0, std::max(0.2, fac));
    return true;
  }
  h *= std::max(0.2, 0.9 * std::pow(tol / err, 0.2));
  return false;
}

inline IntegratedBranch integrate_branch(const ProfileContext& prof,
                                         double R0, double w0, double u2,
                                         double delta0, double delta_max,
                                         bool regular_start,
                                         double tol = 1e-10,
                                         double cap_div = 48.0) {
  IntegratedBranch br;
  double x;
  OdeState y;
  if (regular_start) {
    x = 0.0;
    y = {R0, w0};
  } else {
    x = delta0;
    y = {R0 + w0 * delta0 + u2 * delta0 * delta0 / 2, w0 + u2 * delta0};
  }
  auto push_node = [&](double d, const OdeState& st) {
    br.delta.push_back(d);
    br.u.push_back(st.u);
    br.up.push_back(st.up);
    double upp;
    try {
      upp = equality_upp(prof, d, st.u, st.up);
    } catch (const EvalError&) {
      upp = u2;
    }
    br.upp.push_back(upp);
  };
  push_node(x, y);
  auto f = [&](double d, const OdeState& st) {
    return OdeState{st.up, equality_upp(prof, d, st.u, st.up)};
  };
  double h = 1e-4;
  br.termination = "range bound";
  while (x < delta_max) {
    const double gap = y.u - x;
    if (gap <= 1e-6) {
      br.termination = "radius collapsed";
      break;
    }
    if (prof.kappa > 0 && y.u >= kPi / 2 - 1e-9) {
      br.termination = "hemisphere limit";
      break;
    }
    double dB;
    try {
      dB = B_diff(prof, y.u, x);
    } catch (const EvalError&) {
      br.termination = "comparison degenerate";
      break;
    }
    if (x > 0.0 && dB <= 1e-12) {
      br.termination = "comparison degenerate";
      break;
    }
    h = std::min(h, std::max(1e-7, gap / 4));
    if (cap_div > 0) h = std::min(h, std::max(x / cap_div, 1e-5));
    h = std::min(h, delta_max - x);
    bool accepted = false;
    try {
      accepted = dp45_step(f, x, y, h, tol * (1.0 + std::abs(y.u)));
    } catch (const EvalError&) {
      br.termination = "equality ode degenerate";
      break;
    }
    if (h < 1e-9) {
      br.termination = std::abs(y.up) > 2.0 ? "graph fold" : "step underflow";
      break;
    }
    if (!accepted) continue;
    push_node(x, y);
    // A diverging slope means the boundary graph folds at finite delta; the
    // profile ends there with a vertical wall.
    if (std::abs(y.up) > 100.0) {
      br.termination = "graph fold";
      break;
    }
    if (br.delta.size() > 2000000) {
      br.termination = "step budget";
      break;
    }
  }
  return br;
}

// Piecewise quintic Hermite through node values, first and second
// derivatives; C^2 across nodes, exact jets at nodes.
inline ProfileJet quintic_eval(const std::vector<double>& xs,
                               const std::vector<double>& ys,
                               const std::vector<double>& ds,
                               const std::vector<double>& dds, double x) {
  const size_t n = xs.size();
  if (n == 1) return {ys[0], ds[0], dds[0]};
  size_t i = std::upper_bound(xs.begin(), xs.end(), x) - xs.begin();
  if (i == 0) i = 1;
  if (i >= n) i = n - 1;
  const double h = xs[i] - xs[i - 1];
  const double xl = x - xs[i - 1];
  const double t = xl / h;
  const double y0 = ys[i - 1], d0 = ds[i - 1], q0 = dds[i - 1];
  const double r0 = ys[i] - (y0 + d0 * h + q0 * h * h / 2);
  const double r1 = (ds[i] - (d0 + q0 * h)) * h;
  const double r2 = (dds[i] - q0) * h * h;
  const double a = 10 * r0 - 4 * r1 + r2 / 2;
  const double b = -15 * r0 + 7 * r1 - r2;
  const double c = 6 * r0 - 3 * r1 + r2 / 2;
  const double t2 = t * t, t3 = t2 * t;
  ProfileJet j;
  j.u = y0 + d0 * xl + q0 * xl * xl / 2 + a * t3 + b * t3 * t + c * t3 * t2;
  j.up = d0 + q0 * xl + (3 * a * t2 + 4 * b * t3 + 5 * c * t3 * t) / h;
  j.upp = q0 + (6 * a * t + 12 * b * t2 + 20 * c * t3) / (h * h);
  return j;
}

// Second derivative between nodes, interpolated from the stored node values
// alone with a four-point Lagrange stencil. Unlike the quintic's second
// derivative this does not bend to absorb small inconsistencies between the
// interpolated value and slope, so its error stays at the stencil's own
// truncation level.
inline double upp_interp(const std::vector<double>& xs,
                         const std::vector<double>& dds, double x) {
  const size_t n = xs.size();
  size_t i = std::upper_bound(xs.begin(), xs.end(), x) - xs.begin();
  size_t lo = (i >= 2) ? i - 2 : 0;
  if (lo + 4 > n) lo = n - 4;
  double acc = 0.0;
  for (size_t a = lo; a < lo + 4; ++a) {
    double w = dds[a];
    for (size_t b = lo; b < lo + 4; ++b)
      if (b != a) w *= (x - xs[b]) / (xs[a] - xs[b]);
    acc += w;
  }
  return acc;
}

}  // namespace domain_detail

// Smallest-domain candidate: integrates the equality case of the profile
// inequality outward from s_y in both directions, as a second-order ODE for
// u(delta). The start is singular for k >= 2 (B(delta) diverges), which
// forces the initial curvature u2 = -(k-1) ct(R0) w0^2; integration begins
// at delta0 with the quadratic local expansion. The default slope w0 is the
// one matched to the ball whose orthogonal-disk radius is R0, which is the
// containment-relevant branch; w0 = -ct(R0) tn(s_y) and the left branch
// takes -w0.
inline OptimalDomain optimal_profile(int kappa, int k, double s_y, double R0,
                                     double delta_max,
                                     double delta0 = 1e-4) {
  const ProfileContext prof(kappa, k);
  if (!(R0 > 0.0 && R0 < half_diam(kappa)))
    throw std::invalid_argument("0 < R0 < half diameter");
  if (!(s_y > 0.0)) throw std::invalid_argument("s_y > 0");
  OptimalDomain dom;
  dom.kappa = kappa;
  dom.k = k;
  dom.s_y = s_y;
  dom.R0 = R0;
  dom.delta0 = delta0;
  dom.w0 = -trig_ct(kappa, R0) * trig_tn(kappa, s_y);
  dom.u2 = -(k - 1) * trig_ct(kappa, R0) * dom.w0 * dom.w0;
  const bool regular_start = (k == 1);
  if (kappa == 0 && k == 2)
    dom.flag = "flat k=2: closed-form F' vanishes; second-order form used";
  dom.right = domain_detail::integrate_branch(prof, R0, dom.w0, dom.u2,
                                              delta0, delta_max,
                                              regular_start);
  dom.left = domain_detail::integrate_branch(prof, R0, -dom.w0, dom.u2,
                                             delta0, delta_max,
                                             regular_start);
  // Start-offset sensitivity: rerun the right branch from delta0/10 and
  // compare u on the common range.
  const IntegratedBranch alt = domain_detail::integrate_branch(
      prof, R0, dom.w0, dom.u2, delta0 / 10, delta_max, regular_start);
  const double dmax =
      std::min(dom.right.delta.back(), alt.delta.back());
  const double dmin = std::max(dom.right.delta.front(), alt.delta.front());
  double worst = 0.0;
  for (int i = 0; i <= 32; ++i) {
    const double d = dmin + (dmax - dmin) * i / 32.0;
    const double a = domain_detail::quintic_eval(dom.right.delta, dom.right.u,
                                                 dom.right.up, dom.right.upp,
                                                 d)
                         .u;
    const double b =
        domain_detail::quintic_eval(alt.delta, alt.u, alt.up, alt.upp, d).u;
    worst = std::max(worst, std::abs(a - b));
  }
  dom.delta_sensitivity = worst;
  return dom;
}

// Axial half-width of the integrated domain at offset delta:
// cs(Rstar) = cs(u)/cs(delta), or sqrt(u^2 - delta^2) in flat space.
inline double domain_radius_from_u(int kappa, double u, double delta) {
  if (u <= delta) return 0.0;
  if (kappa == 0) return std::sqrt(u * u - delta * delta);
  return arc_cs(kappa, trig_cs(kappa, u) / trig_cs(kappa, delta));
}

// Jet of the integrated u at axial coordinate s; below the first stored
// node the quadratic start expansion applies. Derivatives are with respect
// to s, so the left branch picks up the sign from delta = s_y - s.
inline ProfileJet optimal_eval_at(const OptimalDomain& dom, double s) {
  const double d = s - dom.s_y;
  const IntegratedBranch& br = d >= 0 ? dom.right : dom.left;
  const double ad = std::abs(d);
  ProfileJet j;
  if (ad <= br.delta.front()) {
    const double w = d >= 0 ? dom.w0 : -dom.w0;
    j.u = dom.R0 + w * ad + dom.u2 * ad * ad / 2;
    j.up = w + dom.u2 * ad;
    j.upp = dom.u2;
  } else if (ad > br.delta.back()) {
    throw EvalError("optimal_u_at: outside the integrated range");
  } else {
    j = domain_detail::quintic_eval(br.delta, br.u, br.up, br.upp, ad);
    if (br.delta.size() >= 4)
      j.upp = domain_detail::upp_interp(br.delta, br.upp, ad);
  }
  if (d < 0) j.up = -j.up;
  return j;
}

inline double optimal_u_at(const OptimalDomain& dom, double s) {
  return optimal_eval_at(dom, s).u;
}

// View of the integrated domain as a DomainProfile for re-checking. The
// direct evaluators come from the stored jets, so odi_lhs on this profile
// avoids finite differences entirely.
inline DomainProfile profile_from_optimal(const OptimalDomain& dom) {
  DomainProfile p;
  p.kappa = dom.kappa;
  p.k = dom.k;
  p.s_y = dom.s_y;
  p.lo = dom.s_y - dom.left.delta.back();
  p.hi = dom.s_y + dom.right.delta.back();
  auto held = std::make_shared<const OptimalDomain>(dom);
  p.Rfun = [held](double s) {
    const double u = optimal_u_at(*held, s);
    return domain_radius_from_u(held->kappa, u, std::abs(s - held->s_y));
  };
  p.ufun = [held](double s) { return optimal_eval_at(*held, s).u; };
  p.upfun = [held](double s) { return optimal_eval_at(*held, s).up; };
  p.uppfun = [held](double s) { return optimal_eval_at(*held, s).upp; };
  return p;
}

}  // namespace minarea
