#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>

#include "minarea/core.hpp"
#include "minarea/quadrature.hpp"

namespace minarea {

// Curvature-graded trigonometry. kappa selects the geometry:
//   +1: sn = sin, cs = cos      (diameter pi)
//    0: sn = id,  cs = 1        (infinite diameter)
//   -1: sn = sinh, cs = cosh    (infinite diameter)
// Identities cs' = -kappa*sn and cs^2 + kappa*sn^2 = 1 hold exactly.

inline void check_kappa(int kappa) {
  if (kappa < -1 || kappa > 1) throw std::invalid_argument("kappa in {-1,0,1}");
}

inline double trig_sn(int kappa, double r) {
  return kappa > 0 ? std::sin(r) : (kappa < 0 ? std::sinh(r) : r);
}

inline double trig_cs(int kappa, double r) {
  return kappa > 0 ? std::cos(r) : (kappa < 0 ? std::cosh(r) : 1.0);
}

inline double trig_tn(int kappa, double r) {
  if (kappa > 0 && std::abs(std::cos(r)) < 1e-300)
    throw EvalError("tn undefined at this radius");
  return trig_sn(kappa, r) / trig_cs(kappa, r);
}

inline double trig_ct(int kappa, double r) {
  const double sn = trig_sn(kappa, r);
  if (sn == 0.0) throw EvalError("ct undefined at zero radius");
  return trig_cs(kappa, r) / sn;
}

inline double half_diam(int kappa) {
  return kappa > 0 ? kPi / 2 : std::numeric_limits<double>::infinity();
}

// Inverse of cs on its principal branch, with a 1e-12 clamping window.
// Arguments further outside the branch domain are rejected.
inline double arc_cs(int kappa, double c) {
  if (kappa > 0) {
    if (c > 1.0 + 1e-12 || c < -1.0 - 1e-12)
      throw EvalError("arc_cs: argument outside [-1, 1]");
    return std::acos(std::min(1.0, std::max(-1.0, c)));
  }
  if (kappa < 0) {
    if (c < 1.0 - 1e-12) throw EvalError("arc_cs: argument below 1");
    return std::acosh(std::max(1.0, c));
  }
  throw std::invalid_argument("arc_cs: flat geometry has no cs inverse");
}

// Dimension context for the profile functions: curvature and the
// submanifold dimension k >= 1.
struct ProfileContext {
  int kappa = 0;
  int k = 1;

  ProfileContext(int kappa_, int k_) : kappa(kappa_), k(k_) {
    check_kappa(kappa);
    if (k < 1) throw std::invalid_argument("k >= 1");
  }
};

namespace profile_detail {

// A(r) = int_0^r sn^{k-1} by the power-reduction recurrence. Near zero the
// recurrence cancels two O(r^{m-1}) terms to produce O(r^{m+1}), so a short
// series takes over below r = 1e-2, where its truncation stays under 1e-12
// relative while the recurrence noise grows like eps / r^2.
inline double A_recurrence(int kappa, int k, double r) {
  const int m = k - 1;
  if (m == 0) return r;
  const double sn = trig_sn(kappa, r), cs = trig_cs(kappa, r);
  double even = r;                                  // int sn^0
  double odd = kappa > 0 ? 1.0 - cs : cs - 1.0;     // int sn^1
  if (m == 1) return odd;
  double cur = 0.0;
  for (int j = 2; j <= m; ++j) {
    const double prev = (j % 2 == 0) ? even : odd;
    const double boundary = std::pow(sn, j - 1) * cs;
    cur = kappa > 0 ? ((j - 1) * prev - boundary) / j
                    : (boundary - (j - 1) * prev) / j;
    if (j % 2 == 0) even = cur; else odd = cur;
  }
  return cur;
}

inline double A_series(int kappa, int k, double r) {
  const double c4 = (k - 1) / 120.0 + (k - 1.0) * (k - 2) / 72.0;
  const double rk = std::pow(r, k);
  return rk / k - kappa * (k - 1) / (6.0 * (k + 2)) * rk * r * r +
         c4 / (k + 4) * rk * r * r * r * r;
}

// Fixed-order composite Gauss-Legendre for A at k >= 5, where the upward
// recurrence loses the answer to cancellation (the result is O(r^k) while
// the recurrence terms stay O(r)). The integrand is positive, so the
// quadrature has no cancellation at any r.
inline double A_gauss(int kappa, int k, double r) {
  const int pieces =
      std::min(16, std::max(2, (int)(k * r / 6.0) + 1));
  return gauss_legendre_composite(
      [kappa, k](double t) { return std::pow(trig_sn(kappa, t), k - 1); }, 0.0,
      r, pieces);
}

// G via the cosecant power-reduction recurrence.
//   kappa=+1: G = -int_r^{pi/2} csc^{k-1}
//   kappa=-1: G = -int_r^{inf} csch^{k-1}
// Both families are built upward from the m = 1, 2 bases. All terms carry
// one sign, so there is no cancellation for small r.
inline double G_recurrence(int kappa, int k, double r) {
  const int m = k - 1;
  const double sn = trig_sn(kappa, r), cs = trig_cs(kappa, r);
  if (kappa > 0) {
    double even = kPi / 2 - r;                  // J_0
    double odd = -std::log(std::tan(r / 2));    // J_1
    if (m == 0) return -even;
    if (m == 1) return -odd;
    double cur = 0.0;
    for (int j = 2; j <= m; ++j) {
      const double prev = (j % 2 == 0) ? even : odd;
      cur = cs * std::pow(sn, 1 - j) / (j - 1) + (j - 2.0) / (j - 1) * prev;
      if (j % 2 == 0) even = cur; else odd = cur;
    }
    return -cur;
  }
  // kappa = -1. K_0 diverges but is never referenced: the m = 2 step has
  // coefficient (m-2)/(m-1) = 0.
  double even = 0.0;
  double odd = -std::log(std::tanh(r / 2));     // K_1
  if (m == 1) return -odd;
  double cur = 0.0;
  for (int j = 2; j <= m; ++j) {
    const double prev = (j % 2 == 0) ? even : odd;
    const double boundary_at_inf = (j == 2) ? 1.0 : 0.0;
    cur = (cs * std::pow(sn, 1 - j) - boundary_at_inf) / (j - 1) -
          (j - 2.0) / (j - 1) * prev;
    if (j % 2 == 0) even = cur; else odd = cur;
  }
  return -cur;
}

}  // namespace profile_detail

// A(r) = int_0^r sn(t)^{k-1} dt; exact in flat geometry, closed recurrence
// for k <= 4, composite Gauss-Legendre for k >= 5.
inline double A_fun(const ProfileContext& ctx, double r) {
  if (r < 0) throw EvalError("A_fun: negative radius");
  if (ctx.kappa == 0) {
    return std::pow(r, ctx.k) / ctx.k;
  }
  if (r < 1e-2) return profile_detail::A_series(ctx.kappa, ctx.k, r);
  if (ctx.k <= 4) return profile_detail::A_recurrence(ctx.kappa, ctx.k, r);
  return profile_detail::A_gauss(ctx.kappa, ctx.k, r);
}

inline double Aprime_fun(const ProfileContext& ctx, double r) {
  return std::pow(trig_sn(ctx.kappa, r), ctx.k - 1);
}

inline double Asecond_fun(const ProfileContext& ctx, double r) {
  if (ctx.k == 1) return 0.0;
  return (ctx.k - 1) * std::pow(trig_sn(ctx.kappa, r), ctx.k - 2) *
         trig_cs(ctx.kappa, r);
}

inline double Athird_fun(const ProfileContext& ctx, double r) {
  if (ctx.k == 1) return 0.0;
  const double sn = trig_sn(ctx.kappa, r), cs = trig_cs(ctx.kappa, r);
  const double lead =
      ctx.k == 2 ? 0.0
                 : (ctx.k - 1.0) * (ctx.k - 2) * std::pow(sn, ctx.k - 3) * cs * cs;
  return lead - ctx.kappa * (ctx.k - 1) * std::pow(sn, ctx.k - 1);
}

// G: antiderivative of 1/A' fixed by G(half diameter) = 0 for curved
// geometries with k >= 2; G = log r for the flat k = 2 case; G = r for k=1.
inline double G_fun(const ProfileContext& ctx, double r) {
  if (ctx.k == 1) return r;
  if (ctx.kappa == 0) {
    if (ctx.k == 2) return std::log(r);
    return -std::pow(r, 2 - ctx.k) / (ctx.k - 2);
  }
  if (r <= 0) throw EvalError("G_fun: radius must be positive");
  return profile_detail::G_recurrence(ctx.kappa, ctx.k, r);
}

inline double Gprime_fun(const ProfileContext& ctx, double r) {
  return std::pow(trig_sn(ctx.kappa, r), 1 - ctx.k);
}

namespace profile_detail {

// Normalisation constant making B vanish at one quarter of the diameter
// (spherical case); zero for the hyperbolic and flat k >= 3 cases, and -1
// for flat k = 2 where B = log r.
inline double B_constant(const ProfileContext& ctx) {
  if (ctx.kappa < 0) return 0.0;
  if (ctx.kappa == 0) return ctx.k == 2 ? -1.0 : 0.0;
  static std::map<int, double> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(ctx.k);
  if (it != cache.end()) return it->second;
  const double g = G_fun(ctx, kPi / 4);
  const double c = -(std::pow(2.0, (ctx.k - 1) / 2.0) + (ctx.k - 1) * g);
  cache.emplace(ctx.k, c);
  return c;
}

}  // namespace profile_detail

// B: antiderivative of 1/(cs^2 A'). Branches:
//   k = 1:            B = tn
//   flat, k = 2:      B = log r
//   flat, k >= 3:     B = -r^{2-k}/(k-2)
//   curved, k >= 2:   B = tn*sn^{1-k} + (k-1) G + const, which follows from
//                     d/dr [tn sn^{1-k}] = 1/(cs^2 A') - (k-1)/A'.
// The split keeps full accuracy near r = 0 and captures the spherical
// divergence at r = pi/2 through the tangent factor. For the sphere the
// formula is also valid on (pi/2, pi) as the antiderivative on that branch;
// only within-branch differences are meaningful there.
inline double B_fun(const ProfileContext& ctx, double r) {
  if (ctx.k == 1) return trig_tn(ctx.kappa, r);
  if (r <= 0) throw EvalError("B_fun: radius must be positive");
  if (ctx.kappa == 0) {
    if (ctx.k == 2) return std::log(r);
    return -std::pow(r, 2 - ctx.k) / (ctx.k - 2);
  }
  const double sn = trig_sn(ctx.kappa, r);
  const double split = trig_tn(ctx.kappa, r) * std::pow(sn, 1 - ctx.k);
  return split + (ctx.k - 1) * G_fun(ctx, r) +
         profile_detail::B_constant(ctx);
}

inline double Bprime_fun(const ProfileContext& ctx, double r) {
  const double cs = trig_cs(ctx.kappa, r);
  return 1.0 / (cs * cs * Aprime_fun(ctx, r));
}

// B'' = B' * (2 kappa tn - (k-1) ct).
inline double Bsecond_fun(const ProfileContext& ctx, double r) {
  const double w = 2.0 * ctx.kappa * trig_tn(ctx.kappa, r) -
                   (ctx.k - 1) * trig_ct(ctx.kappa, r);
  return Bprime_fun(ctx, r) * w;
}

// B''' = B' * [(2 kappa tn - (k-1) ct)^2 + 2 kappa / cs^2 + (k-1)/sn^2].
inline double Bthird_fun(const ProfileContext& ctx, double r) {
  const double sn = trig_sn(ctx.kappa, r), cs = trig_cs(ctx.kappa, r);
  const double w = 2.0 * ctx.kappa * trig_tn(ctx.kappa, r) -
                   (ctx.k - 1) * trig_ct(ctx.kappa, r);
  return Bprime_fun(ctx, r) *
         (w * w + 2.0 * ctx.kappa / (cs * cs) + (ctx.k - 1) / (sn * sn));
}

// A(a) - A(b), switching to a midpoint Taylor form when a and b nearly
// coincide so the result keeps relative accuracy.
inline double A_diff(const ProfileContext& ctx, double a, double b) {
  const double d = a - b;
  if (d == 0.0) return 0.0;
  if (std::abs(d) < 1e-5) {
    const double m = 0.5 * (a + b);
    return d * (Aprime_fun(ctx, m) + Athird_fun(ctx, m) * d * d / 24.0);
  }
  return A_fun(ctx, a) - A_fun(ctx, b);
}

// B(a) - B(b) with the same near-coincidence handling. For the sphere the
// two radii must lie on the same side of pi/2; the Taylor form also covers
// pairs that sit on the far branch, where B itself has no finite value but
// the difference does.
inline double B_diff(const ProfileContext& ctx, double a, double b) {
  const double d = a - b;
  if (d == 0.0) return 0.0;
  if (std::abs(d) < 1e-5) {
    const double m = 0.5 * (a + b);
    return d * (Bprime_fun(ctx, m) + Bthird_fun(ctx, m) * d * d / 24.0);
  }
  if (ctx.kappa > 0 && ctx.k >= 2 && (a - kPi / 2) * (b - kPi / 2) < 0.0)
    throw EvalError("B_diff: radii straddle the hemisphere");
  return B_fun(ctx, a) - B_fun(ctx, b);
}

// Ball geometry relative to the prescribed point: ball radius R and the
// distance s_y of the point from the centre, 0 < s_y < R < half diameter.
struct BallData {
  double R = 0.0;
  double s_y = 0.0;

  BallData(double R_, double s_y_) : R(R_), s_y(s_y_) {
    if (!(s_y > 0.0) || !(s_y < R)) throw std::invalid_argument("0 < s_y < R");
  }
};

// Radius of the orthogonal totally geodesic disk through the prescribed
// point: cs(r) cs(s_y) = cs(R), or sqrt(R^2 - s_y^2) in flat space.
inline double underline_r(int kappa, const BallData& ball) {
  check_kappa(kappa);
  if (kappa == 0) return std::sqrt(ball.R * ball.R - ball.s_y * ball.s_y);
  return arc_cs(kappa, trig_cs(kappa, ball.R) / trig_cs(kappa, ball.s_y));
}

// Limit convention: when the point sits at the centre, the radius is R.
inline double underline_r(int kappa, double R, double s_y) {
  if (s_y == 0.0) return R;
  return underline_r(kappa, BallData(R, s_y));
}

// The boundary-matched comparison radius u(s), a function of the axis
// coordinate alone: cs(u) = cs(s - s_y) cs(R) / cs(s).
inline double u_ball(int kappa, const BallData& ball, double s) {
  if (std::abs(s) > ball.R + 1e-9) throw EvalError("u_ball: |s| <= R");
  if (kappa == 0) {
    return std::sqrt(ball.R * ball.R + ball.s_y * ball.s_y -
                     2.0 * s * ball.s_y);
  }
  return arc_cs(kappa, trig_cs(kappa, s - ball.s_y) * trig_cs(kappa, ball.R) /
                           trig_cs(kappa, s));
}

// u'(s) = -cs(R) sn(s_y) / (sn(u) cs(s)^2); flat form -s_y / u.
inline double uprime_ball(int kappa, const BallData& ball, double s) {
  if (kappa == 0) return -ball.s_y / u_ball(kappa, ball, s);
  const double u = u_ball(kappa, ball, s);
  const double cs_s = trig_cs(kappa, s);
  return -trig_cs(kappa, ball.R) * trig_sn(kappa, ball.s_y) /
         (trig_sn(kappa, u) * cs_s * cs_s);
}

// F(s) = A'(u) u' cs(s - s_y)^2.
inline double F_fun(const ProfileContext& ctx, const BallData& ball,
                    double s) {
  const double u = u_ball(ctx.kappa, ball, s);
  const double csd = trig_cs(ctx.kappa, s - ball.s_y);
  return Aprime_fun(ctx, u) * uprime_ball(ctx.kappa, ball, s) * csd * csd;
}

// F'(s) = sn(u)^{k-4} cs(u) sn(s_y)^2 (k cs(u)^2 - 2) / cs(s)^2, valid for
// every curvature; it reduces to u^{k-4} s_y^2 (k-2) in flat space and is
// identically zero for the flat k = 2 case.
inline double Fprime_closed(const ProfileContext& ctx, const BallData& ball,
                            double s) {
  if (ctx.kappa == 0 && ctx.k == 2) return 0.0;
  const double u = u_ball(ctx.kappa, ball, s);
  const double snu = trig_sn(ctx.kappa, u), csu = trig_cs(ctx.kappa, u);
  const double sny = trig_sn(ctx.kappa, ball.s_y);
  const double css = trig_cs(ctx.kappa, s);
  return std::pow(snu, ctx.k - 4) * csu * sny * sny *
         (ctx.k * csu * csu - 2.0) / (css * css);
}

}  // namespace minarea
