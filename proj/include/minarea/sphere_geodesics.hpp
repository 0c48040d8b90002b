#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "minarea/core.hpp"
#include "minarea/profiles.hpp"

namespace minarea {

// Geodesic chords through an interior point of a spherical ball. The chord
// leaves the point at angle alpha to the positive axis direction and runs to
// the boundary sphere; alpha = 0 points at the near boundary along the axis.
struct ChordProblem {
  double s_y = 0.0;
  double R = 0.0;
  double C = 0.0;  // cos of the orthogonal-disk radius, cos(R)/cos(s_y)

  ChordProblem(double s_y_, double R_) : s_y(s_y_), R(R_) {
    if (!(0.0 < s_y && s_y < R && R < kPi / 2))
      throw std::invalid_argument("0 < s_y < R < pi/2");
    C = std::cos(R) / std::cos(s_y);
    if (!(C > 0.0 && C < 1.0)) throw std::invalid_argument("C outside (0,1)");
  }
};

// First boundary hit: the smallest l > 0 with
//   cos R = cos s_y cos l - sin s_y sin l cos alpha,
// solved through the harmonic-addition form a cos l + b sin l =
// D cos(l - phi).
inline double l_of_alpha(const ChordProblem& p, double alpha) {
  if (alpha < -1e-12 || alpha > kPi + 1e-12)
    throw std::invalid_argument("alpha in [0, pi]");
  const double a = std::cos(p.s_y);
  const double b = -std::sin(p.s_y) * std::cos(alpha);
  const double D = std::hypot(a, b);
  const double phi = std::atan2(b, a);
  const double ratio = std::cos(p.R) / D;
  if (ratio > 1.0 + 1e-12 || ratio < -1.0 - 1e-12)
    throw EvalError("l_of_alpha: no root");
  const double theta = std::acos(std::min(1.0, std::max(-1.0, ratio)));
  const double lo = phi - theta, hi = phi + theta;
  const double l = lo > 1e-15 ? lo : hi;
  return l;
}

// Length of the full geodesic through the point at angle alpha, clipped to
// the ball: the two boundary hits at alpha and pi - alpha.
inline double total_length(const ChordProblem& p, double alpha) {
  return l_of_alpha(p, alpha) + l_of_alpha(p, kPi - alpha);
}

// Residual of the relation cot(l1) - C/sin(l1) = -cot(l2) + C/sin(l2)
// tying the two boundary hits of one geodesic; identically zero in exact
// arithmetic.
inline double chord_identity_residual(const ChordProblem& p, double alpha) {
  const double l1 = l_of_alpha(p, alpha);
  const double l2 = l_of_alpha(p, kPi - alpha);
  const double lhs = std::cos(l1) / std::sin(l1) - p.C / std::sin(l1);
  const double rhs = -std::cos(l2) / std::sin(l2) + p.C / std::sin(l2);
  return std::abs(lhs - rhs);
}

struct ChordMinimum {
  double alpha_star = 0.0;
  double length_star = 0.0;
};

// Global minimum of the total chord length over alpha in [0, pi]: a dense
// grid pass followed by golden-section refinement on the bracketing cell.
inline ChordMinimum minimize_chord(const ChordProblem& p,
                                   int grid_points = 20001) {
  if (grid_points < 3) throw std::invalid_argument("grid too small");
  int best = 0;
  double best_val = total_length(p, 0.0);
  for (int i = 1; i < grid_points; ++i) {
    const double alpha = kPi * i / (grid_points - 1);
    const double val = total_length(p, alpha);
    if (val < best_val) {
      best_val = val;
      best = i;
    }
  }
  const double h = kPi / (grid_points - 1);
  double lo = std::max(0.0, (best - 1) * h);
  double hi = std::min(kPi, (best + 1) * h);
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
  double fc = total_length(p, c), fd = total_length(p, d);
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - gr * (hi - lo);
      fc = total_length(p, c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + gr * (hi - lo);
      fd = total_length(p, d);
    }
  }
  ChordMinimum out;
  out.alpha_star = 0.5 * (lo + hi);
  out.length_star = total_length(p, out.alpha_star);
  return out;
}

// Law-of-cosines chord solver for every curvature, same angle convention.
// Flat case: l^2 + 2 s_y cos(alpha) l + s_y^2 - R^2 = 0, positive root.
inline double chord_first_hit(int kappa, double R, double s_y, double alpha) {
  check_kappa(kappa);
  if (!(0.0 <= s_y && s_y < R && R < half_diam(kappa)))
    throw std::invalid_argument("0 <= s_y < R < half diameter");
  if (kappa > 0) {
    if (s_y == 0.0) return R;
    return l_of_alpha(ChordProblem(s_y, R), alpha);
  }
  if (kappa == 0) {
    const double b = s_y * std::cos(alpha);
    return -b + std::sqrt(std::max(0.0, R * R - s_y * s_y +
                                            b * b));
  }
  // cosh R = cosh s_y cosh l + sinh s_y cos(alpha) sinh l
  //        = D cosh(l + psi), D = sqrt(a^2 - b^2), psi = atanh(b/a).
  const double a = std::cosh(s_y);
  const double b = std::sinh(s_y) * std::cos(alpha);
  const double D = std::sqrt(a * a - b * b);
  const double psi = std::atanh(b / a);
  return std::acosh(std::max(1.0, std::cosh(R) / D)) - psi;
}

inline double chord_total_length(int kappa, double R, double s_y,
                                 double alpha) {
  return chord_first_hit(kappa, R, s_y, alpha) +
         chord_first_hit(kappa, R, s_y, kPi - alpha);
}

// Pointwise divergence margin of the spherical field along the axis,
// normalized so that nonnegativity certifies div <= 1 on the whole ball:
//   lhs(s) = 1 + (B(u) - B(|s-s_y|)) sin(u)^{k-2} cos(u) (k cos(u)^2 - 2).
inline double sphere_condition_lhs(int k, const BallData& ball, double s) {
  const ProfileContext prof(1, k);
  const double u = u_ball(1, ball, s);
  const double delta = std::abs(s - ball.s_y);
  const double dB = B_diff(prof, u, delta);
  const double sn = std::sin(u);
  const double cs = std::cos(u);
  return 1.0 + dB * std::pow(sn, k - 2) * cs * (k * cs * cs - 2.0);
}

struct SphereCondition {
  double min_lhs = 0.0;
  double argmin_s = 0.0;
  double limit_sign = 0.0;  // sign of k cos(r_under)^2 - 2
  bool simple = false;      // cos(s_y + R) >= sqrt(2/k)
  bool certified = false;
};

inline bool sphere_simple_condition(int k, double R, double s_y) {
  return std::cos(s_y + R) >= std::sqrt(2.0 / k);
}

// Scans lhs over a punctured axis grid. The grid stays inside the range
// where u < pi/2, which cuts the left tail when s_y + R > pi/2. Certified
// demands the full ball: grid minimum nonnegative, positive limit sign at
// s_y, and no hemisphere cut.
inline SphereCondition sphere_condition_scan(int k, const BallData& ball,
                                             int grid_points = 1001) {
  if (!(ball.R < kPi / 2)) throw std::invalid_argument("R < pi/2");
  SphereCondition sc;
  sc.simple = sphere_simple_condition(k, ball.R, ball.s_y);
  const double r_u = underline_r(1, ball);
  const double cu = std::cos(r_u);
  sc.limit_sign = k * cu * cu - 2.0 > 0.0   ? 1.0
                  : k * cu * cu - 2.0 < 0.0 ? -1.0
                                            : 0.0;
  double lo = -ball.R + 1e-6;
  if (ball.s_y + ball.R > kPi / 2) lo = std::max(lo, ball.s_y - kPi / 2 + 1e-4);
  const double hi = ball.R - 1e-6;
  sc.min_lhs = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid_points; ++i) {
    const double s = lo + (hi - lo) * i / (grid_points - 1.0);
    if (std::abs(s - ball.s_y) < 1e-6) continue;
    const double v = sphere_condition_lhs(k, ball, s);
    if (v < sc.min_lhs) {
      sc.min_lhs = v;
      sc.argmin_s = s;
    }
  }
  sc.certified = sc.min_lhs >= 0.0 && sc.limit_sign > 0.0 &&
                 ball.s_y + ball.R < kPi / 2;
  return sc;
}

}  // namespace minarea
