#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "minarea/core.hpp"
#include "minarea/profiles.hpp"
#include "minarea/quadrature.hpp"
#include "minarea/spaceform.hpp"

namespace minarea {

enum class AnnulusIntegrand { One, GradTanSq };

struct SurfaceSample {
  Vec point;
  std::vector<Vec> frame;  // model-orthonormal tangent basis, k vectors
  double weight = 0.0;     // area measure carried by the sample
};

// Quadrature model of a k-dimensional submanifold clipped to a ball about
// `center`. `annulus(a, b, f)` integrates f over the part with a <= r <= b
// using the builder's exact clipping; builders that cannot provide one
// leave it empty and consumers fall back to sample staircases.
struct SampledSubmanifold {
  SpaceForm sf;
  int k = 0;
  double R = 0.0;
  Vec center;
  std::vector<SurfaceSample> samples;
  std::string meta;
  std::function<double(double, double, AnnulusIntegrand)> annulus;
};

// Distance profile along a unit-speed geodesic leaving a point at distance
// s_y from the centre, with axial cosine m = cos(angle to the positive
// axis): r(t) satisfies
//   +1: cos r  = P cos(t - tmin)
//   -1: cosh r = P cosh(t - tmin)
//    0: r^2    = (t - tmin)^2 + perp^2
// so every sublevel set {a <= r <= b} meets the ray in at most two
// intervals, placed symmetrically about tmin.
struct RayClip {
  int kappa = 0;
  double P = 1.0;
  double tmin = 0.0;
  double perp = 0.0;

  static RayClip make(int kappa, double s_y, double m) {
    RayClip rc;
    rc.kappa = kappa;
    if (kappa > 0) {
      const double a = std::cos(s_y), b = -m * std::sin(s_y);
      rc.P = std::hypot(a, b);
      rc.tmin = std::atan2(b, a);
    } else if (kappa < 0) {
      const double a = std::cosh(s_y), b = m * std::sinh(s_y);
      rc.P = std::sqrt(a * a - b * b);
      rc.tmin = -std::atanh(b / a);
    } else {
      rc.tmin = -m * s_y;
      rc.perp = s_y * std::sqrt(std::max(0.0, 1.0 - m * m));
    }
    return rc;
  }

  double r_at(double t) const {
    const double d = t - tmin;
    if (kappa > 0)
      return std::acos(std::min(1.0, std::max(-1.0, P * std::cos(d))));
    if (kappa < 0) return std::acosh(std::max(1.0, P * std::cosh(d)));
    return std::hypot(d, perp);
  }

  double dr_at(double t) const {
    const double d = t - tmin;
    const double r = r_at(t);
    if (kappa > 0) return P * std::sin(d) / std::sin(r);
    if (kappa < 0) return P * std::sinh(d) / std::sinh(r);
    return r < 1e-300 ? 1.0 : d / r;
  }

  // Offset from tmin at which r reaches level x (0 when unreached).
  double half_width(double x) const {
    if (kappa > 0)
      return std::acos(std::min(1.0, std::max(-1.0, std::cos(x) / P)));
    if (kappa < 0) return std::acosh(std::max(1.0, std::cosh(x) / P));
    const double q = x * x - perp * perp;
    return q > 0.0 ? std::sqrt(q) : 0.0;
  }

  double first_hit(double level) const { return tmin + half_width(level); }

  // Intersects {a <= r <= b} with [0, cap]; appends up to two intervals.
  void clip(double a, double b, double cap,
            std::array<std::array<double, 2>, 2>& out, int& count) const {
    const double ha = half_width(a), hb = half_width(b);
    const std::array<std::array<double, 2>, 2> cand = {
        {{tmin - hb, tmin - ha}, {tmin + ha, tmin + hb}}};
    for (const auto& c : cand) {
      const double lo = std::max(0.0, c[0]);
      const double hi = std::min(cap, c[1]);
      if (hi > lo) out[count++] = {lo, hi};
    }
  }
};

namespace surface_detail {

// Unit tangent of the axis geodesic at parameter s, pointing toward
// increasing s.
inline Vec axis_tangent(const SpaceForm& sf, double s) {
  const int dim = sf.ambient_dim();
  if (sf.kappa == 0) return basis_vec(dim, 0);
  Vec t(dim);
  if (sf.kappa > 0) {
    t[0] = -std::sin(s);
    t[1] = std::cos(s);
  } else {
    t[0] = std::sinh(s);
    t[1] = std::cosh(s);
  }
  return t;
}

inline double frame_grad_tan_sq(const SpaceForm& sf, const Vec& grad,
                                const std::vector<Vec>& frame) {
  double acc = 0.0;
  for (const Vec& e : frame) {
    const double c = sf.dot(grad, e);
    acc += c * c;
  }
  return acc;
}

}  // namespace surface_detail

// Totally geodesic k-disk through the point y at axial offset s_y, spanned
// by directions making angle `tilt` with the orthogonal position: tilt = 0
// is the disk orthogonal to the axis, tilt = pi/2 contains the axis. The
// geometry of each geodesic ray from y depends only on the polar angle
// omega of its direction against the tilted lead vector, which reduces all
// area integrals to one exact dimension.
inline SampledSubmanifold tilted_disk(int kappa, int n, int k,
                                      const BallData& ball, double tilt,
                                      int resolution) {
  if (resolution < 16) throw std::invalid_argument("resolution >= 16");
  if (tilt < 0.0 || tilt > kPi / 2 + 1e-12)
    throw std::invalid_argument("tilt in [0, pi/2]");
  SampledSubmanifold sub{SpaceForm(kappa, n), k, ball.R, Vec(), {}, "", {}};
  if (k < 1 || k > n - 1) throw std::invalid_argument("1 <= k <= n-1");
  const SpaceForm& sf = sub.sf;
  sub.center = sf.base_point();
  const AxisChart chart(sf, ball.s_y);
  const Vec y = chart.y();
  const int dim = sf.ambient_dim();
  const int first_perp = kappa == 0 ? 1 : 2;

  const Vec t_axis = surface_detail::axis_tangent(sf, ball.s_y);
  Vec b1(dim);
  {
    const Vec e2 = basis_vec(dim, first_perp);
    for (int i = 0; i < dim; ++i)
      b1[i] = std::sin(tilt) * t_axis[i] + std::cos(tilt) * e2[i];
  }
  std::vector<Vec> dirs;
  dirs.push_back(b1);
  for (int j = 1; j < k; ++j)
    dirs.push_back(basis_vec(dim, first_perp + j));

  const ProfileContext prof(kappa, k);
  const double sy = ball.s_y, R = ball.R, mscale = std::sin(tilt);

  // Representative point and exact tangent frame for polar data (omega, t):
  // direction v = cos(omega) b1 + sin(omega) d2, frame = geodesic velocity
  // plus the constant-in-t orthogonal span directions.
  auto ray_dir = [dirs, dim, k](double omega) {
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v[i] = std::cos(omega) * dirs[0][i];
    if (k >= 2)
      for (int i = 0; i < dim; ++i) v[i] += std::sin(omega) * dirs[1][i];
    return v;
  };
  auto ray_frame = [sf, dirs, dim, k, y](double omega, double t,
                                         const Vec& v) {
    std::vector<Vec> frame;
    Vec vel(dim);
    const double c = trig_cs(sf.kappa, t), s = trig_sn(sf.kappa, t);
    for (int i = 0; i < dim; ++i)
      vel[i] = sf.kappa == 0 ? v[i] : -sf.kappa * s * y[i] + c * v[i];
    frame.push_back(vel);
    if (k >= 2) {
      Vec w(dim);
      for (int i = 0; i < dim; ++i)
        w[i] = -std::sin(omega) * dirs[0][i] + std::cos(omega) * dirs[1][i];
      frame.push_back(w);
    }
    for (int j = 2; j < k; ++j) frame.push_back(dirs[j]);
    return frame;
  };
  auto grad_tan_sq_at = [sf, y, ray_frame](double omega, double t,
                                           const Vec& v, const Vec& o) {
    const Vec x = sf.exp(y, v, t);
    const Vec g = sf.grad_r(x, o);
    return surface_detail::frame_grad_tan_sq(sf, g, ray_frame(omega, t, v));
  };

  const Vec o = sub.center;

  // Exact clipping closure: closed-form intervals per ray, A-differences
  // for plain area, 16-point Gauss nodes for the gradient weight.
  sub.annulus = [kappa, k, sy, mscale, prof, grad_tan_sq_at, ray_dir, R,
                 o](double a, double b, AnnulusIntegrand kind) {
    auto ray_part = [&](double m, double omega) {
      const RayClip rc = RayClip::make(kappa, sy, m);
      const double cap = rc.first_hit(R);
      std::array<std::array<double, 2>, 2> iv;
      int niv = 0;
      rc.clip(a, b, cap, iv, niv);
      double acc = 0.0;
      const Vec v = ray_dir(omega);
      for (int i = 0; i < niv; ++i) {
        if (kind == AnnulusIntegrand::One) {
          acc += A_diff(prof, iv[i][1], iv[i][0]);
        } else {
          acc += gauss_legendre_16(
              [&](double t) {
                return Aprime_fun(prof, t) * grad_tan_sq_at(omega, t, v, o);
              },
              iv[i][0], iv[i][1]);
        }
      }
      return acc;
    };
    if (k == 1) return ray_part(mscale, 0.0) + ray_part(-mscale, kPi);
    const double shell = unit_sphere_area(k - 1);
    return shell * integrate_adaptive(
                       [&](double omega) {
                         return std::pow(std::sin(omega), k - 2) *
                                ray_part(std::cos(omega) * mscale, omega);
                       },
                       0.0, kPi, 1e-12, 1e-11);
  };

  // Sample staircase on a (omega, t) grid with representative directions.
  const int nw = k == 1 ? 2 : resolution;
  const int nt = resolution;
  for (int iw = 0; iw < nw; ++iw) {
    double omega, wfac;
    if (k == 1) {
      omega = iw == 0 ? 0.0 : kPi;
      wfac = 1.0;
    } else {
      const double dw = kPi / nw;
      omega = (iw + 0.5) * dw;
      wfac = unit_sphere_area(k - 1) * std::pow(std::sin(omega), k - 2) * dw;
    }
    const double m = std::cos(omega) * mscale;
    const RayClip rc = RayClip::make(kappa, sy, m);
    const double cap = rc.first_hit(R);
    const Vec v = ray_dir(omega);
    const double dt = cap / nt;
    for (int it = 0; it < nt; ++it) {
      const double t = (it + 0.5) * dt;
      SurfaceSample smp;
      smp.point = sf.exp(y, v, t);
      smp.frame = ray_frame(omega, t, v);
      smp.weight = wfac * Aprime_fun(prof, t) * dt;
      sub.samples.push_back(std::move(smp));
    }
  }
  sub.meta = "tilted_disk";
  return sub;
}

// Geodesic chord through y at angle alpha to the axis, clipped to the
// ball: a one-dimensional submanifold made of the two opposite rays.
inline SampledSubmanifold chord_submanifold(int kappa, int n,
                                            const BallData& ball,
                                            double alpha,
                                            int resolution = 256) {
  SampledSubmanifold sub{SpaceForm(kappa, n), 1, ball.R, Vec(), {}, "", {}};
  const SpaceForm& sf = sub.sf;
  sub.center = sf.base_point();
  const AxisChart chart(sf, ball.s_y);
  const Vec y = chart.y();
  const int dim = sf.ambient_dim();
  const Vec t_axis = surface_detail::axis_tangent(sf, ball.s_y);
  const Vec eperp = basis_vec(dim, kappa == 0 ? 1 : 2);
  Vec v(dim);
  for (int i = 0; i < dim; ++i)
    v[i] = std::cos(alpha) * t_axis[i] + std::sin(alpha) * eperp[i];

  const double sy = ball.s_y, R = ball.R, m = std::cos(alpha);
  sub.annulus = [kappa, sy, m, R](double a, double b, AnnulusIntegrand kind) {
    double acc = 0.0;
    for (int side = 0; side < 2; ++side) {
      const double ms = side == 0 ? m : -m;
      const RayClip rc = RayClip::make(kappa, sy, ms);
      const double cap = rc.first_hit(R);
      std::array<std::array<double, 2>, 2> iv;
      int niv = 0;
      rc.clip(a, b, cap, iv, niv);
      for (int i = 0; i < niv; ++i) {
        if (kind == AnnulusIntegrand::One) {
          acc += iv[i][1] - iv[i][0];
        } else {
          acc += gauss_legendre_16(
              [&](double t) {
                const double d = rc.dr_at(t);
                return d * d;
              },
              iv[i][0], iv[i][1]);
        }
      }
    }
    return acc;
  };

  for (int side = 0; side < 2; ++side) {
    Vec dir = v;
    if (side == 1) dir *= -1.0;
    const RayClip rc = RayClip::make(kappa, sy, side == 0 ? m : -m);
    const double cap = rc.first_hit(R);
    const double dt = cap / resolution;
    for (int it = 0; it < resolution; ++it) {
      const double t = (it + 0.5) * dt;
      SurfaceSample smp;
      smp.point = sf.exp(y, dir, t);
      Vec vel(dim);
      const double c = trig_cs(kappa, t), s = trig_sn(kappa, t);
      for (int i = 0; i < dim; ++i)
        vel[i] = kappa == 0 ? dir[i] : -kappa * s * y[i] + c * dir[i];
      smp.frame.push_back(vel);
      smp.weight = dt;
      sub.samples.push_back(std::move(smp));
    }
  }
  sub.meta = "chord";
  return sub;
}

// Catenoid x^2 + y^2 = c^2 cosh^2(z/c) in flat 3-space, clipped to the
// ball of radius R about the origin. The distance to the origin depends on
// z alone and increases in |z|, so clipping is an exact z-interval.
inline SampledSubmanifold catenoid_patch(double R, double neck,
                                         int resolution) {
  if (!(neck > 0.0 && neck < R))
    throw std::invalid_argument("0 < neck < R required to meet the ball");
  SampledSubmanifold sub{SpaceForm(0, 3), 2, R, Vec(3), {}, "", {}};
  const double c = neck;
  auto r_of_z = [c](double z) {
    const double rho = c * std::cosh(z / c);
    return std::hypot(rho, z);
  };
  // Monotone on z >= 0; bisection inverse.
  auto z_of_r = [c, r_of_z](double target) {
    if (target <= c) return 0.0;
    double lo = 0.0, hi = std::sqrt(target * target - c * c);
    for (int it = 0; it < 128; ++it) {
      const double mid = 0.5 * (lo + hi);
      (r_of_z(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  const double z_max = z_of_r(R);

  auto one_antideriv = [c](double z) {
    return c * (z / 2 + (c / 4) * std::sinh(2 * z / c));
  };
  auto grad_tan_sq_of_z = [c, r_of_z](double z) {
    const double ch = std::cosh(z / c), sh = std::sinh(z / c);
    const double num = c * ch * sh + z;
    const double r = r_of_z(z);
    return num * num / (r * r * ch * ch);
  };
  sub.annulus = [c, R, z_max, z_of_r, one_antideriv, grad_tan_sq_of_z](
                    double a, double b, AnnulusIntegrand kind) {
    const double zb = std::min(z_max, z_of_r(std::min(b, R)));
    const double za = z_of_r(std::max(a, 0.0));
    if (zb <= za) return 0.0;
    if (kind == AnnulusIntegrand::One)
      return 4.0 * kPi * (one_antideriv(zb) - one_antideriv(za));
    const int pieces = std::max(2, static_cast<int>((zb - za) * 64) + 1);
    return 4.0 * kPi *
           gauss_legendre_composite(
               [&](double z) {
                 return c * std::cosh(z / c) * std::cosh(z / c) *
                        grad_tan_sq_of_z(z);
               },
               za, zb, pieces);
  };

  const int nz = resolution, nth = resolution;
  const double dz = 2.0 * z_max / nz, dth = 2.0 * kPi / nth;
  for (int iz = 0; iz < nz; ++iz) {
    const double z = -z_max + (iz + 0.5) * dz;
    const double ch = std::cosh(z / c), sh = std::sinh(z / c);
    for (int it = 0; it < nth; ++it) {
      const double th = (it + 0.5) * dth;
      SurfaceSample smp;
      smp.point = Vec(3);
      smp.point[0] = c * ch * std::cos(th);
      smp.point[1] = c * ch * std::sin(th);
      smp.point[2] = z;
      Vec e1(3), e2(3);
      e1[0] = sh * std::cos(th) / ch;
      e1[1] = sh * std::sin(th) / ch;
      e1[2] = 1.0 / ch;
      e2[0] = -std::sin(th);
      e2[1] = std::cos(th);
      e2[2] = 0.0;
      smp.frame = {e1, e2};
      smp.weight = c * ch * ch * dz * dth;
      sub.samples.push_back(std::move(smp));
    }
  }
  sub.meta = "catenoid";
  return sub;
}

// Clifford torus (cos u, sin u, cos v, sin v)/sqrt(2) in the unit 3-sphere,
// clipped to the ball of radius R about the torus point u = v = 0. Here
// cos r = (cos u + cos v)/2, so slices are explicit v-intervals per u.
inline SampledSubmanifold clifford_patch(double R, int resolution) {
  if (!(R > 0.0 && R < kPi / 2))
    throw std::invalid_argument("0 < R < pi/2");
  SampledSubmanifold sub{SpaceForm(1, 3), 2, R, Vec(4), {}, "", {}};
  sub.center[0] = 1.0 / std::sqrt(2.0);
  sub.center[2] = 1.0 / std::sqrt(2.0);

  auto v_solve = [](double cos_level, double u) {
    // Largest v in [0, pi] with cos u + cos v >= 2 cos_level.
    return std::acos(std::min(1.0, std::max(-1.0, 2.0 * cos_level -
                                                      std::cos(u))));
  };
  auto grad_tan_sq_uv = [](double u, double v) {
    const double cr = (std::cos(u) + std::cos(v)) / 2.0;
    const double s2 = 1.0 - cr * cr;
    const double su = std::sin(u), sv = std::sin(v);
    if (s2 < 1e-30) return 1.0;
    return (su * su + sv * sv) / (2.0 * s2);
  };
  sub.annulus = [v_solve, grad_tan_sq_uv, R](double a, double b,
                                             AnnulusIntegrand kind) {
    const double blim = std::min(b, R);
    if (blim <= a) return 0.0;
    const double ca = std::cos(std::max(a, 0.0)), cb = std::cos(blim);
    const double u_max = std::acos(std::min(1.0, std::max(-1.0, 2.0 * cb -
                                                                    1.0)));
    if (u_max <= 0.0) return 0.0;
    auto per_u = [&](double u) {
      const double v_hi = v_solve(cb, u);
      const double v_lo = v_solve(ca, u);
      if (v_hi <= v_lo) return 0.0;
      if (kind == AnnulusIntegrand::One) return v_hi - v_lo;
      const int pieces =
          std::max(1, static_cast<int>((v_hi - v_lo) / 0.08) + 1);
      return gauss_legendre_composite(
          [&](double v) { return grad_tan_sq_uv(u, v); }, v_lo, v_hi,
          pieces);
    };
    return 2.0 * integrate_adaptive(per_u, 0.0, u_max, 1e-12, 1e-10);
  };

  const double u_max = std::acos(
      std::min(1.0, std::max(-1.0, 2.0 * std::cos(R) - 1.0)));
  const int nu = resolution, nv = resolution;
  const double du = 2.0 * u_max / nu;
  const double rt = 1.0 / std::sqrt(2.0);
  for (int iu = 0; iu < nu; ++iu) {
    const double u = -u_max + (iu + 0.5) * du;
    const double v_hi = v_solve(std::cos(R), u);
    if (v_hi <= 0.0) continue;
    const double dv = 2.0 * v_hi / nv;
    for (int iv = 0; iv < nv; ++iv) {
      const double v = -v_hi + (iv + 0.5) * dv;
      SurfaceSample smp;
      smp.point = Vec(4);
      smp.point[0] = std::cos(u) * rt;
      smp.point[1] = std::sin(u) * rt;
      smp.point[2] = std::cos(v) * rt;
      smp.point[3] = std::sin(v) * rt;
      Vec e1(4), e2(4);
      e1[0] = -std::sin(u);
      e1[1] = std::cos(u);
      e2[2] = -std::sin(v);
      e2[3] = std::cos(v);
      smp.frame = {e1, e2};
      smp.weight = du * dv / 2.0;
      sub.samples.push_back(std::move(smp));
    }
  }
  sub.meta = "clifford";
  return sub;
}

struct MonotonicityReport {
  std::vector<double> t_grid;
  std::vector<double> values;
  double min_forward_difference = 0.0;
};

namespace surface_detail {

inline double staircase_integral(const SampledSubmanifold& sub, double a,
                                 double b, AnnulusIntegrand kind) {
  double acc = 0.0;
  for (const SurfaceSample& smp : sub.samples) {
    const double r = sub.sf.distance(smp.point, sub.center);
    if (r < a || r > b) continue;
    double f = 1.0;
    if (kind == AnnulusIntegrand::GradTanSq) {
      if (r < 1e-9) continue;
      const Vec g = sub.sf.grad_r(smp.point, sub.center);
      f = frame_grad_tan_sq(sub.sf, g, smp.frame);
    }
    acc += smp.weight * f;
  }
  return acc;
}

inline double annulus_or_staircase(const SampledSubmanifold& sub, double a,
                                   double b, AnnulusIntegrand kind) {
  if (sub.annulus) return sub.annulus(a, b, kind);
  return staircase_integral(sub, a, b, kind);
}

inline void fill_differences(MonotonicityReport& rep) {
  rep.min_forward_difference = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i + 1 < rep.values.size(); ++i)
    rep.min_forward_difference =
        std::min(rep.min_forward_difference, rep.values[i + 1] - rep.values[i]);
}

}  // namespace surface_detail

// Density ratio Q(t) = |Sigma cap B_t| / |B^k_t| about the ball centre; on
// the sphere the numerator integrates |tangential grad r|^2 instead of the
// raw area, matching the monotone quantity there.
inline MonotonicityReport Q_profile(const SampledSubmanifold& sub,
                                    const std::vector<double>& t_grid) {
  MonotonicityReport rep;
  rep.t_grid = t_grid;
  const ProfileContext prof(sub.sf.kappa, sub.k);
  const double shell = unit_sphere_area(sub.k);
  const AnnulusIntegrand kind = sub.sf.kappa > 0
                                    ? AnnulusIntegrand::GradTanSq
                                    : AnnulusIntegrand::One;
  for (double t : t_grid) {
    if (!(t > 0.0 && t <= sub.R + 1e-12))
      throw std::invalid_argument("grid point outside (0, R]");
    const double num = surface_detail::annulus_or_staircase(sub, 0.0, t, kind);
    rep.values.push_back(num / (A_fun(prof, t) * shell));
  }
  surface_detail::fill_differences(rep);
  return rep;
}

// Boundary-slice ratio Q_d(t) = (1/|dB^k_t|) * slice integral of
// |tangential grad r| over Sigma cap dB_t, computed by band averaging: the
// co-area factor |grad^Sigma r| equals |tangential grad r|, so the band
// integrand is exactly the squared tangential gradient.
inline MonotonicityReport Qpartial_profile(const SampledSubmanifold& sub,
                                           const std::vector<double>& t_grid,
                                           double band = 1e-4) {
  MonotonicityReport rep;
  rep.t_grid = t_grid;
  const ProfileContext prof(sub.sf.kappa, sub.k);
  const double shell = unit_sphere_area(sub.k);
  const double eps = sub.annulus ? band : std::max(band, 0.02);
  for (double t : t_grid) {
    if (!(t - eps > 0.0 && t + eps <= sub.R + 1e-12))
      throw std::invalid_argument("grid point outside (band, R - band]");
    const double num = surface_detail::annulus_or_staircase(
        sub, t - eps, t + eps, AnnulusIntegrand::GradTanSq);
    rep.values.push_back(num /
                         (2.0 * eps * Aprime_fun(prof, t) * shell));
  }
  surface_detail::fill_differences(rep);
  return rep;
}

struct AreaCheck {
  double area = 0.0;
  double bound = 0.0;
  double s_y = 0.0;
  double r_under = 0.0;
  bool pass = false;
};

// Prescribed-point inequality |Sigma| >= |B^k_{underline r}| for a sampled
// surface through y. y must lie on the surface (checked to mesh scale).
inline AreaCheck prescribed_point_check(const SampledSubmanifold& sub,
                                        const Vec& y) {
  double best = std::numeric_limits<double>::infinity();
  for (const SurfaceSample& smp : sub.samples)
    best = std::min(best, sub.sf.distance(smp.point, y));
  if (best > 0.1)
    throw std::invalid_argument("prescribed point not on the surface");
  AreaCheck out;
  out.s_y = sub.sf.distance(sub.center, y);
  out.r_under = underline_r(sub.sf.kappa, sub.R, out.s_y);
  const ProfileContext prof(sub.sf.kappa, sub.k);
  out.area = surface_detail::annulus_or_staircase(sub, 0.0, sub.R,
                                                  AnnulusIntegrand::One);
  out.bound = A_fun(prof, out.r_under) * unit_sphere_area(sub.k);
  out.pass = out.area >= out.bound * (1.0 - 1e-4);
  return out;
}

// Norm of the mean curvature vector of a two-parameter patch, by Richardson
// finite differences of the embedding: the normal projection of
// g^{ij} d2X/du_i du_j, with tangential Christoffel parts removed by
// projection.
inline double mean_curvature_defect(
    const SpaceForm& sf, const std::function<Vec(double, double)>& param,
    double u, double v, double h = 1e-3) {
  const int dim = sf.ambient_dim();
  auto d1 = [&](bool in_u) {
    auto at = [&](double t) { return in_u ? param(u + t, v) : param(u, v + t); };
    Vec out(dim);
    const Vec p1 = at(h), m1 = at(-h), p2 = at(h / 2), m2 = at(-h / 2);
    for (int i = 0; i < dim; ++i) {
      const double a = (p1[i] - m1[i]) / (2 * h);
      const double b = (p2[i] - m2[i]) / h;
      out[i] = (4 * b - a) / 3;
    }
    return out;
  };
  auto d2 = [&](bool uu) {
    auto at = [&](double t) { return uu ? param(u + t, v) : param(u, v + t); };
    const Vec c = param(u, v);
    Vec out(dim);
    const Vec p1 = at(h), m1 = at(-h), p2 = at(h / 2), m2 = at(-h / 2);
    for (int i = 0; i < dim; ++i) {
      const double a = (p1[i] - 2 * c[i] + m1[i]) / (h * h);
      const double b = (p2[i] - 2 * c[i] + m2[i]) / (h * h / 4);
      out[i] = (4 * b - a) / 3;
    }
    return out;
  };
  auto dmix = [&]() {
    auto cross = [&](double hh) {
      const Vec pp = param(u + hh, v + hh), pm = param(u + hh, v - hh);
      const Vec mp = param(u - hh, v + hh), mm = param(u - hh, v - hh);
      Vec out(dim);
      for (int i = 0; i < dim; ++i)
        out[i] = (pp[i] - pm[i] - mp[i] + mm[i]) / (4 * hh * hh);
      return out;
    };
    const Vec a = cross(h), b = cross(h / 2);
    Vec out(dim);
    for (int i = 0; i < dim; ++i) out[i] = (4 * b[i] - a[i]) / 3;
    return out;
  };

  const Vec x = param(u, v);
  const Vec xu = d1(true), xv = d1(false);
  const Vec xuu = d2(true), xvv = d2(false), xuv = dmix();
  const double g11 = sf.dot(xu, xu), g12 = sf.dot(xu, xv),
               g22 = sf.dot(xv, xv);
  const double det = g11 * g22 - g12 * g12;
  if (det < 1e-20) throw EvalError("mean_curvature_defect: degenerate metric");
  Vec m(dim);
  for (int i = 0; i < dim; ++i)
    m[i] = (g22 * xuu[i] - 2 * g12 * xuv[i] + g11 * xvv[i]) / det;
  Vec tang = sf.tangent_project(x, m);
  // Remove the surface-tangential part.
  Vec e1 = xu;
  e1 *= 1.0 / sf.tangent_norm(e1);
  Vec e2 = xv;
  {
    const double c = sf.dot(e2, e1);
    for (int i = 0; i < dim; ++i) e2[i] -= c * e1[i];
    e2 *= 1.0 / sf.tangent_norm(e2);
  }
  const double c1 = sf.dot(tang, e1), c2 = sf.dot(tang, e2);
  for (int i = 0; i < dim; ++i) tang[i] -= c1 * e1[i] + c2 * e2[i];
  return sf.tangent_norm(tang);
}

}  // namespace minarea
