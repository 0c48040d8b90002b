#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "minarea/core.hpp"
#include "minarea/profiles.hpp"

namespace minarea {

// Simply connected space form of curvature kappa in {-1, 0, +1} and
// dimension n, realised as
//   +1: unit sphere in R^{n+1}
//    0: R^n
//   -1: upper hyperboloid <x,x>_M = -1 in Minkowski R^{n,1}
// Points and tangent vectors are ambient vectors; the model metric is the
// ambient Euclidean or Minkowski pairing restricted to the tangent space.
struct SpaceForm {
  int kappa = 0;
  int n = 2;

  SpaceForm(int kappa_, int n_) : kappa(kappa_), n(n_) {
    check_kappa(kappa);
    if (n < 2 || n + 1 > Vec::kMaxDim)
      throw std::invalid_argument("dimension out of range");
  }

  int ambient_dim() const { return kappa == 0 ? n : n + 1; }

  double dot(const Vec& u, const Vec& v) const {
    return kappa < 0 ? dot_minkowski(u, v) : minarea::dot(u, v);
  }

  double tangent_norm(const Vec& v) const { return std::sqrt(dot(v, v)); }

  // Canonical centre: e_0 on the curved models, the origin in flat space.
  Vec base_point() const {
    Vec o(ambient_dim());
    if (kappa != 0) o[0] = 1.0;
    return o;
  }

  // Canonical axis direction: a unit tangent at the base point.
  Vec axis_dir() const {
    return basis_vec(ambient_dim(), kappa == 0 ? 0 : 1);
  }

  bool on_manifold(const Vec& x, double tol = 1e-9) const {
    if (x.size() != ambient_dim()) return false;
    if (kappa == 0) return true;
    return std::abs(dot(x, x) - kappa) <= tol && (kappa > 0 || x[0] > 0.0);
  }

  double distance(const Vec& x, const Vec& z) const {
    if (kappa > 0) {
      const double c = minarea::dot(x, z);
      if (c > 1.0 + 1e-12 || c < -1.0 - 1e-12)
        throw EvalError("distance: points off the sphere");
      return std::acos(std::min(1.0, std::max(-1.0, c)));
    }
    if (kappa < 0) {
      const double c = -dot_minkowski(x, z);
      if (c < 1.0 - 1e-12) throw EvalError("distance: points off the model");
      return std::acosh(std::max(1.0, c));
    }
    Vec d = x;
    d -= z;
    return norm(d);
  }

  // Unit-speed geodesic from x with initial unit tangent v, at time t.
  Vec exp(const Vec& x, const Vec& v, double t) const {
    Vec out(x.size());
    if (kappa > 0) {
      const double c = std::cos(t), s = std::sin(t);
      for (int i = 0; i < x.size(); ++i) out[i] = c * x[i] + s * v[i];
      return out;
    }
    if (kappa < 0) {
      const double c = std::cosh(t), s = std::sinh(t);
      for (int i = 0; i < x.size(); ++i) out[i] = c * x[i] + s * v[i];
      return out;
    }
    for (int i = 0; i < x.size(); ++i) out[i] = x[i] + t * v[i];
    return out;
  }

  // Gradient at x of the distance to z. Undefined at x = z and, on the
  // sphere, at the antipode of z.
  Vec grad_r(const Vec& x, const Vec& z) const {
    const double r = distance(x, z);
    Vec g(x.size());
    if (kappa == 0) {
      if (r < 1e-14) throw EvalError("grad_r: coincident points");
      for (int i = 0; i < x.size(); ++i) g[i] = (x[i] - z[i]) / r;
      return g;
    }
    const double sn = trig_sn(kappa, r);
    if (std::abs(sn) < 1e-14) throw EvalError("grad_r: singular point");
    const double cs = trig_cs(kappa, r);
    for (int i = 0; i < x.size(); ++i) g[i] = (cs * x[i] - z[i]) / sn;
    return g;
  }

  // Orthogonal projection of an ambient vector onto the tangent space at x,
  // with respect to the model pairing.
  Vec tangent_project(const Vec& x, const Vec& v) const {
    if (kappa == 0) return v;
    const double c = dot(v, x) / static_cast<double>(kappa);
    Vec out = v;
    for (int i = 0; i < x.size(); ++i) out[i] -= c * x[i];
    return out;
  }

  // Draws `count` model-orthonormal tangent vectors at x from the rotation
  // invariant distribution: ambient Gaussians, projected, orthonormalised.
  std::vector<Vec> haar_tangent_frame(Rng& rng, const Vec& x,
                                      int count) const {
    if (count > n) throw std::invalid_argument("frame larger than dimension");
    std::vector<Vec> frame;
    frame.reserve(count);
    int guard = 0;
    while (static_cast<int>(frame.size()) < count) {
      if (++guard > 200 * (count + 1))
        throw EvalError("haar_tangent_frame: degenerate draws");
      Vec v = tangent_project(x, rng.gaussian_vec(ambient_dim()));
      for (const Vec& e : frame) {
        const double c = dot(v, e);
        for (int i = 0; i < v.size(); ++i) v[i] -= c * e[i];
      }
      const double nv = tangent_norm(v);
      if (nv < 1e-8) continue;
      v *= 1.0 / nv;
      frame.push_back(v);
    }
    return frame;
  }
};

// Geodesic polar coordinates (s, rho) about an oriented axis through the
// base point o with direction a: s is the signed arclength of the foot
// point along the axis, rho the distance to the axis. The prescribed point
// y sits on the axis at s = s_y. On the sphere the chart degenerates on the
// polar set equidistant from the axis; points there are rejected.
class AxisChart {
 public:
  AxisChart(const SpaceForm& sf, double s_y)
      : sf_(sf), o_(sf.base_point()), a_(sf.axis_dir()), s_y_(s_y) {
    y_ = axis_point(s_y_);
  }

  const SpaceForm& space() const { return sf_; }
  double s_y() const { return s_y_; }
  const Vec& y() const { return y_; }
  const Vec& origin() const { return o_; }
  const Vec& axis() const { return a_; }

  // Point on the axis with signed arclength s.
  Vec axis_point(double s) const {
    if (sf_.kappa == 0) {
      Vec p = o_;
      for (int i = 0; i < p.size(); ++i) p[i] += s * a_[i];
      return p;
    }
    const double c = trig_cs(sf_.kappa, s), sn = trig_sn(sf_.kappa, s);
    Vec p(o_.size());
    for (int i = 0; i < p.size(); ++i) p[i] = c * o_[i] + sn * a_[i];
    return p;
  }

  double s_coord(const Vec& x) const {
    if (sf_.kappa > 0) {
      const double al = minarea::dot(x, o_), be = minarea::dot(x, a_);
      if (al * al + be * be < 1e-24)
        throw EvalError("chart: point on the polar set");
      return std::atan2(be, al);
    }
    if (sf_.kappa < 0) {
      const double al = -dot_minkowski(x, o_), be = dot_minkowski(x, a_);
      return std::asinh(be / std::sqrt(std::max(al * al - be * be, 1e-300)));
    }
    Vec d = x;
    d -= o_;
    return minarea::dot(d, a_);
  }

  double rho_coord(const Vec& x) const {
    if (sf_.kappa > 0) {
      const double al = minarea::dot(x, o_), be = minarea::dot(x, a_);
      const double h = std::sqrt(al * al + be * be);
      if (h < 1e-12) throw EvalError("chart: point on the polar set");
      return std::acos(std::min(1.0, h));
    }
    if (sf_.kappa < 0) {
      const double al = -dot_minkowski(x, o_), be = dot_minkowski(x, a_);
      return std::acosh(std::max(1.0, std::sqrt(al * al - be * be)));
    }
    Vec d = x;
    d -= o_;
    const double s = minarea::dot(d, a_);
    for (int i = 0; i < d.size(); ++i) d[i] -= s * a_[i];
    return norm(d);
  }

  // Coordinate vector of s: the restriction to the surface rho = const of
  // the axial Killing-type field. Tangent to the model at every x off the
  // polar set.
  Vec ds_vec(const Vec& x) const {
    Vec v(x.size());
    if (sf_.kappa > 0) {
      const double al = minarea::dot(x, o_), be = minarea::dot(x, a_);
      for (int i = 0; i < v.size(); ++i) v[i] = al * a_[i] - be * o_[i];
      return v;
    }
    if (sf_.kappa < 0) {
      const double al = -dot_minkowski(x, o_), be = dot_minkowski(x, a_);
      for (int i = 0; i < v.size(); ++i) v[i] = be * o_[i] + al * a_[i];
      return v;
    }
    return a_;
  }

  // Metric gradient of the coordinate s: ds_vec scaled by cs(rho)^{-2}.
  Vec grad_s(const Vec& x) const {
    Vec v = ds_vec(x);
    if (sf_.kappa == 0) return v;
    double h;
    if (sf_.kappa > 0) {
      const double al = minarea::dot(x, o_), be = minarea::dot(x, a_);
      h = al * al + be * be;
      if (h < 1e-24) throw EvalError("chart: point on the polar set");
    } else {
      const double al = -dot_minkowski(x, o_), be = dot_minkowski(x, a_);
      h = al * al - be * be;
    }
    v *= 1.0 / h;
    return v;
  }

  // Gradient of rho, via the foot point of x on the axis.
  Vec grad_rho(const Vec& x) const {
    return sf_.grad_r(x, axis_point(s_coord(x)));
  }

  double r_y(const Vec& x) const { return sf_.distance(x, y_); }

  Vec grad_r_y(const Vec& x) const { return sf_.grad_r(x, y_); }

  // Rebuilds a point from chart data. w must be model-orthonormal to both
  // o and a (for the hyperboloid this forces w to be spatial, so Euclidean
  // and Minkowski conditions agree).
  Vec from_chart(double s, double rho, const Vec& w) const {
    if (sf_.kappa == 0) {
      Vec p = axis_point(s);
      for (int i = 0; i < p.size(); ++i) p[i] += rho * w[i];
      return p;
    }
    const Vec foot = axis_point(s);
    const double c = trig_cs(sf_.kappa, rho), sn = trig_sn(sf_.kappa, rho);
    Vec p(foot.size());
    for (int i = 0; i < p.size(); ++i) p[i] = c * foot[i] + sn * w[i];
    return p;
  }

  // Model-orthonormal basis of the directions orthogonal to the axis plane;
  // every valid w for from_chart is a unit combination of these.
  std::vector<Vec> perp_basis() const {
    std::vector<Vec> basis;
    const int dim = sf_.ambient_dim();
    const int first = sf_.kappa == 0 ? 1 : 2;
    for (int i = first; i < dim; ++i) basis.push_back(basis_vec(dim, i));
    return basis;
  }

 private:
  SpaceForm sf_;
  Vec o_;
  Vec a_;
  double s_y_;
  Vec y_;
};

}  // namespace minarea
