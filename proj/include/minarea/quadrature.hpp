#pragma once

#include <cmath>
#include <cstdlib>

#include "minarea/core.hpp"

namespace minarea {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1], symmetric half listed.
namespace gk_detail {
inline constexpr double kNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
inline constexpr double kWeightsK[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
// Gauss weights attach to the odd-indexed Kronrod nodes.
inline constexpr double kWeightsG[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};
}  // namespace gk_detail

template <typename F>
void gauss_kronrod_15(F&& f, double a, double b, double& result,
                      double& error) {
  using namespace gk_detail;
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double sk = 0.0, sg = 0.0;
  for (int i = 0; i < 7; ++i) {
    const double x = h * kNodes[i];
    const double fsum = f(c - x) + f(c + x);
    sk += kWeightsK[i] * fsum;
    if (i % 2 == 1) sg += kWeightsG[i / 2] * fsum;
  }
  const double fc = f(c);
  sk += kWeightsK[7] * fc;
  sg += kWeightsG[3] * fc;
  result = sk * h;
  const double diff = std::abs(sk - sg) * std::abs(h);
  // Standard QUADPACK-style sharpening of the Gauss/Kronrod discrepancy.
  error = diff == 0.0 ? 0.0 : diff * std::min(1.0, std::pow(200.0 * diff / std::abs(result + 1e-300), 1.5));
  if (error < diff * 1e-6) error = diff * 1e-6;
}

// Adaptive bisection quadrature, absolute tolerance with a relative floor.
// Depth is bounded; leftover leaf error accumulates into the estimate.
template <typename F>
double integrate_adaptive(F&& f, double a, double b, double abstol = 1e-12,
                          double reltol = 1e-12, int max_depth = 48) {
  if (a == b) return 0.0;
  struct Seg {
    double a, b, val, err;
    int depth;
  };
  // Explicit stack; worst case 4k segments is far beyond practical need.
  static thread_local Seg stack[4096];
  int top = 0;
  double total = 0.0, total_err = 0.0;

  double v, e;
  gauss_kronrod_15(f, a, b, v, e);
  stack[top++] = {a, b, v, e, 0};
  double crude = std::abs(v) + 1.0;

  while (top > 0) {
    Seg s = stack[--top];
    const double tol =
        std::max(abstol, reltol * crude) * std::abs(s.b - s.a) /
        std::abs(b - a);
    if (s.err <= tol || s.depth >= max_depth || top >= 4090) {
      total += s.val;
      total_err += s.err;
      continue;
    }
    const double m = 0.5 * (s.a + s.b);
    double v1, e1, v2, e2;
    gauss_kronrod_15(f, s.a, m, v1, e1);
    gauss_kronrod_15(f, m, s.b, v2, e2);
    stack[top++] = {s.a, m, v1, e1, s.depth + 1};
    stack[top++] = {m, s.b, v2, e2, s.depth + 1};
  }
  (void)total_err;
  return total;
}

// Gauss-Legendre 16-point rule for smooth integrands on fixed intervals.
namespace gl_detail {
inline constexpr double kX[8] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
    0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
    0.9445750230732326, 0.9894009349916499};
inline constexpr double kW[8] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
    0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
    0.0622535239386479, 0.0271524594117541};
}  // namespace gl_detail

template <typename F>
double gauss_legendre_16(F&& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double x = h * gl_detail::kX[i];
    s += gl_detail::kW[i] * (f(c - x) + f(c + x));
  }
  return s * h;
}

// Composite Gauss-Legendre with `pieces` equal subintervals.
template <typename F>
double gauss_legendre_composite(F&& f, double a, double b, int pieces) {
  double s = 0.0;
  const double h = (b - a) / pieces;
  for (int i = 0; i < pieces; ++i) {
    s += gauss_legendre_16(f, a + i * h, a + (i + 1) * h);
  }
  return s;
}

}  // namespace minarea
