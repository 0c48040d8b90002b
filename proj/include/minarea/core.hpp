#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

namespace minarea {

inline constexpr double kPi = 3.14159265358979323846264338327950288;

// Fixed-capacity coordinate vector. Ambient dimensions here never exceed
// eight (n <= 7 plus one model coordinate), so no heap allocation is needed
// on the hot evaluation paths.
class Vec {
 public:
  static constexpr int kMaxDim = 12;

  Vec() : size_(0) { coords_.fill(0.0); }
  explicit Vec(int size) : size_(size) {
    if (size < 0 || size > kMaxDim) throw std::invalid_argument("Vec size");
    coords_.fill(0.0);
  }

  int size() const { return size_; }
  double operator[](int i) const { return coords_[static_cast<size_t>(i)]; }
  double& operator[](int i) { return coords_[static_cast<size_t>(i)]; }

  Vec& operator+=(const Vec& o) {
    for (int i = 0; i < size_; ++i) coords_[i] += o.coords_[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    for (int i = 0; i < size_; ++i) coords_[i] -= o.coords_[i];
    return *this;
  }
  Vec& operator*=(double c) {
    for (int i = 0; i < size_; ++i) coords_[i] *= c;
    return *this;
  }

  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator*(double c, Vec a) { return a *= c; }
  friend Vec operator*(Vec a, double c) { return a *= c; }

 private:
  std::array<double, kMaxDim> coords_;
  int size_;
};

// Euclidean inner product.
inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (int i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Minkowski inner product with signature (-,+,...,+).
inline double dot_minkowski(const Vec& a, const Vec& b) {
  double s = -a[0] * b[0];
  for (int i = 1; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

inline Vec basis_vec(int size, int i) {
  Vec v(size);
  v[i] = 1.0;
  return v;
}

// Deterministic 64-bit generator with explicit variate recipes. The standard
// <random> distributions are implementation-defined, which would make seeded
// outputs differ across standard libraries; these do not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {
    for (int i = 0; i < 4; ++i) next_u64();
  }

  std::uint64_t next_u64() {
    // splitmix64 step; passes through every 64-bit value exactly once.
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  // Standard normal via Marsaglia polar sampling.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, q;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      q = u * u + v * v;
    } while (q >= 1.0 || q == 0.0);
    const double f = std::sqrt(-2.0 * std::log(q) / q);
    spare_ = v * f;
    have_spare_ = true;
    return u * f;
  }

  Vec gaussian_vec(int size) {
    Vec v(size);
    for (int i = 0; i < size; ++i) v[i] = normal();
    return v;
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Derives an independent stream for batch `index` of a root seed. Batch
// results can then be merged in index order independently of scheduling.
inline std::uint64_t batch_seed(std::uint64_t root, std::uint64_t index) {
  Rng mix(root ^ (0xd1b54a32d192ed03ull * (index + 1)));
  return mix.next_u64();
}

// Neville polynomial extrapolation of (x_i, y_i) to x = 0. The abscissae
// must be distinct; typically a geometric sequence of step sizes.
inline double neville_to_zero(const double* xs, const double* ys, int n) {
  std::array<double, 16> t{};
  if (n > 16) throw std::invalid_argument("neville: too many nodes");
  for (int i = 0; i < n; ++i) t[i] = ys[i];
  for (int m = 1; m < n; ++m) {
    for (int i = 0; i + m < n; ++i) {
      const double x0 = xs[i], x1 = xs[i + m];
      t[i] = (x0 * t[i + 1] - x1 * t[i]) / (x0 - x1);
    }
  }
  return t[0];
}

// Central difference with one Richardson step: O(h^4) truncation error.
template <typename F>
double richardson_derivative(F&& f, double x, double h = 1e-4) {
  const double d1 = (f(x + h) - f(x - h)) / (2.0 * h);
  const double d2 = (f(x + h / 2) - f(x - h / 2)) / h;
  return (4.0 * d2 - d1) / 3.0;
}

// Second derivative by the same scheme.
template <typename F>
double richardson_second_derivative(F&& f, double x, double h = 1e-3) {
  auto second = [&](double hh) {
    return (f(x + hh) - 2.0 * f(x) + f(x - hh)) / (hh * hh);
  };
  const double d1 = second(h);
  const double d2 = second(h / 2);
  return (4.0 * d2 - d1) / 3.0;
}

// Area of the unit (m-1)-sphere in R^m; |S^0| = 2.
inline double unit_sphere_area(int m) {
  if (m < 1) throw std::invalid_argument("unit_sphere_area: m >= 1");
  if (m == 1) return 2.0;
  // |S^{m-1}| = 2 pi^{m/2} / Gamma(m/2), via the recurrence
  // |S^{m-1}| = 2 pi / (m - 2) * |S^{m-3}|.
  double a = (m % 2 == 0) ? 2.0 * kPi : 2.0;  // |S^1| or |S^0|
  for (int j = (m % 2 == 0) ? 2 : 1; j + 2 <= m; j += 2) {
    a *= 2.0 * kPi / j;
  }
  return a;
}

// Worker count for sample sweeps; MINAREA_THREADS overrides autodetection.
inline int thread_count() {
  if (const char* env = std::getenv("MINAREA_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

struct EvalError : std::runtime_error {
  explicit EvalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace minarea
