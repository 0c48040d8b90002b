#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "minarea/core.hpp"
#include "minarea/spaceform.hpp"

using namespace minarea;

TEST_CASE("exponential map stays on the model and preserves distance") {
  Rng rng(11);
  for (int kappa : {-1, 0, 1}) {
    for (int n : {2, 3, 5}) {
      const SpaceForm sf(kappa, n);
      const Vec o = sf.base_point();
      REQUIRE(sf.on_manifold(o));
      for (int trial = 0; trial < 20; ++trial) {
        const Vec v = sf.haar_tangent_frame(rng, o, 1)[0];
        CHECK(sf.tangent_norm(v) == Catch::Approx(1.0).epsilon(1e-12));
        const double t = rng.uniform(0.01, kappa > 0 ? 3.0 : 2.5);
        const Vec x = sf.exp(o, v, t);
        CAPTURE(kappa, n, t);
        CHECK(sf.on_manifold(x));
        CHECK(sf.distance(o, x) == Catch::Approx(t).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("distance gradient is unit and matches the difference quotient") {
  Rng rng(5);
  for (int kappa : {-1, 0, 1}) {
    const SpaceForm sf(kappa, 3);
    const Vec z = sf.base_point();
    for (int trial = 0; trial < 12; ++trial) {
      const Vec v = sf.haar_tangent_frame(rng, z, 1)[0];
      const Vec x = sf.exp(z, v, rng.uniform(0.2, 1.4));
      const Vec g = sf.grad_r(x, z);
      CHECK(sf.tangent_norm(g) == Catch::Approx(1.0).epsilon(1e-10));
      // Derivative of r along a random geodesic equals <grad r, dir>.
      const Vec w = sf.haar_tangent_frame(rng, x, 1)[0];
      const double fd = richardson_derivative(
          [&](double t) { return sf.distance(sf.exp(x, w, t), z); }, 0.0,
          1e-4);
      CHECK(fd == Catch::Approx(sf.dot(g, w)).margin(1e-9));
    }
  }
}

TEST_CASE("tangent projection is idempotent and annihilates the normal") {
  Rng rng(17);
  for (int kappa : {-1, 1}) {
    const SpaceForm sf(kappa, 4);
    const Vec o = sf.base_point();
    const Vec x = sf.exp(o, sf.haar_tangent_frame(rng, o, 1)[0], 0.8);
    Vec raw = rng.gaussian_vec(sf.ambient_dim());
    const Vec p = sf.tangent_project(x, raw);
    CHECK(std::abs(sf.dot(p, x)) < 1e-12);
    const Vec pp = sf.tangent_project(x, p);
    for (int i = 0; i < p.size(); ++i)
      CHECK(pp[i] == Catch::Approx(p[i]).margin(1e-13));
  }
}

TEST_CASE("random tangent frames are orthonormal") {
  Rng rng(23);
  for (int kappa : {-1, 0, 1}) {
    const SpaceForm sf(kappa, 5);
    const Vec o = sf.base_point();
    const Vec x = sf.exp(o, sf.haar_tangent_frame(rng, o, 1)[0], 0.6);
    const auto frame = sf.haar_tangent_frame(rng, x, 3);
    REQUIRE(frame.size() == 3);
    for (size_t i = 0; i < frame.size(); ++i) {
      if (kappa != 0) CHECK(std::abs(sf.dot(frame[i], x)) < 1e-12);
      for (size_t j = 0; j <= i; ++j) {
        const double want = i == j ? 1.0 : 0.0;
        CHECK(sf.dot(frame[i], frame[j]) ==
              Catch::Approx(want).margin(1e-12));
      }
    }
  }
}

TEST_CASE("axis chart round-trips and satisfies the metric relations") {
  for (int kappa : {-1, 0, 1}) {
    const SpaceForm sf(kappa, 4);
    const AxisChart chart(sf, 0.35);
    const Vec y = chart.y();
    CHECK(sf.on_manifold(y));
    CHECK(sf.distance(chart.origin(), y) == Catch::Approx(0.35));
    Rng rng(3);
    for (int trial = 0; trial < 25; ++trial) {
      const double s = rng.uniform(-0.9, 0.9);
      const double rho = rng.uniform(0.05, 0.9);
      Vec w(sf.ambient_dim());
      {
        const auto basis = chart.perp_basis();
        Vec g(sf.ambient_dim());
        for (const Vec& b : basis) {
          const double c = rng.normal();
          for (int i = 0; i < g.size(); ++i) g[i] += c * b[i];
        }
        g *= 1.0 / norm(g);
        w = g;
      }
      const Vec x = chart.from_chart(s, rho, w);
      CAPTURE(kappa, s, rho);
      CHECK(sf.on_manifold(x));
      CHECK(chart.s_coord(x) == Catch::Approx(s).margin(1e-12));
      CHECK(chart.rho_coord(x) == Catch::Approx(rho).margin(1e-12));
      // Pythagoras: cs(r_o) = cs(s) cs(rho), with r_o the distance to the
      // chart origin, and likewise about the axis point at s.
      const double ro = sf.distance(x, chart.origin());
      if (kappa == 0) {
        CHECK(ro * ro == Catch::Approx(s * s + rho * rho).epsilon(1e-12));
      } else {
        CHECK(trig_cs(kappa, ro) ==
              Catch::Approx(trig_cs(kappa, s) * trig_cs(kappa, rho))
                  .epsilon(1e-12));
      }
      CHECK(sf.distance(x, chart.axis_point(s)) ==
            Catch::Approx(rho).epsilon(1e-11));
      // r_y consistency with the ambient distance.
      CHECK(chart.r_y(x) == Catch::Approx(sf.distance(x, y)).margin(1e-12));

      // Gradient relations: |grad rho| = 1, <grad s, ds> = 1,
      // |ds|^2 = cs(rho)^2, grad s orthogonal to grad rho.
      const Vec gs = chart.grad_s(x);
      const Vec ds = chart.ds_vec(x);
      const Vec gr = chart.grad_rho(x);
      const double csr = trig_cs(kappa, rho);
      CHECK(sf.tangent_norm(gr) == Catch::Approx(1.0).epsilon(1e-11));
      CHECK(sf.dot(gs, ds) == Catch::Approx(1.0).epsilon(1e-11));
      CHECK(sf.dot(ds, ds) == Catch::Approx(csr * csr).epsilon(1e-11));
      CHECK(sf.dot(gs, gr) == Catch::Approx(0.0).margin(1e-11));
      // The s-coordinate changes at unit rate along ds/|ds|^2.
      const double fd = richardson_derivative(
          [&](double t) {
            Vec dir = ds;
            dir *= 1.0 / sf.tangent_norm(ds);
            return chart.s_coord(sf.exp(x, dir, t));
          },
          0.0, 1e-4);
      CHECK(fd == Catch::Approx(1.0 / csr).epsilon(1e-7));
    }
  }
}

TEST_CASE("spherical chart rejects the polar set") {
  const SpaceForm sf(1, 3);
  const AxisChart chart(sf, 0.3);
  Vec pole(4);
  pole[2] = 1.0;
  CHECK(sf.on_manifold(pole));
  CHECK_THROWS_AS(chart.s_coord(pole), EvalError);
}

TEST_CASE("killing field symmetry: ds has zero symmetrized derivative") {
  // For any two tangent vectors at x, <D_a ds, b> + <D_b ds, a> = 0.
  Rng rng(29);
  for (int kappa : {-1, 0, 1}) {
    const SpaceForm sf(kappa, 3);
    const AxisChart chart(sf, 0.25);
    for (int trial = 0; trial < 8; ++trial) {
      const Vec x =
          chart.from_chart(rng.uniform(-0.5, 0.5), rng.uniform(0.2, 0.8),
                           basis_vec(sf.ambient_dim(), 2));
      const auto fr = sf.haar_tangent_frame(rng, x, 2);
      const Vec a = fr[0], b = fr[1];
      const double da = richardson_derivative(
          [&](double t) {
            return sf.dot(chart.ds_vec(sf.exp(x, a, t)), b);
          },
          0.0, 1e-4);
      const double db = richardson_derivative(
          [&](double t) {
            return sf.dot(chart.ds_vec(sf.exp(x, b, t)), a);
          },
          0.0, 1e-4);
      CAPTURE(kappa, trial);
      CHECK(da + db == Catch::Approx(0.0).margin(1e-8));
    }
  }
}
