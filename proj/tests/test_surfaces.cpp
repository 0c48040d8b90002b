#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>

#include "minarea/sphere_geodesics.hpp"
#include "minarea/surfaces.hpp"
#include "reference_values.hpp"

using namespace minarea;

TEST_CASE("ray distance law matches ambient geometry") {
  Rng rng(41);
  for (int kappa : {-1, 0, 1}) {
    const SpaceForm sf(kappa, 3);
    const AxisChart chart(sf, 0.4);
    const Vec y = chart.y();
    for (int trial = 0; trial < 15; ++trial) {
      const double m = rng.uniform(-0.99, 0.99);
      // Build a unit tangent with axial cosine m at y.
      const Vec t_axis = surface_detail::axis_tangent(sf, 0.4);
      Vec perp = basis_vec(sf.ambient_dim(), kappa == 0 ? 1 : 2);
      Vec dir = t_axis;
      dir *= m;
      Vec p2 = perp;
      p2 *= std::sqrt(1.0 - m * m);
      dir += p2;
      const RayClip rc = RayClip::make(kappa, 0.4, m);
      for (double t : {0.1, 0.5, 1.0}) {
        const Vec x = sf.exp(y, dir, t);
        const double r = sf.distance(x, chart.origin());
        CAPTURE(kappa, m, t);
        CHECK(rc.r_at(t) == Catch::Approx(r).margin(1e-12));
        const double fd = richardson_derivative(
            [&](double h) {
              return sf.distance(sf.exp(y, dir, t + h), chart.origin());
            },
            0.0, 1e-4);
        CHECK(rc.dr_at(t) == Catch::Approx(fd).margin(1e-8));
      }
      // First boundary hit agrees with the chord law; the chord angle is
      // measured from the positive axis, so m = cos(alpha).
      const double R = kappa > 0 ? 0.9 : 1.2;
      const double alpha = std::acos(m);
      CHECK(rc.first_hit(R) ==
            Catch::Approx(chord_first_hit(kappa, R, 0.4, alpha))
                .margin(1e-12));
      // Clipping to an annulus brackets exactly the region where r lies
      // in the band.
      std::array<std::array<double, 2>, 2> segs{};
      int count = 0;
      rc.clip(0.6, 0.9, rc.first_hit(R), segs, count);
      for (int i = 0; i < count; ++i) {
        const double mid = 0.5 * (segs[i][0] + segs[i][1]);
        CHECK(rc.r_at(mid) >= 0.6 - 1e-12);
        CHECK(rc.r_at(mid) <= 0.9 + 1e-12);
      }
    }
  }
}

TEST_CASE("orthogonal disk area is exactly the closed bound") {
  for (int kappa : {-1, 0, 1}) {
    for (int k : {1, 2, 3}) {
      const double R = kappa > 0 ? 0.9 : 1.1;
      const BallData ball(R, 0.35);
      const SampledSubmanifold disk =
          tilted_disk(kappa, k + 1, k, ball, 0.0, 24);
      const ProfileContext prof(kappa, k);
      const double r_u = underline_r(kappa, ball);
      const double want = A_fun(prof, r_u) * unit_sphere_area(k);
      const double area = disk.annulus(0.0, R, AnnulusIntegrand::One);
      CAPTURE(kappa, k);
      CHECK(area == Catch::Approx(want).epsilon(1e-9));
      const AreaCheck chk = prescribed_point_check(
          disk, AxisChart(SpaceForm(kappa, k + 1), 0.35).y());
      CHECK(chk.pass);
      CHECK(chk.bound == Catch::Approx(want).epsilon(1e-9));
      CHECK(chk.area == Catch::Approx(want).epsilon(1e-9));
    }
  }
}

TEST_CASE("tilting the disk does not decrease its clipped area") {
  for (int kappa : {-1, 0, 1}) {
    const double R = kappa > 0 ? 0.9 : 1.1;
    const BallData ball(R, 0.3);
    const int k = 2;
    const SampledSubmanifold flat = tilted_disk(kappa, 4, k, ball, 0.0, 24);
    const double base = flat.annulus(0.0, R, AnnulusIntegrand::One);
    for (double tilt : {0.15, 0.4, 0.9, 1.3}) {
      const SampledSubmanifold sub = tilted_disk(kappa, 4, k, ball, tilt, 24);
      const double area = sub.annulus(0.0, R, AnnulusIntegrand::One);
      CAPTURE(kappa, tilt);
      CHECK(area >= base * (1.0 - 1e-9));
    }
  }
}

TEST_CASE("disk samples carry orthonormal tangent frames on the surface") {
  Rng rng(4);
  for (int kappa : {-1, 0, 1}) {
    const double R = kappa > 0 ? 0.8 : 1.0;
    const SampledSubmanifold sub =
        tilted_disk(kappa, 4, 2, BallData(R, 0.3), 0.5, 16);
    REQUIRE(!sub.samples.empty());
    double total = 0.0;
    for (const SurfaceSample& smp : sub.samples) total += smp.weight;
    CHECK(total == Catch::Approx(sub.annulus(0.0, R, AnnulusIntegrand::One))
                       .epsilon(0.02));
    for (size_t i = 0; i < sub.samples.size(); i += 7) {
      const SurfaceSample& smp = sub.samples[i];
      CHECK(sub.sf.on_manifold(smp.point));
      CHECK(sub.sf.distance(smp.point, sub.center) <= R + 1e-9);
      REQUIRE((int)smp.frame.size() == sub.k);
      for (size_t a = 0; a < smp.frame.size(); ++a) {
        if (kappa != 0)
          CHECK(std::abs(sub.sf.dot(smp.frame[a], smp.point)) < 1e-10);
        for (size_t b = 0; b <= a; ++b)
          CHECK(sub.sf.dot(smp.frame[a], smp.frame[b]) ==
                Catch::Approx(a == b ? 1.0 : 0.0).margin(1e-10));
      }
    }
  }
}

TEST_CASE("catenoid patch matches the closed clipped area") {
  const SampledSubmanifold cat =
      catenoid_patch(refvals::catenoid_R, refvals::catenoid_neck, 96);
  const double area =
      cat.annulus(0.0, refvals::catenoid_R, AnnulusIntegrand::One);
  CHECK(area ==
        Catch::Approx(refvals::catenoid_clipped_area).epsilon(1e-10));
  Vec y(3);
  y[0] = refvals::catenoid_neck;
  const AreaCheck chk = prescribed_point_check(cat, y);
  CHECK(chk.bound ==
        Catch::Approx(refvals::catenoid_point_bound).epsilon(1e-10));
  CHECK(chk.area >= chk.bound * (1.0 - 1e-4));
  CHECK(chk.pass);
}

TEST_CASE("catenoid is minimal and its samples sit inside the ball") {
  const double c = 0.3;
  const auto param = [c](double u, double v) {
    Vec x(3);
    x[0] = c * std::cosh(u / c) * std::cos(v);
    x[1] = c * std::cosh(u / c) * std::sin(v);
    x[2] = u;
    return x;
  };
  const SpaceForm sf(0, 3);
  for (double u : {-0.3, 0.0, 0.2}) {
    for (double v : {0.3, 2.0}) {
      CHECK(mean_curvature_defect(sf, param, u, v) < 1e-6);
    }
  }
  const SampledSubmanifold cat = catenoid_patch(1.0, c, 48);
  for (const SurfaceSample& s : cat.samples)
    CHECK(norm(s.point) <= 1.0 + 1e-9);
}

TEST_CASE("clifford patch matches the frozen area and bound") {
  const SampledSubmanifold cl = clifford_patch(refvals::clifford_R, 96);
  const double area =
      cl.annulus(0.0, refvals::clifford_R, AnnulusIntegrand::One);
  CHECK(area ==
        Catch::Approx(refvals::clifford_clipped_area).epsilon(1e-8));
  const AreaCheck chk = prescribed_point_check(cl, cl.center);
  CHECK(chk.bound ==
        Catch::Approx(refvals::clifford_disk_bound).epsilon(1e-10));
  CHECK(chk.area >= chk.bound * (1.0 - 1e-4));
  CHECK(chk.pass);
}

TEST_CASE("clifford torus is minimal in the three-sphere") {
  const SpaceForm sf(1, 3);
  const auto param = [](double u, double v) {
    Vec x(4);
    const double s = 1.0 / std::sqrt(2.0);
    x[0] = s * std::cos(u);
    x[1] = s * std::sin(u);
    x[2] = s * std::cos(v);
    x[3] = s * std::sin(v);
    return x;
  };
  for (double u : {0.2, 1.0}) {
    for (double v : {-0.4, 0.9}) {
      CHECK(mean_curvature_defect(sf, param, u, v) < 1e-6);
    }
  }
}

TEST_CASE("geodesic chord weights add up to the chord length") {
  for (int kappa : {-1, 0, 1}) {
    const double R = kappa > 0 ? 0.8 : 1.1;
    const BallData ball(R, 0.3);
    const double alpha = 1.1;
    const SampledSubmanifold sub = chord_submanifold(kappa, 3, ball, alpha);
    double total = 0.0;
    for (const SurfaceSample& s : sub.samples) total += s.weight;
    const double want = chord_total_length(kappa, R, 0.3, alpha);
    CAPTURE(kappa);
    CHECK(total == Catch::Approx(want).epsilon(1e-9));
    CHECK(sub.annulus(0.0, R, AnnulusIntegrand::One) ==
          Catch::Approx(want).epsilon(1e-9));
    const AreaCheck chk =
        prescribed_point_check(sub, AxisChart(sub.sf, 0.3).y());
    CHECK(chk.pass);
    CHECK(chk.bound ==
          Catch::Approx(2.0 * underline_r(kappa, ball)).epsilon(1e-12));
  }
}

TEST_CASE("area ratio profiles are nondecreasing for model surfaces") {
  std::vector<double> grid;
  for (int i = 0; i < 16; ++i) grid.push_back(0.1 + 0.85 * i / 15.0);
  {
    const SampledSubmanifold sub =
        tilted_disk(0, 4, 2, BallData(1.0, 0.3), 0.6, 24);
    const MonotonicityReport q = Q_profile(sub, grid);
    const MonotonicityReport qp = Qpartial_profile(sub, grid);
    CHECK(q.min_forward_difference >= -1e-6);
    CHECK(qp.min_forward_difference >= -1e-6);
  }
  {
    const SampledSubmanifold sub = catenoid_patch(1.0, 0.3, 48);
    const MonotonicityReport q = Q_profile(sub, grid);
    CHECK(q.min_forward_difference >= -1e-6);
    // The surface passes through an interior point away from the centre,
    // so the far-end density exceeds one.
    CHECK(q.values.back() > 1.0);
  }
  {
    const SampledSubmanifold sub = chord_submanifold(1, 3, BallData(0.8, 0.3),
                                                     kPi / 2);
    std::vector<double> grid_c;
    for (int i = 0; i < 16; ++i) grid_c.push_back(0.08 + 0.68 * i / 15.0);
    const MonotonicityReport q = Q_profile(sub, grid_c);
    const MonotonicityReport qp = Qpartial_profile(sub, grid_c);
    CHECK(q.min_forward_difference >= -1e-6);
    CHECK(qp.min_forward_difference >= -1e-6);
  }
}
