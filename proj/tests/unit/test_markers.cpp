#include <doctest.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "ghbf/errors.hpp"
#include "ghbf/interpolation.hpp"
#include "ghbf/markers.hpp"
#include "ghbf/parallel.hpp"
#include "ghbf/pv_diagnostics.hpp"
#include "ghbf/spectral_ops.hpp"
#include "helpers.hpp"

using namespace ghbf;

namespace {

MaskedVelocity plain_velocity(const VectorField& u) {
  return make_masked_velocity(u, VectorField(u.grid_ptr()), ScalarField(u.grid_ptr(), 1.0), 1e-6);
}

double distance(const Point& a, const Point& b) {
  return std::hypot(a[0] - b[0], a[1] - b[1], a[2] - b[2]);
}

Point cell(const Point& p) {
  return {std::sin(p[0]) * std::cos(p[1]), -std::cos(p[0]) * std::sin(p[1]), 0.3 * std::cos(p[0])};
}

}  // namespace

TEST_SUITE("markers") {

TEST_CASE("spectral interpolation is exact for band-limited fields") {
  auto g = Grid::create(16);
  auto f = ScalarField::from_function(g, [](double x, double y, double z) {
    return std::sin(2 * x - y) + 0.5 * std::cos(3 * z + x) + 0.25;
  });
  SpectralInterpolator interp({f});
  for (const Point& p : {Point{0.1, 2.3, 4.4}, Point{5.9, 0.0, 1.7}, Point{-1.0, 7.5, 3.3}}) {
    double v = 0.0;
    interp.evaluate(p, &v);
    CHECK(v == doctest::Approx(std::sin(2 * p[0] - p[1]) + 0.5 * std::cos(3 * p[2] + p[0]) + 0.25).epsilon(1e-13));
  }
  // at lattice points interpolation returns the samples
  auto r = test::random_scalar(g, 4, 6);
  SpectralInterpolator ri({r});
  auto vals = ri.evaluate({g->position(3, 5, 7), g->position(15, 0, 2)});
  CHECK(vals[0] == doctest::Approx(r.at(3, 5, 7)).epsilon(1e-12));
  CHECK(vals[1] == doctest::Approx(r.at(15, 0, 2)).epsilon(1e-12));
}

TEST_CASE("batched interpolation does not depend on the thread count") {
  auto g = Grid::create(16);
  SpectralInterpolator interp({test::random_scalar(g, 8, 5), test::random_scalar(g, 9, 5)});
  std::vector<Point> pts;
  for (int i = 0; i < 37; ++i) pts.push_back({0.17 * i, 6.0 - 0.11 * i, std::sin(1.0 * i)});
  set_thread_count(1);
  const auto serial = interp.evaluate(pts);
  set_thread_count(5);
  const auto threaded = interp.evaluate(pts);
  set_thread_count(0);
  REQUIRE(serial.size() == threaded.size());
  CHECK(std::memcmp(serial.data(), threaded.data(), serial.size() * sizeof(double)) == 0);
}

TEST_CASE("surface construction") {
  auto s = MarkerSurface::plane({1, 2, 3}, 0.5, 2, 9);
  CHECK(s.points.size() == 81u);
  CHECK(s.quad_count() == 64u);
  double area = 0.0;
  for (const auto& a : s.vector_areas()) area += a[2];
  CHECK(std::abs(area) == doctest::Approx(0.25).epsilon(1e-14));
  auto sp = MarkerSurface::sphere({3, 3, 3}, 1.0, 16);
  CHECK(sp.closed);
  CHECK(sp.quad_count() == 15u * 16u);
}

TEST_CASE("flux examples") {
  auto g = Grid::create(16);
  const double c = 1.3;
  auto plane = MarkerSurface::plane({3, 3, 3}, 0.5, 2, 8);
  double sign = 0.0;
  for (const auto& a : plane.vector_areas()) sign += a[2];
  CHECK(surface_flux(plane, VectorField(g, {0, 0, c})) == doctest::Approx(c * sign).epsilon(1e-13));
  CHECK(std::abs(sign) == doctest::Approx(0.25));

  // solenoidal field through a closed surface
  auto w = test::random_vector(g, 5, 3, false);
  auto b = curl(w);
  auto sphere = MarkerSurface::sphere({3.1, 2.9, 3.2}, 1.0, 48);
  CHECK(std::abs(surface_flux(sphere, b)) <= 1e-2 * max_abs(b));
  // a uniform source does pass
  auto radial = VectorField::from_function(g, [](double x, double, double) {
    return std::array<double, 3>{std::sin(x), 0, 0};
  });
  CHECK(std::abs(surface_flux(sphere, radial)) > 0.1);
}

TEST_CASE("midpoint flux converges at second order") {
  auto g = Grid::create(16);
  auto f = VectorField::from_function(g, [](double x, double, double) {
    return std::array<double, 3>{0, 0, std::cos(x)};
  });
  const double x0 = 1.0, size = 1.2;
  auto err = [&](int m) {
    auto s = MarkerSurface::plane({x0 + size / 2, 2.0, 1.0}, size, 2, m);
    double sign = 0.0;
    for (const auto& a : s.vector_areas()) sign += a[2];
    sign = sign > 0 ? 1.0 : -1.0;
    const double exact = sign * size * (std::sin(x0 + size) - std::sin(x0));
    return std::abs(surface_flux(s, f) - exact);
  };
  const double e1 = err(9), e2 = err(17), e3 = err(33);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
  CHECK(e2 / e3 == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("marker advection examples") {
  auto g = Grid::create(16);
  auto surface = MarkerSurface::plane({2, 3, 4}, 0.5, 0, 8);
  auto still = advect_markers(surface, plain_velocity(VectorField(g)), 0.1);
  for (std::size_t i = 0; i < surface.points.size(); ++i) CHECK(distance(still.points[i], surface.points[i]) == 0.0);

  const double c = 0.7, dt = 0.2;
  auto moved = advect_markers(surface, plain_velocity(VectorField(g, {c, 0, 0})), dt);
  for (std::size_t i = 0; i < surface.points.size(); ++i) {
    Point want = surface.points[i];
    want[0] += c * dt;
    CHECK(distance(moved.points[i], want) <= 1e-12);
  }
  CHECK(moved.time == doctest::Approx(surface.time + dt));
}

TEST_CASE("marker trajectories match a reference ODE solve") {
  auto g = Grid::create(16);
  auto u = VectorField::from_function(g, [](double x, double y, double z) { return cell({x, y, z}); });
  auto v = plain_velocity(u);
  auto surface = MarkerSurface::plane({1.1, 2.2, 0.7}, 1.0, 2, 8);
  const double dt = 0.01;
  MarkerSurface s = surface;
  for (int i = 0; i < 10; ++i) s = advect_markers(s, v, dt);

  double worst = 0.0;
  for (std::size_t i = 0; i < surface.points.size(); ++i) {
    Point p = surface.points[i];
    const int sub = 200;
    const double h = 10 * dt / sub;
    for (int k = 0; k < sub; ++k) {
      auto add = [](Point a, const Point& b, double s) {
        for (int j = 0; j < 3; ++j) a[j] += s * b[j];
        return a;
      };
      Point k1 = cell(p), k2 = cell(add(p, k1, h / 2)), k3 = cell(add(p, k2, h / 2)), k4 = cell(add(p, k3, h));
      for (int j = 0; j < 3; ++j) p[j] += h / 6 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
    }
    worst = std::max(worst, distance(p, s.points[i]));
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("masked samples invalidate the surface") {
  auto g = Grid::create(16);
  auto q = ScalarField::from_function(g, [](double x, double, double) { return std::sin(x); });
  auto v = make_masked_velocity(VectorField(g, {1, 0, 0}), VectorField(g), q, 1e-3);
  PseudoVelocitySampler sample(v);
  CHECK_NOTHROW(sample({Point{1.5, 1, 1}}, 0.0));
  try {
    sample({Point{1.5, 1, 1}, Point{0.0, 1, 1}}, 0.25);
    FAIL("expected invalidation");
  } catch (const SurfaceInvalidatedError& e) {
    CHECK(e.marker() == 1u);
    CHECK(e.time() == 0.25);
  }
}

TEST_CASE("surface seeding avoids q zeros") {
  auto g = Grid::create(16);
  auto q = ScalarField::from_function(g, [](double x, double, double) { return std::sin(x); });
  auto th = ScalarField::from_function(g, [](double, double y, double) { return std::sin(y); });
  auto b = b_field(q, th);
  SurfaceSeedOptions opt;
  opt.m = 8;
  opt.size = 0.4;
  SurfaceSeedOptions chosen;
  auto s = seed_surface(q, b, opt, &chosen);
  for (const auto& p : s.points) CHECK(std::abs(std::sin(p[0])) >= 0.1 - 1e-12);
  CHECK(chosen.axis >= 0);
  CHECK(seed_surface(q, b, opt).points == s.points);

  opt.auto_center = false;
  opt.center = {0.0, 3.0, 3.0};
  CHECK_THROWS_AS(seed_surface(q, b, opt), SurfaceInvalidatedError);
}

TEST_CASE("ideal surface window conserves the B flux") {
  RunConfig c = load_config(GHBF_CONFIG_DIR "/surface_ideal.cfg");
  c.n = 16;
  c.surface_m = 12;
  c.surface_steps = 6;
  auto r = surface_flux_check(c);
  REQUIRE(r.rows.size() >= 1u);
  for (const auto& row : r.rows) CHECK(std::abs(row.dq_flux) <= 1e-10);
  CHECK(r.max_b_flux_change <= 1e-4);
}

}
