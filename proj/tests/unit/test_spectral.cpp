#include <doctest.h>

#include <cmath>

#include "ghbf/errors.hpp"
#include "ghbf/spectral_ops.hpp"
#include "ghbf/manufactured.hpp"
#include "helpers.hpp"

using namespace ghbf;
using ghbf::test::rel_l2;

TEST_SUITE("spectral_core") {

TEST_CASE("grid descriptor") {
  auto g = Grid::create(64);
  CHECK(g->n() == 64);
  CHECK(g->size() == 64u * 64u * 64u);
  CHECK(g->dx() == doctest::Approx(2 * test::pi / 64));
  CHECK(g->dealias_cutoff() == 21);
  CHECK(Grid::create(32)->dealias_cutoff() == 10);
  CHECK(g->derivative_wavenumber(32) == 0.0);
  CHECK(g->derivative_wavenumber(5) == doctest::Approx(5.0));
  CHECK(g->derivative_wavenumber(60) == doctest::Approx(-4.0));

  // dealias mask keeps exactly |k_i| <= fraction * n / 2 on every axis
  std::size_t kept = 0;
  for (int iz = 0; iz < 64; ++iz)
    for (int iy = 0; iy < 64; ++iy)
      for (int ix = 0; ix < g->nkx(); ++ix) {
        const bool want = std::abs(g->mode(ix)) <= 21 && std::abs(g->mode(iy)) <= 21 && std::abs(g->mode(iz)) <= 21;
        CHECK_EQ(g->retained(ix, iy, iz), want);
        kept += want;
      }
  CHECK(kept == 22u * 43u * 43u);

  CHECK_THROWS_AS(Grid::create(12), ConfigError);
  CHECK_THROWS_AS(Grid::create(4), ConfigError);
  CHECK_THROWS_AS(Grid::create(16, -1.0), ConfigError);
  CHECK_THROWS_AS(Grid::create(16, 2 * test::pi, 0.0), ConfigError);
}

TEST_CASE("non-default box length scales wavenumbers") {
  auto g = Grid::create(16, 4 * test::pi);
  auto f = ScalarField::from_function(g, [](double x, double, double) { return std::sin(0.5 * x); });
  auto want = ScalarField::from_function(g, [](double x, double, double) { return 0.5 * std::cos(0.5 * x); });
  CHECK(rel_l2(derivative(f, 0), want) < 1e-13);
}

TEST_CASE("gradient examples") {
  auto g = Grid::create(16);
  CHECK(max_abs(gradient(ScalarField(g, 3.5))) < 1e-14);
  auto sx = ScalarField::from_function(g, [](double x, double, double) { return std::sin(x); });
  auto want = VectorField::from_function(g, [](double x, double, double) {
    return std::array<double, 3>{std::cos(x), 0, 0};
  });
  CHECK(rel_l2(gradient(sx), want) < 1e-14);
  auto c2y = ScalarField::from_function(g, [](double, double y, double) { return std::cos(2 * y); });
  auto want2 = VectorField::from_function(g, [](double, double y, double) {
    return std::array<double, 3>{0, -2 * std::sin(2 * y), 0};
  });
  CHECK(rel_l2(gradient(c2y), want2) < 1e-14);
}

TEST_CASE("nyquist mode has zero first derivative") {
  auto g = Grid::create(16);
  auto f = ScalarField::from_function(g, [](double x, double, double) { return std::cos(8 * x); });
  CHECK(max_abs(derivative(f, 0)) < 1e-13);
  // second derivatives keep the Nyquist wavenumber
  CHECK(rel_l2(laplacian(f), -64.0 * f) < 1e-13);
}

TEST_CASE("curl examples") {
  auto g = Grid::create(16);
  auto f = test::random_scalar(g, 3, 5);
  CHECK(l2_norm(curl(gradient(f))) / l2_norm(gradient(f)) < 1e-12);
  auto u = abc_flow(g, 1.0, 0.7, 0.4);
  CHECK(rel_l2(curl(u), u) < 1e-14);
  auto v = VectorField::from_function(g, [](double, double, double z) {
    return std::array<double, 3>{std::sin(z), 0, 0};
  });
  auto want = VectorField::from_function(g, [](double, double, double z) {
    return std::array<double, 3>{0, std::cos(z), 0};
  });
  CHECK(rel_l2(curl(v), want) < 1e-14);
}

TEST_CASE("divergence examples") {
  auto g = Grid::create(16);
  auto w = test::random_vector(g, 4, 5, false);
  CHECK(l2_norm(divergence(curl(w))) / l2_norm(curl(w)) < 1e-12);
  auto v = VectorField::from_function(g, [](double x, double, double) {
    return std::array<double, 3>{std::sin(x), 0, 0};
  });
  auto cx = ScalarField::from_function(g, [](double x, double, double) { return std::cos(x); });
  CHECK(rel_l2(divergence(v), cx) < 1e-14);
  CHECK(max_abs(divergence(VectorField(g, {1.0, -2.0, 3.0}))) < 1e-14);
}

TEST_CASE("laplacian examples") {
  auto g = Grid::create(16);
  auto sx = ScalarField::from_function(g, [](double x, double, double) { return std::sin(x); });
  CHECK(rel_l2(laplacian(sx), -1.0 * sx) < 1e-14);
  CHECK(max_abs(laplacian(ScalarField(g, 2.0))) < 1e-14);
  auto s2z = ScalarField::from_function(g, [](double, double, double z) { return std::sin(2 * z); });
  CHECK(rel_l2(laplacian(s2z), -4.0 * s2z) < 1e-14);
  auto u = test::random_vector(g, 5, 4, false);
  auto lu = laplacian(u);
  for (int c = 0; c < 3; ++c) CHECK(rel_l2(lu[c], laplacian(u[c])) < 1e-15);
}

TEST_CASE("perp_gradient examples") {
  auto g = Grid::create(16);
  auto fz = ScalarField::from_function(g, [](double, double, double z) { return std::cos(3 * z); });
  CHECK(max_abs(perp_gradient(fz)) < 1e-13);
  auto sy = ScalarField::from_function(g, [](double, double y, double) { return std::sin(y); });
  auto want = VectorField::from_function(g, [](double, double y, double) {
    return std::array<double, 3>{std::cos(y), 0, 0};
  });
  CHECK(rel_l2(perp_gradient(sy), want) < 1e-14);
  auto sxy = ScalarField::from_function(g, [](double x, double y, double) { return std::sin(x) * std::sin(y); });
  CHECK(max_abs(ghbf::dot(perp_gradient(sxy), gradient(sxy))) < 1e-14);
}

TEST_CASE("cross and dot examples") {
  auto g = Grid::create(16);
  auto a = test::random_vector(g, 6, 4, false);
  CHECK(max_abs(cross(a, a)) < 1e-14);
  auto z = cross(VectorField(g, {1, 0, 0}), VectorField(g, {0, 1, 0}));
  CHECK(rel_l2(z, VectorField(g, {0, 0, 1})) < 1e-15);
  const double c = 1.7;
  auto th = ScalarField::from_function(g, [](double, double, double z) { return std::sin(z); });
  auto want = ScalarField::from_function(g, [&](double, double, double z) { return c * std::cos(z); });
  CHECK(rel_l2(ghbf::dot(VectorField(g, {0, 0, c}), gradient(th)), want) < 1e-14);
}

TEST_CASE("strain examples") {
  auto g = Grid::create(16);
  auto s0 = strain(VectorField(g, {1, 2, 3}));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(max_abs(s0(i, j)) < 1e-14);
  auto u = VectorField::from_function(g, [](double, double, double z) {
    return std::array<double, 3>{std::sin(z), 0, 0};
  });
  auto s = strain(u);
  auto half_cos = ScalarField::from_function(g, [](double, double, double z) { return 0.5 * std::cos(z); });
  CHECK(rel_l2(s(0, 2), half_cos) < 1e-14);
  CHECK(rel_l2(s(2, 0), half_cos) < 1e-14);
  CHECK(max_abs(s.xx) + max_abs(s.yy) + max_abs(s.zz) + max_abs(s.xy) + max_abs(s.yz) < 1e-14);
  auto r = test::random_vector(g, 8, 5, false);
  CHECK(rel_l2(strain(r).trace(), divergence(r)) < 1e-14);
}

TEST_CASE("random band-limited fields") {
  auto g = Grid::create(32);
  BandLimitedSpec spec{11, 6.0, 2.0, 0.0};
  auto a = random_bandlimited(g, spec);
  auto b = random_bandlimited(g, spec);
  CHECK(test::bit_equal(a, b));
  CHECK(std::sqrt(mean(multiply(a, a))) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_FALSE(test::bit_equal(a, random_bandlimited(g, {12, 6.0, 2.0, 0.0})));

  auto u = random_bandlimited_vector(g, spec, true);
  CHECK(max_abs(divergence(u)) / max_abs(u) < 1e-12);
  CHECK(test::bit_equal(u, random_bandlimited_vector(g, spec, true)));

  CHECK(max_abs(random_bandlimited(g, {11, 0.0, 1.0, 0.0})) == 0.0);
  CHECK(max_abs(random_bandlimited_vector(g, {11, 0.0, 1.0, 0.0}, true)) == 0.0);

  // no modes beyond kmax
  const Spectrum s = forward(a);
  double beyond = 0.0;
  for (int iz = 0; iz < 32; ++iz)
    for (int iy = 0; iy < 32; ++iy)
      for (int ix = 0; ix < g->nkx(); ++ix) {
        const int kx = ix, ky = g->mode(iy), kz = g->mode(iz);
        if (kx * kx + ky * ky + kz * kz > 36) beyond = std::max(beyond, std::abs(s[g->spectral_index(ix, iy, iz)]));
      }
  CHECK(beyond < 1e-15);
}

TEST_CASE("random fields are the same function on every grid") {
  BandLimitedSpec spec{5, 3.0, 1.0, 0.0};
  auto coarse = random_bandlimited(Grid::create(16), spec);
  auto fine = random_bandlimited(Grid::create(32), spec);
  for (int iz = 0; iz < 16; ++iz)
    for (int iy = 0; iy < 16; ++iy)
      for (int ix = 0; ix < 16; ++ix) CHECK(coarse.at(ix, iy, iz) == doctest::Approx(fine.at(2 * ix, 2 * iy, 2 * iz)));
}

TEST_CASE("calculus identities on random fields") {
  auto g = Grid::create(32);
  auto f = test::random_scalar(g, 21, 10);
  auto v = test::random_vector(g, 22, 10, false);
  CHECK(l2_norm(curl(gradient(f))) / l2_norm(gradient(f)) <= 1e-12);
  CHECK(l2_norm(divergence(curl(v))) / l2_norm(curl(v)) <= 1e-12);
  CHECK(max_abs(ghbf::dot(perp_gradient(f), gradient(f))) / std::pow(max_abs(gradient(f)), 2) <= 1e-12);
}

TEST_CASE("operators are linear") {
  auto g = Grid::create(16);
  auto f = test::random_scalar(g, 31, 6), h = test::random_scalar(g, 32, 6);
  auto v = test::random_vector(g, 33, 6, false), w = test::random_vector(g, 34, 6, false);
  const double a = 1.3, b = -0.6;
  CHECK(rel_l2(gradient(a * f + b * h), a * gradient(f) + b * gradient(h)) < 1e-14);
  CHECK(rel_l2(curl(a * v + b * w), a * curl(v) + b * curl(w)) < 1e-14);
  CHECK(rel_l2(divergence(a * v + b * w), a * divergence(v) + b * divergence(w)) < 1e-14);
  CHECK(rel_l2(laplacian(a * f + b * h), a * laplacian(f) + b * laplacian(h)) < 1e-14);
}

TEST_CASE("dealiased products are exact for resolved factors") {
  auto g = Grid::create(32);
  // each |k_i| <= 5 = fraction * n / 4, so the product stays within the mask
  auto a = test::random_scalar(g, 41, 5), b = test::random_scalar(g, 42, 5);
  CHECK(rel_l2(multiply(a, b), pointwise::mul(a, b)) < 1e-12);
  auto u = test::random_vector(g, 43, 5, false), v = test::random_vector(g, 44, 5, false);
  CHECK(rel_l2(ghbf::cross(u, v), pointwise::cross(u, v)) < 1e-12);
  CHECK(rel_l2(ghbf::dot(u, v), pointwise::dot(u, v)) < 1e-12);

  // an unresolved product is truncated
  auto hi = ScalarField::from_function(g, [](double x, double, double) { return std::cos(8 * x); });
  CHECK(max_abs(multiply(hi, hi) - ScalarField(g, 0.5)) < 1e-14);
}

TEST_CASE("parseval and real round trip") {
  auto g = Grid::create(32);
  auto f = test::random_scalar(g, 51, 9);
  const Spectrum s = forward(f);
  CHECK(spectral_l2_norm(*g, s) == doctest::Approx(l2_norm(f)).epsilon(1e-12));
  auto back = inverse(g, s);
  CHECK(rel_l2(back, f) < 1e-14);
}

TEST_CASE("grid mismatch is a configuration error") {
  auto a = ScalarField(Grid::create(16), 1.0);
  auto b = ScalarField(Grid::create(32), 1.0);
  CHECK_THROWS_AS(a + b, ConfigError);
  CHECK_THROWS_AS(multiply(a, b), ConfigError);
  CHECK_THROWS_AS(VectorField(a, a, b), ConfigError);
}

TEST_CASE("positivity guard") {
  auto g = Grid::create(16);
  auto rho = ScalarField::from_function(g, [](double x, double, double) { return 2 + std::sin(x); });
  CHECK(rel_l2(pointwise::mul(reciprocal(rho), rho), ScalarField(g, 1.0)) < 1e-15);
  CHECK(max_abs(log_field(ScalarField(g, 1.0))) == 0.0);
  auto bad = ScalarField::from_function(g, [](double x, double, double) { return std::sin(x); });
  CHECK_THROWS_AS(reciprocal(bad), DomainError);
  CHECK_THROWS_AS(log_field(bad), DomainError);
}

TEST_CASE("leray projection") {
  auto g = Grid::create(16);
  auto v = test::random_vector(g, 61, 5, false);
  ScalarField phi;
  auto p = leray_project(v, &phi);
  CHECK(l2_norm(divergence(p)) / l2_norm(v) < 1e-13);
  CHECK(rel_l2(p + gradient(phi), v) < 1e-13);
  auto sol = test::random_vector(g, 62, 5, true);
  CHECK(rel_l2(leray_project(sol), sol) < 1e-14);
}

}
