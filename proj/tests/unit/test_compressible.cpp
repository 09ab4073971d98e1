#include <doctest.h>

#include <cmath>

#include "ghbf/compressible_diag.hpp"
#include "ghbf/errors.hpp"
#include "ghbf/manufactured.hpp"
#include "ghbf/pv_diagnostics.hpp"
#include "ghbf/spectral_ops.hpp"
#include "helpers.hpp"

using namespace ghbf;
using ghbf::test::rel_l2;

namespace {

constexpr ProjectionKind kDensity = ProjectionKind::density;
constexpr ProjectionKind kLog = ProjectionKind::log_density;

CompressibleState stock(const GridPtr& g) { return make_compressible_state(g, CompressibleSpec{}); }

// mu = 0 and a solenoidal ABC velocity: the ideal advective limit.
CompressibleState solenoidal(const GridPtr& g) {
  CompressibleSpec spec;
  spec.compressive_amplitude = 0.0;
  return make_compressible_state(g, spec);
}

CompressibleParams inviscid() {
  CompressibleParams p = stock_compressible_params();
  p.mu = 0.0;
  p.mu_v = 0.0;
  return p;
}

}  // namespace

TEST_SUITE("compressible_diag") {

TEST_CASE("catalog parsing") {
  CHECK(parse_projection_kind("density") == kDensity);
  CHECK(parse_projection_kind("log_density") == kLog);
  CHECK(projection_kind_name(kLog) == "log_density");
  CHECK_THROWS_AS(parse_projection_kind("entropy"), ConfigError);
  CHECK(GaugeSpec::parse("sin_x", "square").name() == GaugeSpec{GaugeSpec::Phi::sin_x, GaugeSpec::Psi::square}.name());
  CHECK_THROWS_AS(GaugeSpec::parse("tan", "identity"), ConfigError);
  CHECK_THROWS_AS(GaugeSpec::parse("zero", "cube"), ConfigError);
  CHECK(GaugeSpec::catalog().size() >= 3);
  CHECK(FamilySpec::catalog().size() == 4);
  CHECK_THROWS_AS(FamilySpec::parse("cosh"), ConfigError);
}

TEST_CASE("family derivatives match finite differences") {
  for (const auto& f : FamilySpec::catalog()) {
    for (double rho = 0.5; rho <= 3.0; rho += 0.25) {
      const double h = 1e-5;
      const double d1 = (f.phi(rho + h) - f.phi(rho - h)) / (2 * h);
      const double d2 = (f.dphi(rho + h) - f.dphi(rho - h)) / (2 * h);
      CHECK_MESSAGE(std::abs(d1 - f.dphi(rho)) <= 1e-8 * std::max(1.0, std::abs(f.dphi(rho))), f.name());
      CHECK_MESSAGE(std::abs(d2 - f.d2phi(rho)) <= 1e-8 * std::max(1.0, std::abs(f.d2phi(rho))), f.name());
    }
  }
  // the clipped exponential continues linearly
  FamilySpec e = FamilySpec::parse("exp_clipped");
  CHECK(e.dphi(FamilySpec::clip + 2.0) == doctest::Approx(e.dphi(FamilySpec::clip)));
}

TEST_CASE("projection examples") {
  auto g = Grid::create(16);
  auto omega = test::random_vector(g, 1, 4, true);
  CHECK(max_abs(projection_q(omega, ScalarField(g, 2.0), kDensity)) == 0.0);
  CHECK(max_abs(projection_q(omega, ScalarField(g, 2.0), kLog)) == 0.0);

  // the log-kind oracle is not band-limited; n = 64 resolves it to round-off
  auto g64 = Grid::create(64);
  const double c = 0.8;
  auto rho = ScalarField::from_function(g64, [](double, double, double z) { return 2 + std::sin(z); });
  auto wz = VectorField(g64, {0, 0, c});
  auto d = ScalarField::from_function(g64, [&](double, double, double z) { return c * std::cos(z); });
  auto l = ScalarField::from_function(g64, [&](double, double, double z) { return c * std::cos(z) / (2 + std::sin(z)); });
  CHECK(rel_l2(projection_q(wz, rho, kDensity), d) < 1e-14);
  CHECK(rel_l2(projection_q(wz, rho, kLog), l) < 1e-12);

  auto bad = ScalarField::from_function(g, [](double x, double, double) { return std::sin(x); });
  CHECK_THROWS_AS(projection_q(omega, bad, kLog), DomainError);
}

TEST_CASE("kind consistency") {
  auto g = Grid::create(64);
  auto r = kind_consistency_report(stock(g));
  CHECK(r.at("kind-consistency").l2_rel <= 1e-12);
}

TEST_CASE("current density examples") {
  auto g = Grid::create(16);
  auto s = stock(g);
  auto p = stock_compressible_params();
  CompressibleState rest{VectorField(g), s.rho, s.theta};
  CHECK(max_abs(current_density(rest, p, kDensity, {})) == 0.0);
  CHECK(max_abs(current_density(rest, p, kLog, {})) == 0.0);
  CHECK(rel_l2(current_density(s, p, kDensity, {}),
               pointwise::scale(s.u, projection_q(curl(s.u), s.rho, kDensity)) +
                   current_excess(s, p, kDensity)) < 1e-14);

  // phi = psi(rho): the gauge term has parallel gradients
  auto rho_x = ScalarField::from_function(g, [](double x, double, double) { return 3 + std::sin(x); });
  GaugeSpec sin_identity{GaugeSpec::Phi::sin_x, GaugeSpec::Psi::identity};
  CHECK(max_abs(sin_identity.term(rho_x)) < 1e-14);

  auto term = sin_identity.term(s.rho);
  CHECK(max_abs(divergence(term)) <= 1e-10 * max_abs(gradient(term[2])[2]) + 1e-15);
  CHECK(max_abs(term) > 0.0);
}

TEST_CASE("quasi-conservation residuals") {
  auto g = Grid::create(32);
  auto s = stock(g);
  auto p = stock_compressible_params();
  for (auto kind : {kDensity, kLog}) {
    auto r = quasi_conservation_residuals(s, p, kind, {}, 0.0);
    for (const auto& [name, e] : r.entries()) CHECK_MESSAGE(e.l2_rel <= 1e-6, name);
  }
  auto r1 = quasi_conservation_residuals(s, p, kDensity, {}, 0.0);
  auto r2 = quasi_conservation_residuals(s, p, kDensity, {GaugeSpec::Phi::cos_yz, GaugeSpec::Psi::square}, 0.0);
  CHECK(std::abs(r1.at("q-calc2").l2_rel - r2.at("q-calc2").l2_rel) <= 1e-12);

  // ideal advective limit: J = q u
  auto ideal = solenoidal(g);
  auto pi = inviscid();
  CHECK(rel_l2(current_density(ideal, pi, kDensity, {}),
               pointwise::scale(ideal.u, projection_q(curl(ideal.u), ideal.rho, kDensity))) < 1e-14);
  auto ri = quasi_conservation_residuals(ideal, pi, kDensity, {}, 0.0);
  for (const auto& [name, e] : ri.entries()) CHECK_MESSAGE(e.l2_rel <= 1e-10, name);
}

TEST_CASE("impermeability") {
  auto g = Grid::create(32);
  auto s = stock(g);
  auto p = stock_compressible_params();
  for (auto kind : {kDensity, kLog}) {
    auto r = impermeability_check(s, p, kind, {GaugeSpec::Phi::sin_x, GaugeSpec::Psi::log});
    CHECK(r.at("impermeability").l2_rel <= 1e-8);
    CHECK(r.at("impermeability-gauge").l2_rel <= 1e-10);
  }
  // gauge-only current: (grad phi x grad psi(rho)) . grad rho = 0
  GaugeSpec gauge{GaugeSpec::Phi::cos_yz, GaugeSpec::Psi::square};
  auto t = gauge.term(s.rho);
  CHECK(max_abs(pointwise::dot(t, gradient(s.rho))) <= 1e-12 * max_abs(t) * max_abs(gradient(s.rho)));

  // where q vanishes the relation forces J.grad rho = 0
  auto q = projection_q(curl(s.u), s.rho, kDensity);
  auto jg = pointwise::dot(current_density(s, p, kDensity, {}), gradient(s.rho));
  auto div_rho_u = divergence(scale(s.u, s.rho));
  double worst = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i)
    if (std::abs(q[i]) < 1e-3 * max_abs(q)) worst = std::max(worst, std::abs(jg[i]));
  CHECK(worst <= 1e-3 * max_abs(q) * max_abs(div_rho_u) + 1e-8 * max_abs(jg));
}

TEST_CASE("conserved families") {
  auto g = Grid::create(32);
  auto s = stock(g);
  auto p = stock_compressible_params();
  for (auto kind : {kDensity, kLog})
    for (const auto& f : FamilySpec::catalog()) {
      auto r = conserved_family_residual(s, p, kind, {}, f, 0.0);
      CHECK_MESSAGE(r.at("cons").l2_rel <= 1e-6, f.name());
      CHECK_MESSAGE(r.at("cons-identity").l2_rel <= 1e-6, f.name());
      CHECK_MESSAGE(r.at("cons-integral").l2_rel <= 1e-10, f.name());
    }
  // Phi' = 1 reduces to the plain continuity balance
  auto id = conserved_family_residual(s, p, kDensity, {}, FamilySpec::parse("identity"), 0.0);
  auto qc = quasi_conservation_residuals(s, p, kDensity, {}, 0.0);
  CHECK(id.at("cons").l2_rel == doctest::Approx(qc.at("q1d-continuity").l2_rel).epsilon(1e-6));

  // Phi = rho: div(rho omega) = grad rho . omega since div omega = 0
  auto omega = curl(s.u);
  CHECK(rel_l2(divergence(scale(omega, s.rho)), multiply(gradient(s.rho)[0], omega[0]) +
                                                     multiply(gradient(s.rho)[1], omega[1]) +
                                                     multiply(gradient(s.rho)[2], omega[2])) < 1e-12);
}

TEST_CASE("compressible pseudo-velocity") {
  auto g = Grid::create(32);
  auto s = stock(g);
  auto p = stock_compressible_params();
  GaugeSpec g1{}, g2{GaugeSpec::Phi::sin_x, GaugeSpec::Psi::square};
  auto v1 = pseudo_velocity_compressible(s, p, kDensity, g1, 1e-6);
  auto v2 = pseudo_velocity_compressible(s, p, kDensity, g2, 1e-6);
  CHECK(v1.gauge != v2.gauge);
  CHECK(max_abs(v1.field - v2.field) > 1e-6 * max_abs(v1.field));
  CHECK(rel_l2(divergence(v1.flux), divergence(v2.flux)) <= 1e-10);

  auto r = compressible_b_residual(s, p, kDensity, g1, 1e-6, 0.0);
  CHECK(r.at("q1d2-q").l2_rel <= 1e-6);
  CHECK(r.at("q1d2-rho").l2_rel <= 1e-6);

  auto ideal = solenoidal(g);
  auto vi = pseudo_velocity_compressible(ideal, inviscid(), kDensity, {}, 1e-6);
  CHECK(max_abs(vi.field - zero_outside(ideal.u, vi.mask)) == 0.0);

  CompressibleState flat{s.u, ScalarField(g, 2.0), s.theta};
  CHECK_THROWS_AS(pseudo_velocity_compressible(flat, p, kDensity, {}, 1e-6), WholeFieldMaskedError);
}

TEST_CASE("compressible B transport") {
  auto g = Grid::create(32);
  auto s = stock(g);
  auto p = stock_compressible_params();
  for (auto kind : {kDensity, kLog}) {
    auto r = compressible_b_residual(s, p, kind, {}, 1e-6, 0.0);
    CHECK(r.at("ceeqn1").l2_rel <= 1e-5);
    CHECK(r.at("eeqn2-div").l2_rel <= 1e-10);
  }
  // uniform density: q = 0 everywhere, so nothing is defined
  CompressibleState flat{s.u, ScalarField(g, 2.0), s.theta};
  CHECK_THROWS_AS(compressible_b_residual(flat, p, kDensity, {}, 1e-6, 0.0), WholeFieldMaskedError);
}

TEST_CASE("compressible vorticity equation") {
  auto g = Grid::create(32);
  auto s = stock(g);
  auto p = stock_compressible_params();
  CHECK(compressible_vorticity_residual(s, p).at("Dom").l2_rel <= 1e-6);

  CompressibleState flat{s.u, ScalarField(g, 2.0), s.theta};
  CHECK(compressible_vorticity_residual(flat, p).at("Dom").l2_rel <= 1e-10);
  // constant density: the baroclinic bracket vanishes
  CHECK(max_abs(bernoulli_baroclinic_term(flat)) < 1e-15);

  // random, not ABC: a Beltrami field has u x w = 0 and nothing to compare
  CompressibleState ideal{test::random_vector(g, 5, 3, true, 0.1), ScalarField(g, 2.0), s.theta};
  auto t = compressible_tendency(ideal, inviscid(), 0.0);
  CHECK(compressible_vorticity_residual(ideal, inviscid()).at("Dom").l2_rel <= 1e-10);
  CHECK(rel_l2(vorticity_tendency(t), curl(cross(ideal.u, curl(ideal.u)))) <= 1e-10);
}

TEST_CASE("gauge invariance") {
  // ln rho and 1/rho enter the log kind; their aliasing tail reaches 1e-11 at n = 32
  auto g = Grid::create(64);
  auto s = stock(g);
  auto p = stock_compressible_params();
  for (auto kind : {kDensity, kLog}) {
    auto r = gauge_invariance_report(s, p, kind, 1e-6);
    for (const auto& [name, e] : r.entries()) CHECK_MESSAGE(e.l2_rel <= 1e-12, name);
    bool moved = false;
    for (const auto& [k, v] : r.provenance)
      if (k == "gauge_Uq_min_rel_change") moved = std::stod(v) > 1e-6;
    CHECK(moved);
  }
}

TEST_CASE("q balances are temperature-blind") {
  auto g = Grid::create(32);
  auto s = stock(g);
  auto p = stock_compressible_params();
  for (int variant = 0; variant < 3; ++variant) {
    CompressibleState t = s;
    if (variant == 1) t.theta = ScalarField(g, 3.0);
    if (variant == 2) t.theta = ScalarField(g, 1.0) + test::random_scalar(g, 99, 3, 0.2);
    auto qc = quasi_conservation_residuals(t, p, kDensity, {}, 0.0);
    CHECK(qc.at("q-calc2").l2_rel <= 1e-6);
    auto cons = conserved_family_residual(t, p, kDensity, {}, FamilySpec::parse("square_half"), 0.0);
    CHECK(cons.at("cons").l2_rel <= 1e-6);
    CHECK(impermeability_check(t, p, kDensity, {}).at("impermeability").l2_rel <= 1e-8);
  }
}

TEST_CASE("full suite") {
  auto g = Grid::create(32);
  CompressibleSuiteOptions opt;
  opt.gauge = {GaugeSpec::Phi::sin_x, GaugeSpec::Psi::identity};
  auto r = compressible_suite(stock(g), stock_compressible_params(), opt);
  CHECK(r.contains("q-calc2"));
  CHECK(r.contains("Dom"));
  CHECK(r.contains("ceeqn1"));
  CHECK(r.contains("kind-consistency"));
  for (const auto& [name, e] : r.entries()) {
    CHECK_MESSAGE(std::isfinite(e.l2_rel), name);
    CHECK_MESSAGE(e.l2_rel >= 0.0, name);
  }
}

}
