#include "ghbf/markers.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <cstdio>
#include <numbers>

#include "ghbf/errors.hpp"
#include "ghbf/pv_diagnostics.hpp"
#include "ghbf/spectral_ops.hpp"

namespace ghbf {
namespace {

constexpr double kPrune = 1e-15;

Point add(const Point& a, const Point& b, double s = 1.0) { return {a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]}; }
Point sub(const Point& a, const Point& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Point cross3(const Point& a, const Point& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double dot3(const Point& a, const Point& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

std::vector<Point> shifted(const std::vector<Point>& x, const std::vector<Point>& k, double h) {
  std::vector<Point> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = add(x[i], k[i], h);
  return out;
}

std::vector<ScalarField> components(std::initializer_list<const VectorField*> vs, std::vector<ScalarField> head) {
  for (const VectorField* v : vs)
    for (int c = 0; c < 3; ++c) head.push_back((*v)[c]);
  return head;
}

}  // namespace

MarkerSurface MarkerSurface::plane(const Point& center, double size, int axis, int m) {
  if (m < 8) throw PreconditionError("marker surface needs m >= 8");
  if (axis < 0 || axis > 2) throw PreconditionError("plane axis must be 0, 1 or 2");
  Point e1{0, 0, 0}, e2{0, 0, 0};
  e1[static_cast<std::size_t>((axis + 1) % 3)] = 1.0;
  e2[static_cast<std::size_t>((axis + 2) % 3)] = 1.0;
  MarkerSurface s;
  s.m = m;
  s.points.reserve(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      double a = size * (static_cast<double>(i) / (m - 1) - 0.5);
      double b = size * (static_cast<double>(j) / (m - 1) - 0.5);
      s.points.push_back(add(add(center, e1, a), e2, b));
    }
  return s;
}

MarkerSurface MarkerSurface::sphere(const Point& center, double radius, int m) {
  if (m < 8) throw PreconditionError("marker surface needs m >= 8");
  MarkerSurface s;
  s.m = m;
  s.closed = true;
  for (int i = 0; i < m; ++i) {
    const double th = std::numbers::pi * i / (m - 1);
    for (int j = 0; j < m; ++j) {
      const double ph = 2.0 * std::numbers::pi * j / m;
      // exact poles keep the surface closed
      const double st = (i == 0 || i == m - 1) ? 0.0 : std::sin(th);
      const double ct = i == 0 ? 1.0 : (i == m - 1 ? -1.0 : std::cos(th));
      s.points.push_back({center[0] + radius * st * std::cos(ph), center[1] + radius * st * std::sin(ph),
                          center[2] + radius * ct});
    }
  }
  return s;
}

std::size_t MarkerSurface::quad_count() const {
  const std::size_t mm = static_cast<std::size_t>(m);
  return closed ? (mm - 1) * mm : (mm - 1) * (mm - 1);
}

std::array<std::size_t, 4> MarkerSurface::quad(std::size_t k) const {
  const std::size_t mm = static_cast<std::size_t>(m);
  const std::size_t cols = closed ? mm : mm - 1;
  const std::size_t i = k / cols, j = k % cols;
  const std::size_t j1 = closed ? (j + 1) % mm : j + 1;
  return {i * mm + j, (i + 1) * mm + j, (i + 1) * mm + j1, i * mm + j1};
}

std::vector<Point> MarkerSurface::centroids() const {
  std::vector<Point> out(quad_count());
  for (std::size_t k = 0; k < out.size(); ++k) {
    auto q = quad(k);
    Point c{0, 0, 0};
    for (auto idx : q) c = add(c, points[idx], 0.25);
    out[k] = c;
  }
  return out;
}

std::vector<Point> MarkerSurface::vector_areas() const {
  std::vector<Point> out(quad_count());
  for (std::size_t k = 0; k < out.size(); ++k) {
    auto q = quad(k);
    Point a = cross3(sub(points[q[2]], points[q[0]]), sub(points[q[3]], points[q[1]]));
    out[k] = {0.5 * a[0], 0.5 * a[1], 0.5 * a[2]};
  }
  return out;
}

double surface_flux(const MarkerSurface& surface, const std::vector<Point>& values) {
  const auto areas = surface.vector_areas();
  if (values.size() != areas.size()) throw PreconditionError("surface_flux: one value per quad required");
  double total = 0.0;
  for (std::size_t k = 0; k < areas.size(); ++k) total += dot3(values[k], areas[k]);
  return total;
}

double surface_flux(const MarkerSurface& surface, const VectorField& field) {
  SpectralInterpolator interp({field[0], field[1], field[2]}, kPrune);
  const auto raw = interp.evaluate(surface.centroids());
  std::vector<Point> values(raw.size() / 3);
  for (std::size_t k = 0; k < values.size(); ++k) values[k] = {raw[3 * k], raw[3 * k + 1], raw[3 * k + 2]};
  return surface_flux(surface, values);
}

PseudoVelocitySampler::PseudoVelocitySampler(const MaskedVelocity& v)
    : interp_({v.carrier[0], v.carrier[1], v.carrier[2], v.excess[0], v.excess[1], v.excess[2], v.density}, kPrune),
      threshold_(v.epsilon * max_abs(v.density)) {}

std::vector<Point> PseudoVelocitySampler::operator()(const std::vector<Point>& points, double t) const {
  const auto raw = interp_.evaluate(points);
  std::vector<Point> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double* r = raw.data() + 7 * i;
    const double q = r[6];
    if (!(std::abs(q) >= threshold_) || threshold_ <= 0.0)
      throw SurfaceInvalidatedError("marker " + std::to_string(i) + " entered the masked region (|q| = " +
                                        std::to_string(std::abs(q)) + ") at t = " + std::to_string(t),
                                    i, t);
    out[i] = {r[0] + r[3] / q, r[1] + r[4] / q, r[2] + r[5] / q};
  }
  return out;
}

MarkerSurface advect_markers(const MarkerSurface& surface, const MaskedVelocity& velocity, double dt) {
  if (!(dt > 0.0)) throw PreconditionError("advect_markers: dt must be > 0");
  const PseudoVelocitySampler u(velocity);
  const double t = surface.time;
  const auto& x = surface.points;
  const auto k1 = u(x, t);
  const auto k2 = u(shifted(x, k1, 0.5 * dt), t);
  const auto k3 = u(shifted(x, k2, 0.5 * dt), t);
  const auto k4 = u(shifted(x, k3, dt), t);
  MarkerSurface out = surface;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (int c = 0; c < 3; ++c)
      out.points[i][c] = x[i][c] + dt / 6.0 * (k1[i][c] + 2.0 * k2[i][c] + 2.0 * k3[i][c] + k4[i][c]);
  out.time = t + dt;
  return out;
}

StretchFoldSampler::StretchFoldSampler(const MaskedVelocity& v, const ScalarField& s)
    : interp_([&] {
        const ScalarField& q = v.density;
        const VectorField grad_q = gradient(q);
        const VectorField grad_s = gradient(s);
        const ScalarField f = dot(v.excess, grad_q);
        const VectorField grad_f = gradient(f);
        // q div U_q = P - f / q with P = div V + q div u
        const VectorField grad_p = gradient(divergence(v.excess) + multiply(q, divergence(v.carrier)));
        return components({&grad_q, &grad_s, &grad_f, &grad_p}, {q, f});
      }(), kPrune),
      qmax_(max_abs(v.density)) {}

StretchFoldSampler::Values StretchFoldSampler::operator()(const std::vector<Point>& points) const {
  const auto raw = interp_.evaluate(points);
  const std::size_t nf = 14;
  Values v;
  v.b.resize(points.size());
  v.d_q.resize(points.size());
  v.q.resize(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double* r = raw.data() + nf * i;
    const double q = r[0], f = r[1];
    const Point gq{r[2], r[3], r[4]}, gs{r[5], r[6], r[7]}, gf{r[8], r[9], r[10]}, gd{r[11], r[12], r[13]};
    v.q[i] = q;
    v.b[i] = cross3(gq, gs);
    const double h = f / q;
    Point gg;
    for (int c = 0; c < 3; ++c) gg[c] = gd[c] - (gf[c] - h * gq[c]) / q;
    Point d = cross3(gg, gs);
    v.d_q[i] = {-d[0], -d[1], -d[2]};
  }
  return v;
}

MarkerSurface seed_surface(const ScalarField& q, const VectorField& b, const SurfaceSeedOptions& o,
                           SurfaceSeedOptions* chosen) {
  const double qmax = max_abs(q);
  if (!(qmax > 0.0)) throw WholeFieldMaskedError("q vanishes everywhere; no surface can be seeded");
  const double floor = o.margin * qmax;
  SpectralInterpolator interp({q, b[0], b[1], b[2]}, kPrune);

  // Returns the index of the first inadmissible point, or -1; fills the B flux.
  auto check = [&](const MarkerSurface& s, double& flux) -> long {
    auto pts = s.points;
    const auto cents = s.centroids();
    pts.insert(pts.end(), cents.begin(), cents.end());
    const auto raw = interp.evaluate(pts);
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (!(std::abs(raw[4 * i]) >= floor)) return static_cast<long>(std::min(i, s.points.size() - 1));
    std::vector<Point> bv(cents.size());
    const std::size_t off = s.points.size();
    for (std::size_t k = 0; k < cents.size(); ++k)
      bv[k] = {raw[4 * (off + k) + 1], raw[4 * (off + k) + 2], raw[4 * (off + k) + 3]};
    flux = surface_flux(s, bv);
    return -1;
  };
  auto make = [&](const Point& c, int axis) {
    return o.kind == "sphere" ? MarkerSurface::sphere(c, o.size, o.m) : MarkerSurface::plane(c, o.size, axis, o.m);
  };
  std::vector<int> axes;
  if (o.kind == "sphere" || o.axis >= 0) axes = {o.kind == "sphere" ? 2 : o.axis};
  else axes = {0, 1, 2};

  // Best admissible axis at a centre; first bad marker otherwise.
  auto try_center = [&](const Point& c, int& axis_out, long& bad) -> bool {
    double best = -1.0;
    bad = -1;
    for (int a : axes) {
      double flux = 0.0;
      long r = check(make(c, a), flux);
      if (r >= 0) {
        if (bad < 0) bad = r;
        continue;
      }
      if (std::abs(flux) > best) {
        best = std::abs(flux);
        axis_out = a;
      }
    }
    return best >= 0.0;
  };

  SurfaceSeedOptions result = o;
  if (!o.auto_center) {
    int axis = 0;
    long bad = -1;
    if (!try_center(o.center, axis, bad))
      throw SurfaceInvalidatedError("seed marker " + std::to_string(bad) + " lies where |q| < " +
                                        std::to_string(o.margin) + " max|q|",
                                    static_cast<std::size_t>(bad), 0.0);
    result.axis = axis;
    if (chosen) *chosen = result;
    return make(o.center, axis);
  }
  std::mt19937_64 rng(o.rng_seed);
  std::uniform_real_distribution<double> pos(0.0, q.grid().box_length());
  for (int attempt = 0; attempt < o.max_attempts; ++attempt) {
    const Point c{pos(rng), pos(rng), pos(rng)};
    int axis = 0;
    long bad = -1;
    if (!try_center(c, axis, bad)) continue;
    result.auto_center = false;
    result.center = c;
    result.axis = axis;
    if (chosen) *chosen = result;
    return make(c, axis);
  }
  throw SurfaceInvalidatedError("no admissible surface placement after " + std::to_string(o.max_attempts) +
                                    " attempts",
                                0, 0.0);
}

SurfaceFluxReport surface_flux_check(const IncompressibleState& initial, const BoussinesqParams& params,
                                     const TendencyFn& tendency, double dt, int steps, double epsilon_rel,
                                     const SurfaceSeedOptions& seed,
                                     const std::function<void(const SurfaceFluxRow&)>& on_row) {
  if (steps < 2) throw PreconditionError("surface_flux_check: need at least 2 steps");
  if (!(dt > 0.0)) throw PreconditionError("surface_flux_check: dt must be > 0");
  SurfaceFluxReport report;
  report.dt = dt;

  auto velocity_of = [&](const IncompressibleState& s) {
    return pseudo_velocity_incompressible(s, params, epsilon_rel);
  };
  // Fluxes of B and D_q through the surface for a given state.
  auto fluxes = [&](const IncompressibleState& s, const MarkerSurface& surf, double t) {
    const MaskedVelocity v = velocity_of(s);
    const StretchFoldSampler sample(v, s.theta);
    const auto vals = sample(surf.centroids());
    const double floor = epsilon_rel * sample.max_abs_q();
    for (std::size_t k = 0; k < vals.q.size(); ++k)
      if (!(std::abs(vals.q[k]) >= floor))
        throw SurfaceInvalidatedError("quad " + std::to_string(k) + " entered the masked region at t = " +
                                          std::to_string(t),
                                      surf.quad(k)[0], t);
    return std::pair<double, double>{surface_flux(surf, vals.b), surface_flux(surf, vals.d_q)};
  };

  IncompressibleState state = initial;
  {
    const MaskedVelocity v0 = velocity_of(state);
    report.final_surface = seed_surface(v0.density, b_field(v0.density, state.theta), seed, &report.seed);
  }
  MarkerSurface& surf = report.final_surface;

  std::vector<double> phi_b, phi_d, times;
  auto record = [&](double t) {
    auto [b, d] = fluxes(state, surf, t);
    phi_b.push_back(b);
    phi_d.push_back(d);
    times.push_back(t);
  };
  record(0.0);
  report.b_flux_initial = phi_b[0];

  double err2 = 0.0, ref2 = 0.0;
  auto emit = [&](std::size_t k) {
    SurfaceFluxRow row;
    row.t = times[k];
    row.b_flux = phi_b[k];
    row.dq_flux = phi_d[k];
    row.dbflux_dt = (phi_b[k + 1] - phi_b[k - 1]) / (times[k + 1] - times[k - 1]);
    err2 += (row.dbflux_dt - row.dq_flux) * (row.dbflux_dt - row.dq_flux);
    ref2 += row.dq_flux * row.dq_flux;
    row.rel_mismatch = ref2 > 0.0 ? std::sqrt(err2 / ref2) : std::sqrt(err2);
    report.rows.push_back(row);
    report.final_mismatch = row.rel_mismatch;
    report.max_abs_dq_flux = std::max(report.max_abs_dq_flux, std::abs(row.dq_flux));
    if (on_row) on_row(row);
  };

  for (int step = 1; step <= steps; ++step) {
    const double t = surf.time;
    // RK4 on (state, markers); markers see U_q of each stage state.
    auto stage = [&](const IncompressibleState& s, const std::vector<Point>& x, double ts) {
      return std::pair<Tendency, std::vector<Point>>{tendency(s, ts), PseudoVelocitySampler(velocity_of(s))(x, ts)};
    };
    auto shift = [](const IncompressibleState& s, const Tendency& k, double h) {
      IncompressibleState o = s;
      o.u.add_scaled(h, k.du_dt);
      o.theta.add_scaled(h, k.dtheta_dt);
      return o;
    };
    const auto& x = surf.points;
    auto [k1, v1] = stage(state, x, t);
    auto [k2, v2] = stage(shift(state, k1, 0.5 * dt), shifted(x, v1, 0.5 * dt), t + 0.5 * dt);
    auto [k3, v3] = stage(shift(state, k2, 0.5 * dt), shifted(x, v2, 0.5 * dt), t + 0.5 * dt);
    auto [k4, v4] = stage(shift(state, k3, dt), shifted(x, v3, dt), t + dt);

    VectorField du = k1.du_dt;
    du.add_scaled(2.0, k2.du_dt);
    du.add_scaled(2.0, k3.du_dt);
    du += k4.du_dt;
    ScalarField dth = k1.dtheta_dt;
    dth.add_scaled(2.0, k2.dtheta_dt);
    dth.add_scaled(2.0, k3.dtheta_dt);
    dth += k4.dtheta_dt;
    state.u.add_scaled(dt / 6.0, leray_project(du));
    state.theta.add_scaled(dt / 6.0, dth);
    if (!all_finite(state.u) || !all_finite(state.theta)) throw BlowUpError("non-finite state", t + dt);
    for (std::size_t i = 0; i < x.size(); ++i)
      for (int c = 0; c < 3; ++c)
        surf.points[i][c] += dt / 6.0 * (v1[i][c] + 2.0 * v2[i][c] + 2.0 * v3[i][c] + v4[i][c]);
    surf.time = step * dt;

    record(surf.time);
    const double change = phi_b[0] != 0.0 ? std::abs(phi_b.back() - phi_b[0]) / std::abs(phi_b[0]) : 0.0;
    report.max_b_flux_change = std::max(report.max_b_flux_change, change);
    if (step >= 2) emit(static_cast<std::size_t>(step - 1));
  }
  return report;
}

SurfaceSeedOptions seed_options(const RunConfig& c) {
  SurfaceSeedOptions o;
  o.kind = c.surface_seed;
  o.m = c.surface_m;
  o.size = c.surface_size;
  o.axis = c.surface_axis;
  o.margin = c.surface_seed_margin;
  o.rng_seed = c.surface_rng_seed;
  if (c.surface_center != "auto") {
    o.auto_center = false;
    std::array<double, 3> v{};
    int got = std::sscanf(c.surface_center.c_str(), "%lf , %lf , %lf", &v[0], &v[1], &v[2]);
    if (got != 3) throw ConfigError("config key 'surface_center': expected auto or x,y,z");
    o.center = v;
  }
  return o;
}

SurfaceFluxReport surface_flux_check(const RunConfig& config,
                                     const std::function<void(const SurfaceFluxRow&)>& on_row) {
  config.validate();
  BoussinesqParams params = config.boussinesq;
  if (config.model == "euler") params.reynolds = std::numeric_limits<double>::infinity();
  const IncompressibleState s = initial_state(config);
  double dt = run_schedule(config, s).first;
  return surface_flux_check(s, params, model_tendency(config.model, params), dt, config.surface_steps,
                            config.epsilon_rel, seed_options(config), on_row);
}

}  // namespace ghbf
