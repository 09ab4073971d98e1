#pragma once

#include <string>
#include <vector>

#include "ghbf/flow_models.hpp"
#include "ghbf/residual.hpp"
#include "ghbf/stretch_fold.hpp"

namespace ghbf {

enum class ProjectionKind { density, log_density };
ProjectionKind parse_projection_kind(const std::string& name);
std::string projection_kind_name(ProjectionKind k);

// Divergence-free gauge term grad(phi) x grad(psi(rho)) added to the current density.
struct GaugeSpec {
  enum class Phi { zero, sin_x, cos_yz };
  enum class Psi { identity, square, log };
  Phi phi = Phi::zero;
  Psi psi = Psi::identity;

  static GaugeSpec parse(const std::string& phi, const std::string& psi);
  static std::vector<GaugeSpec> catalog();
  std::string name() const;
  bool trivial() const { return phi == Phi::zero; }

  ScalarField phi_field(const GridPtr& grid) const;
  ScalarField psi_of(const ScalarField& rho) const;
  VectorField term(const ScalarField& rho) const;
};

// Phi(rho) with derivatives, for the conserved densities q Phi'(rho).
struct FamilySpec {
  enum class Kind { identity, square_half, log, exp_clipped };
  Kind kind = Kind::identity;
  // exp_clipped continues linearly beyond this argument
  static constexpr double clip = 50.0;

  static FamilySpec parse(const std::string& name);
  static std::vector<FamilySpec> catalog();
  std::string name() const;

  double phi(double rho) const;
  double dphi(double rho) const;
  double d2phi(double rho) const;
};

// q = omega . grad rho  or  omega . grad ln rho (dealiased).
ScalarField projection_q(const VectorField& omega, const ScalarField& rho, ProjectionKind kind);

// density:     J = q u + omega rho div u - mu lap u x grad ln rho + gauge
// log_density: J = q u + omega div u + mu lap u x grad(1/rho) + gauge
VectorField current_density(const CompressibleState& state, const CompressibleParams& params, ProjectionKind kind,
                            const GaugeSpec& gauge);
// J - q u: the compressive, viscous and gauge parts of the current.
VectorField current_excess(const CompressibleState& state, const CompressibleParams& params, ProjectionKind kind,
                           const GaugeSpec& gauge = {});

// dq/dt from the compressible tendency by the chain rule.
ScalarField projection_time_derivative(const CompressibleState& state, const Tendency& tendency,
                                       ProjectionKind kind);

// Density kind: rows "q-calc2" (gauge-free continuity), "q1d-continuity", "q1d-density".
// Log kind: "proj2B-divergence", "q1d-continuity", "q1d-density", "proj2B-material".
ResidualReport quasi_conservation_residuals(const CompressibleState& state, const CompressibleParams& params,
                                            ProjectionKind kind, const GaugeSpec& gauge, double t = 0.0);

// Rows "impermeability" (J.grad rho - q div(rho u)) and "impermeability-gauge".
ResidualReport impermeability_check(const CompressibleState& state, const CompressibleParams& params,
                                    ProjectionKind kind, const GaugeSpec& gauge);

// Rows "cons" (balance of q Phi'), "cons-identity" (q Phi' = div(Phi omega), with q
// replaced by rho q for the log kind) and "cons-integral" (d/dt of the integral).
ResidualReport conserved_family_residual(const CompressibleState& state, const CompressibleParams& params,
                                         ProjectionKind kind, const GaugeSpec& gauge, const FamilySpec& family,
                                         double t = 0.0);

MaskedVelocity pseudo_velocity_compressible(const CompressibleState& state, const CompressibleParams& params,
                                            ProjectionKind kind, const GaugeSpec& gauge, double epsilon_rel);

// Rows "ceeqn1", "eeqn2-div", "q1d2-q" and "q1d2-rho" on the eroded unmasked region.
ResidualReport compressible_b_residual(const CompressibleState& state, const CompressibleParams& params,
                                       ProjectionKind kind, const GaugeSpec& gauge, double epsilon_rel,
                                       double t = 0.0, int erosion = 2);

// Row "Dom": curl(du_dt) against curl(u x w) + mu rho^-1 lap w + grad(rho^-1) x (mu lap u - grad varpi).
ResidualReport compressible_vorticity_residual(const CompressibleState& state, const CompressibleParams& params,
                                               double t = 0.0);
// grad(rho^-1) x grad(|u|^2 / 2): the extra term in the variant that puts the
// kinetic head inside the baroclinic bracket.
VectorField bernoulli_baroclinic_term(const CompressibleState& state);

// Rows "gauge-invariance-divJ", "gauge-invariance-continuity" and
// "gauge-invariance-impermeability": largest relative change over the gauge
// catalog. Provenance "gauge_Uq_min_rel_change" records how much U_q moves.
ResidualReport gauge_invariance_report(const CompressibleState& state, const CompressibleParams& params,
                                       ProjectionKind kind, double epsilon_rel, double t = 0.0);

// Row "kind-consistency": density q against rho times log q.
ResidualReport kind_consistency_report(const CompressibleState& state);

struct CompressibleSuiteOptions {
  ProjectionKind kind = ProjectionKind::density;
  GaugeSpec gauge;
  FamilySpec family;
  double epsilon_rel = 1e-6;
  double t = 0.0;
};
// Every compressible row for one projection kind.
ResidualReport compressible_suite(const CompressibleState& state, const CompressibleParams& params,
                                  const CompressibleSuiteOptions& options);

}  // namespace ghbf
