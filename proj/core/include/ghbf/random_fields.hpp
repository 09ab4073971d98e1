#pragma once

#include <cstdint>

#include "ghbf/field.hpp"

namespace ghbf {

// Parameters of a random trigonometric polynomial.
//
// Modes with 0 < |k| <= kmax (Euclidean norm of the integer mode vector)
// receive independent complex Gaussian coefficients weighted by
// exp(-|k|^2 / (2 envelope^2)) when envelope > 0 (flat otherwise). The field is
// rescaled so its RMS magnitude equals `amplitude`. Modes touching the
// Nyquist index are never populated.
struct BandLimitedSpec {
  std::uint64_t seed = 1;
  double kmax = 4.0;
  double amplitude = 1.0;
  double envelope = 0.0;
};

ScalarField random_bandlimited(const GridPtr& grid, const BandLimitedSpec& spec);
VectorField random_bandlimited_vector(const GridPtr& grid, const BandLimitedSpec& spec, bool solenoidal);

}  // namespace ghbf
