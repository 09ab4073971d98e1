#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>

#include "ghbf/field.hpp"
#include "ghbf/grid.hpp"
#include "ghbf/random_fields.hpp"

namespace ghbf::test {

inline constexpr double pi = std::numbers::pi;

inline double rel_l2(const ScalarField& got, const ScalarField& want) {
  const double scale = l2_norm(want);
  return l2_norm(got - want) / (scale > 0.0 ? scale : 1.0);
}

inline double rel_l2(const VectorField& got, const VectorField& want) {
  const double scale = l2_norm(want);
  return l2_norm(got - want) / (scale > 0.0 ? scale : 1.0);
}

inline ScalarField random_scalar(const GridPtr& g, std::uint64_t seed, double kmax, double amplitude = 1.0) {
  return random_bandlimited(g, {seed, kmax, amplitude, 0.0});
}

inline VectorField random_vector(const GridPtr& g, std::uint64_t seed, double kmax, bool solenoidal,
                                 double amplitude = 1.0) {
  return random_bandlimited_vector(g, {seed, kmax, amplitude, 0.0}, solenoidal);
}

inline bool bit_equal(const ScalarField& a, const ScalarField& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::bit_cast<std::uint64_t>(a[i]) != std::bit_cast<std::uint64_t>(b[i])) return false;
  return true;
}

inline bool bit_equal(const VectorField& a, const VectorField& b) {
  return bit_equal(a[0], b[0]) && bit_equal(a[1], b[1]) && bit_equal(a[2], b[2]);
}

}  // namespace ghbf::test
