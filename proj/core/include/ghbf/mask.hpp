#pragma once

#include <cstdint>
#include <vector>

#include "ghbf/field.hpp"

namespace ghbf {

// Boolean lattice field: true where a quantity is defined / counted.
class Mask {
 public:
  Mask() = default;
  Mask(GridPtr grid, bool value);

  // |f| >= threshold
  static Mask where_abs_at_least(const ScalarField& f, double threshold);

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::size_t size() const { return keep_.size(); }
  bool operator[](std::size_t i) const { return keep_[i] != 0; }
  void set(std::size_t i, bool v) { keep_[i] = v ? 1 : 0; }

  std::size_t count() const;
  // Fraction of lattice points that are false.
  double excluded_fraction() const;
  // Shrinks the true region: a point stays true only if every point within
  // Chebyshev distance `cells` (periodically) is true.
  Mask eroded(int cells) const;

 private:
  GridPtr grid_;
  std::vector<std::uint8_t> keep_;
};

// Zero outside the mask.
ScalarField zero_outside(const ScalarField& f, const Mask& m);
VectorField zero_outside(const VectorField& v, const Mask& m);

}  // namespace ghbf
