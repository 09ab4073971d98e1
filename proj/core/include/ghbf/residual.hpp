#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "ghbf/field.hpp"
#include "ghbf/mask.hpp"

namespace ghbf {

struct ResidualEntry {
  // ||r||_2 over the counted region divided by the largest ||term||_2 of the
  // identity over the same region; absolute if every term vanishes.
  double l2_rel = 0.0;
  // max |r| over the counted region (absolute).
  double linf = 0.0;
  // Fraction of lattice points excluded from the norms.
  double masked_fraction = 0.0;
};

// Ordered identity-name -> residual table with provenance metadata.
class ResidualReport {
 public:
  int n = 0;
  std::vector<std::pair<std::string, std::string>> provenance;

  void add(const std::string& name, const ResidualEntry& e);
  bool contains(const std::string& name) const;
  const ResidualEntry& at(const std::string& name) const;
  const std::vector<std::pair<std::string, ResidualEntry>>& entries() const { return entries_; }
  // Appends all entries of `other`, prefixing names if prefix is non-empty.
  void merge(const ResidualReport& other, const std::string& prefix = "");

 private:
  std::vector<std::pair<std::string, ResidualEntry>> entries_;
};

// Residual statistics for r = sum of terms (or any combination); `terms` set
// the scale. `region` may be null (whole lattice).
ResidualEntry measure(const ScalarField& residual, std::initializer_list<const ScalarField*> terms,
                      const Mask* region = nullptr);
ResidualEntry measure(const VectorField& residual, std::initializer_list<const VectorField*> terms,
                      const Mask* region = nullptr);

// Region-restricted norms.
double l2_norm(const ScalarField& f, const Mask* region);
double l2_norm(const VectorField& v, const Mask* region);
double max_abs(const ScalarField& f, const Mask* region);
double max_abs(const VectorField& v, const Mask* region);

}  // namespace ghbf
