#include "ghbf/residual.hpp"

#include <algorithm>
#include <cmath>

#include "ghbf/errors.hpp"

namespace ghbf {

void ResidualReport::add(const std::string& name, const ResidualEntry& e) {
  for (auto& [k, v] : entries_)
    if (k == name) {
      v = e;
      return;
    }
  entries_.emplace_back(name, e);
}

bool ResidualReport::contains(const std::string& name) const {
  return std::any_of(entries_.begin(), entries_.end(), [&](const auto& p) { return p.first == name; });
}

const ResidualEntry& ResidualReport::at(const std::string& name) const {
  for (const auto& [k, v] : entries_)
    if (k == name) return v;
  throw Error("residual report has no entry '" + name + "'");
}

void ResidualReport::merge(const ResidualReport& other, const std::string& prefix) {
  for (const auto& [k, v] : other.entries_) add(prefix + k, v);
}

double l2_norm(const ScalarField& f, const Mask* region) {
  if (!region) return l2_norm(f);
  require_same_grid(f.grid(), region->grid());
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if ((*region)[i]) s += f[i] * f[i];
  return std::sqrt(s * f.grid().cell_volume());
}

double l2_norm(const VectorField& v, const Mask* region) {
  double a = l2_norm(v[0], region), b = l2_norm(v[1], region), c = l2_norm(v[2], region);
  return std::sqrt(a * a + b * b + c * c);
}

double max_abs(const ScalarField& f, const Mask* region) {
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (!region || (*region)[i]) m = std::max(m, std::abs(f[i]));
  return m;
}

double max_abs(const VectorField& v, const Mask* region) {
  double m = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!region || (*region)[i])
      m = std::max(m, std::sqrt(v[0][i] * v[0][i] + v[1][i] * v[1][i] + v[2][i] * v[2][i]));
  return m;
}

namespace {

template <class F>
ResidualEntry measure_impl(const F& residual, std::initializer_list<const F*> terms, const Mask* region) {
  ResidualEntry e;
  double r = l2_norm(residual, region);
  double scale = 0.0;
  for (const F* t : terms)
    if (t) scale = std::max(scale, l2_norm(*t, region));
  e.l2_rel = scale > 0.0 ? r / scale : r;
  e.linf = max_abs(residual, region);
  e.masked_fraction = region ? region->excluded_fraction() : 0.0;
  if (!std::isfinite(e.l2_rel) || !std::isfinite(e.linf))
    throw Error("residual evaluation produced a non-finite value");
  return e;
}

}  // namespace

ResidualEntry measure(const ScalarField& residual, std::initializer_list<const ScalarField*> terms,
                      const Mask* region) {
  return measure_impl(residual, terms, region);
}

ResidualEntry measure(const VectorField& residual, std::initializer_list<const VectorField*> terms,
                      const Mask* region) {
  return measure_impl(residual, terms, region);
}

}  // namespace ghbf
