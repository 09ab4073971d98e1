#pragma once

#include <string>
#include <vector>

#include "ghbf/field.hpp"

namespace ghbf {

// Binary snapshot layout (all integers and floats little-endian):
//   "GHBF1" | u32 n | f64 box_length | f64 time | u32 field_count
//   per field: u8 kind (0 scalar, 1 vector) | u16 name_length | name bytes
//   payload: each field's components in catalog order, n^3 f64 each, x-fastest
struct SnapshotField {
  std::string name;
  std::vector<ScalarField> components;  // 1 or 3
  bool is_vector() const { return components.size() == 3; }
};

struct Snapshot {
  double time = 0.0;
  std::vector<SnapshotField> fields;

  void add(std::string name, const ScalarField& f);
  void add(std::string name, const VectorField& v);
  const SnapshotField& find(const std::string& name) const;
  ScalarField scalar(const std::string& name) const;
  VectorField vector(const std::string& name) const;
};

std::string encode_snapshot(const Snapshot& s);
// `grid` supplies the dealias fraction and is checked against the header; when
// null a grid with default dealiasing is created from the header.
Snapshot decode_snapshot(const std::string& bytes, GridPtr grid = nullptr);

void write_snapshot(const std::string& path, const Snapshot& s);
Snapshot read_snapshot(const std::string& path, GridPtr grid = nullptr);

}  // namespace ghbf
