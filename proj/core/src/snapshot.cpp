#include "ghbf/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "ghbf/errors.hpp"

namespace ghbf {
namespace {

static_assert(std::endian::native == std::endian::little, "snapshot I/O assumes a little-endian host");

constexpr char kMagic[5] = {'G', 'H', 'B', 'F', '1'};

template <class T>
void put(std::string& out, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.append(buf, sizeof(T));
}

class Reader {
 public:
  explicit Reader(const std::string& bytes) : b_(bytes) {}
  template <class T>
  T get(const char* what) {
    need(sizeof(T), what);
    T v;
    std::memcpy(&v, b_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }
  std::string text(std::size_t len, const char* what) {
    need(len, what);
    std::string s = b_.substr(pos_, len);
    pos_ += len;
    return s;
  }
  void doubles(double* dst, std::size_t count, const char* what) {
    need(count * sizeof(double), what);
    std::memcpy(dst, b_.data() + pos_, count * sizeof(double));
    pos_ += count * sizeof(double);
  }
  std::size_t pos() const { return pos_; }
  std::size_t size() const { return b_.size(); }

 private:
  void need(std::size_t len, const char* what) {
    if (b_.size() - pos_ < len)
      throw SnapshotTruncatedError("snapshot truncated at byte " + std::to_string(b_.size()) + " while reading " +
                                       what + " (needed " + std::to_string(len) + " bytes at offset " +
                                       std::to_string(pos_) + ")",
                                   b_.size());
  }
  const std::string& b_;
  std::size_t pos_ = 0;
};

}  // namespace

void Snapshot::add(std::string name, const ScalarField& f) { fields.push_back({std::move(name), {f}}); }

void Snapshot::add(std::string name, const VectorField& v) { fields.push_back({std::move(name), {v[0], v[1], v[2]}}); }

const SnapshotField& Snapshot::find(const std::string& name) const {
  for (const auto& f : fields)
    if (f.name == name) return f;
  throw SnapshotFormatError("snapshot has no field '" + name + "'");
}

ScalarField Snapshot::scalar(const std::string& name) const {
  const auto& f = find(name);
  if (f.is_vector()) throw SnapshotFormatError("snapshot field '" + name + "' is a vector");
  return f.components[0];
}

VectorField Snapshot::vector(const std::string& name) const {
  const auto& f = find(name);
  if (!f.is_vector()) throw SnapshotFormatError("snapshot field '" + name + "' is a scalar");
  return VectorField(f.components[0], f.components[1], f.components[2]);
}

std::string encode_snapshot(const Snapshot& s) {
  if (s.fields.empty()) throw SnapshotFormatError("snapshot has no fields");
  const Grid& g = s.fields[0].components.at(0).grid();
  std::string out(kMagic, sizeof kMagic);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.n()));
  put<double>(out, g.box_length());
  put<double>(out, s.time);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(s.fields.size()));
  std::size_t comps = 0;
  for (const auto& f : s.fields) {
    if (f.components.size() != 1 && f.components.size() != 3)
      throw SnapshotFormatError("snapshot field '" + f.name + "' must have 1 or 3 components");
    if (f.name.size() > 0xffff) throw SnapshotFormatError("snapshot field name too long");
    for (const auto& c : f.components) require_same_grid(g, c.grid());
    put<std::uint8_t>(out, f.is_vector() ? 1 : 0);
    put<std::uint16_t>(out, static_cast<std::uint16_t>(f.name.size()));
    out += f.name;
    comps += f.components.size();
  }
  out.reserve(out.size() + comps * g.size() * sizeof(double));
  for (const auto& f : s.fields)
    for (const auto& c : f.components) out.append(reinterpret_cast<const char*>(c.data()), c.size() * sizeof(double));
  return out;
}

Snapshot decode_snapshot(const std::string& bytes, GridPtr grid) {
  Reader r(bytes);
  const std::string magic = r.text(sizeof kMagic, "magic");
  if (std::memcmp(magic.data(), kMagic, sizeof kMagic) != 0)
    throw SnapshotFormatError("not a GHBF1 snapshot (bad magic)");
  const auto n = r.get<std::uint32_t>("grid size");
  const double box = r.get<double>("box length");
  Snapshot s;
  s.time = r.get<double>("time");
  const auto count = r.get<std::uint32_t>("field count");
  if (grid) {
    if (static_cast<std::uint32_t>(grid->n()) != n || grid->box_length() != box)
      throw ConfigError("snapshot grid (n = " + std::to_string(n) + ") does not match the configured grid");
  } else {
    if (n < 8 || n > 4096) throw SnapshotFormatError("snapshot grid size " + std::to_string(n) + " out of range");
    grid = Grid::create(static_cast<int>(n), box);
  }
  std::vector<std::pair<std::string, bool>> catalog;
  for (std::uint32_t i = 0; i < count; ++i) {
    const auto kind = r.get<std::uint8_t>("field kind");
    if (kind > 1) throw SnapshotFormatError("snapshot field kind " + std::to_string(kind) + " is not 0 or 1");
    const auto len = r.get<std::uint16_t>("field name length");
    catalog.emplace_back(r.text(len, "field name"), kind == 1);
  }
  for (const auto& [name, vec] : catalog) {
    SnapshotField f{name, {}};
    for (int c = 0; c < (vec ? 3 : 1); ++c) {
      ScalarField comp(grid);
      r.doubles(comp.data(), comp.size(), "payload");
      f.components.push_back(std::move(comp));
    }
    s.fields.push_back(std::move(f));
  }
  if (r.pos() != r.size())
    throw SnapshotFormatError("snapshot has " + std::to_string(r.size() - r.pos()) + " trailing bytes");
  return s;
}

void write_snapshot(const std::string& path, const Snapshot& s) {
  const std::string bytes = encode_snapshot(s);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot open '" + path + "' for writing");
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw Error("failed writing '" + path + "'");
}

Snapshot read_snapshot(const std::string& path, GridPtr grid) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open snapshot '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return decode_snapshot(ss.str(), std::move(grid));
}

}  // namespace ghbf
