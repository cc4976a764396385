#include "ffr/pointset.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

namespace ffr {

std::uint64_t grid_cells(const Field& field, int dim) {
  if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
  const std::uint64_t cap = max_grid_cells();
  std::uint64_t cells = 1;
  for (int i = 0; i < dim; ++i) {
    cells *= field.q();
    if (cells > cap)
      throw std::invalid_argument("grid q^d = " + std::to_string(field.q()) + "^" +
                                  std::to_string(dim) + " exceeds FFR_MAX_GRID = " +
                                  std::to_string(cap));
  }
  return cells;
}

PointIndex encode_point(const Field& field, std::span<const Elt> coords) {
  std::uint64_t v = 0;
  for (std::size_t i = coords.size(); i-- > 0;) {
    if (coords[i].v >= field.q()) throw std::invalid_argument("coordinate index out of range");
    v = v * field.q() + coords[i].v;
  }
  return static_cast<PointIndex>(v);
}

std::vector<Elt> decode_point(const Field& field, int dim, PointIndex index) {
  std::vector<Elt> coords(dim);
  std::uint32_t q = field.q();
  for (int i = 0; i < dim; ++i) {
    coords[i] = Elt(static_cast<std::uint16_t>(index % q));
    index /= q;
  }
  return coords;
}

Elt norm_of(const Field& field, std::span<const Elt> coords) {
  Elt acc = field.zero();
  for (Elt c : coords) acc = field.add(acc, field.square(c));
  return acc;
}

PointSet::PointSet(FieldPtr f, int d, std::vector<PointIndex> pts)
    : field(std::move(f)), dim(d), members(std::move(pts)) {
  const std::uint64_t cells = grid_cells(*field, dim);
  std::sort(members.begin(), members.end());
  auto dup = std::adjacent_find(members.begin(), members.end());
  if (dup != members.end()) throw std::invalid_argument("duplicate point in set");
  if (!members.empty() && members.back() >= cells)
    throw std::invalid_argument("point index out of range for the grid");
}

bool PointSet::contains(PointIndex idx) const {
  return std::binary_search(members.begin(), members.end(), idx);
}

Elt PointSet::norm(PointIndex idx) const {
  auto coords = decode_point(*field, dim, idx);
  return norm_of(*field, coords);
}

void require_same_space(const PointSet& a, const PointSet& b) {
  if (!a.field || !b.field || !a.field->same_field(*b.field) || a.dim != b.dim)
    throw std::invalid_argument("point sets live in different spaces");
}

PointSet load_point_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open point-set file: " + path);
  nlohmann::json j;
  in >> j;
  const int p = j.at("p").get<int>();
  const int n = j.at("n").get<int>();
  const int d = j.at("d").get<int>();
  auto field = Field::build(p, n);
  std::vector<PointIndex> pts;
  for (const auto& row : j.at("points")) {
    if (static_cast<int>(row.size()) != d)
      throw std::invalid_argument("point arity does not match d in " + path);
    std::vector<Elt> coords;
    coords.reserve(d);
    for (const auto& c : row) {
      const auto v = c.get<long long>();
      if (v < 0 || v >= static_cast<long long>(field->q()))
        throw std::invalid_argument("coordinate index out of range in " + path);
      coords.push_back(Elt(static_cast<std::uint16_t>(v)));
    }
    pts.push_back(encode_point(*field, coords));
  }
  return PointSet(field, d, std::move(pts));  // constructor rejects duplicates
}

void save_point_set(const PointSet& set, const std::string& path) {
  nlohmann::json j;
  j["p"] = set.field->p();
  j["n"] = set.field->n();
  j["d"] = set.dim;
  auto points = nlohmann::json::array();
  for (PointIndex idx : set.members) {
    auto coords = decode_point(*set.field, set.dim, idx);
    auto row = nlohmann::json::array();
    for (Elt c : coords) row.push_back(c.v);
    points.push_back(std::move(row));
  }
  j["points"] = std::move(points);
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write point-set file: " + path);
  out << j.dump(1) << "\n";
}

}  // namespace ffr
