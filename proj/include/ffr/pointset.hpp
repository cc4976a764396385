#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ffr/field.hpp"

namespace ffr {

using PointIndex = std::uint32_t;

// number of points in F_q^d, checked against the FFR_MAX_GRID budget
std::uint64_t grid_cells(const Field& field, int dim);

// mixed-radix codec for points of F_q^d; x_1 is the fastest-varying digit
PointIndex encode_point(const Field& field, std::span<const Elt> coords);
std::vector<Elt> decode_point(const Field& field, int dim, PointIndex index);

// ||x|| = x_1^2 + ... + x_d^2
Elt norm_of(const Field& field, std::span<const Elt> coords);

// A finite subset E of F_q^d: sorted, duplicate-free point indices.
struct PointSet {
  FieldPtr field;
  int dim = 0;
  std::vector<PointIndex> members;

  PointSet() = default;
  PointSet(FieldPtr f, int d, std::vector<PointIndex> pts);

  std::size_t size() const { return members.size(); }
  bool contains(PointIndex idx) const;
  Elt norm(PointIndex idx) const;
};

void require_same_space(const PointSet& a, const PointSet& b);

// JSON file format: {"p":…, "n":…, "d":…, "points":[[c-index per coordinate,…],…]}.
// The reader validates field parameters, coordinate ranges and duplicates.
PointSet load_point_set(const std::string& path);
void save_point_set(const PointSet& set, const std::string& path);

}  // namespace ffr
