#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pic/curve.hpp"
#include "pic/geom.hpp"

namespace pic {

struct Mosaic {
  std::vector<ConvexPolygon> polygons;
};

/// A connected union of convex curves c_i, each drawn inside its own polygon P_i.
struct PicSet {
  std::vector<Curve> curves;
  Mosaic mosaic;

  std::size_t size() const { return curves.size(); }
  const ConvexPolygon& polygon(std::size_t i) const { return mosaic.polygons[i]; }
  /// Distinct curve endpoints, in order of first appearance.
  std::vector<Point> vertex_set() const;
  /// All curve samples (with repeats at shared endpoints removed).
  std::vector<Point> sample_points() const;
};

struct Violation {
  std::string message;
  std::vector<std::size_t> polygons;
  std::vector<std::size_t> curves;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

ValidationReport validate(const Mosaic& m);
ValidationReport validate(const PicSet& ps);

/// Largest number of vertices of a polygon in the mosaic.
std::size_t sides_max(const Mosaic& m);

/// Splits P along a line through v so that the part of c before v lies in P1
/// and the part after v in P2. v becomes a vertex of both pieces.
std::pair<ConvexPolygon, ConvexPolygon> partition_at(const ConvexPolygon& P, const Curve& c, Point v);

/// Checks the partition postconditions; returns the failed ones.
std::vector<std::string> check_partition(const ConvexPolygon& P, const Curve& c, Point v,
                                         const ConvexPolygon& P1, const ConvexPolygon& P2);

/// Splits curve i at interior sample k: the first piece keeps index i, the
/// second is appended. Neighbouring polygons gain the cut points as vertices.
PicSet split_curve(const PicSet& ps, std::size_t i, std::size_t k);

/// Refines until every curve is projectable and no two curves share both endpoints.
PicSet refine_simple(const PicSet& ps);

}  // namespace pic
