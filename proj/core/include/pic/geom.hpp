#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pic/error.hpp"

namespace pic {

/// A point of the plane, identified with the complex number x + iy.
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point operator-(Point a) { return {-a.x, -a.y}; }
  friend constexpr Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend constexpr Point operator*(Point a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr Point operator/(Point a, double s) { return {a.x / s, a.y / s}; }
  friend constexpr bool operator==(Point a, Point b) = default;
};

constexpr double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }
constexpr Point perp(Point a) { return {-a.y, a.x}; }
inline bool is_finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Relative tolerance used by all sign predicates.
inline constexpr double kSignTolerance = 1e-9;

/// True when the two points agree within `tol` times their common scale.
bool near(Point a, Point b, double tol = kSignTolerance);

/// Sign of (q - p) x (r - p); values within the tolerance band map to 0.
/// Throws GeometryError on non-finite input.
int orient(Point p, Point q, Point r);

/// The line {x : (x - anchor) . normal = 0}. Read as a half-plane it is
/// {x : (x - anchor) . normal >= 0}.
class Line {
 public:
  /// `normal` is normalised; throws GeometryError when it is (near) zero.
  Line(Point anchor, Point normal);

  /// The line through a and b with normal pointing to the left of a -> b.
  static Line through(Point a, Point b);

  Point anchor() const { return anchor_; }
  Point normal() const { return normal_; }
  Point direction() const { return {normal_.y, -normal_.x}; }

  /// (p - anchor) . normal
  double signed_distance(Point p) const { return dot(p - anchor_, normal_); }

  /// The same line with the opposite half-plane.
  Line flipped() const { return Line(anchor_, -normal_); }
  /// The parallel line shifted by `d` along the normal.
  Line shifted(double d) const { return Line(anchor_ + d * normal_, normal_); }

 private:
  Point anchor_;
  Point normal_;
};

/// Sign of (p - u) . v, with 0 meaning "on the line".
int side(const Line& line, Point p);

/// Intersection point of two lines; nullopt for parallel lines.
std::optional<Point> intersect(const Line& a, const Line& b);

/// A closed convex polygon with counter-clockwise vertices, normalised so the
/// lexicographically smallest vertex comes first. Collinear (straight-angle)
/// vertices are permitted and kept.
class ConvexPolygon {
 public:
  /// Validates and normalises; accepts either orientation.
  explicit ConvexPolygon(std::vector<Point> vertices);

  std::span<const Point> vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  Point vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }

  double area() const;
  /// Length of the longest diagonal between vertices.
  double diameter() const;
  Point centroid() const;

  /// Inward half-planes, one per side.
  std::vector<Line> halfplanes() const;

  /// True if p lies in the closed polygon, with tolerance.
  bool contains(Point p) const;
  /// True if p lies in the open interior, at distance > tol*scale from every side.
  bool contains_strictly(Point p) const;
  /// Distance from p to the polygon boundary.
  double boundary_distance(Point p) const;
  /// Index of the vertex equal to p (within tolerance).
  std::optional<std::size_t> vertex_index(Point p) const;
  /// Index i of the side [v_i, v_{i+1}] that contains p in its relative interior.
  std::optional<std::size_t> side_containing(Point p) const;

  /// Copy with p inserted as a vertex on the side containing it.
  ConvexPolygon with_vertex(Point p) const;

  bool operator==(const ConvexPolygon& other) const;

 private:
  std::vector<Point> vertices_;
};

/// Result of clipping a polygon against a half-plane.
struct ClipResult {
  enum class Kind { empty, degenerate, polygon };
  Kind kind = Kind::empty;
  std::optional<ConvexPolygon> polygon;
  /// For degenerate output: the remaining point or segment.
  std::vector<Point> residue;
};

/// P intersected with the closed half-plane H. Cut points are included once.
ClipResult clip_halfplane(const ConvexPolygon& polygon, const Line& halfplane);

/// Classification of the intersection of two convex polygons.
struct PolygonIntersection {
  enum class Kind { empty, point, segment, area };
  Kind kind = Kind::empty;
  std::vector<Point> points;  // the point, the two segment ends, or the hull
};

PolygonIntersection intersect(const ConvexPolygon& a, const ConvexPolygon& b);

/// Distance from p to the segment [a, b].
double segment_distance(Point p, Point a, Point b);

/// Convex hull (counter-clockwise, collinear points dropped).
std::vector<Point> convex_hull(std::vector<Point> points);

/// Invertible affine map x -> A x + b.
struct Affine2 {
  double a11 = 1, a12 = 0, a21 = 0, a22 = 1;
  Point offset{};

  Point operator()(Point p) const {
    return {a11 * p.x + a12 * p.y + offset.x, a21 * p.x + a22 * p.y + offset.y};
  }
  double det() const { return a11 * a22 - a12 * a21; }
  Affine2 inverse() const;
  Affine2 then(const Affine2& next) const;  // next o this

  /// The similarity mapping a -> 0 and b -> 1 on the real axis.
  static Affine2 normalizing(Point a, Point b);
};

}  // namespace pic
