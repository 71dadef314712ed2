#include "pic/geom.hpp"

#include <algorithm>
#include <limits>

namespace pic {

namespace {

void require_finite(Point p) {
  if (!is_finite(p)) throw GeometryError("non-finite coordinate");
}

int sign_with_band(double value, double scale) {
  if (std::abs(value) <= kSignTolerance * scale) return 0;
  return value > 0 ? 1 : -1;
}

double signed_area2(std::span<const Point> v) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += cross(v[i], v[(i + 1) % v.size()]);
  return s;
}

bool lex_less(Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

}  // namespace

bool near(Point a, Point b, double tol) {
  const double scale = std::max({1.0, norm(a), norm(b)});
  return distance(a, b) <= tol * scale;
}

int orient(Point p, Point q, Point r) {
  require_finite(p);
  require_finite(q);
  require_finite(r);
  const Point u = q - p;
  const Point w = r - p;
  return sign_with_band(cross(u, w), norm(u) * norm(w));
}

Line::Line(Point anchor, Point normal) : anchor_(anchor) {
  require_finite(anchor);
  require_finite(normal);
  const double len = norm(normal);
  if (!(len > 1e-300)) throw GeometryError("line normal must be nonzero");
  normal_ = normal / len;
}

Line Line::through(Point a, Point b) {
  if (a == b) throw GeometryError("line through coincident points");
  return Line(a, perp(b - a));
}

int side(const Line& line, Point p) {
  require_finite(p);
  return sign_with_band(line.signed_distance(p), std::max(1.0, norm(p - line.anchor())));
}

std::optional<Point> intersect(const Line& a, const Line& b) {
  const Point da = a.direction();
  const Point db = b.direction();
  const double den = cross(da, db);
  if (std::abs(den) <= 1e-14) return std::nullopt;
  const double t = cross(b.anchor() - a.anchor(), db) / den;
  return a.anchor() + t * da;
}

double segment_distance(Point p, Point a, Point b) {
  const Point d = b - a;
  const double len2 = dot(d, d);
  if (len2 == 0.0) return distance(p, a);
  const double t = std::clamp(dot(p - a, d) / len2, 0.0, 1.0);
  return distance(p, a + t * d);
}

std::vector<Point> convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && cross(hull[k - 1] - hull[k - 2], pts[i - 1] - hull[k - 2]) <= 0) --k;
    hull[k++] = pts[i - 1];
  }
  hull.resize(k - 1);
  return hull;
}

// ---------------------------------------------------------------------------
// ConvexPolygon

ConvexPolygon::ConvexPolygon(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
  for (Point p : vertices_) require_finite(p);
  if (vertices_.size() < 3) throw GeometryError("polygon needs at least 3 vertices");
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (near(vertices_[i], vertices_[(i + 1) % vertices_.size()]))
      throw GeometryError("polygon has repeated adjacent vertices");
  }
  const double a2 = signed_area2(vertices_);
  if (a2 < 0) std::reverse(vertices_.begin(), vertices_.end());
  const std::size_t n = vertices_.size();
  double perimeter = 0.0;
  for (std::size_t i = 0; i < n; ++i) perimeter += distance(vertices_[i], vertices_[(i + 1) % n]);
  if (std::abs(a2) <= kSignTolerance * perimeter * perimeter)
    throw GeometryError("polygon has zero area");
  for (std::size_t i = 0; i < n; ++i) {
    const Point e1 = vertices_[(i + 1) % n] - vertices_[i];
    const Point e2 = vertices_[(i + 2) % n] - vertices_[(i + 1) % n];
    if (cross(e1, e2) < -kSignTolerance * norm(e1) * norm(e2))
      throw GeometryError("polygon is not convex");
  }
  const auto first = std::min_element(vertices_.begin(), vertices_.end(), lex_less);
  std::rotate(vertices_.begin(), first, vertices_.end());
}

double ConvexPolygon::area() const { return 0.5 * signed_area2(vertices_); }

double ConvexPolygon::diameter() const {
  double d = 0.0;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = i + 1; j < size(); ++j) d = std::max(d, distance(vertices_[i], vertices_[j]));
  return d;
}

Point ConvexPolygon::centroid() const {
  Point c{};
  for (Point p : vertices_) c = c + p;
  return c / static_cast<double>(size());
}

std::vector<Line> ConvexPolygon::halfplanes() const {
  std::vector<Line> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(Line::through(vertex(i), vertex(i + 1)));
  return out;
}

bool ConvexPolygon::contains(Point p) const {
  const double tol = kSignTolerance * std::max(1.0, diameter());
  for (const Line& h : halfplanes())
    if (h.signed_distance(p) < -tol) return false;
  return true;
}

bool ConvexPolygon::contains_strictly(Point p) const {
  const double tol = kSignTolerance * std::max(1.0, diameter());
  for (const Line& h : halfplanes())
    if (h.signed_distance(p) <= tol) return false;
  return true;
}

double ConvexPolygon::boundary_distance(Point p) const {
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < size(); ++i) d = std::min(d, segment_distance(p, vertex(i), vertex(i + 1)));
  return d;
}

std::optional<std::size_t> ConvexPolygon::vertex_index(Point p) const {
  for (std::size_t i = 0; i < size(); ++i)
    if (near(p, vertices_[i])) return i;
  return std::nullopt;
}

std::optional<std::size_t> ConvexPolygon::side_containing(Point p) const {
  if (vertex_index(p)) return std::nullopt;
  const double tol = kSignTolerance * std::max(1.0, diameter());
  for (std::size_t i = 0; i < size(); ++i)
    if (segment_distance(p, vertex(i), vertex(i + 1)) <= tol) return i;
  return std::nullopt;
}

ConvexPolygon ConvexPolygon::with_vertex(Point p) const {
  const auto s = side_containing(p);
  if (!s) throw GeometryError("point is not in the relative interior of a side");
  std::vector<Point> v = vertices_;
  v.insert(v.begin() + static_cast<std::ptrdiff_t>(*s + 1), p);
  return ConvexPolygon(std::move(v));
}

bool ConvexPolygon::operator==(const ConvexPolygon& other) const {
  if (size() != other.size()) return false;
  for (std::size_t i = 0; i < size(); ++i)
    if (!near(vertices_[i], other.vertices_[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Clipping and intersection

ClipResult clip_halfplane(const ConvexPolygon& polygon, const Line& h) {
  const double tol = kSignTolerance * std::max(1.0, polygon.diameter());
  const std::size_t n = polygon.size();
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = h.signed_distance(polygon.vertex(i));
    if (std::abs(d[i]) <= tol) d[i] = 0.0;
  }
  std::vector<Point> out;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    const Point a = polygon.vertex(i);
    const Point b = polygon.vertex(j);
    if (d[i] >= 0) out.push_back(a);
    if ((d[i] > 0 && d[j] < 0) || (d[i] < 0 && d[j] > 0)) {
      const double t = d[i] / (d[i] - d[j]);
      out.push_back(a + t * (b - a));
    }
  }
  std::vector<Point> cleaned;
  for (Point p : out)
    if (cleaned.empty() || !near(cleaned.back(), p)) cleaned.push_back(p);
  while (cleaned.size() > 1 && near(cleaned.front(), cleaned.back())) cleaned.pop_back();

  ClipResult result;
  if (cleaned.empty()) return result;
  const double scale = std::max(1.0, polygon.diameter());
  if (cleaned.size() >= 3 && std::abs(signed_area2(cleaned)) > 2 * kSignTolerance * scale * scale) {
    result.kind = ClipResult::Kind::polygon;
    result.polygon = ConvexPolygon(std::move(cleaned));
    return result;
  }
  result.kind = ClipResult::Kind::degenerate;
  result.residue = std::move(cleaned);
  return result;
}

PolygonIntersection intersect(const ConvexPolygon& a, const ConvexPolygon& b) {
  std::vector<Point> pts;
  auto add = [&](Point p) {
    for (Point q : pts)
      if (near(p, q)) return;
    pts.push_back(p);
  };
  for (Point p : a.vertices())
    if (b.contains(p)) add(p);
  for (Point p : b.vertices())
    if (a.contains(p)) add(p);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Point p1 = a.vertex(i), p2 = a.vertex(i + 1);
    for (std::size_t j = 0; j < b.size(); ++j) {
      const Point q1 = b.vertex(j), q2 = b.vertex(j + 1);
      const Point r = p2 - p1, s = q2 - q1;
      const double den = cross(r, s);
      if (std::abs(den) <= 1e-14 * norm(r) * norm(s)) continue;
      const double t = cross(q1 - p1, s) / den;
      const double u = cross(q1 - p1, r) / den;
      constexpr double eps = 1e-12;
      if (t >= -eps && t <= 1 + eps && u >= -eps && u <= 1 + eps) add(p1 + t * r);
    }
  }
  PolygonIntersection out;
  if (pts.empty()) return out;
  const double scale = std::max({1.0, a.diameter(), b.diameter()});
  auto hull = convex_hull(pts);
  if (hull.size() >= 3 && std::abs(signed_area2(hull)) > 2 * kSignTolerance * scale * scale) {
    out.kind = PolygonIntersection::Kind::area;
    out.points = std::move(hull);
    return out;
  }
  if (pts.size() == 1) {
    out.kind = PolygonIntersection::Kind::point;
    out.points = pts;
    return out;
  }
  // Collinear: keep the two extreme points.
  std::size_t ia = 0, ib = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (distance(pts[i], pts[j]) > best) {
        best = distance(pts[i], pts[j]);
        ia = i;
        ib = j;
      }
  out.kind = PolygonIntersection::Kind::segment;
  out.points = {pts[ia], pts[ib]};
  return out;
}

// ---------------------------------------------------------------------------
// Affine2

Affine2 Affine2::inverse() const {
  const double d = det();
  if (std::abs(d) <= 1e-300) throw GeometryError("affine map is singular");
  Affine2 inv;
  inv.a11 = a22 / d;
  inv.a12 = -a12 / d;
  inv.a21 = -a21 / d;
  inv.a22 = a11 / d;
  inv.offset = Point{0, 0} - Point{inv.a11 * offset.x + inv.a12 * offset.y,
                                   inv.a21 * offset.x + inv.a22 * offset.y};
  return inv;
}

Affine2 Affine2::then(const Affine2& next) const {
  Affine2 r;
  r.a11 = next.a11 * a11 + next.a12 * a21;
  r.a12 = next.a11 * a12 + next.a12 * a22;
  r.a21 = next.a21 * a11 + next.a22 * a21;
  r.a22 = next.a21 * a12 + next.a22 * a22;
  r.offset = next(offset);
  return r;
}

Affine2 Affine2::normalizing(Point a, Point b) {
  const Point w = b - a;
  const double s = dot(w, w);
  if (!(s > 0)) throw GeometryError("normalising map needs distinct points");
  Affine2 m;
  m.a11 = w.x / s;
  m.a12 = w.y / s;
  m.a21 = -w.y / s;
  m.a22 = w.x / s;
  m.offset = Point{0, 0} - Point{m.a11 * a.x + m.a12 * a.y, m.a21 * a.x + m.a22 * a.y};
  return m;
}

}  // namespace pic
