#include "pic/mosaic.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

namespace pic {

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
  std::size_t components() {
    std::size_t n = 0;
    for (std::size_t i = 0; i < parent.size(); ++i) n += find(i) == i;
    return n;
  }
};

void add_unique(std::vector<Point>& pts, Point p) {
  for (Point q : pts)
    if (near(p, q)) return;
  pts.push_back(p);
}

// Vertices of P lying on the closed segment [a, b], sorted along it.
std::vector<Point> vertices_on(const ConvexPolygon& P, Point a, Point b) {
  const double tol = kSignTolerance * std::max(1.0, P.diameter());
  std::vector<Point> out;
  for (Point p : P.vertices())
    if (segment_distance(p, a, b) <= tol) out.push_back(p);
  std::sort(out.begin(), out.end(), [&](Point p, Point q) { return dot(p - a, b - a) < dot(q - a, b - a); });
  return out;
}

double scale_of(const ConvexPolygon& P) { return std::max(1.0, P.diameter()); }

}  // namespace

std::vector<Point> PicSet::vertex_set() const {
  std::vector<Point> v;
  for (const Curve& c : curves) {
    add_unique(v, c.start());
    add_unique(v, c.end());
  }
  return v;
}

std::vector<Point> PicSet::sample_points() const {
  std::vector<Point> v;
  for (const Point p : vertex_set()) v.push_back(p);
  for (const Curve& c : curves) {
    const auto s = c.samples();
    for (std::size_t k = 1; k + 1 < s.size(); ++k) v.push_back(s[k]);
  }
  return v;
}

std::string ValidationReport::to_string() const {
  if (ok()) return "ok";
  std::ostringstream os;
  for (const Violation& v : violations) {
    os << v.message;
    if (!v.polygons.empty()) {
      os << " [polygons";
      for (auto i : v.polygons) os << ' ' << i;
      os << ']';
    }
    if (!v.curves.empty()) {
      os << " [curves";
      for (auto i : v.curves) os << ' ' << i;
      os << ']';
    }
    os << '\n';
  }
  return os.str();
}

ValidationReport validate(const Mosaic& m) {
  ValidationReport r;
  const auto& P = m.polygons;
  if (P.empty()) {
    r.violations.push_back({"mosaic is empty", {}, {}});
    return r;
  }
  UnionFind uf(P.size());
  for (std::size_t i = 0; i < P.size(); ++i) {
    for (std::size_t j = i + 1; j < P.size(); ++j) {
      const auto x = intersect(P[i], P[j]);
      using K = PolygonIntersection::Kind;
      if (x.kind == K::empty) continue;
      uf.unite(i, j);
      if (x.kind == K::area) {
        r.violations.push_back({"interiors overlap", {i, j}, {}});
      } else if (x.kind == K::point) {
        if (!P[i].vertex_index(x.points[0]) || !P[j].vertex_index(x.points[0]))
          r.violations.push_back({"polygons meet away from a common vertex", {i, j}, {}});
      } else {
        const Point a = x.points[0], b = x.points[1];
        const auto vi = vertices_on(P[i], a, b), vj = vertices_on(P[j], a, b);
        bool full = vi.size() >= 2 && vi.size() == vj.size() && near(vi.front(), a) && near(vi.back(), b) &&
                    near(vj.front(), a) && near(vj.back(), b);
        for (std::size_t k = 0; full && k < vi.size(); ++k) full = near(vi[k], vj[k]);
        if (!full) r.violations.push_back({"shared boundary is not a full side", {i, j}, {}});
      }
    }
  }
  if (uf.components() > 1) r.violations.push_back({"mosaic is not connected", {}, {}});
  return r;
}

ValidationReport validate(const PicSet& ps) {
  ValidationReport r;
  if (ps.curves.empty()) {
    r.violations.push_back({"no curves", {}, {}});
    return r;
  }
  if (ps.curves.size() != ps.mosaic.polygons.size()) {
    r.violations.push_back({"curve and polygon counts differ", {}, {}});
    return r;
  }
  r = validate(ps.mosaic);
  const std::size_t n = ps.curves.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Curve& c = ps.curves[i];
    const ConvexPolygon& P = ps.polygon(i);
    if (!is_convex(c)) r.violations.push_back({"curve is not convex", {}, {i}});
    if (!P.vertex_index(c.start()) || !P.vertex_index(c.end()))
      r.violations.push_back({"curve endpoint is not a polygon vertex", {i}, {i}});
    const auto s = c.samples();
    bool outside = false, touches = false;
    for (std::size_t k = 1; k + 1 < s.size(); ++k) {
      if (!P.contains(s[k])) outside = true;
      else if (!P.contains_strictly(s[k])) touches = true;
    }
    if (outside) r.violations.push_back({"curve leaves its polygon", {i}, {i}});
    if (touches) r.violations.push_back({"curve touches boundary off-vertex", {i}, {i}});
  }
  for (std::size_t i = 0; i < n; ++i) {
    const ConvexPolygon& P = ps.polygon(i);
    const Curve& ci = ps.curves[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      for (Point p : ps.curves[j].samples()) {
        if (P.contains(p) && !near(p, ci.start()) && !near(p, ci.end())) {
          r.violations.push_back({"curve meets another curve's polygon", {i}, {j}});
          break;
        }
      }
    }
  }
  const auto verts = ps.vertex_set();
  UnionFind uf(verts.size());
  auto index_of = [&](Point p) {
    for (std::size_t k = 0; k < verts.size(); ++k)
      if (near(p, verts[k])) return k;
    return std::size_t{0};
  };
  for (const Curve& c : ps.curves) uf.unite(index_of(c.start()), index_of(c.end()));
  if (uf.components() > 1) r.violations.push_back({"curves are not connected", {}, {}});
  return r;
}

std::size_t sides_max(const Mosaic& m) {
  if (m.polygons.empty()) throw InvalidArgument("empty mosaic");
  std::size_t s = 0;
  for (const auto& P : m.polygons) s = std::max(s, P.size());
  return s;
}

// ---------------------------------------------------------------------------
// partition

namespace {

struct Located {
  double t;
  std::vector<Point> before;  // samples strictly before v, starting at the first endpoint
  std::vector<Point> after;   // samples strictly after v, ending at the second endpoint
};

Located split_samples(const Curve& c, Point v) {
  const auto t = c.locate(v);
  if (!t) throw GeometryError("point is not on the curve");
  if (near(v, c.start()) || near(v, c.end())) throw GeometryError("point is an endpoint of the curve");
  Located out{*t, {}, {}};
  const auto s = c.samples();
  const auto par = c.params();
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (near(s[k], v)) continue;
    (par[k] < *t ? out.before : out.after).push_back(s[k]);
  }
  return out;
}

std::vector<Line> tangent_halfplanes(const Curve& c) {
  const auto s = c.samples();
  std::vector<Line> out;
  const double scale = std::max(1.0, c.arc_length());
  auto orient_to_curve = [&](Point anchor, Point d) {
    if (norm(d) <= 1e-14 * scale) throw GeometryError("tangent estimation is degenerate");
    Line h(anchor, perp(d));
    double sum = 0.0;
    for (Point p : s) sum += h.signed_distance(p);
    return sum < -kSignTolerance * scale ? h.flipped() : h;
  };
  if (s.size() < 3) {
    out.push_back(orient_to_curve(s[0], s[1] - s[0]));
    return out;
  }
  for (std::size_t k = 1; k + 1 < s.size(); ++k) out.push_back(orient_to_curve(s[k], s[k + 1] - s[k - 1]));
  return out;
}

// Smallest sine of the angle at which the samples sit on their required side of L.
double separation(const Line& L, Point v, const Located& loc, int before_sign) {
  double m = std::numeric_limits<double>::infinity();
  for (Point p : loc.before) m = std::min(m, before_sign * L.signed_distance(p) / distance(p, v));
  for (Point p : loc.after) m = std::min(m, -before_sign * L.signed_distance(p) / distance(p, v));
  return m;
}

}  // namespace

std::pair<ConvexPolygon, ConvexPolygon> partition_at(const ConvexPolygon& P, const Curve& c, Point v) {
  if (!P.vertex_index(c.start()) || !P.vertex_index(c.end()))
    throw GeometryError("curve does not join two vertices of the polygon");
  const Located loc = split_samples(c, v);
  if (!P.contains_strictly(v)) throw GeometryError("split point is not interior to the polygon");

  ConvexPolygon R = P;
  for (const Line& h : tangent_halfplanes(c)) {
    auto clipped = clip_halfplane(R, h);
    if (clipped.kind != ClipResult::Kind::polygon) throw GeometryError("tangent region is degenerate");
    R = *clipped.polygon;
  }

  const double tol = kSignTolerance * scale_of(P);
  std::vector<Point> candidates;
  for (std::size_t i = 0; i < R.size(); ++i) {
    for (Point q : {R.vertex(i), 0.5 * (R.vertex(i) + R.vertex(i + 1))})
      if (P.boundary_distance(q) <= tol && c.distance_to(q) > tol) add_unique(candidates, q);
  }

  double best = 0.0;
  std::optional<Line> cut;
  int before_sign = 1;
  for (Point m : candidates) {
    if (near(m, v)) continue;
    const Line L = Line::through(v, m);
    for (int sg : {1, -1}) {
      const double sep = separation(L, v, loc, sg);
      if (sep > best) {
        best = sep;
        cut = L;
        before_sign = sg;
      }
    }
  }
  if (!cut || best <= 1e-12) throw GeometryError("no separating cut through the split point");

  const Line h1 = before_sign > 0 ? *cut : cut->flipped();
  const auto a = clip_halfplane(P, h1), b = clip_halfplane(P, h1.flipped());
  if (a.kind != ClipResult::Kind::polygon || b.kind != ClipResult::Kind::polygon)
    throw GeometryError("cut does not split the polygon");
  ConvexPolygon P1 = *a.polygon, P2 = *b.polygon;
  if (!P1.vertex_index(v)) P1 = P1.with_vertex(v);
  if (!P2.vertex_index(v)) P2 = P2.with_vertex(v);
  return {P1, P2};
}

std::vector<std::string> check_partition(const ConvexPolygon& P, const Curve& c, Point v, const ConvexPolygon& P1,
                                         const ConvexPolygon& P2) {
  std::vector<std::string> bad;
  auto convex = [](const ConvexPolygon& Q) {
    try {
      ConvexPolygon copy(std::vector<Point>(Q.vertices().begin(), Q.vertices().end()));
      return true;
    } catch (const Error&) {
      return false;
    }
  };
  if (!convex(P1) || !convex(P2)) bad.push_back("piece is not convex");
  for (const ConvexPolygon* Q : {&P1, &P2})
    for (Point p : Q->vertices())
      if (!P.contains(p)) {
        bad.push_back("piece is not contained in the polygon");
        break;
      }
  if (intersect(P1, P2).kind == PolygonIntersection::Kind::area) bad.push_back("pieces overlap");
  if (!P1.vertex_index(c.start())) bad.push_back("first endpoint is not a vertex of the first piece");
  if (!P2.vertex_index(c.end())) bad.push_back("second endpoint is not a vertex of the second piece");
  if (!P1.vertex_index(v) || !P2.vertex_index(v)) bad.push_back("split point is not a vertex of both pieces");

  Located loc{};
  try {
    loc = split_samples(c, v);
  } catch (const Error&) {
    bad.push_back("split point is not on the curve");
    return bad;
  }
  auto piece_ok = [&](const std::vector<Point>& own, const ConvexPolygon& Q, const ConvexPolygon& other,
                      Point endpoint) {
    for (Point p : own) {
      if (near(p, endpoint)) continue;
      if (!Q.contains_strictly(p) || other.contains(p)) return false;
    }
    return true;
  };
  if (!piece_ok(loc.before, P1, P2, c.start())) bad.push_back("first curve piece is not inside the first piece");
  if (!piece_ok(loc.after, P2, P1, c.end())) bad.push_back("second curve piece is not inside the second piece");

  const double A = P.area();
  if (std::abs(P1.area() + P2.area() - A) > 1e-9 * A) bad.push_back("areas do not add up");
  return bad;
}

// ---------------------------------------------------------------------------
// refinement

PicSet split_curve(const PicSet& ps, std::size_t i, std::size_t k) {
  if (i >= ps.size()) throw InvalidArgument("curve index out of range");
  const Curve& c = ps.curves[i];
  if (k == 0 || k + 1 >= c.sample_count()) throw InvalidArgument("split sample must be interior");
  const ConvexPolygon& P = ps.polygon(i);
  const Point v = c.samples()[k];
  auto [P1, P2] = partition_at(P, c, v);
  auto [c1, c2] = split_at_sample(c, k);

  std::vector<Point> cut_points;
  for (const ConvexPolygon* Q : {&P1, &P2})
    for (Point p : Q->vertices())
      if (!P.vertex_index(p) && !near(p, v)) add_unique(cut_points, p);

  PicSet out = ps;
  for (std::size_t j = 0; j < out.size(); ++j) {
    if (j == i) continue;
    for (Point p : cut_points) {
      ConvexPolygon& Q = out.mosaic.polygons[j];
      if (Q.side_containing(p)) Q = Q.with_vertex(p);
    }
  }
  out.curves[i] = std::move(c1);
  out.mosaic.polygons[i] = std::move(P1);
  out.curves.push_back(std::move(c2));
  out.mosaic.polygons.push_back(std::move(P2));
  return out;
}

PicSet refine_simple(const PicSet& input) {
  PicSet ps = input;
  for (;;) {
    bool changed = false;
    for (std::size_t i = 0; i < ps.size() && !changed; ++i) {
      const Curve& c = ps.curves[i];
      if (is_projectable(c)) continue;
      const auto pieces = split_projectable(c);
      ps = split_curve(ps, i, pieces.front().sample_count() - 1);
      changed = true;
    }
    if (changed) continue;

    const auto verts = ps.vertex_set();
    auto index_of = [&](Point p) {
      for (std::size_t k = 0; k < verts.size(); ++k)
        if (near(p, verts[k])) return k;
      return verts.size();
    };
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      std::size_t a = index_of(ps.curves[i].start()), b = index_of(ps.curves[i].end());
      if (a > b) std::swap(a, b);
      groups[{a, b}].push_back(i);
    }
    for (const auto& [key, members] : groups) {
      if (members.size() < 2) continue;
      for (std::size_t i : members) {
        const std::size_t n = ps.curves[i].sample_count();
        if (n < 3) throw GeometryError("parallel curve has no interior sample to split at");
        ps = split_curve(ps, i, (n - 1) / 2);
      }
      changed = true;
      break;
    }
    if (!changed) return ps;
  }
}

}  // namespace pic
