#include <gtest/gtest.h>

#include <algorithm>

#include "pic/picgraph.hpp"
#include "pic/picnorm.hpp"
#include "spec_file.hpp"
#include "testkit.hpp"

using namespace pic;

namespace {

PicGraph graph(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& e) {
  PicGraph g;
  for (std::size_t i = 0; i < n; ++i) g.vertices.push_back({double(i), double(i * i % 7)});
  for (std::size_t k = 0; k < e.size(); ++k) g.edges.push_back({e[k].first, e[k].second, k});
  return g;
}

PicGraph cycle(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
  return graph(n, e);
}

std::vector<std::size_t> sorted_degrees(const PicGraph& g) {
  auto d = g.degrees();
  std::sort(d.begin(), d.end());
  return d;
}

Point edge_point(const PicGraph& g, std::size_t e, double t) {
  return (1 - t) * g.vertices[g.edges[e].u] + t * g.vertices[g.edges[e].v];
}

// a random loop-free multigraph, relabelled and subdivided a few times
PicGraph random_graph(testkit::Rng& rng, std::size_t n, std::size_t m) {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t i = 1; i < n; ++i) e.push_back({testkit::index(rng, i), i});
  while (e.size() < m) {
    const std::size_t a = testkit::index(rng, n), b = testkit::index(rng, n);
    if (a != b) e.push_back({a, b});
  }
  return graph(n, e);
}

PicGraph shuffled(testkit::Rng& rng, const PicGraph& g) {
  std::vector<std::size_t> perm(g.vertices.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  PicGraph r;
  r.vertices.resize(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) r.vertices[perm[i]] = g.vertices[i];
  for (const PicEdge& e : g.edges) r.edges.push_back({perm[e.v], perm[e.u], e.curve});
  std::shuffle(r.edges.begin(), r.edges.end(), rng);
  return r;
}

PicGraph subdivided(testkit::Rng& rng, PicGraph g, int times) {
  for (int k = 0; k < times; ++k) {
    const std::size_t e = testkit::index(rng, g.edges.size());
    g = subdivide_edge(g, e, edge_point(g, e, testkit::uniform(rng, 0.2, 0.8)) + Point{0, 1e-3 * k});
  }
  return g;
}

PicSet load(const std::string& name) { return cli::parse_spec_file(testkit::fixture(name)).set; }

}  // namespace

TEST(ExtractGraph, Examples) {
  const PicGraph seg = extract_graph(load("segment.json"));
  EXPECT_EQ(seg.vertices.size(), 2u);
  EXPECT_EQ(seg.edges.size(), 1u);
  const PicGraph sq = extract_graph(load("square_cycle.json"));
  EXPECT_EQ(sorted_degrees(sq), (std::vector<std::size_t>{2, 2, 2, 2}));
  const PicGraph plus = extract_graph(refine_simple(load("plus.json")));
  EXPECT_EQ(plus.vertices.size(), 5u);
  EXPECT_EQ(plus.edges.size(), 4u);
  EXPECT_EQ(sorted_degrees(plus), (std::vector<std::size_t>{1, 1, 1, 1, 4}));
}

TEST(SubdivideEdge, Examples) {
  const PicGraph path = graph(2, {{0, 1}});
  const PicGraph s = subdivide_edge(path, 0, edge_point(path, 0, 0.5));
  EXPECT_EQ(s.vertices.size(), 3u);
  EXPECT_EQ(s.edges.size(), 2u);
  EXPECT_EQ(s.degrees(), (std::vector<std::size_t>{1, 1, 2}));
  const PicGraph c3 = cycle(3);
  const PicGraph c4 = subdivide_edge(c3, 1, edge_point(c3, 1, 0.3));
  EXPECT_EQ(sorted_degrees(c4), (std::vector<std::size_t>{2, 2, 2, 2}));
  EXPECT_TRUE(is_homeomorphic(c4, cycle(4)).found);
  EXPECT_THROW(subdivide_edge(path, 0, path.vertices[1]), InvalidArgument);
}

TEST(Smooth, Examples) {
  const PicGraph p = smooth(graph(3, {{0, 1}, {1, 2}}));
  EXPECT_EQ(p.vertices.size(), 2u);
  ASSERT_EQ(p.edges.size(), 1u);
  for (std::size_t k : {3u, 4u, 7u}) {
    const PicGraph d = smooth(cycle(k));
    EXPECT_EQ(d.vertices.size(), 2u) << k;
    ASSERT_EQ(d.edges.size(), 2u);
    EXPECT_EQ(d.multiplicity(0, 1), 2u);
  }
  const PicGraph star = graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  const PicGraph s = smooth(star);
  EXPECT_EQ(s.vertices.size(), 5u);
  EXPECT_EQ(s.edges.size(), 4u);
}

TEST(Smooth, ChainsCoverOriginalEdges) {
  testkit::Rng rng(3);
  for (int k = 0; k < 30; ++k) {
    const PicGraph g = subdivided(rng, random_graph(rng, 2 + testkit::index(rng, 5), 6), 4);
    const SmoothedGraph s = smooth_with_chains(g);
    std::vector<int> used(g.edges.size(), 0);
    for (std::size_t e = 0; e < s.graph.edges.size(); ++e) {
      std::size_t at = s.origin[s.graph.edges[e].u];
      for (const ChainStep& st : s.chains[e]) {
        ++used[st.edge];
        const PicEdge& oe = g.edges[st.edge];
        EXPECT_EQ(st.reversed ? oe.v : oe.u, at);
        at = st.reversed ? oe.u : oe.v;
      }
      EXPECT_EQ(at, s.origin[s.graph.edges[e].v]);
    }
    for (int u : used) EXPECT_EQ(u, 1);
  }
}

TEST(IsHomeomorphic, Examples) {
  EXPECT_TRUE(is_homeomorphic(cycle(3), cycle(4)).found);
  const PicGraph plus = graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  EXPECT_FALSE(is_homeomorphic(plus, graph(2, {{0, 1}})).found);
  EXPECT_FALSE(is_homeomorphic(cycle(3), graph(3, {{0, 1}, {1, 2}})).found);
  // theta graph vs dumbbell: same degree sequence after smoothing, not isomorphic
  const PicGraph theta = graph(2, {{0, 1}, {0, 1}, {0, 1}});
  const PicGraph tadpole2 = graph(4, {{0, 1}, {1, 2}, {1, 2}, {2, 3}});
  EXPECT_FALSE(is_homeomorphic(theta, tadpole2).found);
  EXPECT_TRUE(is_homeomorphic(extract_graph(load("lollipop_sigma.json")), extract_graph(load("lollipop_tau.json"))).found);
}

TEST(IsHomeomorphic, MatchIsAnIsomorphism) {
  testkit::Rng rng(5);
  for (int k = 0; k < 40; ++k) {
    const PicGraph g = random_graph(rng, 2 + testkit::index(rng, 6), 3 + testkit::index(rng, 6));
    const PicGraph h = subdivided(rng, shuffled(rng, g), static_cast<int>(testkit::index(rng, 4)));
    const GraphMatch m = is_homeomorphic(g, h);
    ASSERT_TRUE(m.found) << k;
    ASSERT_EQ(m.edge_map.size(), m.a.graph.edges.size());
    std::vector<int> hit(m.b.graph.edges.size(), 0);
    for (std::size_t e = 0; e < m.edge_map.size(); ++e) {
      const PicEdge& ea = m.a.graph.edges[e];
      const PicEdge& eb = m.b.graph.edges[m.edge_map[e].edge];
      ++hit[m.edge_map[e].edge];
      const std::size_t bu = m.edge_map[e].reversed ? eb.v : eb.u, bv = m.edge_map[e].reversed ? eb.u : eb.v;
      EXPECT_EQ(m.vertex_map[ea.u], bu);
      EXPECT_EQ(m.vertex_map[ea.v], bv);
    }
    for (int x : hit) EXPECT_EQ(x, 1);
  }
}

TEST(IsHomeomorphic, EquivalenceRelation) {
  testkit::Rng rng(9);
  std::vector<PicGraph> gs;
  for (int k = 0; k < 12; ++k) {
    PicGraph g = random_graph(rng, 2 + testkit::index(rng, 4), 3 + testkit::index(rng, 3));
    gs.push_back(g);
    gs.push_back(subdivided(rng, shuffled(rng, g), 2));
  }
  for (const PicGraph& a : gs) EXPECT_TRUE(is_homeomorphic(a, a).found);
  for (const PicGraph& a : gs)
    for (const PicGraph& b : gs) {
      const bool ab = is_homeomorphic(a, b).found;
      EXPECT_EQ(ab, is_homeomorphic(b, a).found);
      if (!ab) continue;
      for (const PicGraph& c : gs)
        if (is_homeomorphic(b, c).found) {
          EXPECT_TRUE(is_homeomorphic(a, c).found);
        }
    }
}

TEST(IsHomeomorphic, SubdivisionPreservesSmoothClass) {
  testkit::Rng rng(11);
  for (int k = 0; k < 30; ++k) {
    const PicGraph g = random_graph(rng, 2 + testkit::index(rng, 6), 4 + testkit::index(rng, 4));
    const PicGraph a = smooth(g), b = smooth(subdivided(rng, g, 1 + static_cast<int>(testkit::index(rng, 5))));
    EXPECT_EQ(a.vertices.size(), b.vertices.size());
    EXPECT_EQ(sorted_degrees(a), sorted_degrees(b));
    EXPECT_TRUE(is_homeomorphic(a, b).found);
  }
}

TEST(MatchSubdivisions, SegmentVsSemicircle) {
  PicSet seg = load("segment.json");
  PicSet arc;
  arc.curves = {Curve::circular_arc({5, 0}, 1, 0, std::numbers::pi, 64)};
  arc.mosaic.polygons = {ConvexPolygon({{6, 0}, {6, 1.5}, {4, 1.5}, {4, 0}})};
  const MatchedSets m = match_subdivisions(seg, arc);
  EXPECT_EQ(m.sigma.size(), 1u);
  EXPECT_EQ(m.tau.size(), 1u);
}

TEST(MatchSubdivisions, TriangleVsSquare) {
  const MatchedSets m = match_subdivisions(load("triangle.json"), load("square.json"));
  ASSERT_EQ(m.sigma.size(), m.tau.size());
  EXPECT_TRUE(validate(m.sigma).ok());
  EXPECT_TRUE(validate(m.tau).ok());
  const GraphMatch g = is_homeomorphic(extract_graph(m.sigma), extract_graph(m.tau));
  EXPECT_TRUE(g.found);
  // matched endpoints form a consistent vertex correspondence
  const HomeoMap h = build_homeo(m);
  for (std::size_t i = 0; i < m.sigma.size(); ++i) {
    const Curve& a = h.sigma().curves[i];
    const Curve& b = h.tau().curves[i];
    EXPECT_EQ(h.apply(a.start()), h.reversed()[i] ? b.end() : b.start());
    EXPECT_EQ(h.apply(a.end()), h.reversed()[i] ? b.start() : b.end());
  }
}

TEST(MatchSubdivisions, LollipopGivesSevenCurves) {
  const MatchedSets m = match_subdivisions(load("lollipop_sigma.json"), load("lollipop_tau.json"));
  EXPECT_EQ(m.sigma.size(), 7u);
  EXPECT_EQ(m.tau.size(), 7u);
  EXPECT_TRUE(validate(m.sigma).ok());
  EXPECT_TRUE(validate(m.tau).ok());
}

TEST(MatchSubdivisions, NotHomeomorphic) {
  EXPECT_THROW(match_subdivisions(load("plus.json"), load("segment.json")), InvalidArgument);
}

TEST(BuildHomeo, SegmentScaling) {
  PicSet a, b;
  a.curves = {Curve::segment({0, 0}, {1, 0}, 11)};
  a.mosaic.polygons = {ConvexPolygon({{0, 0}, {1, 0}, {0.5, 1}})};
  b.curves = {Curve::segment({0, 0}, {2, 0}, 11)};
  b.mosaic.polygons = {ConvexPolygon({{0, 0}, {2, 0}, {1, 1}})};
  const HomeoMap h = build_homeo(match_subdivisions(a, b));
  for (double t : {0.0, 0.1, 0.35, 0.5, 0.77, 1.0}) {
    const Point q = h.apply({t, 0});
    EXPECT_NEAR(q.x, 2 * t, 1e-12);
    EXPECT_NEAR(q.y, 0, 1e-12);
  }
}

TEST(BuildHomeo, OrientationConflictDetected) {
  const MatchedSets m = match_subdivisions(load("triangle.json"), load("square.json"));
  MatchedSets bad = m;
  bad.reversed[0] = !bad.reversed[0];
  EXPECT_THROW(build_homeo(bad), GeometryError);
}

TEST(BuildHomeo, InverseRoundTripAndVertices) {
  for (auto [fa, fb] : {std::pair{"triangle.json", "square.json"}, std::pair{"lollipop_sigma.json", "lollipop_tau.json"}}) {
    const PicSet sa = load(fa), sb = load(fb);
    const MatchedSets m = match_subdivisions(sa, sb);
    const HomeoMap h = build_homeo(m);
    for (const Curve& c : h.sigma().curves)
      for (Point p : c.samples()) {
        const Point q = h.inverse(h.apply(p));
        EXPECT_NEAR(q.x, p.x, 1e-9);
        EXPECT_NEAR(q.y, p.y, 1e-9);
      }
    for (const Curve& c : h.tau().curves)
      for (Point p : c.samples()) {
        const Point q = h.apply(h.inverse(p));
        EXPECT_NEAR(q.x, p.x, 1e-9);
        EXPECT_NEAR(q.y, p.y, 1e-9);
      }
    // original vertices land on the other set
    for (Point v : sa.vertex_set()) {
      const Point w = h.apply(v);
      bool on_curve = false;
      for (const Curve& c : sb.curves) on_curve = on_curve || c.distance_to(w) < 1e-9;
      EXPECT_TRUE(on_curve);
    }
  }
}

TEST(Pushforward, AlgebraAndPvar) {
  const HomeoMap h = build_homeo(match_subdivisions(load("lollipop_sigma.json"), load("lollipop_tau.json")));
  testkit::Rng rng(2);
  const auto f = testkit::random_table(rng, testkit::all_samples(h.sigma()));
  const auto g = testkit::random_table(rng, testkit::all_samples(h.sigma()));
  const PlaneFunction pf = pushforward(h, f), pg = pushforward(h, g), pfg = pushforward(h, f * g);
  const PlaneFunction pc = pushforward(h, PlaneFunction::constant(Complex(2, -1)));
  for (const Curve& c : h.tau().curves)
    for (Point q : c.samples()) {
      EXPECT_EQ(pf(q) * pg(q), pfg(q));
      EXPECT_EQ(pc(q), Complex(2, -1));
    }
  for (std::size_t i = 0; i < h.sigma().size(); ++i) {
    EXPECT_NEAR(pvar(f, h.sigma().curves[i]), pvar(pf, h.tau().curves[i]), 1e-12);
    const PlaneFunction back = pullback(h, pf);
    for (Point p : h.sigma().curves[i].samples()) EXPECT_EQ(back(p), f(p));
  }
}
