#include <gtest/gtest.h>

#include <set>

#include "pic/mosaic.hpp"
#include "spec_file.hpp"
#include "testkit.hpp"

using namespace pic;

namespace {

ConvexPolygon square(double x0 = 0, double y0 = 0, double s = 1) {
  return ConvexPolygon({{x0, y0}, {x0 + s, y0}, {x0 + s, y0 + s}, {x0, y0 + s}});
}

bool has(const ValidationReport& r, const std::string& msg) {
  for (const auto& v : r.violations)
    if (v.message == msg) return true;
  return false;
}

PicSet load(const std::string& name) { return cli::parse_spec_file(testkit::fixture(name)).set; }

}  // namespace

TEST(Validate, Fixtures) {
  for (const char* f : {"bad_bv_ex.json", "square_cycle.json", "square.json", "triangle.json", "zigzag.json",
                        "plus.json", "segment.json", "lollipop_sigma.json", "lollipop_tau.json", "two_arcs.json"})
    EXPECT_TRUE(validate(load(f)).ok()) << f << "\n" << validate(load(f)).to_string();
}

TEST(Validate, OverlappingInteriors) {
  Mosaic m{{square(), square(0.5, 0.5)}};
  const auto r = validate(m);
  EXPECT_TRUE(has(r, "interiors overlap"));
  ASSERT_FALSE(r.violations.empty());
  EXPECT_EQ(r.violations[0].polygons, (std::vector<std::size_t>{0, 1}));
}

TEST(Validate, SideContactRules) {
  EXPECT_TRUE(validate(Mosaic{{square(), square(1, 0)}}).ok());
  EXPECT_TRUE(validate(Mosaic{{square(), square(1, 1)}}).ok());
  EXPECT_TRUE(has(validate(Mosaic{{square(), square(1, 0.5)}}), "shared boundary is not a full side"));
  EXPECT_TRUE(has(validate(Mosaic{{square(), square(3, 0)}}), "mosaic is not connected"));
  const ConvexPolygon tri({{1, 0.5}, {2, 0}, {2, 1}});
  EXPECT_TRUE(has(validate(Mosaic{{square(), tri}}), "polygons meet away from a common vertex"));
}

TEST(Validate, CurveTouchingBoundary) {
  // an arc through the midpoint of the top side
  PicSet ps;
  ps.mosaic.polygons = {ConvexPolygon({{0, 0}, {2, 0}, {2, 1}, {0, 1}})};
  ps.curves = {Curve::parabolic_arc({0, 0}, {1, 2}, {2, 0}, 33)};
  EXPECT_TRUE(has(validate(ps), "curve touches boundary off-vertex"));
  ps.curves = {Curve::parabolic_arc({0, 0}, {1, 3}, {2, 0}, 33)};
  EXPECT_TRUE(has(validate(ps), "curve leaves its polygon"));
  ps.curves = {Curve::parabolic_arc({0, 0}, {1, 1}, {2, 0}, 33)};
  EXPECT_FALSE(has(validate(ps), "curve touches boundary off-vertex"));
  EXPECT_TRUE(validate(ps).ok()) << validate(ps).to_string();
}

TEST(Validate, CurveEndpointsAndConnectivity) {
  PicSet ps;
  ps.mosaic.polygons = {square()};
  ps.curves = {Curve::segment({0, 0}, {0.5, 0.5})};
  EXPECT_TRUE(has(validate(ps), "curve endpoint is not a polygon vertex"));
  ps.mosaic.polygons = {square(), square(2, 0)};
  ps.curves = {Curve::segment({0, 0}, {1, 1}), Curve::segment({2, 0}, {3, 1})};
  EXPECT_TRUE(has(validate(ps), "curves are not connected"));
  ps.curves.pop_back();
  EXPECT_TRUE(has(validate(ps), "curve and polygon counts differ"));
}

TEST(Validate, TangentialContactRejected) {
  // y = x^2 and y = x^3 on [0, 1] touch at 0 with a common tangent
  std::vector<Point> p2, p3;
  for (int i = 0; i <= 40; ++i) {
    const double x = i / 40.0;
    p2.push_back({x, x * x});
    p3.push_back({x, x * x * x});
  }
  PicSet ps;
  ps.curves = {Curve::polyline(p2), Curve::polyline(p3)};
  ps.mosaic.polygons = {ConvexPolygon({{0, 0}, {1, 1}, {0, 1}}), ConvexPolygon({{0, 0}, {1, 0}, {1, 1}})};
  EXPECT_FALSE(validate(ps).ok());
}

TEST(SidesMax, Examples) {
  EXPECT_EQ(sides_max(Mosaic{{ConvexPolygon({{0, 0}, {1, 0}, {0, 1}}), ConvexPolygon({{1, 0}, {1, 1}, {0, 1}})}}), 3u);
  std::vector<Point> pent, hex;
  for (int i = 0; i < 5; ++i) pent.push_back({3 + std::cos(2 * std::numbers::pi * i / 5), std::sin(2 * std::numbers::pi * i / 5)});
  for (int i = 0; i < 6; ++i) hex.push_back({std::cos(std::numbers::pi * i / 3), std::sin(std::numbers::pi * i / 3)});
  EXPECT_EQ(sides_max(Mosaic{{square(), ConvexPolygon(pent)}}), 5u);
  EXPECT_EQ(sides_max(Mosaic{{ConvexPolygon(hex)}}), 6u);
  EXPECT_THROW(sides_max(Mosaic{}), InvalidArgument);
}

TEST(PartitionAt, SquareDiagonal) {
  const ConvexPolygon P = square();
  const Curve c = Curve::segment({0, 0}, {1, 1}, 33);
  const auto [P1, P2] = partition_at(P, c, {0.5, 0.5});
  EXPECT_TRUE(check_partition(P, c, {0.5, 0.5}, P1, P2).empty());
  EXPECT_TRUE(P1.vertex_index({0.5, 0.5}));
  EXPECT_TRUE(P2.vertex_index({0.5, 0.5}));
  EXPECT_TRUE(P1.vertex_index({0, 0}));
  EXPECT_TRUE(P2.vertex_index({1, 1}));
  EXPECT_NEAR(P1.area() + P2.area(), 1.0, 1e-12);
}

TEST(PartitionAt, ParabolaBetweenOppositeCorners) {
  const ConvexPolygon P = square();
  const Curve c = Curve::parabolic_arc({0, 0}, {0.8, 0.2}, {1, 1}, 41);
  const Point v = c.samples()[20];
  const auto [P1, P2] = partition_at(P, c, v);
  const auto fails = check_partition(P, c, v, P1, P2);
  EXPECT_TRUE(fails.empty()) << fails.front();
  EXPECT_NEAR(P1.area() + P2.area(), 1.0, 1e-12);
}

TEST(PartitionAt, Errors) {
  const Curve c = Curve::segment({0, 0}, {1, 1}, 33);
  EXPECT_ANY_THROW(partition_at(square(), c, {0.5, 0.4}));
  EXPECT_ANY_THROW(partition_at(square(), c, {0, 0}));
}

TEST(PartitionAt, RandomTriples) {
  testkit::Rng rng(17);
  for (int k = 0; k < 40; ++k) {
    const ConvexPolygon P = testkit::random_convex_polygon(rng, 3 + testkit::index(rng, 5));
    const std::size_t i = testkit::index(rng, P.size());
    const std::size_t j = (i + 1 + testkit::index(rng, P.size() - 1)) % P.size();
    const Curve c = testkit::random_curve_in(rng, P, i, j, 48);
    const Point v = c.samples()[1 + testkit::index(rng, 46)];
    const auto [P1, P2] = partition_at(P, c, v);
    const auto fails = check_partition(P, c, v, P1, P2);
    EXPECT_TRUE(fails.empty()) << k << ": " << fails.front();
    EXPECT_NEAR(P1.area() + P2.area(), P.area(), 1e-9 * P.area());
  }
}

TEST(RefineSimple, TwoArcs) {
  const PicSet ps = load("two_arcs.json");
  const PicSet r = refine_simple(ps);
  EXPECT_EQ(r.size(), 4u);
  EXPECT_TRUE(validate(r).ok()) << validate(r).to_string();
  std::set<std::pair<std::pair<double, double>, std::pair<double, double>>> pairs;
  for (const Curve& c : r.curves) {
    EXPECT_TRUE(is_projectable(c));
    auto a = std::make_pair(c.start().x, c.start().y), b = std::make_pair(c.end().x, c.end().y);
    if (b < a) std::swap(a, b);
    EXPECT_TRUE(pairs.insert({a, b}).second);
  }
  const PicSet again = refine_simple(r);
  ASSERT_EQ(again.size(), r.size());
  for (std::size_t i = 0; i < r.size(); ++i) EXPECT_EQ(again.polygon(i), r.polygon(i));
}

TEST(RefineSimple, SimpleInputUnchanged) {
  const PicSet ps = load("square_cycle.json");
  const PicSet r = refine_simple(ps);
  ASSERT_EQ(r.size(), ps.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    EXPECT_EQ(r.polygon(i), ps.polygon(i));
    EXPECT_EQ(r.curves[i].sample_count(), ps.curves[i].sample_count());
  }
}

TEST(RefineSimple, RandomStripsStayValidAndCoverSameSet) {
  testkit::Rng rng(23);
  for (int k = 0; k < 15; ++k) {
    const PicSet ps = testkit::random_strip_set(rng, 2 + testkit::index(rng, 4));
    ASSERT_TRUE(validate(ps).ok()) << validate(ps).to_string();
    const PicSet r = refine_simple(ps);
    EXPECT_TRUE(validate(r).ok()) << validate(r).to_string();
    for (const Curve& c : r.curves) EXPECT_TRUE(is_projectable(c));
    // same points, same total length
    double la = 0, lb = 0;
    for (const Curve& c : ps.curves) la += c.arc_length();
    for (const Curve& c : r.curves) lb += c.arc_length();
    EXPECT_NEAR(la, lb, 1e-9 * la);
    for (const Curve& c : r.curves)
      for (Point p : c.samples()) {
        double d = 1e9;
        for (const Curve& o : ps.curves) d = std::min(d, o.distance_to(p));
        EXPECT_LT(d, 1e-9);
      }
  }
}

TEST(SplitCurve, KeepsMosaicValid) {
  const PicSet ps = load("square_cycle.json");
  const PicSet r = split_curve(ps, 0, ps.curves[0].sample_count() / 2);
  EXPECT_EQ(r.size(), ps.size() + 1);
  EXPECT_TRUE(validate(r).ok()) << validate(r).to_string();
  EXPECT_EQ(r.curves[0].start(), ps.curves[0].start());
  EXPECT_EQ(r.curves.back().end(), ps.curves[0].end());
}
