#include <gtest/gtest.h>

#include "pic/variation.hpp"
#include "testkit.hpp"

using namespace pic;

namespace {

const std::vector<Point> kDashed = {{0.5, 0.5}, {1, 0.5}, {1.5, 0.5}, {2 + 1 / 1.2, 0.5}, {3 + 0.65 / 1.15, 0.5},
                                    {4 + 1 / 1.2, 0.5}};

// 1 on the three "red" entries of the dashed list, 0 on the rest.
PlaneFunction dashed_indicator() {
  std::vector<std::pair<Point, Complex>> e;
  for (std::size_t i = 0; i < kDashed.size(); ++i) e.emplace_back(kDashed[i], i % 2 == 0 ? 1.0 : 0.0);
  return PlaneFunction::table(e);
}

}  // namespace

TEST(PointList, Invariants) {
  EXPECT_THROW(PointList({}), InvalidArgument);
  EXPECT_THROW(PointList({{0, 0}, {0, 0}}), InvalidArgument);
  EXPECT_NO_THROW(PointList({{0, 0}, {1, 0}, {0, 0}}));
  EXPECT_EQ(PointList::collapsed({{0, 0}, {0, 0}, {1, 1}}).size(), 2u);
}

TEST(VfOnLine, CrossingRules) {
  const Line x_axis({0, 0}, {0, 1});
  EXPECT_EQ(vf_on_line(PointList({{0, -1}, {0, 1}}), x_axis), 1);
  EXPECT_EQ(vf_on_line(PointList({{3, 0}}), x_axis), 1);
  EXPECT_EQ(vf_on_line(PointList({{3, 1}}), x_axis), 0);
  EXPECT_EQ(vf_on_line(PointList(kDashed), Line({0, 0.5}, {0, 1})), 1);
  // starts on the line, leaves, lands back on it
  EXPECT_EQ(vf_on_line(PointList({{0, 0}, {1, 1}, {2, 0}}), x_axis), 2);
  // touching from one side and leaving again to the same side counts once
  EXPECT_EQ(vf_on_line(PointList({{0, 1}, {1, 0}, {2, 1}}), x_axis), 1);
}

TEST(CountCrossingSegments, TableOfPatterns) {
  EXPECT_EQ(count_crossing_segments(std::vector<int>{0}), 1);
  EXPECT_EQ(count_crossing_segments(std::vector<int>{1}), 0);
  EXPECT_EQ(count_crossing_segments(std::vector<int>{1, -1, 1}), 2);
  EXPECT_EQ(count_crossing_segments(std::vector<int>{0, 0, 0}), 1);
  EXPECT_EQ(count_crossing_segments(std::vector<int>{1, 0, -1}), 1);
  EXPECT_EQ(count_crossing_segments(std::vector<int>{0, 1, 0, -1}), 2);
}

TEST(VfExact, Examples) {
  const auto zig = vf_exact(PointList({{0, -1}, {1, 1}, {2, -1}, {3, 1}}));
  EXPECT_EQ(zig.count, 3);
  EXPECT_EQ(vf_on_line(PointList({{0, -1}, {1, 1}, {2, -1}, {3, 1}}), zig.witness), 3);
  EXPECT_EQ(vf_exact(PointList({{0, 0}, {1, 2}})).count, 1);
  EXPECT_EQ(vf_exact(PointList({{0, 0}})).count, 1);
  EXPECT_EQ(vf_exact(PointList(kDashed)).count, 1);
}

TEST(VfExact, WitnessRealisesCount) {
  testkit::Rng rng(11);
  for (int k = 0; k < 200; ++k) {
    const auto pool = testkit::random_points(rng, 6);
    const PointList l = testkit::random_list(rng, pool, 2 + testkit::index(rng, 8));
    const auto v = vf_exact(l);
    EXPECT_EQ(vf_on_line(l, v.witness), v.count);
    EXPECT_GE(v.count, 1);
    EXPECT_LE(v.count, static_cast<int>(l.segments()));
  }
}

TEST(VfExact, ConvexSampleAtMostTwo) {
  std::vector<Point> s;
  for (int i = 0; i <= 40; ++i) {
    const double t = std::numbers::pi * i / 40;
    s.push_back({std::cos(t), std::sin(t)});
  }
  EXPECT_LE(vf_exact(PointList(s)).count, 2);
}

TEST(VfExact, DegenerateCollinearAndRepeatedPoints) {
  EXPECT_EQ(vf_exact(PointList({{0, 0}, {1, 0}, {2, 0}, {3, 0}})).count, 1);
  EXPECT_EQ(vf_exact(PointList({{0, 0}, {1, 0}, {0, 0}, {1, 0}})).count, 3);
  // lattice points with many collinear triples
  std::vector<Point> grid;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) grid.push_back({double(i), double(j)});
  testkit::Rng rng(5);
  for (int k = 0; k < 100; ++k) {
    const PointList l = testkit::random_list(rng, grid, 6);
    EXPECT_GE(vf_exact(l).count, testkit::vf_random_lines(l, 3000, rng));
  }
}

TEST(Cvar, Examples) {
  EXPECT_DOUBLE_EQ(cvar(PlaneFunction::constant(2.0), PointList(kDashed)), 0.0);
  EXPECT_DOUBLE_EQ(cvar(dashed_indicator(), PointList(kDashed)), 5.0);
  const auto f = PlaneFunction::table({{{0, 0}, 0.0}, {{1, 0}, Complex(3, 4)}});
  EXPECT_DOUBLE_EQ(cvar(f, PointList({{0, 0}, {1, 0}})), 5.0);
  EXPECT_DOUBLE_EQ(cvar(f, PointList({{0, 0}})), 0.0);
}

TEST(VarLower, Examples) {
  EXPECT_DOUBLE_EQ(var_lower(PlaneFunction::constant(1.0), kDashed).value, 0.0);
  const auto r = var_lower(dashed_indicator(), kDashed);
  EXPECT_GE(r.value, 5.0);
  ASSERT_TRUE(r.witness);

  const std::vector<Point> ab = {{0, 0}, {1, 0}};
  SearchBudget b;
  b.max_len = 4;
  const auto ind = PlaneFunction::table({{ab[0], 1.0}, {ab[1], 0.0}});
  const auto e = var_lower(ind, ab, b);
  EXPECT_TRUE(e.exhaustive);
  EXPECT_DOUBLE_EQ(e.value, 1.0);
  EXPECT_THROW(var_lower(ind, std::vector<Point>{}), InvalidArgument);
}

TEST(VarLower, DeterministicForSeed) {
  testkit::Rng rng(2);
  const auto pool = testkit::random_points(rng, 40);
  const auto f = testkit::random_table(rng, pool);
  SearchBudget b;
  b.seed = 77;
  b.restarts = 4;
  b.iterations = 100;
  const auto r1 = var_lower(f, pool, b), r2 = var_lower(f, pool, b);
  EXPECT_FALSE(r1.exhaustive);
  EXPECT_EQ(r1.value, r2.value);
  EXPECT_EQ(r1.lists_evaluated, r2.lists_evaluated);
}

TEST(VarLower, ObserverSeesEveryList) {
  const std::vector<Point> pts = {{0, 0}, {1, 0}, {0, 1}};
  SearchBudget b;
  b.max_len = 3;
  std::size_t seen = 0;
  b.observer = [&](const PointList& l, double c, int vf) {
    ++seen;
    EXPECT_LE(c / vf, 2.0 + 1e-12);
    EXPECT_GE(vf, 1);
    EXPECT_LE(l.size(), 3u);
  };
  const auto f = PlaneFunction::table({{pts[0], 0.0}, {pts[1], 1.0}, {pts[2], 0.0}});
  const auto r = var_lower(f, pts, b);
  EXPECT_EQ(seen, r.lists_evaluated);
  EXPECT_EQ(seen, 3u + 6u + 12u);
}

TEST(VarLower, SubmultiplicativeOnExhaustiveFamily) {
  testkit::Rng rng(9);
  for (int k = 0; k < 10; ++k) {
    const auto pts = testkit::random_points(rng, 4);
    const auto f = testkit::random_table(rng, pts), g = testkit::random_table(rng, pts);
    SearchBudget b;
    b.max_len = 4;
    double sf = 0, sg = 0;
    for (Point p : pts) {
      sf = std::max(sf, std::abs(f(p)));
      sg = std::max(sg, std::abs(g(p)));
    }
    const double lhs = var_lower(f * g, pts, b).value;
    const double rhs = sf * var_lower(g, pts, b).value + sg * var_lower(f, pts, b).value;
    EXPECT_LE(lhs, rhs + 1e-12);
  }
}

TEST(VfExact, SublistMonotone) {
  testkit::Rng rng(21);
  for (int k = 0; k < 200; ++k) {
    const auto pool = testkit::random_points(rng, 5);
    const PointList l = testkit::random_list(rng, pool, 7);
    std::vector<Point> sub;
    for (Point p : l.points())
      if (testkit::uniform(rng, 0, 1) < 0.6) sub.push_back(p);
    if (sub.empty()) continue;
    EXPECT_LE(vf_exact(PointList::collapsed(sub)).count, vf_exact(l).count);
  }
}
