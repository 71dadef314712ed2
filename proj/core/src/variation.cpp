#include "pic/variation.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace pic {

PointList::PointList(std::vector<Point> points) : points_(std::move(points)) {
  if (points_.empty()) throw InvalidArgument("point list must not be empty");
  for (Point p : points_)
    if (!is_finite(p)) throw InvalidArgument("point list has non-finite coordinates");
  for (std::size_t i = 1; i < points_.size(); ++i)
    if (near(points_[i - 1], points_[i]))
      throw InvalidArgument("consecutive points of a list must differ (index " + std::to_string(i) + ")");
}

PointList PointList::collapsed(std::vector<Point> points) {
  std::vector<Point> out;
  for (Point p : points)
    if (out.empty() || !near(out.back(), p)) out.push_back(p);
  return PointList(std::move(out));
}

int count_crossing_segments(std::span<const int> s) {
  if (s.size() == 1) return s[0] == 0 ? 1 : 0;
  int count = 0;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    const bool opposite = s[i] * s[i + 1] < 0;
    const bool starts_on = i == 0 && s[i] == 0;
    const bool lands_on = s[i] != 0 && s[i + 1] == 0;
    if (opposite || starts_on || lands_on) ++count;
  }
  return count;
}

int vf_on_line(const PointList& list, const Line& line) {
  std::vector<int> s(list.size());
  for (std::size_t i = 0; i < list.size(); ++i) s[i] = side(line, list[i]);
  return count_crossing_segments(s);
}

namespace {

struct Distinct {
  std::vector<Point> points;
  std::vector<std::size_t> index;  // list entry -> distinct point
};

Distinct distinct_points(const PointList& list) {
  Distinct d;
  d.index.reserve(list.size());
  for (Point p : list.points()) {
    std::size_t k = 0;
    while (k < d.points.size() && !near(d.points[k], p)) ++k;
    if (k == d.points.size()) d.points.push_back(p);
    d.index.push_back(k);
  }
  return d;
}

// Sign pattern alpha + beta * s on the base line.
struct Perturbation {
  double alpha = 0.0;
  double beta = 0.0;
  bool identity() const { return alpha == 0.0 && beta == 0.0; }
};

int sign_of(double v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

Line perturbed_line(Point a, Point b, const Perturbation& g, std::span<const Point> pts,
                    std::span<const int> base_sides) {
  const Line base = Line::through(a, b);
  if (g.identity()) return base;
  const Point n = base.normal();
  const Point d = base.direction();
  double d_off = std::numeric_limits<double>::infinity();
  double span = 0.0;
  double gmax = 0.0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const double s = dot(pts[k] - a, d);
    span = std::max(span, std::abs(s));
    gmax = std::max(gmax, std::abs(g.alpha + g.beta * s));
    if (base_sides[k] != 0) d_off = std::min(d_off, std::abs(base.signed_distance(pts[k])));
  }
  if (!std::isfinite(d_off)) d_off = std::max(span, 1.0);
  const double eps = 0.5 * d_off / std::max(gmax, 1e-300);
  const Point n2 = n + (eps * g.beta) * d;
  const Point anchor = a - (eps * g.alpha / dot(n2, n2)) * n2;
  return Line(anchor, n2);
}

}  // namespace

VariationFactor vf_exact(const PointList& list) {
  const Distinct dp = distinct_points(list);
  const std::size_t k = dp.points.size();
  VariationFactor best;
  if (k == 1) {
    best.count = 1;
    best.witness = Line(dp.points[0], Point{0, 1});
    return best;
  }
  best.count = -1;

  std::vector<int> base(k), pattern(k), entry(list.size());
  std::vector<std::size_t> on_line;
  std::vector<double> pos(k);

  auto evaluate = [&](std::size_t a, std::size_t b, const Perturbation& g) {
    for (std::size_t i = 0; i < k; ++i)
      pattern[i] = base[i] != 0 ? base[i] : sign_of(g.alpha + g.beta * pos[i]);
    for (std::size_t i = 0; i < list.size(); ++i) entry[i] = pattern[dp.index[i]];
    const int c = count_crossing_segments(entry);
    if (c > best.count) {
      best.count = c;
      best.witness = perturbed_line(dp.points[a], dp.points[b], g, dp.points, base);
    }
  };

  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      const Point pa = dp.points[a], pb = dp.points[b];
      const Point dir = (pb - pa) / distance(pa, pb);
      on_line.clear();
      for (std::size_t i = 0; i < k; ++i) {
        base[i] = (i == a || i == b) ? 0 : orient(pa, pb, dp.points[i]);
        pos[i] = dot(dp.points[i] - pa, dir);
        if (base[i] == 0) on_line.push_back(i);
      }
      std::sort(on_line.begin(), on_line.end(), [&](std::size_t u, std::size_t v) { return pos[u] < pos[v]; });

      evaluate(a, b, {});
      evaluate(a, b, {1.0, 0.0});
      evaluate(a, b, {-1.0, 0.0});
      for (std::size_t j = 0; j < on_line.size(); ++j) {
        const double at = pos[on_line[j]];
        evaluate(a, b, {-at, 1.0});
        evaluate(a, b, {at, -1.0});
        if (j + 1 < on_line.size()) {
          const double mid = 0.5 * (at + pos[on_line[j + 1]]);
          evaluate(a, b, {-mid, 1.0});
          evaluate(a, b, {mid, -1.0});
        }
      }
    }
  }
  return best;
}

double cvar(std::span<const Complex> values) {
  double s = 0.0;
  for (std::size_t i = 1; i < values.size(); ++i) s += std::abs(values[i] - values[i - 1]);
  return s;
}

double cvar(const PlaneFunction& f, const PointList& list) {
  std::vector<Complex> v;
  v.reserve(list.size());
  for (Point p : list.points()) v.push_back(f(p));
  return cvar(v);
}

// ---------------------------------------------------------------------------
// var_lower

namespace {

class ListSearch {
 public:
  ListSearch(std::vector<Point> pts, std::vector<Complex> values, const SearchBudget& budget)
      : pts_(std::move(pts)), values_(std::move(values)), budget_(budget) {}

  double evaluate(const std::vector<std::size_t>& idx) {
    std::vector<Point> p;
    std::vector<Complex> v;
    p.reserve(idx.size());
    v.reserve(idx.size());
    for (std::size_t i : idx) {
      p.push_back(pts_[i]);
      v.push_back(values_[i]);
    }
    PointList list(std::move(p));
    const double c = cvar(v);
    const int vf = vf_exact(list).count;
    ++result_.lists_evaluated;
    if (budget_.observer) budget_.observer(list, c, vf);
    const double ratio = c / vf;
    if (ratio > result_.value || !result_.witness) {
      result_.value = ratio;
      result_.witness = std::move(list);
    }
    return ratio;
  }

  void exhaustive() {
    result_.exhaustive = true;
    std::vector<std::size_t> idx;
    enumerate(idx);
  }

  void climb(std::vector<std::size_t> idx, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const std::size_t k = pts_.size();
    auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
    double current = evaluate(idx);
    for (int it = 0; it < budget_.iterations; ++it) {
      std::vector<std::size_t> next = idx;
      switch (pick(4)) {
        case 0:  // add
          if (next.size() >= std::max(budget_.max_len, idx.size())) continue;
          next.insert(next.begin() + static_cast<std::ptrdiff_t>(pick(next.size() + 1)), pick(k));
          break;
        case 1:  // remove
          if (next.size() <= 1) continue;
          next.erase(next.begin() + static_cast<std::ptrdiff_t>(pick(next.size())));
          break;
        case 2:  // replace
          next[pick(next.size())] = pick(k);
          break;
        default:  // reorder
          if (next.size() < 2) continue;
          {
            const std::size_t i = pick(next.size() - 1);
            std::swap(next[i], next[i + 1]);
          }
          break;
      }
      if (!consecutive_distinct(next)) continue;
      const double r = evaluate(next);
      if (r >= current) {
        current = r;
        idx = std::move(next);
      }
    }
  }

  std::vector<std::size_t> random_start(std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    const std::size_t k = pts_.size();
    const std::size_t len =
        std::uniform_int_distribution<std::size_t>(std::min<std::size_t>(2, budget_.max_len), budget_.max_len)(rng);
    std::vector<std::size_t> idx;
    while (idx.size() < len) {
      const std::size_t p = std::uniform_int_distribution<std::size_t>(0, k - 1)(rng);
      if (!idx.empty() && p == idx.back()) continue;
      idx.push_back(p);
    }
    return idx;
  }

  VarLowerResult take() { return std::move(result_); }

 private:
  bool consecutive_distinct(const std::vector<std::size_t>& idx) const {
    for (std::size_t i = 1; i < idx.size(); ++i)
      if (idx[i] == idx[i - 1]) return false;
    return !idx.empty();
  }

  void enumerate(std::vector<std::size_t>& idx) {
    if (!idx.empty()) evaluate(idx);
    if (idx.size() == budget_.max_len) return;
    for (std::size_t p = 0; p < pts_.size(); ++p) {
      if (!idx.empty() && idx.back() == p) continue;
      idx.push_back(p);
      enumerate(idx);
      idx.pop_back();
    }
  }

  std::vector<Point> pts_;
  std::vector<Complex> values_;
  const SearchBudget& budget_;
  VarLowerResult result_;
};

std::uint64_t list_count(std::size_t k, std::size_t max_len, std::uint64_t cap) {
  std::uint64_t total = 0, level = k;
  for (std::size_t len = 1; len <= max_len; ++len) {
    total += level;
    if (total > cap) return cap + 1;
    level *= (k > 1 ? k - 1 : 0);
    if (level > cap) level = cap + 1;
  }
  return total;
}

}  // namespace

VarLowerResult var_lower(const PlaneFunction& f, std::span<const Point> candidates, const SearchBudget& budget) {
  if (candidates.empty()) throw InvalidArgument("var_lower needs a nonempty candidate set");
  if (budget.max_len == 0) throw InvalidArgument("max list length must be positive");

  std::vector<Point> pts;
  auto index_of = [&](Point p) {
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (near(pts[i], p)) return i;
    pts.push_back(p);
    return pts.size() - 1;
  };
  for (Point p : candidates) index_of(p);
  std::vector<std::vector<std::size_t>> seeds;
  for (const PointList& l : budget.initial_lists) {
    std::vector<std::size_t> idx;
    for (Point p : l.points()) idx.push_back(index_of(p));
    seeds.push_back(std::move(idx));
  }
  std::vector<Complex> values;
  values.reserve(pts.size());
  for (Point p : pts) values.push_back(f(p));

  ListSearch search(pts, values, budget);
  for (const auto& s : seeds) search.evaluate(s);

  if (list_count(pts.size(), budget.max_len, budget.exhaustive_cap) <= budget.exhaustive_cap) {
    search.exhaustive();
  } else if (pts.size() > 1) {
    constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
    std::vector<std::vector<std::size_t>> starts;
    for (const auto& s : seeds)
      if (s.size() <= budget.max_len) starts.push_back(s);
    for (int r = 0; r < budget.restarts; ++r) {
      const std::uint64_t seed = budget.seed ^ (kGolden * static_cast<std::uint64_t>(r + 1));
      auto start = static_cast<std::size_t>(r) < starts.size() ? starts[static_cast<std::size_t>(r)]
                                                                : search.random_start(seed);
      search.climb(std::move(start), seed + 1);
    }
  } else {
    search.evaluate({0});
  }
  return search.take();
}

}  // namespace pic
