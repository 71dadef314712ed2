#include "pic/picgraph.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>

namespace pic {

std::vector<std::size_t> PicGraph::degrees() const {
  std::vector<std::size_t> d(vertices.size(), 0);
  for (const PicEdge& e : edges) {
    ++d[e.u];
    ++d[e.v];
  }
  return d;
}

std::size_t PicGraph::multiplicity(std::size_t a, std::size_t b) const {
  std::size_t n = 0;
  for (const PicEdge& e : edges) n += (e.u == a && e.v == b) || (e.u == b && e.v == a);
  return n;
}

PicGraph extract_graph(const PicSet& ps) {
  PicGraph g;
  g.vertices = ps.vertex_set();
  auto index_of = [&](Point p) {
    for (std::size_t k = 0; k < g.vertices.size(); ++k)
      if (near(p, g.vertices[k])) return k;
    throw GeometryError("curve endpoint missing from the vertex set");
  };
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const std::size_t a = index_of(ps.curves[i].start()), b = index_of(ps.curves[i].end());
    if (a == b) throw GeometryError("curve is a loop");
    g.edges.push_back({a, b, i});
  }
  return g;
}

PicGraph subdivide_edge(const PicGraph& g, std::size_t edge, Point w) {
  if (edge >= g.edges.size()) throw InvalidArgument("edge index out of range");
  for (Point p : g.vertices)
    if (near(p, w)) throw InvalidArgument("split point is an existing vertex");
  PicGraph out = g;
  const std::size_t k = out.vertices.size();
  out.vertices.push_back(w);
  const PicEdge e = g.edges[edge];
  out.edges[edge] = {e.u, k, e.curve};
  out.edges.insert(out.edges.begin() + static_cast<std::ptrdiff_t>(edge) + 1, PicEdge{k, e.v, e.curve});
  return out;
}

// ---------------------------------------------------------------------------
// smoothing

namespace {

std::vector<ChainStep> reversed_chain(std::vector<ChainStep> c) {
  std::reverse(c.begin(), c.end());
  for (ChainStep& s : c) s.reversed = !s.reversed;
  return c;
}

}  // namespace

SmoothedGraph smooth_with_chains(const PicGraph& g) {
  struct WorkEdge {
    std::size_t u, v;
    std::vector<ChainStep> chain;
    bool alive = true;
  };
  std::vector<WorkEdge> work;
  for (std::size_t i = 0; i < g.edges.size(); ++i) work.push_back({g.edges[i].u, g.edges[i].v, {{i, false}}});
  std::vector<bool> removed(g.vertices.size(), false);

  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t w = 0; w < g.vertices.size() && !changed; ++w) {
      if (removed[w]) continue;
      std::vector<std::size_t> inc;
      for (std::size_t i = 0; i < work.size(); ++i)
        if (work[i].alive && (work[i].u == w || work[i].v == w)) inc.push_back(i);
      if (inc.size() != 2) continue;
      WorkEdge& e1 = work[inc[0]];
      WorkEdge& e2 = work[inc[1]];
      const std::size_t a = e1.u == w ? e1.v : e1.u;
      const std::size_t b = e2.u == w ? e2.v : e2.u;
      if (a == b) continue;
      // chain a -> w -> b
      std::vector<ChainStep> chain = e1.v == w ? e1.chain : reversed_chain(e1.chain);
      const auto tail = e2.u == w ? e2.chain : reversed_chain(e2.chain);
      chain.insert(chain.end(), tail.begin(), tail.end());
      e1 = {a, b, std::move(chain)};
      e2.alive = false;
      removed[w] = true;
      changed = true;
    }
  }

  SmoothedGraph s;
  std::vector<std::size_t> new_index(g.vertices.size(), 0);
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    if (removed[v]) continue;
    new_index[v] = s.origin.size();
    s.origin.push_back(v);
    s.graph.vertices.push_back(g.vertices[v]);
  }
  for (const WorkEdge& e : work) {
    if (!e.alive) continue;
    s.graph.edges.push_back({new_index[e.u], new_index[e.v], g.edges[e.chain.front().edge].curve});
    s.chains.push_back(e.chain);
  }
  return s;
}

PicGraph smooth(const PicGraph& g) { return smooth_with_chains(g).graph; }

// ---------------------------------------------------------------------------
// isomorphism

namespace {

bool find_vertex_map(const PicGraph& a, const PicGraph& b, std::vector<std::size_t>& map) {
  const std::size_t n = a.vertices.size();
  const auto da = a.degrees(), db = b.degrees();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return da[x] > da[y]; });

  // multiplicity tables
  auto table = [](const PicGraph& g) {
    const std::size_t m = g.vertices.size();
    std::vector<std::size_t> t(m * m, 0);
    for (const PicEdge& e : g.edges) {
      ++t[e.u * m + e.v];
      ++t[e.v * m + e.u];
    }
    return t;
  };
  const auto ta = table(a), tb = table(b);
  auto neighbour_profile = [](const PicGraph& g, const std::vector<std::size_t>& t,
                              const std::vector<std::size_t>& deg, std::size_t v) {
    const std::size_t m = g.vertices.size();
    std::vector<std::pair<std::size_t, std::size_t>> p;
    for (std::size_t x = 0; x < m; ++x)
      if (t[v * m + x]) p.emplace_back(t[v * m + x], deg[x]);
    std::sort(p.begin(), p.end());
    return p;
  };
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> pa(n), pb(n);
  for (std::size_t v = 0; v < n; ++v) {
    pa[v] = neighbour_profile(a, ta, da, v);
    pb[v] = neighbour_profile(b, tb, db, v);
  }

  map.assign(n, n);
  std::vector<bool> used(n, false);
  std::function<bool(std::size_t)> go = [&](std::size_t depth) {
    if (depth == n) return true;
    const std::size_t u = order[depth];
    for (std::size_t c = 0; c < n; ++c) {
      if (used[c] || db[c] != da[u] || pb[c] != pa[u]) continue;
      bool ok = true;
      for (std::size_t k = 0; k < depth && ok; ++k) {
        const std::size_t x = order[k];
        ok = ta[u * n + x] == tb[c * n + map[x]];
      }
      if (!ok) continue;
      map[u] = c;
      used[c] = true;
      if (go(depth + 1)) return true;
      used[c] = false;
      map[u] = n;
    }
    return false;
  };
  return go(0);
}

}  // namespace

GraphMatch is_homeomorphic(const PicGraph& g1, const PicGraph& g2) {
  GraphMatch m;
  m.a = smooth_with_chains(g1);
  m.b = smooth_with_chains(g2);
  const PicGraph& a = m.a.graph;
  const PicGraph& b = m.b.graph;
  if (a.vertices.size() != b.vertices.size() || a.edges.size() != b.edges.size()) return m;
  auto da = a.degrees(), db = b.degrees();
  std::sort(da.begin(), da.end());
  std::sort(db.begin(), db.end());
  if (da != db) return m;
  if (!find_vertex_map(a, b, m.vertex_map)) {
    m.vertex_map.clear();
    return m;
  }
  std::vector<bool> taken(b.edges.size(), false);
  for (const PicEdge& e : a.edges) {
    const std::size_t fu = m.vertex_map[e.u], fv = m.vertex_map[e.v];
    for (std::size_t j = 0; j < b.edges.size(); ++j) {
      if (taken[j]) continue;
      const PicEdge& f = b.edges[j];
      if (f.u == fu && f.v == fv) m.edge_map.push_back({j, false});
      else if (f.u == fv && f.v == fu) m.edge_map.push_back({j, true});
      else continue;
      taken[j] = true;
      break;
    }
  }
  m.found = m.edge_map.size() == a.edges.size();
  return m;
}

// ---------------------------------------------------------------------------
// matched subdivisions

namespace {

struct ChainPair {
  std::vector<ChainStep> a;  // curves of the first set, oriented like the pair
  std::vector<ChainStep> b;
};

// Splits the longest curve of `chain` in `ps` at its middle sample.
void split_longest(PicSet& ps, std::vector<ChainStep>& chain) {
  std::size_t best = 0;
  double len = -1.0;
  for (std::size_t k = 0; k < chain.size(); ++k) {
    const Curve& c = ps.curves[chain[k].edge];
    if (c.sample_count() >= 3 && c.arc_length() > len) {
      len = c.arc_length();
      best = k;
    }
  }
  if (len < 0) throw GeometryError("no curve left to subdivide");
  const std::size_t i = chain[best].edge;
  const std::size_t n = ps.curves[i].sample_count();
  const std::size_t added = ps.size();
  ps = split_curve(ps, i, (n - 1) / 2);
  const bool rev = chain[best].reversed;
  const ChainStep first{rev ? added : i, rev}, second{rev ? i : added, rev};
  chain[best] = first;
  chain.insert(chain.begin() + static_cast<std::ptrdiff_t>(best) + 1, second);
}

}  // namespace

MatchedSets match_subdivisions(const PicSet& a, const PicSet& b) {
  PicSet ra = refine_simple(a), rb = refine_simple(b);
  const PicGraph ga = extract_graph(ra), gb = extract_graph(rb);
  const GraphMatch m = is_homeomorphic(ga, gb);
  if (!m.found) throw InvalidArgument("the sets are not homeomorphic");

  // Chains in curve indices; b's chain oriented like a's.
  std::vector<ChainPair> pairs;
  for (std::size_t e = 0; e < m.a.chains.size(); ++e) {
    ChainPair p;
    for (ChainStep s : m.a.chains[e]) p.a.push_back({ga.edges[s.edge].curve, s.reversed});
    const ChainStep target = m.edge_map[e];
    auto cb = m.b.chains[target.edge];
    if (target.reversed) cb = reversed_chain(cb);
    for (ChainStep s : cb) p.b.push_back({gb.edges[s.edge].curve, s.reversed});
    pairs.push_back(std::move(p));
  }

  // A degree-2 vertex whose two edges both return to the same neighbour can
  // sit anywhere on that loop; place it to minimise the common refinement.
  const PicGraph& sa = m.a.graph;
  const auto deg = sa.degrees();
  std::vector<bool> done(pairs.size(), false);
  for (std::size_t w = 0; w < sa.vertices.size(); ++w) {
    if (deg[w] != 2) continue;
    std::vector<std::size_t> inc;
    for (std::size_t e = 0; e < sa.edges.size(); ++e)
      if (sa.edges[e].u == w || sa.edges[e].v == w) inc.push_back(e);
    const std::size_t j = sa.edges[inc[0]].u == w ? sa.edges[inc[0]].v : sa.edges[inc[0]].u;
    const std::size_t j2 = sa.edges[inc[1]].u == w ? sa.edges[inc[1]].v : sa.edges[inc[1]].u;
    if (j != j2 || done[inc[0]] || done[inc[1]]) continue;
    // loop j -> w -> j
    auto oriented = [&](std::size_t e, bool from_j) {
      ChainPair p = pairs[e];
      if ((sa.edges[e].u == j) != from_j) {
        p.a = reversed_chain(p.a);
        p.b = reversed_chain(p.b);
      }
      return p;
    };
    ChainPair first = oriented(inc[0], true), second = oriented(inc[1], false);
    std::vector<ChainStep> loop_a = first.a, loop_b = first.b;
    loop_a.insert(loop_a.end(), second.a.begin(), second.a.end());
    loop_b.insert(loop_b.end(), second.b.begin(), second.b.end());
    const std::size_t la = loop_a.size(), lb = loop_b.size();
    std::size_t best_a = first.a.size(), best_c = first.b.size();
    std::size_t best_cost = std::numeric_limits<std::size_t>::max();
    for (std::size_t x = 1; x < la; ++x)
      for (std::size_t c = 1; c < lb; ++c) {
        const std::size_t cost = std::max(x, c) + std::max(la - x, lb - c);
        if (cost < best_cost) {
          best_cost = cost;
          best_a = x;
          best_c = c;
        }
      }
    pairs[inc[0]] = {{loop_a.begin(), loop_a.begin() + static_cast<std::ptrdiff_t>(best_a)},
                     {loop_b.begin(), loop_b.begin() + static_cast<std::ptrdiff_t>(best_c)}};
    pairs[inc[1]] = {{loop_a.begin() + static_cast<std::ptrdiff_t>(best_a), loop_a.end()},
                     {loop_b.begin() + static_cast<std::ptrdiff_t>(best_c), loop_b.end()}};
    done[inc[0]] = done[inc[1]] = true;
  }

  for (ChainPair& p : pairs) {
    while (p.a.size() < p.b.size()) split_longest(ra, p.a);
    while (p.b.size() < p.a.size()) split_longest(rb, p.b);
  }

  MatchedSets out;
  for (const ChainPair& p : pairs) {
    for (std::size_t k = 0; k < p.a.size(); ++k) {
      out.sigma.curves.push_back(ra.curves[p.a[k].edge]);
      out.sigma.mosaic.polygons.push_back(ra.polygon(p.a[k].edge));
      out.tau.curves.push_back(rb.curves[p.b[k].edge]);
      out.tau.mosaic.polygons.push_back(rb.polygon(p.b[k].edge));
      out.reversed.push_back(p.a[k].reversed != p.b[k].reversed);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// homeomorphism

HomeoMap::HomeoMap(PicSet sigma, PicSet tau, std::vector<bool> reversed)
    : sigma_(std::move(sigma)), tau_(std::move(tau)), reversed_(std::move(reversed)) {
  if (sigma_.size() != tau_.size() || reversed_.size() != sigma_.size())
    throw InvalidArgument("homeomorphism needs paired curve lists");
}

Point HomeoMap::transfer(const PicSet& from, const PicSet& to, const std::vector<bool>& rev, Point p) {
  for (std::size_t i = 0; i < from.size(); ++i) {
    const auto s = from.curves[i].samples();
    const auto t = to.curves[i].samples();
    if (s.size() != t.size()) continue;
    for (std::size_t k = 0; k < s.size(); ++k)
      if (s[k] == p) return t[rev[i] ? s.size() - 1 - k : k];
  }
  for (std::size_t i = 0; i < from.size(); ++i) {
    const auto s = from.curves[i].samples();
    const auto t = to.curves[i].samples();
    if (s.size() != t.size()) continue;
    for (std::size_t k = 0; k < s.size(); ++k)
      if (near(s[k], p)) return t[rev[i] ? s.size() - 1 - k : k];
  }
  std::size_t best = 0;
  double bd = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < from.size(); ++i) {
    const double d = from.curves[i].distance_to(p);
    if (d < bd) {
      bd = d;
      best = i;
    }
  }
  const Curve& c = from.curves[best];
  if (!(bd <= kSignTolerance * std::max({1.0, c.arc_length(), norm(p)})))
    throw EvaluationError("point does not lie on the set");
  double u = c.arc_length_to(c.nearest_param(p)) / c.arc_length();
  if (rev[best]) u = 1.0 - u;
  const Curve& d = to.curves[best];
  return d.at(d.param_at_fraction(u));
}

Point HomeoMap::apply(Point p) const { return transfer(sigma_, tau_, reversed_, p); }
Point HomeoMap::inverse(Point q) const { return transfer(tau_, sigma_, reversed_, q); }

HomeoMap build_homeo(const MatchedSets& m, std::size_t samples) {
  if (m.sigma.size() != m.tau.size() || m.reversed.size() != m.sigma.size())
    throw InvalidArgument("matched sets have different sizes");
  PicSet sigma = m.sigma, tau = m.tau;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    const std::size_t n =
        std::max({samples, m.sigma.curves[i].sample_count(), m.tau.curves[i].sample_count()});
    sigma.curves[i] = sigma.curves[i].resampled(n);
    tau.curves[i] = tau.curves[i].resampled(n);
  }
  const auto verts = sigma.vertex_set();
  std::vector<std::optional<Point>> image(verts.size());
  auto index_of = [&](Point p) {
    for (std::size_t k = 0; k < verts.size(); ++k)
      if (near(p, verts[k])) return k;
    throw GeometryError("curve endpoint missing from the vertex set");
  };
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    const Curve& c = sigma.curves[i];
    const Curve& d = tau.curves[i];
    const Point img0 = m.reversed[i] ? d.end() : d.start();
    const Point img1 = m.reversed[i] ? d.start() : d.end();
    for (auto [p, q] : {std::pair{c.start(), img0}, std::pair{c.end(), img1}}) {
      auto& slot = image[index_of(p)];
      if (slot && !near(*slot, q)) throw GeometryError("orientation conflict at a shared endpoint");
      slot = q;
    }
  }
  return HomeoMap(std::move(sigma), std::move(tau), m.reversed);
}

PlaneFunction pushforward(const HomeoMap& h, const PlaneFunction& f) {
  return PlaneFunction([h, f](Point z) { return f(h.inverse(z)); }, "pushforward(" + f.description() + ")");
}

PlaneFunction pullback(const HomeoMap& h, const PlaneFunction& g) {
  return PlaneFunction([h, g](Point z) { return g(h.apply(z)); }, "pullback(" + g.description() + ")");
}

}  // namespace pic
