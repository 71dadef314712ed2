#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "pic/mosaic.hpp"
#include "pic/plane_function.hpp"

namespace pic {

struct PicEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  std::size_t curve = 0;
};

/// Loop-free multigraph whose vertices are curve endpoints and edges are curves.
struct PicGraph {
  std::vector<Point> vertices;
  std::vector<PicEdge> edges;

  std::vector<std::size_t> degrees() const;
  std::size_t multiplicity(std::size_t a, std::size_t b) const;
};

PicGraph extract_graph(const PicSet& ps);

/// Replaces edge `edge` by two edges through the new vertex w; both keep the curve id.
PicGraph subdivide_edge(const PicGraph& g, std::size_t edge, Point w);

/// An original edge traversed forwards or backwards.
struct ChainStep {
  std::size_t edge = 0;
  bool reversed = false;
};

struct SmoothedGraph {
  PicGraph graph;
  std::vector<std::size_t> origin;              // smoothed vertex -> original vertex
  std::vector<std::vector<ChainStep>> chains;   // smoothed edge -> original edges from u to v
};

/// Suppresses degree-2 vertices with two distinct neighbours until none is left.
/// A cycle ends as two vertices joined by two parallel edges.
SmoothedGraph smooth_with_chains(const PicGraph& g);
PicGraph smooth(const PicGraph& g);

struct GraphMatch {
  bool found = false;
  SmoothedGraph a;
  SmoothedGraph b;
  std::vector<std::size_t> vertex_map;  // vertex of a -> vertex of b
  std::vector<ChainStep> edge_map;      // edge of a -> edge of b, reversed if u maps to v
};

/// Multigraph isomorphism of the smoothed graphs.
GraphMatch is_homeomorphic(const PicGraph& g1, const PicGraph& g2);

/// Two refined sets whose curve i correspond; reversed[i] when the start of
/// sigma's curve i matches the end of tau's.
struct MatchedSets {
  PicSet sigma;
  PicSet tau;
  std::vector<bool> reversed;
};

/// Throws InvalidArgument when the sets are not homeomorphic.
MatchedSets match_subdivisions(const PicSet& a, const PicSet& b);

/// Point homeomorphism sigma -> tau, affine in arc length on each curve pair.
class HomeoMap {
 public:
  HomeoMap(PicSet sigma, PicSet tau, std::vector<bool> reversed);

  const PicSet& sigma() const { return sigma_; }
  const PicSet& tau() const { return tau_; }
  const std::vector<bool>& reversed() const { return reversed_; }

  Point apply(Point p) const;
  Point inverse(Point q) const;

 private:
  static Point transfer(const PicSet& from, const PicSet& to, const std::vector<bool>& rev, Point p);

  PicSet sigma_;
  PicSet tau_;
  std::vector<bool> reversed_;
};

/// Resamples every pair to a common grid (at least `samples` points) so grid
/// points correspond exactly; throws GeometryError on inconsistent endpoints.
HomeoMap build_homeo(const MatchedSets& m, std::size_t samples = 0);

/// f o h^-1, a function on tau.
PlaneFunction pushforward(const HomeoMap& h, const PlaneFunction& f);
/// g o h, a function on sigma.
PlaneFunction pullback(const HomeoMap& h, const PlaneFunction& g);

}  // namespace pic
