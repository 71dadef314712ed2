#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pic/geom.hpp"
#include "pic/plane_function.hpp"

namespace pic {

/// A finite ordered list [x_0, ..., x_n] of plane points. Entries may repeat
/// but consecutive entries must differ.
class PointList {
 public:
  explicit PointList(std::vector<Point> points);

  std::span<const Point> points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  /// Number of segments, n.
  std::size_t segments() const { return points_.size() - 1; }
  Point operator[](std::size_t i) const { return points_[i]; }

  /// Drops entries that repeat their predecessor; throws if nothing is left.
  static PointList collapsed(std::vector<Point> points);

 private:
  std::vector<Point> points_;
};

/// Number of crossing segments of `list` on `line`.
int vf_on_line(const PointList& list, const Line& line);

/// Crossing count for a list given the side (-1, 0, +1) of every entry.
int count_crossing_segments(std::span<const int> sides);

struct VariationFactor {
  int count = 1;
  Line witness{Point{0, 0}, Point{0, 1}};  // a line realising `count`
};

/// The variation factor max over lines of vf_on_line.
///
/// A line's crossing count depends only on which side of it each point lies.
/// Every realisable side pattern is obtained from a line through two distinct
/// points of the list, perturbed infinitesimally: points on the base line take
/// the sign of alpha + beta * s, s their position along it. The perturbations
/// are enumerated symbolically, so no step size enters the count; a concrete
/// perturbed line is produced only as the witness.
VariationFactor vf_exact(const PointList& list);

/// sum_i |f(x_i) - f(x_{i-1})|; zero for a singleton list.
double cvar(const PlaneFunction& f, const PointList& list);
double cvar(std::span<const Complex> values);

/// Certified bounds on a norm, with where each bound came from.
struct NormBracket {
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  std::optional<PointList> lower_witness;
  std::string upper_provenance;
};

/// Limits for the list search behind var_lower.
struct SearchBudget {
  std::size_t max_len = 8;
  /// Exhaustive enumeration is used when the number of candidate lists is at most this.
  std::uint64_t exhaustive_cap = 200000;
  int restarts = 32;
  int iterations = 400;
  std::uint64_t seed = 0;
  /// Evaluated verbatim (any length); those within max_len also seed the hill climbing.
  std::vector<PointList> initial_lists;
  /// Called for every list evaluated.
  std::function<void(const PointList&, double cvar, int vf)> observer;
};

struct VarLowerResult {
  double value = 0.0;
  std::optional<PointList> witness;
  std::size_t lists_evaluated = 0;
  bool exhaustive = false;
};

/// A lower bound for var(f, sigma): the best cvar(f, S) / vf(S) over the
/// searched lists S with entries from `candidates`.
VarLowerResult var_lower(const PlaneFunction& f, std::span<const Point> candidates,
                         const SearchBudget& budget = {});

}  // namespace pic
