#pragma once

#include <span>
#include <utility>

#include "pic/mosaic.hpp"
#include "pic/picgraph.hpp"
#include "pic/plane_function.hpp"
#include "pic/variation.hpp"

namespace pic {

/// max |f| over every curve sample.
double sup_norm(const PlaneFunction& f, const PicSet& ps);

/// sup_norm plus the sum of pvar over the curves. Throws InvalidArgument if a
/// curve is not projectable (refine first).
double pic_norm(const PlaneFunction& f, const PicSet& ps);

struct EquivalenceConstants {
  std::size_t M = 0;  // curves
  std::size_t S = 0;  // most sides of a polygon
  double upper_factor = 0.0;
  double K = 0.0;
};

EquivalenceConstants equivalence_constants(std::size_t M, std::size_t S);
EquivalenceConstants equivalence_constants(const PicSet& ps);

/// Bounds on ||f||_BV. The lower bound searches lists drawn from the curve
/// samples and `extra` points; the upper bound is K * pic_norm.
NormBracket bv_bracket(const PlaneFunction& f, const PicSet& ps, const SearchBudget& budget = {},
                       std::span<const Point> extra = {});

/// |pic_norm(f, sigma) - pic_norm(pushforward(f), tau)|
double transport_norm_check(const HomeoMap& h, const PlaneFunction& f);

/// Restrictions of f to two sets lying in disjoint polygon families.
std::pair<PlaneFunction, PlaneFunction> direct_sum_split(const PlaneFunction& f, const PicSet& p, const PicSet& q);
/// The function equal to fp on p's polygons and fq on q's.
PlaneFunction direct_sum_join(const PlaneFunction& fp, const PicSet& p, const PlaneFunction& fq, const PicSet& q);

}  // namespace pic
