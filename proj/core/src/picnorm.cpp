#include "pic/picnorm.hpp"

#include <algorithm>
#include <sstream>

namespace pic {

double sup_norm(const PlaneFunction& f, const PicSet& ps) {
  double s = 0.0;
  for (const Curve& c : ps.curves)
    for (Point p : c.samples()) s = std::max(s, std::abs(f(p)));
  return s;
}

double pic_norm(const PlaneFunction& f, const PicSet& ps) {
  for (std::size_t i = 0; i < ps.size(); ++i)
    if (!is_projectable(ps.curves[i]))
      throw InvalidArgument("curve " + std::to_string(i) + " is not projectable; refine first");
  double total = sup_norm(f, ps);
  for (const Curve& c : ps.curves) total += pvar(f, c);
  return total;
}

EquivalenceConstants equivalence_constants(std::size_t M, std::size_t S) {
  if (M == 0) throw InvalidArgument("no curves");
  EquivalenceConstants k;
  k.M = M;
  k.S = S;
  k.upper_factor = 2.0 * static_cast<double>(M);
  k.K = static_cast<double>(M) + 2.0 * static_cast<double>(M - 1) * static_cast<double>(S);
  return k;
}

EquivalenceConstants equivalence_constants(const PicSet& ps) {
  return equivalence_constants(ps.size(), sides_max(ps.mosaic));
}

NormBracket bv_bracket(const PlaneFunction& f, const PicSet& ps, const SearchBudget& budget,
                       std::span<const Point> extra) {
  std::vector<Point> candidates = ps.sample_points();
  candidates.insert(candidates.end(), extra.begin(), extra.end());
  for (const PointList& l : budget.initial_lists)
    candidates.insert(candidates.end(), l.points().begin(), l.points().end());
  VarLowerResult v = var_lower(f, candidates, budget);
  // each curve's own samples in order: cvar is pvar there and vf is at most 2
  for (const Curve& c : ps.curves) {
    const PointList l(std::vector<Point>(c.samples().begin(), c.samples().end()));
    const double cv = cvar(f, l);
    const int vf = vf_exact(l).count;
    if (budget.observer) budget.observer(l, cv, vf);
    if (cv / vf > v.value) {
      v.value = cv / vf;
      v.witness = l;
    }
  }
  double sup = sup_norm(f, ps);
  for (Point p : extra) sup = std::max(sup, std::abs(f(p)));

  NormBracket b;
  b.lower = sup + v.value;
  b.lower_witness = v.witness;
  const EquivalenceConstants k = equivalence_constants(ps);
  b.upper = k.K * pic_norm(f, ps);
  std::ostringstream os;
  os << "K * pic_norm with M = " << k.M << ", S = " << k.S << ", K = " << k.K;
  b.upper_provenance = os.str();
  return b;
}

double transport_norm_check(const HomeoMap& h, const PlaneFunction& f) {
  return std::abs(pic_norm(f, h.sigma()) - pic_norm(pushforward(h, f), h.tau()));
}

namespace {

bool inside(const PicSet& ps, Point z) {
  for (const auto& P : ps.mosaic.polygons)
    if (P.contains(z)) return true;
  return false;
}

void require_disjoint(const PicSet& p, const PicSet& q) {
  for (const auto& P : p.mosaic.polygons)
    for (const auto& Q : q.mosaic.polygons)
      if (intersect(P, Q).kind != PolygonIntersection::Kind::empty)
        throw InvalidArgument("the two sets do not lie in disjoint polygons");
}

PlaneFunction restrict_to(const PlaneFunction& f, const PicSet& ps) {
  return PlaneFunction(
      [f, ps](Point z) {
        if (!inside(ps, z)) throw EvaluationError("point outside the restricted domain");
        return f(z);
      },
      "restrict(" + f.description() + ")");
}

}  // namespace

std::pair<PlaneFunction, PlaneFunction> direct_sum_split(const PlaneFunction& f, const PicSet& p, const PicSet& q) {
  require_disjoint(p, q);
  return {restrict_to(f, p), restrict_to(f, q)};
}

PlaneFunction direct_sum_join(const PlaneFunction& fp, const PicSet& p, const PlaneFunction& fq, const PicSet& q) {
  require_disjoint(p, q);
  return PlaneFunction(
      [fp, fq, p, q](Point z) {
        if (inside(p, z)) return fp(z);
        if (inside(q, z)) return fq(z);
        throw EvaluationError("point outside both domains");
      },
      "join(" + fp.description() + ", " + fq.description() + ")");
}

}  // namespace pic
