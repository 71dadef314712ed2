#pragma once

#include <cstdint>
#include <map>
#include <utility>

#include "pic/curve.hpp"
#include "pic/geom.hpp"
#include "pic/mosaic.hpp"
#include "pic/plane_function.hpp"

namespace pic {

/// sum c_nm x^n y^m with finitely many nonzero coefficients, keyed by (n, m).
struct Poly2 {
  std::map<std::pair<int, int>, Complex> coeffs;

  int degree() const;
  PlaneFunction as_function() const;
};

Complex poly_eval(const Poly2& p, Point z);

/// Piecewise-linear ramp: 0 up to eps/2, 1 from eps on.
double g_eps(double t, double eps);

/// g_eps of the signed distance to the half-plane's boundary.
PlaneFunction cutoff_halfplane(const Line& h, double eps);

/// Product of the side cut-offs of P. Throws InvalidArgument("inner region
/// empty") when P has no point at distance eps from every side.
PlaneFunction cutoff_polygon(const ConvexPolygon& P, double eps);

/// With `normalizer` placing c's endpoints at 0 and 1: f(0) left of the strip,
/// f(1) right of it, and in between the value of f at the point of c with the
/// same real part. Throws if c is not monotone in the real part.
PlaneFunction extend_along_projection(const PlaneFunction& f, const Curve& c, const Affine2& normalizer);

/// g where Re normalizer(z) < 0, zero elsewhere. Throws unless every sample of
/// s1 maps strictly left of the imaginary axis and every sample of s2 strictly right.
PlaneFunction extend_by_zero(const PlaneFunction& g, const PicSet& s1, const PicSet& s2, const Affine2& normalizer);

struct AcBudget {
  int restarts = 16;
  int max_sweeps = 400;
  std::uint64_t seed = 0;
};

/// Smallest pic_norm(f - p) found over polynomials p of total degree <= degree.
/// An upper bound only; nonincreasing in degree for a fixed budget.
double ac_distance(const PlaneFunction& f, const PicSet& ps, int degree, const AcBudget& budget = {});

}  // namespace pic
