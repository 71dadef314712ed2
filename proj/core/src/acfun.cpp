#include "pic/acfun.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace pic {

int Poly2::degree() const {
  int d = 0;
  for (const auto& [nm, c] : coeffs)
    if (c != Complex{}) d = std::max(d, nm.first + nm.second);
  return d;
}

PlaneFunction Poly2::as_function() const {
  std::ostringstream os;
  os << "polynomial of degree " << degree();
  const Poly2 copy = *this;
  return PlaneFunction([copy](Point z) { return poly_eval(copy, z); }, os.str());
}

Complex poly_eval(const Poly2& p, Point z) {
  if (p.coeffs.empty()) return {};
  int nmax = 0;
  for (const auto& [nm, c] : p.coeffs) {
    if (nm.first < 0 || nm.second < 0) throw InvalidArgument("negative exponent in polynomial");
    nmax = std::max(nmax, nm.first);
  }
  // Outer Horner in x over inner Horner polynomials in y.
  Complex acc{};
  auto it = p.coeffs.rbegin();
  for (int n = nmax; n >= 0; --n) {
    Complex inner{};
    int m_prev = -1;
    for (; it != p.coeffs.rend() && it->first.first == n; ++it) {
      const int m = it->first.second;
      if (m_prev >= 0)
        for (int k = m; k < m_prev; ++k) inner *= z.y;
      inner += it->second;
      m_prev = m;
    }
    for (int k = 0; k < m_prev; ++k) inner *= z.y;
    acc = acc * z.x + inner;
  }
  return acc;
}

double g_eps(double t, double eps) {
  if (!(eps > 0)) throw InvalidArgument("eps must be positive");
  if (t <= eps / 2) return 0.0;
  if (t >= eps) return 1.0;
  return (2 * t - eps) / eps;
}

PlaneFunction cutoff_halfplane(const Line& h, double eps) {
  g_eps(0.0, eps);
  return PlaneFunction([h, eps](Point z) { return Complex(g_eps(h.signed_distance(z), eps)); },
                       "halfplane cut-off");
}

PlaneFunction cutoff_polygon(const ConvexPolygon& P, double eps) {
  g_eps(0.0, eps);
  const auto hs = P.halfplanes();
  ConvexPolygon inner = P;
  for (const Line& h : hs) {
    const auto r = clip_halfplane(inner, h.shifted(eps));
    if (r.kind != ClipResult::Kind::polygon) throw InvalidArgument("inner region empty");
    inner = *r.polygon;
  }
  return PlaneFunction(
      [hs, eps](Point z) {
        double v = 1.0;
        for (const Line& h : hs) v *= g_eps(h.signed_distance(z), eps);
        return Complex(v);
      },
      "polygon cut-off");
}

PlaneFunction extend_along_projection(const PlaneFunction& f, const Curve& c, const Affine2& normalizer) {
  const auto s = c.samples();
  std::vector<double> re(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) re[k] = normalizer(s[k]).x;
  const double tol = 1e-9;
  if (std::abs(re.front()) > tol || std::abs(re.back() - 1.0) > tol)
    throw InvalidArgument("normalizer does not place the curve endpoints at 0 and 1");
  for (std::size_t k = 1; k < re.size(); ++k)
    if (re[k] < re[k - 1] - tol) throw InvalidArgument("curve is not projectable over [0, 1]");
  const Complex f0 = f(c.start()), f1 = f(c.end());
  return PlaneFunction(
      [f, c, normalizer, re, f0, f1](Point z) {
        const double r = normalizer(z).x;
        if (r <= 0.0) return f0;
        if (r >= 1.0) return f1;
        const auto it = std::lower_bound(re.begin(), re.end(), r);
        const std::size_t k = static_cast<std::size_t>(it - re.begin());
        if (it != re.end() && *it == r) return f(c.samples()[k]);
        const auto par = c.params();
        double lo = par[k - 1], hi = par[k];
        for (int i = 0; i < 200 && hi > lo; ++i) {
          const double mid = 0.5 * (lo + hi);
          if (mid == lo || mid == hi) break;
          (normalizer(c.at(mid)).x < r ? lo : hi) = mid;
        }
        return f(c.at(0.5 * (lo + hi)));
      },
      "projection extension of " + f.description());
}

PlaneFunction extend_by_zero(const PlaneFunction& g, const PicSet& s1, const PicSet& s2, const Affine2& normalizer) {
  double left = -std::numeric_limits<double>::infinity();
  double right = std::numeric_limits<double>::infinity();
  for (const Curve& c : s1.curves)
    for (Point p : c.samples()) left = std::max(left, normalizer(p).x);
  for (const Curve& c : s2.curves)
    for (Point p : c.samples()) right = std::min(right, normalizer(p).x);
  if (!(left < 0.0 && right > 0.0)) throw InvalidArgument("the two sets are not strictly separated");
  return PlaneFunction(
      [g, normalizer](Point z) { return normalizer(z).x < 0.0 ? g(z) : Complex{}; },
      "zero extension of " + g.description());
}

// ---------------------------------------------------------------------------
// ac_distance

namespace {

class PolyFit {
 public:
  PolyFit(const PlaneFunction& f, const PicSet& ps) {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const Curve& c : ps.curves) {
      offsets_.push_back(pts_.size());
      for (Point p : c.samples()) {
        pts_.push_back(p);
        values_.push_back(f(p));
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
      }
    }
    offsets_.push_back(pts_.size());
    center_ = {0.5 * (xmin + xmax), 0.5 * (ymin + ymax)};
    scale_ = std::max({0.5 * (xmax - xmin), 0.5 * (ymax - ymin), 1e-12});
    for (Complex v : values_) fmax_ = std::max(fmax_, std::abs(v));
  }

  // Monomials of total degree <= d ordered by degree, so lower degrees form a prefix.
  void set_degree(int d) {
    monomials_.clear();
    for (int t = 0; t <= d; ++t)
      for (int n = t; n >= 0; --n) monomials_.emplace_back(n, t - n);
    basis_.assign(monomials_.size(), std::vector<double>(pts_.size()));
    for (std::size_t j = 0; j < monomials_.size(); ++j)
      for (std::size_t k = 0; k < pts_.size(); ++k) {
        const Point u = (pts_[k] - center_) / scale_;
        basis_[j][k] = std::pow(u.x, monomials_[j].first) * std::pow(u.y, monomials_[j].second);
      }
  }

  std::size_t size() const { return monomials_.size(); }
  double fmax() const { return fmax_; }

  std::vector<Complex> residual(const std::vector<Complex>& c) const {
    std::vector<Complex> r = values_;
    for (std::size_t j = 0; j < c.size(); ++j)
      for (std::size_t k = 0; k < r.size(); ++k) r[k] -= c[j] * basis_[j][k];
    return r;
  }

  double objective(const std::vector<Complex>& r) const {
    double sup = 0.0, var = 0.0;
    for (Complex v : r) sup = std::max(sup, std::abs(v));
    for (std::size_t i = 0; i + 1 < offsets_.size(); ++i)
      for (std::size_t k = offsets_[i] + 1; k < offsets_[i + 1]; ++k) var += std::abs(r[k] - r[k - 1]);
    return sup + var;
  }

  std::vector<Complex> least_squares() const {
    Eigen::MatrixXcd A(static_cast<Eigen::Index>(pts_.size()), static_cast<Eigen::Index>(size()));
    Eigen::VectorXcd b(static_cast<Eigen::Index>(pts_.size()));
    for (std::size_t k = 0; k < pts_.size(); ++k) {
      b(static_cast<Eigen::Index>(k)) = values_[k];
      for (std::size_t j = 0; j < size(); ++j)
        A(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = basis_[j][k];
    }
    const Eigen::VectorXcd x = A.completeOrthogonalDecomposition().solve(b);
    std::vector<Complex> c(size());
    for (std::size_t j = 0; j < size(); ++j) c[j] = x(static_cast<Eigen::Index>(j));
    return c;
  }

  // Coordinate descent with halving steps; only improvements are accepted.
  double descend(std::vector<Complex>& c, int max_sweeps) const {
    std::vector<Complex> r = residual(c);
    double best = objective(r);
    double h = 0.25 * (1.0 + fmax_);
    const double h_min = 1e-12 * (1.0 + fmax_);
    std::vector<Complex> trial(r.size());
    for (int sweep = 0; sweep < max_sweeps && h > h_min; ++sweep) {
      bool improved = false;
      for (std::size_t j = 0; j < c.size(); ++j) {
        for (Complex dir : {Complex(1, 0), Complex(-1, 0), Complex(0, 1), Complex(0, -1)}) {
          const Complex delta = h * dir;
          for (std::size_t k = 0; k < r.size(); ++k) trial[k] = r[k] - delta * basis_[j][k];
          const double v = objective(trial);
          if (v < best) {
            best = v;
            r.swap(trial);
            c[j] += delta;
            improved = true;
          }
        }
      }
      if (!improved) h *= 0.5;
    }
    return best;
  }

 private:
  std::vector<Point> pts_;
  std::vector<Complex> values_;
  std::vector<std::size_t> offsets_;
  std::vector<std::pair<int, int>> monomials_;
  std::vector<std::vector<double>> basis_;
  Point center_;
  double scale_ = 1.0;
  double fmax_ = 0.0;
};

}  // namespace

double ac_distance(const PlaneFunction& f, const PicSet& ps, int degree, const AcBudget& budget) {
  if (degree < 0) throw InvalidArgument("degree must be nonnegative");
  if (ps.curves.empty()) throw InvalidArgument("empty set");
  PolyFit fit(f, ps);
  std::vector<Complex> warm;  // optimum of the previous degree
  double best = 0.0;
  for (int d = 0; d <= degree; ++d) {
    fit.set_degree(d);
    std::vector<Complex> best_c;
    best = std::numeric_limits<double>::infinity();
    const std::vector<Complex> ls = fit.least_squares();
    for (int r = 0; r < std::max(1, budget.restarts); ++r) {
      std::vector<Complex> c(fit.size());
      if (r == 0) {
        std::copy(warm.begin(), warm.end(), c.begin());
      } else {
        c = ls;
        if (r >= 2) {
          std::mt19937_64 rng(budget.seed ^ (0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(r + 1000 * d)));
          std::normal_distribution<double> noise(0.0, 0.1 * (1.0 + fit.fmax()));
          for (Complex& x : c) x += Complex(noise(rng), noise(rng));
        }
      }
      const double v = fit.descend(c, budget.max_sweeps);
      if (v < best) {
        best = v;
        best_c = c;
      }
    }
    warm = best_c;
  }
  return best;
}

}  // namespace pic
