#include "pic/curve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace pic {

std::string to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::segment: return "segment";
    case CurveKind::circular_arc: return "circular-arc";
    case CurveKind::parabolic_arc: return "parabolic-arc";
    case CurveKind::polyline_sample: return "polyline-sample";
  }
  return "unknown";
}

std::optional<CurveKind> curve_kind_from_string(const std::string& name) {
  for (CurveKind k : {CurveKind::segment, CurveKind::circular_arc, CurveKind::parabolic_arc,
                      CurveKind::polyline_sample})
    if (to_string(k) == name) return k;
  return std::nullopt;
}

namespace {

std::vector<double> uniform_fractions(std::size_t n) {
  if (n < 2) throw InvalidArgument("a curve needs at least 2 samples");
  std::vector<double> u(n);
  for (std::size_t i = 0; i < n; ++i) u[i] = static_cast<double>(i) / static_cast<double>(n - 1);
  u.back() = 1.0;
  return u;
}

// Composite 5-point Gauss-Legendre.
template <class F>
double integrate(F&& f, double a, double b, int panels = 32) {
  static constexpr std::array<double, 5> x = {0.0, -0.5384693101056831, 0.5384693101056831,
                                              -0.9061798459386640, 0.9061798459386640};
  static constexpr std::array<double, 5> w = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
                                              0.2369268850561891, 0.2369268850561891};
  const double h = (b - a) / panels;
  double s = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (std::size_t i = 0; i < 5; ++i) s += w[i] * f(mid + 0.5 * h * x[i]);
  }
  return 0.5 * h * s;
}

}  // namespace

// ---------------------------------------------------------------------------
// construction

Curve Curve::segment(Point from, Point to, std::size_t samples) {
  Curve c;
  c.kind_ = CurveKind::segment;
  c.control_ = {from, to};
  c.build_samples(uniform_fractions(samples));
  return c;
}

Curve Curve::circular_arc(Point center, double radius, double start_angle, double end_angle,
                          std::size_t samples) {
  if (!(radius > 0)) throw InvalidArgument("arc radius must be positive");
  if (std::abs(end_angle - start_angle) >= 2 * std::numbers::pi)
    throw InvalidArgument("arc must sweep less than a full turn");
  Curve c;
  c.kind_ = CurveKind::circular_arc;
  c.control_ = {center};
  c.radius_ = radius;
  c.angle0_ = start_angle;
  c.angle1_ = end_angle;
  c.build_samples(uniform_fractions(samples));
  return c;
}

Curve Curve::parabolic_arc(Point from, Point control, Point to, std::size_t samples) {
  Curve c;
  c.kind_ = CurveKind::parabolic_arc;
  c.control_ = {from, control, to};
  std::vector<double> t;
  for (double u : uniform_fractions(samples)) t.push_back(c.param_at_fraction(u));
  t.front() = 0.0;
  t.back() = 1.0;
  c.build_samples(std::move(t));
  return c;
}

Curve Curve::polyline(std::vector<Point> vertices) {
  if (vertices.size() < 2) throw InvalidArgument("polyline needs at least 2 vertices");
  Curve c;
  c.kind_ = CurveKind::polyline_sample;
  c.control_ = std::move(vertices);
  std::vector<double> len(c.control_.size(), 0.0);
  for (std::size_t i = 1; i < c.control_.size(); ++i) {
    const double d = distance(c.control_[i - 1], c.control_[i]);
    if (near(c.control_[i - 1], c.control_[i])) throw InvalidArgument("polyline has repeated consecutive vertices");
    len[i] = len[i - 1] + d;
  }
  for (double& l : len) l /= len.back();
  len.back() = 1.0;
  c.vertex_params_ = len;
  c.build_samples(len);
  return c;
}

void Curve::build_samples(std::vector<double> params) {
  params_ = std::move(params);
  samples_.clear();
  samples_.reserve(params_.size());
  for (double t : params_) samples_.push_back(at(t));
  validate();
}

void Curve::validate() const {
  if (samples_.size() < 2) throw InvalidArgument("a curve needs at least 2 samples");
  if (params_.front() != 0.0 || params_.back() != 1.0)
    throw InvalidArgument("sample grid must start at 0 and end at 1");
  for (std::size_t i = 1; i < params_.size(); ++i) {
    if (!(params_[i] > params_[i - 1])) throw InvalidArgument("sample parameters must increase strictly");
    if (near(samples_[i - 1], samples_[i])) throw InvalidArgument("consecutive samples coincide");
  }
  for (Point p : samples_)
    if (!is_finite(p)) throw InvalidArgument("non-finite sample");
  if (near(start(), end())) throw InvalidArgument("curve endpoints must be distinct");
}

// ---------------------------------------------------------------------------
// geometry

Point Curve::at(double t) const {
  switch (kind_) {
    case CurveKind::segment:
      if (t == 1.0) return control_[1];
      return control_[0] + t * (control_[1] - control_[0]);
    case CurveKind::circular_arc: {
      const double a = angle0_ + t * (angle1_ - angle0_);
      return control_[0] + radius_ * Point{std::cos(a), std::sin(a)};
    }
    case CurveKind::parabolic_arc: {
      if (t == 1.0) return control_[2];
      const double s = 1.0 - t;
      return (s * s) * control_[0] + (2 * s * t) * control_[1] + (t * t) * control_[2];
    }
    case CurveKind::polyline_sample: {
      const auto it = std::upper_bound(vertex_params_.begin(), vertex_params_.end(), t);
      if (it == vertex_params_.end()) return control_.back();
      const std::size_t i = static_cast<std::size_t>(it - vertex_params_.begin());
      if (i == 0) return control_.front();
      const double t0 = vertex_params_[i - 1], t1 = vertex_params_[i];
      if (t == t0) return control_[i - 1];
      return control_[i - 1] + ((t - t0) / (t1 - t0)) * (control_[i] - control_[i - 1]);
    }
  }
  return {};
}

double Curve::arc_length_to(double t) const {
  switch (kind_) {
    case CurveKind::segment: return t * distance(control_[0], control_[1]);
    case CurveKind::circular_arc: return t * radius_ * std::abs(angle1_ - angle0_);
    case CurveKind::parabolic_arc: {
      const Point d0 = 2.0 * (control_[1] - control_[0]);
      const Point d1 = 2.0 * (control_[2] - control_[1]);
      return integrate([&](double s) { return norm((1 - s) * d0 + s * d1); }, 0.0, t);
    }
    case CurveKind::polyline_sample: {
      double total = 0.0;
      for (std::size_t i = 1; i < control_.size(); ++i) total += distance(control_[i - 1], control_[i]);
      return t * total;
    }
  }
  return 0.0;
}

double Curve::param_at_fraction(double u) const {
  if (kind_ != CurveKind::parabolic_arc) return u;
  const double target = u * arc_length();
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 80 && hi - lo > 1e-16; ++i) {
    const double mid = 0.5 * (lo + hi);
    (arc_length_to(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double Curve::nearest_param(Point p) const {
  switch (kind_) {
    case CurveKind::segment: {
      const Point d = control_[1] - control_[0];
      return std::clamp(dot(p - control_[0], d) / dot(d, d), 0.0, 1.0);
    }
    case CurveKind::circular_arc: {
      const double two_pi = 2 * std::numbers::pi;
      const double sweep = angle1_ - angle0_;
      const double theta = std::atan2(p.y - control_[0].y, p.x - control_[0].x);
      double delta = sweep > 0 ? theta - angle0_ : angle0_ - theta;
      delta = std::fmod(delta, two_pi);
      if (delta < 0) delta += two_pi;
      const double t = delta / std::abs(sweep);
      if (t <= 1.0) return t;
      return distance(p, at(0.0)) <= distance(p, at(1.0)) ? 0.0 : 1.0;
    }
    case CurveKind::parabolic_arc: {
      constexpr int n = 256;
      int best = 0;
      double bd = std::numeric_limits<double>::infinity();
      for (int i = 0; i <= n; ++i) {
        const double d = distance(p, at(static_cast<double>(i) / n));
        if (d < bd) {
          bd = d;
          best = i;
        }
      }
      double lo = std::max(0.0, (best - 1.0) / n), hi = std::min(1.0, (best + 1.0) / n);
      for (int i = 0; i < 200 && hi - lo > 1e-17; ++i) {
        const double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
        if (distance(p, at(m1)) < distance(p, at(m2))) hi = m2;
        else lo = m1;
      }
      return 0.5 * (lo + hi);
    }
    case CurveKind::polyline_sample: {
      double best_t = 0.0, bd = std::numeric_limits<double>::infinity();
      for (std::size_t i = 1; i < control_.size(); ++i) {
        const Point a = control_[i - 1], b = control_[i];
        const Point d = b - a;
        const double s = std::clamp(dot(p - a, d) / dot(d, d), 0.0, 1.0);
        const double dist = distance(p, a + s * d);
        if (dist < bd) {
          bd = dist;
          best_t = vertex_params_[i - 1] + s * (vertex_params_[i] - vertex_params_[i - 1]);
        }
      }
      return best_t;
    }
  }
  return 0.0;
}

std::optional<double> Curve::locate(Point p) const {
  const double t = nearest_param(p);
  if (distance(p, at(t)) <= kSignTolerance * std::max({1.0, arc_length(), norm(p)})) return t;
  // Samples are stored points; accept exact sample matches as well.
  for (std::size_t i = 0; i < samples_.size(); ++i)
    if (near(samples_[i], p)) return params_[i];
  return std::nullopt;
}

Curve Curve::resampled(std::size_t n) const {
  std::vector<double> t;
  for (double u : uniform_fractions(n)) t.push_back(param_at_fraction(u));
  t.front() = 0.0;
  t.back() = 1.0;
  return with_params(std::move(t));
}

Curve Curve::with_params(std::vector<double> params) const {
  Curve c = *this;
  c.build_samples(std::move(params));
  return c;
}

Curve Curve::subcurve(std::size_t i0, std::size_t i1) const {
  if (!(i0 < i1) || i1 >= samples_.size()) throw InvalidArgument("subcurve needs sample indices i0 < i1");
  const double t0 = params_[i0], t1 = params_[i1];
  Curve c;
  c.kind_ = kind_;
  c.radius_ = radius_;
  switch (kind_) {
    case CurveKind::segment: c.control_ = {samples_[i0], samples_[i1]}; break;
    case CurveKind::circular_arc:
      c.control_ = control_;
      c.angle0_ = angle0_ + t0 * (angle1_ - angle0_);
      c.angle1_ = angle0_ + t1 * (angle1_ - angle0_);
      break;
    case CurveKind::parabolic_arc: {
      const Point p0 = control_[0], p1 = control_[1], p2 = control_[2];
      const Point mid = ((1 - t0) * (1 - t1)) * p0 + ((1 - t0) * t1 + t0 * (1 - t1)) * p1 + (t0 * t1) * p2;
      c.control_ = {samples_[i0], mid, samples_[i1]};
      break;
    }
    case CurveKind::polyline_sample: {
      c.control_.push_back(samples_[i0]);
      for (std::size_t v = 0; v < control_.size(); ++v)
        if (vertex_params_[v] > t0 && vertex_params_[v] < t1 && !near(control_[v], samples_[i0]) &&
            !near(control_[v], samples_[i1]))
          c.control_.push_back(control_[v]);
      c.control_.push_back(samples_[i1]);
      c.vertex_params_.assign(c.control_.size(), 0.0);
      for (std::size_t v = 1; v < c.control_.size(); ++v)
        c.vertex_params_[v] = c.vertex_params_[v - 1] + distance(c.control_[v - 1], c.control_[v]);
      for (double& x : c.vertex_params_) x /= c.vertex_params_.back();
      c.vertex_params_.back() = 1.0;
      break;
    }
  }
  for (std::size_t i = i0; i <= i1; ++i) {
    c.params_.push_back((params_[i] - t0) / (t1 - t0));
    c.samples_.push_back(samples_[i]);
  }
  c.params_.front() = 0.0;
  c.params_.back() = 1.0;
  c.validate();
  return c;
}

Curve Curve::reversed() const {
  Curve c = *this;
  switch (kind_) {
    case CurveKind::segment:
    case CurveKind::parabolic_arc:
    case CurveKind::polyline_sample: std::reverse(c.control_.begin(), c.control_.end()); break;
    case CurveKind::circular_arc: std::swap(c.angle0_, c.angle1_); break;
  }
  if (kind_ == CurveKind::polyline_sample) {
    std::reverse(c.vertex_params_.begin(), c.vertex_params_.end());
    for (double& v : c.vertex_params_) v = 1.0 - v;
  }
  std::reverse(c.params_.begin(), c.params_.end());
  for (double& t : c.params_) t = 1.0 - t;
  std::reverse(c.samples_.begin(), c.samples_.end());
  return c;
}

// ---------------------------------------------------------------------------
// predicates and splitting

bool is_convex(const Curve& c) {
  const auto s = c.samples();
  if (s.size() < 3) return true;
  int sign = 0;
  double turning = 0.0;
  for (std::size_t i = 0; i + 2 < s.size(); ++i) {
    const Point e1 = s[i + 1] - s[i];
    const Point e2 = s[i + 2] - s[i + 1];
    const double cr = cross(e1, e2);
    turning += std::abs(std::atan2(cr, dot(e1, e2)));
    if (std::abs(cr) <= kSignTolerance * norm(e1) * norm(e2)) continue;
    const int sg = cr > 0 ? 1 : -1;
    if (sign == 0) sign = sg;
    else if (sg != sign) return false;
  }
  return turning <= 2 * std::numbers::pi + 1e-9;
}

namespace {

std::vector<double> chord_increments(const Curve& c) {
  const auto s = c.samples();
  const Point d = c.end() - c.start();
  const double len = norm(d);
  std::vector<double> inc(s.size() - 1);
  for (std::size_t i = 0; i + 1 < s.size(); ++i) inc[i] = dot(s[i + 1] - s[i], d) / len;
  return inc;
}

}  // namespace

bool is_projectable(const Curve& c) {
  if (!is_convex(c)) throw InvalidArgument("projectability is defined for convex curves only");
  const double tol = kSignTolerance * distance(c.start(), c.end());
  for (double inc : chord_increments(c))
    if (inc < -tol) return false;
  return true;
}

std::vector<Curve> split_projectable(const Curve& c) {
  if (!is_convex(c)) throw InvalidArgument("split_projectable needs a convex curve");
  if (is_projectable(c)) return {c};
  const double tol = kSignTolerance * distance(c.start(), c.end());
  const auto inc = chord_increments(c);
  std::vector<std::size_t> cuts = {0};
  int current = 0;
  for (std::size_t k = 0; k < inc.size(); ++k) {
    if (std::abs(inc[k]) <= tol) continue;
    const int sg = inc[k] > 0 ? 1 : -1;
    if (current != 0 && sg != current) cuts.push_back(k);
    current = sg;
  }
  cuts.push_back(c.sample_count() - 1);
  std::vector<Curve> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    for (Curve& piece : split_projectable(c.subcurve(cuts[i], cuts[i + 1]))) out.push_back(std::move(piece));
  }
  return out;
}

std::pair<Curve, Curve> split_at_sample(const Curve& c, std::size_t i) {
  if (i == 0 || i + 1 >= c.sample_count()) throw InvalidArgument("split point must be an interior sample");
  return {c.subcurve(0, i), c.subcurve(i, c.sample_count() - 1)};
}

std::pair<Curve, Curve> split_at(const Curve& c, double t) {
  const auto params = c.params();
  if (!(t > params.front() && t < params.back())) throw InvalidArgument("split parameter is not interior");
  if (c.sample_count() < 3) throw InvalidArgument("curve has no interior sample to split at");
  std::size_t best = 1;
  for (std::size_t i = 1; i + 1 < params.size(); ++i)
    if (std::abs(params[i] - t) < std::abs(params[best] - t)) best = i;
  return split_at_sample(c, best);
}

double pvar(const PlaneFunction& f, const Curve& c) {
  double s = 0.0;
  Complex prev = f(c.samples()[0]);
  for (std::size_t i = 1; i < c.sample_count(); ++i) {
    const Complex v = f(c.samples()[i]);
    s += std::abs(v - prev);
    prev = v;
  }
  return s;
}

}  // namespace pic
