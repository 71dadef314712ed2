#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pic/geom.hpp"
#include "pic/plane_function.hpp"

namespace pic {

enum class CurveKind { segment, circular_arc, parabolic_arc, polyline_sample };

std::string to_string(CurveKind kind);
std::optional<CurveKind> curve_kind_from_string(const std::string& name);

inline constexpr std::size_t kDefaultSamples = 64;

/// A sampled parameterised plane curve gamma(t), 0 <= t <= 1.
///
/// Analytic kinds keep their closed form so they can be resampled at any
/// density; a polyline sample is parameterised by arc length along its
/// vertices. The sample grid is a strictly increasing list of parameters with
/// the corresponding points, always including both endpoints.
class Curve {
 public:
  static Curve segment(Point from, Point to, std::size_t samples = kDefaultSamples);
  /// Angles in radians; the sweep runs from `start_angle` to `end_angle` and
  /// may be negative (clockwise).
  static Curve circular_arc(Point center, double radius, double start_angle, double end_angle,
                            std::size_t samples = kDefaultSamples);
  /// The quadratic Bezier arc from `from` to `to` with the given control point.
  static Curve parabolic_arc(Point from, Point control, Point to, std::size_t samples = kDefaultSamples);
  /// A fixed polyline; its vertices are the sample grid.
  static Curve polyline(std::vector<Point> vertices);

  CurveKind kind() const { return kind_; }
  std::span<const double> params() const { return params_; }
  std::span<const Point> samples() const { return samples_; }
  std::size_t sample_count() const { return samples_.size(); }
  Point start() const { return samples_.front(); }
  Point end() const { return samples_.back(); }

  /// Geometry: control points (segment: 2, arc: center only, Bezier: 3, polyline: all vertices).
  std::span<const Point> control_points() const { return control_; }
  double radius() const { return radius_; }
  double start_angle() const { return angle0_; }
  double end_angle() const { return angle1_; }

  Point at(double t) const;
  /// Arc length from gamma(0) to gamma(t).
  double arc_length_to(double t) const;
  double arc_length() const { return arc_length_to(1.0); }
  /// Parameter at which the arc length fraction equals u.
  double param_at_fraction(double u) const;

  /// Parameter of the point of the curve nearest to p.
  double nearest_param(Point p) const;
  double distance_to(Point p) const { return distance(p, at(nearest_param(p))); }
  /// Parameter of p if p lies on the curve (within tolerance).
  std::optional<double> locate(Point p) const;

  /// Same geometry sampled at n points uniform in arc length.
  Curve resampled(std::size_t n) const;
  /// Same geometry with an explicit parameter grid.
  Curve with_params(std::vector<double> params) const;
  /// The piece between samples i0 < i1, reparameterised over [0, 1]; its
  /// samples are exactly samples i0..i1 of this curve.
  Curve subcurve(std::size_t i0, std::size_t i1) const;
  Curve reversed() const;

 private:
  Curve() = default;
  void build_samples(std::vector<double> params);
  void validate() const;

  CurveKind kind_ = CurveKind::segment;
  std::vector<Point> control_;
  double radius_ = 0.0;
  double angle0_ = 0.0;
  double angle1_ = 0.0;
  std::vector<double> vertex_params_;  // polyline: normalised cumulative length
  std::vector<double> params_;
  std::vector<Point> samples_;
};

/// Every nonzero turn between consecutive sampled edges has the same sign.
bool is_convex(const Curve& c);

/// Projection of the samples onto the endpoint chord is monotone from 0 to
/// the chord length. Throws InvalidArgument for non-convex curves.
bool is_projectable(const Curve& c);

/// Splits a convex curve at sample points into projectable pieces.
std::vector<Curve> split_projectable(const Curve& c);

/// Splits at the interior sample nearest to t.
std::pair<Curve, Curve> split_at(const Curve& c, double t);
/// Splits at interior sample index i.
std::pair<Curve, Curve> split_at_sample(const Curve& c, std::size_t i);

/// Variation of f along the sample grid.
double pvar(const PlaneFunction& f, const Curve& c);

}  // namespace pic
