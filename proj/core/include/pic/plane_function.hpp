#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pic/geom.hpp"

namespace pic {

using Complex = std::complex<double>;

/// A complex-valued function that can be evaluated at points of the plane.
///
/// Functions are immutable and cheap to copy (the evaluator is shared).
/// Sums, products and scalar multiples build new evaluators lazily.
class PlaneFunction {
 public:
  using Evaluator = std::function<Complex(Point)>;

  PlaneFunction(Evaluator eval, std::string description);

  /// Throws EvaluationError if the underlying evaluator fails or the value
  /// is not finite.
  Complex operator()(Point p) const;

  const std::string& description() const { return description_; }

  static PlaneFunction constant(Complex c);
  /// Re z + i Im z, i.e. the identity z.
  static PlaneFunction identity();

  /// Values attached to finitely many points. Lookups match a stored point
  /// within the geometric tolerance; other points throw EvaluationError
  /// unless a fallback value is supplied.
  static PlaneFunction table(std::vector<std::pair<Point, Complex>> entries,
                             std::optional<Complex> fallback = std::nullopt);

  PlaneFunction compose(const Affine2& map) const;  // z -> f(map(z))

  friend PlaneFunction operator+(const PlaneFunction& a, const PlaneFunction& b);
  friend PlaneFunction operator-(const PlaneFunction& a, const PlaneFunction& b);
  friend PlaneFunction operator*(const PlaneFunction& a, const PlaneFunction& b);
  friend PlaneFunction operator*(Complex s, const PlaneFunction& a);

 private:
  std::shared_ptr<const Evaluator> eval_;
  std::string description_;
};

}  // namespace pic
