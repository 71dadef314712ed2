#include "pic/plane_function.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace pic {

PlaneFunction::PlaneFunction(Evaluator eval, std::string description)
    : eval_(std::make_shared<const Evaluator>(std::move(eval))), description_(std::move(description)) {}

Complex PlaneFunction::operator()(Point p) const {
  const Complex v = (*eval_)(p);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw EvaluationError("non-finite value of " + description_);
  return v;
}

PlaneFunction PlaneFunction::constant(Complex c) {
  return PlaneFunction([c](Point) { return c; }, "constant");
}

PlaneFunction PlaneFunction::identity() {
  return PlaneFunction([](Point p) { return Complex(p.x, p.y); }, "z");
}

PlaneFunction PlaneFunction::table(std::vector<std::pair<Point, Complex>> entries,
                                   std::optional<Complex> fallback) {
  // Sorted by x so lookups only scan a narrow window.
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first.x < b.first.x; });
  auto data = std::make_shared<const std::vector<std::pair<Point, Complex>>>(std::move(entries));
  return PlaneFunction(
      [data, fallback](Point p) -> Complex {
        const double window = kSignTolerance * std::max(1.0, norm(p)) * 4;
        auto it = std::lower_bound(data->begin(), data->end(), p.x - window,
                                   [](const auto& e, double x) { return e.first.x < x; });
        for (; it != data->end() && it->first.x <= p.x + window; ++it)
          if (near(it->first, p)) return it->second;
        if (fallback) return *fallback;
        throw EvaluationError("sample table has no value at (" + std::to_string(p.x) + ", " +
                              std::to_string(p.y) + ")");
      },
      "table");
}

PlaneFunction PlaneFunction::compose(const Affine2& map) const {
  auto inner = eval_;
  return PlaneFunction([inner, map](Point p) { return (*inner)(map(p)); }, description_ + " o affine");
}

PlaneFunction operator+(const PlaneFunction& a, const PlaneFunction& b) {
  auto fa = a.eval_, fb = b.eval_;
  return PlaneFunction([fa, fb](Point p) { return (*fa)(p) + (*fb)(p); },
                       "(" + a.description_ + " + " + b.description_ + ")");
}

PlaneFunction operator-(const PlaneFunction& a, const PlaneFunction& b) {
  auto fa = a.eval_, fb = b.eval_;
  return PlaneFunction([fa, fb](Point p) { return (*fa)(p) - (*fb)(p); },
                       "(" + a.description_ + " - " + b.description_ + ")");
}

PlaneFunction operator*(const PlaneFunction& a, const PlaneFunction& b) {
  auto fa = a.eval_, fb = b.eval_;
  return PlaneFunction([fa, fb](Point p) { return (*fa)(p) * (*fb)(p); },
                       "(" + a.description_ + " * " + b.description_ + ")");
}

PlaneFunction operator*(Complex s, const PlaneFunction& a) {
  auto fa = a.eval_;
  return PlaneFunction([fa, s](Point p) { return s * (*fa)(p); }, "scaled " + a.description_);
}

}  // namespace pic
