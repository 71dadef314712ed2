#include "spec_file.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace pic::cli {

using nlohmann::json;

namespace {

std::string location(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

class Parser {
 public:
  Parser(std::string origin, const ParseOptions& opt) : origin_(std::move(origin)), opt_(opt) {}

  [[noreturn]] void fail(const std::string& path, const std::string& msg) const {
    throw SpecError(origin_ + ": at " + (path.empty() ? "/" : path) + ": " + msg);
  }

  double number(const json& j, const std::string& path) const {
    if (!j.is_number()) fail(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(path, "number is not finite");
    return v;
  }

  const json& field(const json& obj, const std::string& key, const std::string& path) const {
    if (!obj.is_object()) fail(path, "expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) fail(path, "missing field '" + key + "'");
    return *it;
  }

  Point point(const json& j, const std::string& path) const {
    if (j.is_string()) {
      const auto it = vertices_.find(j.get<std::string>());
      if (it == vertices_.end()) fail(path, "unknown vertex '" + j.get<std::string>() + "'");
      return it->second;
    }
    if (!j.is_array() || j.size() != 2) fail(path, "expected a vertex name or [x, y]");
    return {number(j[0], path + "/0"), number(j[1], path + "/1")};
  }

  std::vector<Point> points(const json& j, const std::string& path) const {
    if (!j.is_array()) fail(path, "expected an array of points");
    std::vector<Point> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(point(j[i], path + "/" + std::to_string(i)));
    return out;
  }

  SpecFile parse(const json& root) {
    if (!root.is_object()) fail("", "top level must be an object");
    std::size_t samples = kDefaultSamples;
    if (root.contains("samples")) samples = count(root["samples"], "/samples");
    if (opt_.samples) samples = *opt_.samples;

    if (root.contains("vertices")) {
      const json& v = root["vertices"];
      if (!v.is_object()) fail("/vertices", "expected an object");
      for (const auto& [name, p] : v.items()) vertices_[name] = point(p, "/vertices/" + name);
    }

    std::map<std::string, ConvexPolygon> polygons;
    if (root.contains("polygons")) {
      const json& ps = root["polygons"];
      if (!ps.is_object()) fail("/polygons", "expected an object");
      for (const auto& [name, pts] : ps.items()) {
        const std::string path = "/polygons/" + name;
        try {
          polygons.emplace(name, ConvexPolygon(points(pts, path)));
        } catch (const SpecError&) {
          throw;
        } catch (const Error& e) {
          fail(path, e.what());
        }
      }
    }

    SpecFile out;
    out.vertices = vertices_;
    const json& curves = field(root, "curves", "");
    if (!curves.is_array() || curves.empty()) fail("/curves", "expected a nonempty array");
    for (std::size_t i = 0; i < curves.size(); ++i) {
      const std::string path = "/curves/" + std::to_string(i);
      const json& c = curves[i];
      std::string name = "c" + std::to_string(i);
      if (c.contains("name")) {
        if (!c["name"].is_string()) fail(path + "/name", "expected a string");
        name = c["name"].get<std::string>();
      }
      for (const auto& existing : out.curve_names)
        if (existing == name) fail(path + "/name", "duplicate curve name '" + name + "'");
      const std::size_t n = c.contains("samples") ? count(c["samples"], path + "/samples") : samples;
      out.set.curves.push_back(curve(c, path, opt_.samples ? samples : n));
      const json& pref = field(c, "polygon", path);
      if (pref.is_string()) {
        const auto it = polygons.find(pref.get<std::string>());
        if (it == polygons.end()) fail(path + "/polygon", "unknown polygon '" + pref.get<std::string>() + "'");
        out.set.mosaic.polygons.push_back(it->second);
      } else {
        try {
          out.set.mosaic.polygons.push_back(ConvexPolygon(points(pref, path + "/polygon")));
        } catch (const SpecError&) {
          throw;
        } catch (const Error& e) {
          fail(path + "/polygon", e.what());
        }
      }
      out.curve_names.push_back(name);
    }
    curves_ = &out;

    if (root.contains("lists")) {
      const json& ls = root["lists"];
      if (!ls.is_object()) fail("/lists", "expected an object");
      for (const auto& [name, pts] : ls.items()) {
        try {
          out.lists.emplace(name, PointList(points(pts, "/lists/" + name)));
        } catch (const SpecError&) {
          throw;
        } catch (const Error& e) {
          fail("/lists/" + name, e.what());
        }
      }
    }
    if (root.contains("functions")) {
      const json& fs = root["functions"];
      if (!fs.is_object()) fail("/functions", "expected an object");
      for (const auto& [name, f] : fs.items()) out.functions.emplace(name, function(f, "/functions/" + name));
    }

    if (opt_.validate) {
      const auto report = validate(out.set);
      if (!report.ok()) fail("", "invalid set: " + report.violations.front().message + describe(report, out));
    }
    return out;
  }

 private:
  static std::string describe(const ValidationReport& r, const SpecFile& s) {
    const Violation& v = r.violations.front();
    std::string d;
    for (auto i : v.curves) d += " " + s.curve_names[i];
    return d.empty() ? "" : " (curves" + d + ")";
  }

  std::size_t count(const json& j, const std::string& path) const {
    if (!j.is_number_integer() || j.get<long long>() < 2) fail(path, "expected an integer >= 2");
    return static_cast<std::size_t>(j.get<long long>());
  }

  double angle(const json& c, const std::string& deg_key, const std::string& rad_key, const std::string& path) const {
    if (c.contains(rad_key)) return number(c[rad_key], path + "/" + rad_key);
    return number(field(c, deg_key, path), path + "/" + deg_key) * std::numbers::pi / 180.0;
  }

  Curve curve(const json& c, const std::string& path, std::size_t n) const {
    const json& kind_json = field(c, "kind", path);
    if (!kind_json.is_string()) fail(path + "/kind", "expected a string");
    const auto kind = curve_kind_from_string(kind_json.get<std::string>());
    if (!kind) fail(path + "/kind", "unknown curve kind '" + kind_json.get<std::string>() + "'");
    try {
      std::optional<Curve> out;
      switch (*kind) {
        case CurveKind::segment:
          out = Curve::segment(point(field(c, "from", path), path + "/from"), point(field(c, "to", path), path + "/to"), n);
          break;
        case CurveKind::circular_arc:
          out = Curve::circular_arc(point(field(c, "center", path), path + "/center"),
                                    number(field(c, "radius", path), path + "/radius"),
                                    angle(c, "start_angle", "start_radians", path),
                                    angle(c, "end_angle", "end_radians", path), n);
          break;
        case CurveKind::parabolic_arc:
          out = Curve::parabolic_arc(point(field(c, "from", path), path + "/from"),
                                     point(field(c, "control", path), path + "/control"),
                                     point(field(c, "to", path), path + "/to"), n);
          break;
        case CurveKind::polyline_sample:
          out = Curve::polyline(points(field(c, "points", path), path + "/points"));
          break;
      }
      if (c.contains("samples_t")) {
        const json& t = c["samples_t"];
        if (!t.is_array()) fail(path + "/samples_t", "expected an array");
        std::vector<double> ts;
        for (std::size_t i = 0; i < t.size(); ++i) ts.push_back(number(t[i], path + "/samples_t/" + std::to_string(i)));
        out = out->with_params(std::move(ts));
      }
      return *out;
    } catch (const SpecError&) {
      throw;
    } catch (const Error& e) {
      fail(path, e.what());
    }
  }

  Complex complex_value(const json& j, const std::string& path) const {
    if (j.is_number()) return {number(j, path), 0.0};
    if (j.is_array() && j.size() == 2) return {number(j[0], path + "/0"), number(j[1], path + "/1")};
    if (j.is_object()) {
      const double re = j.contains("re") ? number(j["re"], path + "/re") : 0.0;
      const double im = j.contains("im") ? number(j["im"], path + "/im") : 0.0;
      return {re, im};
    }
    fail(path, "expected a complex value");
  }

  std::size_t curve_index(const json& j, const std::string& path) const {
    if (!j.is_string()) fail(path, "expected a curve name");
    for (std::size_t i = 0; i < curves_->curve_names.size(); ++i)
      if (curves_->curve_names[i] == j.get<std::string>()) return i;
    fail(path, "unknown curve '" + j.get<std::string>() + "'");
  }

  PlaneFunction function(const json& f, const std::string& path) const {
    const json& type = field(f, "type", path);
    if (!type.is_string()) fail(path + "/type", "expected a string");
    const std::string t = type.get<std::string>();
    if (t == "constant") return PlaneFunction::constant(complex_value(f, path));
    if (t == "polynomial") {
      const json& terms = field(f, "terms", path);
      if (!terms.is_array()) fail(path + "/terms", "expected an array");
      std::vector<std::tuple<int, int, Complex>> ts;
      for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::string p = path + "/terms/" + std::to_string(i);
        const json& x = field(terms[i], "x", p);
        const json& y = field(terms[i], "y", p);
        if (!x.is_number_integer() || !y.is_number_integer() || x.get<int>() < 0 || y.get<int>() < 0)
          fail(p, "exponents must be nonnegative integers");
        ts.emplace_back(x.get<int>(), y.get<int>(), complex_value(terms[i], p));
      }
      return PlaneFunction(
          [ts](Point z) {
            Complex s{};
            for (const auto& [n, m, c] : ts) s += c * std::pow(z.x, n) * std::pow(z.y, m);
            return s;
          },
          "polynomial");
    }
    if (t == "indicator") {
      const json& cs = field(f, "curves", path);
      if (!cs.is_array() || cs.empty()) fail(path + "/curves", "expected a nonempty array of curve names");
      std::vector<Curve> members;
      for (std::size_t i = 0; i < cs.size(); ++i)
        members.push_back(curves_->set.curves[curve_index(cs[i], path + "/curves/" + std::to_string(i))]);
      return PlaneFunction(
          [members](Point z) {
            for (const Curve& c : members)
              if (c.locate(z)) return Complex(1.0);
            return Complex(0.0);
          },
          "indicator");
    }
    if (t == "curve-samples") {
      const json& tables = field(f, "tables", path);
      if (!tables.is_object() || tables.empty()) fail(path + "/tables", "expected an object keyed by curve name");
      std::vector<std::pair<Curve, std::vector<Complex>>> parts;
      for (const auto& [name, vals] : tables.items()) {
        const std::string p = path + "/tables/" + name;
        const std::size_t i = curve_index(json(name), p);
        if (!vals.is_array() || vals.size() < 2) fail(p, "expected at least two values");
        std::vector<Complex> v;
        for (std::size_t k = 0; k < vals.size(); ++k) v.push_back(complex_value(vals[k], p + "/" + std::to_string(k)));
        parts.emplace_back(curves_->set.curves[i], std::move(v));
      }
      std::optional<Complex> fallback;
      if (f.contains("default")) fallback = complex_value(f["default"], path + "/default");
      return PlaneFunction(
          [parts, fallback](Point z) {
            for (const auto& [c, v] : parts) {
              const auto t = c.locate(z);
              if (!t) continue;
              const double u = c.arc_length_to(*t) / c.arc_length() * static_cast<double>(v.size() - 1);
              const std::size_t k = std::min(static_cast<std::size_t>(u), v.size() - 2);
              const double w = u - static_cast<double>(k);
              return (1.0 - w) * v[k] + w * v[k + 1];
            }
            if (fallback) return *fallback;
            throw EvaluationError("point is not on a tabulated curve");
          },
          "curve samples");
    }
    fail(path + "/type", "unknown function type '" + t + "'");
  }

  std::string origin_;
  ParseOptions opt_;
  std::map<std::string, Point> vertices_;
  const SpecFile* curves_ = nullptr;
};

}  // namespace

SpecFile parse_spec_text(const std::string& text, const std::string& origin, const ParseOptions& opt) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    std::string msg = e.what();
    const auto col = msg.find("column");
    const auto colon = col == std::string::npos ? std::string::npos : msg.find(": ", col);
    if (colon != std::string::npos) msg = msg.substr(colon + 2);
    throw SpecError(origin + ":" + location(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + msg);
  }
  return Parser(origin, opt).parse(root);
}

SpecFile parse_spec_file(const std::string& path, const ParseOptions& opt) {
  std::ifstream in(path);
  if (!in) throw SpecError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_spec_text(ss.str(), path, opt);
}

json to_json(Point p) { return json::array({p.x, p.y}); }

json emit_spec(const PicSet& ps, const std::vector<std::string>& names) {
  json curves = json::array();
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const Curve& c = ps.curves[i];
    json j;
    j["name"] = i < names.size() ? names[i] : "c" + std::to_string(i);
    j["kind"] = to_string(c.kind());
    const auto cp = c.control_points();
    switch (c.kind()) {
      case CurveKind::segment:
        j["from"] = to_json(cp[0]);
        j["to"] = to_json(cp[1]);
        break;
      case CurveKind::circular_arc:
        j["center"] = to_json(cp[0]);
        j["radius"] = c.radius();
        j["start_radians"] = c.start_angle();
        j["end_radians"] = c.end_angle();
        break;
      case CurveKind::parabolic_arc:
        j["from"] = to_json(cp[0]);
        j["control"] = to_json(cp[1]);
        j["to"] = to_json(cp[2]);
        break;
      case CurveKind::polyline_sample: {
        json pts = json::array();
        for (Point p : cp) pts.push_back(to_json(p));
        j["points"] = pts;
        break;
      }
    }
    j["samples_t"] = std::vector<double>(c.params().begin(), c.params().end());
    json poly = json::array();
    for (Point p : ps.polygon(i).vertices()) poly.push_back(to_json(p));
    j["polygon"] = poly;
    curves.push_back(j);
  }
  return json{{"curves", curves}};
}

}  // namespace pic::cli
