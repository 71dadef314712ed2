#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pic/mosaic.hpp"
#include "pic/plane_function.hpp"
#include "pic/variation.hpp"

namespace pic::cli {

/// Malformed or inconsistent input file; `what()` carries the location.
class SpecError : public Error {
 public:
  using Error::Error;
};

struct ParseOptions {
  std::optional<std::size_t> samples;  // overrides the file's sample density
  bool validate = true;
};

struct SpecFile {
  PicSet set;
  std::vector<std::string> curve_names;  // parallel to set.curves
  std::map<std::string, PlaneFunction> functions;
  std::map<std::string, PointList> lists;
  std::map<std::string, Point> vertices;
};

SpecFile parse_spec_text(const std::string& text, const std::string& origin, const ParseOptions& opt = {});
SpecFile parse_spec_file(const std::string& path, const ParseOptions& opt = {});

/// The set as a file fragment that parses back to the same curves and polygons.
nlohmann::json emit_spec(const PicSet& ps, const std::vector<std::string>& names = {});

nlohmann::json to_json(Point p);

}  // namespace pic::cli
