#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>

#include "pic/acfun.hpp"
#include "pic/picgraph.hpp"
#include "pic/picnorm.hpp"
#include "spec_file.hpp"

namespace pic::cli {

using json = nlohmann::ordered_json;

namespace {

struct Flags {
  std::string set, a, b, fn, list, curve, action;
  std::size_t samples = 0;  // 0: use the file's density (default 64)
  std::uint64_t seed = 0;
  std::size_t max_list_len = 8;
  long long at = -1;
  bool json = false;
  bool build_map = false;
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string inline_text(const json& j) {
  if (j.is_number_float()) return num(j.get<double>());
  if (j.is_string()) return j.get<std::string>();
  if (j.is_array()) {
    std::string s = "[";
    for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ", " : "") + inline_text(j[i]);
    return s + "]";
  }
  if (j.is_object()) {
    std::string s = "{";
    bool first = true;
    for (const auto& [k, v] : j.items()) {
      s += (first ? "" : ", ") + k + ": " + inline_text(v);
      first = false;
    }
    return s + "}";
  }
  return j.dump();
}

void render_text(const json& j, std::ostream& out, int indent = 0) {
  std::size_t width = 0;
  for (const auto& [k, v] : j.items()) width = std::max(width, k.size());
  for (const auto& [k, v] : j.items()) {
    out << std::string(static_cast<std::size_t>(indent), ' ') << k;
    if (v.is_object()) {
      out << '\n';
      render_text(v, out, indent + 2);
      continue;
    }
    out << std::string(width - k.size() + 2, ' ') << inline_text(v) << '\n';
  }
}

void emit(const json& j, const Flags& f, std::ostream& out) {
  if (f.json) out << j.dump(2) << '\n';
  else render_text(j, out);
}

json pt(Point p) { return json::array({p.x, p.y}); }

json points_json(std::span<const Point> pts) {
  json a = json::array();
  for (Point p : pts) a.push_back(pt(p));
  return a;
}

SpecFile load(const std::string& path, const Flags& f, bool validate_set = true) {
  if (path.empty()) throw SpecError("missing input file (--set)");
  ParseOptions opt;
  if (f.samples) opt.samples = f.samples;
  opt.validate = validate_set;
  return parse_spec_file(path, opt);
}

const PlaneFunction& function_named(const SpecFile& s, const std::string& name) {
  const auto it = s.functions.find(name);
  if (it == s.functions.end()) throw SpecError("unknown function '" + name + "'");
  return it->second;
}

const PointList& list_named(const SpecFile& s, const std::string& name) {
  const auto it = s.lists.find(name);
  if (it == s.lists.end()) throw SpecError("unknown list '" + name + "'");
  return it->second;
}

SearchBudget budget_for(const SpecFile& s, const Flags& f) {
  SearchBudget b;
  b.max_len = f.max_list_len;
  b.seed = f.seed;
  if (!f.list.empty()) {
    b.initial_lists.push_back(list_named(s, f.list));
  } else {
    for (const auto& [name, l] : s.lists) b.initial_lists.push_back(l);
  }
  return b;
}

json constants_json(const EquivalenceConstants& k) {
  return {{"M", k.M}, {"S", k.S}, {"upper_factor", k.upper_factor}, {"K", k.K}};
}

json norm_json(const PlaneFunction& fn, const PicSet& refined, const SearchBudget& budget) {
  const NormBracket b = bv_bracket(fn, refined, budget);
  json j;
  j["pic_norm"] = pic_norm(fn, refined);
  j["sup_norm"] = sup_norm(fn, refined);
  j["bv_lower"] = b.lower;
  j["bv_upper"] = b.upper;
  j["upper_from"] = b.upper_provenance;
  j["lower_witness"] = b.lower_witness ? points_json(b.lower_witness->points()) : json::array();
  return j;
}

json vf_json(const PointList& l) {
  const VariationFactor v = vf_exact(l);
  return {{"vf", v.count},
          {"list_length", l.size()},
          {"witness", {{"anchor", pt(v.witness.anchor())}, {"normal", pt(v.witness.normal())}}}};
}

json graph_json(const PicGraph& g) {
  const SmoothedGraph s = smooth_with_chains(g);
  auto degrees = s.graph.degrees();
  std::sort(degrees.rbegin(), degrees.rend());
  return {{"vertices", g.vertices.size()},
          {"edges", g.edges.size()},
          {"smoothed_vertices", s.graph.vertices.size()},
          {"smoothed_edges", s.graph.edges.size()},
          {"smoothed_degrees", degrees}};
}

int cmd_norm(const Flags& f, std::ostream& out) {
  const SpecFile s = load(f.set, f);
  if (f.fn.empty()) throw SpecError("missing --fn");
  const PlaneFunction& fn = function_named(s, f.fn);
  const PicSet refined = refine_simple(s.set);
  json j;
  j["command"] = "norm";
  j["function"] = f.fn;
  j["curves"] = s.set.size();
  j["refined_curves"] = refined.size();
  j.update(norm_json(fn, refined, budget_for(s, f)));
  j["constants"] = constants_json(equivalence_constants(refined));
  if (f.json) j["spec"] = emit_spec(refined);
  emit(j, f, out);
  return kExitOk;
}

int cmd_vf(const Flags& f, std::ostream& out) {
  const SpecFile s = load(f.set, f);
  if (f.list.empty()) throw SpecError("missing --list");
  json j{{"command", "vf"}, {"list", f.list}};
  j.update(vf_json(list_named(s, f.list)));
  emit(j, f, out);
  return kExitOk;
}

int cmd_homeo(const Flags& f, std::ostream& out) {
  const SpecFile a = load(f.a, f), b = load(f.b, f);
  const PicGraph ga = extract_graph(refine_simple(a.set)), gb = extract_graph(refine_simple(b.set));
  const GraphMatch m = is_homeomorphic(ga, gb);
  json j{{"command", "homeo"}, {"homeomorphic", m.found}, {"a", graph_json(ga)}, {"b", graph_json(gb)}};
  if (m.found && f.build_map) {
    const MatchedSets ms = match_subdivisions(a.set, b.set);
    const HomeoMap h = build_homeo(ms);
    const PlaneFunction fn = f.fn.empty() ? PlaneFunction::identity() : function_named(a, f.fn);
    const double residual = transport_norm_check(h, fn);
    const double norm = pic_norm(fn, h.sigma());
    j["matched_curves"] = ms.sigma.size();
    j["transport"] = {{"function", f.fn.empty() ? "identity" : f.fn},
                      {"pic_norm", norm},
                      {"residual", residual},
                      {"within_tolerance", residual <= 1e-9 * (1.0 + norm)}};
  }
  emit(j, f, out);
  return m.found ? kExitOk : kExitNegative;
}

json violations_json(const ValidationReport& r) {
  json v = json::array();
  for (const Violation& x : r.violations)
    v.push_back({{"message", x.message}, {"polygons", x.polygons}, {"curves", x.curves}});
  return v;
}

int cmd_mosaic(const Flags& f, std::ostream& out) {
  if (f.action == "validate") {
    const SpecFile s = load(f.set, f, false);
    const ValidationReport r = validate(s.set);
    json j{{"command", "mosaic validate"}, {"ok", r.ok()}, {"curves", s.set.size()}};
    if (!r.ok()) j["violations"] = violations_json(r);
    if (r.ok()) j["sides_max"] = sides_max(s.set.mosaic);
    if (f.json) {
      out << j.dump(2) << '\n';
    } else {
      out << "ok  " << (r.ok() ? "true" : "false") << '\n';
      if (!r.ok()) out << r.to_string();
    }
    return r.ok() ? kExitOk : kExitNegative;
  }
  if (f.action == "refine") {
    const SpecFile s = load(f.set, f);
    const PicSet refined = refine_simple(s.set);
    json j{{"command", "mosaic refine"},
           {"curves_before", s.set.size()},
           {"curves_after", refined.size()},
           {"valid", validate(refined).ok()},
           {"sides_max", sides_max(refined.mosaic)}};
    if (f.json) j["spec"] = emit_spec(refined);
    emit(j, f, out);
    return kExitOk;
  }
  throw SpecError("mosaic action must be 'validate' or 'refine'");
}

int cmd_partition(const Flags& f, std::ostream& out) {
  const SpecFile s = load(f.set, f);
  std::size_t i = s.curve_names.size();
  for (std::size_t k = 0; k < s.curve_names.size(); ++k)
    if (s.curve_names[k] == f.curve) i = k;
  if (i == s.curve_names.size()) throw SpecError("unknown curve '" + f.curve + "'");
  const Curve& c = s.set.curves[i];
  const std::size_t at = f.at < 0 ? (c.sample_count() - 1) / 2 : static_cast<std::size_t>(f.at);
  if (at == 0 || at + 1 >= c.sample_count()) throw SpecError("--at must be an interior sample index");
  const Point v = c.samples()[at];
  const auto [p1, p2] = partition_at(s.set.polygon(i), c, v);
  const auto bad = check_partition(s.set.polygon(i), c, v, p1, p2);
  json j{{"command", "partition"},
         {"curve", f.curve},
         {"split_point", pt(v)},
         {"p1", points_json(p1.vertices())},
         {"p2", points_json(p2.vertices())},
         {"area", s.set.polygon(i).area()},
         {"area_p1", p1.area()},
         {"area_p2", p2.area()},
         {"postconditions_ok", bad.empty()}};
  if (!bad.empty()) j["violations"] = bad;
  emit(j, f, out);
  return bad.empty() ? kExitOk : kExitNegative;
}

int cmd_report(const Flags& f, std::ostream& out) {
  const SpecFile s = load(f.set, f);
  const PicSet refined = refine_simple(s.set);
  json j;
  j["command"] = "report";
  j["validation"] = {{"ok", true}};
  j["graph"] = graph_json(extract_graph(refined));
  j["curves"] = s.set.size();
  j["refined_curves"] = refined.size();
  j["constants"] = constants_json(equivalence_constants(refined));
  json fns = json::object();
  for (const auto& [name, fn] : s.functions) {
    if (!f.fn.empty() && name != f.fn) continue;
    fns[name] = norm_json(fn, refined, budget_for(s, f));
  }
  j["functions"] = fns;
  json lists = json::object();
  for (const auto& [name, l] : s.lists) lists[name] = vf_json(l);
  j["lists"] = lists;
  j["spec"] = emit_spec(refined);
  out << j.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Variation, PIC norms and homeomorphisms of plane curve sets"};
  app.name("picvar");
  app.require_subcommand(1);
  Flags f;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--samples", f.samples, "Samples per curve (default: the file's value, else 64)");
    sub->add_option("--seed", f.seed, "Search seed");
    sub->add_option("--max-list-len", f.max_list_len, "Longest list tried by the variation search")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--json", f.json, "Machine-readable output");
  };
  auto* norm = app.add_subcommand("norm", "PIC norm, BV bracket and constants");
  norm->add_option("--set", f.set)->required();
  norm->add_option("--fn", f.fn)->required();
  norm->add_option("--list", f.list, "Seed list for the BV lower bound (default: all lists)");
  common(norm);
  auto* vf = app.add_subcommand("vf", "Variation factor of a list");
  vf->add_option("--set", f.set)->required();
  vf->add_option("--list", f.list)->required();
  common(vf);
  auto* homeo = app.add_subcommand("homeo", "Homeomorphism test");
  homeo->add_option("--a", f.a)->required();
  homeo->add_option("--b", f.b)->required();
  homeo->add_flag("--build-map", f.build_map, "Build the point map and check norm transport");
  homeo->add_option("--fn", f.fn, "Function on the first set for the transport check");
  common(homeo);
  auto* mosaic = app.add_subcommand("mosaic", "Validate or refine a mosaic");
  mosaic->add_option("action", f.action, "validate | refine")->required();
  mosaic->add_option("--set", f.set)->required();
  common(mosaic);
  auto* part = app.add_subcommand("partition", "Split a curve's polygon at a sample");
  part->add_option("--set", f.set)->required();
  part->add_option("--curve", f.curve)->required();
  part->add_option("--at", f.at, "Interior sample index (default: middle)");
  common(part);
  auto* report = app.add_subcommand("report", "Everything, as JSON");
  report->add_option("--set", f.set)->required();
  report->add_option("--fn", f.fn);
  common(report);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  try {
    if (norm->parsed()) return cmd_norm(f, out);
    if (vf->parsed()) return cmd_vf(f, out);
    if (homeo->parsed()) return cmd_homeo(f, out);
    if (mosaic->parsed()) return cmd_mosaic(f, out);
    if (part->parsed()) return cmd_partition(f, out);
    if (report->parsed()) return cmd_report(f, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace pic::cli
