#include "covering/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "covering/errors.hpp"

namespace covering::io {

namespace {

std::vector<int> int_list(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array of integers");
  std::vector<int> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw ParseError(std::string(what) + " must contain integers only");
    out.push_back(v.get<int>());
  }
  return out;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing \"") + key + "\"");
  return j.at(key);
}

LatticeShape shape_from(const Json& j) {
  const auto dims = int_list(field(j, "shape"), "shape");
  return LatticeShape(std::span<const int>(dims));
}

Json axes_json(Pattern b) {
  Json a = Json::array();
  for (int j : b.axes()) a.push_back(j + 1);
  return a;
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Instance instance_from_json(const Json& j) {
  const auto shape = shape_from(j);
  const auto& pts = field(j, "points");
  if (!pts.is_array()) throw ParseError("points must be an array");
  std::vector<Point> points;
  for (const auto& p : pts) {
    const auto c = int_list(p, "point");
    if (static_cast<int>(c.size()) != shape.order())
      throw ParseError("point with " + std::to_string(c.size()) + " coordinates in an order-" +
                       std::to_string(shape.order()) + " box");
    points.emplace_back(std::span<const int>(c));
  }
  Instance out;
  out.subset = LatticeSubset(shape, std::move(points), &out.duplicates);
  return out;
}

Instance read_instance(const std::string& path) { return instance_from_json(read_json_file(path)); }

Json to_json(const Point& p) {
  Json a = Json::array();
  for (int j = 0; j < p.order(); ++j) a.push_back(p[j]);
  return a;
}

Json to_json(const LatticeSubset& a) {
  Json pts = Json::array();
  for (const auto& p : a) pts.push_back(to_json(p));
  return {{"shape", a.shape().dims()}, {"points", pts}};
}

PatternFamily family_from_json(const Json& j, int d) {
  const Json& list = j.is_object() ? field(j, "family") : j;
  if (!list.is_array()) throw ParseError("family must be an array of axis lists");
  std::vector<Pattern> ps;
  for (const auto& b : list) {
    std::vector<int> axes;
    for (int a : int_list(b, "pattern")) {
      if (a < 1 || a > d) throw RangeError("axis " + std::to_string(a) + " outside [1," + std::to_string(d) + "]");
      axes.push_back(a - 1);
    }
    ps.push_back(Pattern::from_axes(axes));
  }
  return PatternFamily(d, std::move(ps));
}

PatternFamily parse_family(std::string_view spec, int d) {
  if (spec == "slices") return slice_family(d);
  if (spec == "points") return point_family(d);
  if (spec == "lines") return line_family(d);
  if (spec == "full") return full_family(d);
  if (!spec.empty() && (spec.front() == '[' || spec.front() == '{')) {
    try {
      return family_from_json(Json::parse(spec), d);
    } catch (const Json::parse_error& e) {
      throw ParseError(std::string("family: ") + e.what());
    }
  }
  return family_from_json(read_json_file(std::string(spec)), d);
}

Json to_json(const PatternFamily& m) {
  Json list = Json::array();
  for (auto b : m) list.push_back(axes_json(b));
  return {{"family", list}};
}

FieldTensor tensor_from_json(const Json& j) {
  const auto shape = shape_from(j);
  const auto& pj = field(j, "p");
  if (!pj.is_number_integer()) throw ParseError("p must be an integer");
  const PrimeField f(pj.get<int>());
  std::vector<std::uint8_t> entries;
  for (int v : int_list(field(j, "entries"), "entries")) {
    if (v < 0 || v >= f.p()) throw RangeError("entry " + std::to_string(v) + " is not a residue mod " + std::to_string(f.p()));
    entries.push_back(static_cast<std::uint8_t>(v));
  }
  return FieldTensor(shape, f, std::move(entries));
}

FieldTensor read_tensor(const std::string& path) { return tensor_from_json(read_json_file(path)); }

Json to_json(const FieldTensor& t) {
  return {{"shape", t.shape().dims()},
          {"p", t.field().p()},
          {"entries", std::vector<int>(t.entries().begin(), t.entries().end())}};
}

Json to_json(const Subspace& s) {
  Json fixed = Json::object();
  for (int j = 0; j < s.shape().order(); ++j)
    if (!s.pattern().is_free(j)) fixed[std::to_string(j + 1)] = s.fixed(j);
  return {{"free_axes", axes_json(s.pattern())}, {"fixed_coords", fixed}};
}

Json to_json(const CoverDecomposition& c) {
  Json a = Json::array();
  for (const auto& s : c.subspaces()) a.push_back(to_json(s));
  return a;
}

Json to_json(const CoverResult& r) {
  return {{"value", r.value},
          {"witness", to_json(r.witness)},
          {"stats",
           {{"nodes", r.stats.nodes},
            {"greedy_upper_bound", r.stats.greedy_upper_bound},
            {"lower_bound", r.stats.lower_bound},
            {"family_size", r.stats.family_size},
            {"reduced_family_size", r.stats.reduced_family_size},
            {"candidates", r.stats.candidates}}}};
}

Json to_json(const IndependenceResult& r) {
  Json j{{"value", r.value},
         {"method", r.method == IndependenceMethod::exact ? "exact" : "greedy"},
         {"witness", to_json(r.witness)["points"]}};
  if (r.method == IndependenceMethod::greedy) j["covered_by_unions"] = r.covered_by_unions;
  return j;
}

Json to_json(const DecompositionEnumeration& e) {
  Json tuples = Json::array();
  for (const auto& t : e.tuples) tuples.push_back(to_json(t));
  return {{"length", e.length},
          {"count", e.count},
          {"count_saturated", e.count_saturated},
          {"distinct_sets", e.distinct_sets},
          {"bound", static_cast<double>(e.bound)},
          {"within_bound", e.within_bound},
          {"truncated", e.truncated},
          {"tuples", tuples}};
}

Json to_json(const MeetBoundReport& r) {
  return {{"k1", r.k1},
          {"k2", r.k2},
          {"k", r.k},
          {"holds", r.holds},
          {"intersection_cover", to_json(r.intersection_cover)}};
}

Json to_json(const RestrictionCertificate& c) {
  return {{"theorem", std::string(to_string(c.theorem))},
          {"claimed_lower_bound", c.claimed_lower_bound},
          {"verified_value", c.verified_value},
          {"verified", c.verified()},
          {"sizes_ok", c.sizes_ok},
          {"axis_sets", c.restriction.axis_sets},
          {"induced", to_json(c.restriction.induced)["points"]}};
}

Json to_json(const Coloring& c) {
  return {{"colors", c.colors},
          {"axis_sets", c.axis_sets},
          {"captured", to_json(c.captured)["points"]},
          {"off_diagonal", c.off_diagonal},
          {"guaranteed", c.guaranteed}};
}

Json to_json(const BoundedSizeReport& r) {
  Json j{{"hypothesis_holds", r.hypothesis_holds},
         {"tau", r.tau},
         {"size", r.size},
         {"covering", r.covering},
         {"bound", static_cast<double>(r.bound)},
         {"inequality_holds", r.inequality_holds},
         {"consistent", r.consistent()}};
  if (r.violating_subspace) {
    j["violating_subspace"] = to_json(*r.violating_subspace);
    j["violating_value"] = r.violating_value;
  }
  return j;
}

Json to_json(const DescentTreeNode& n) {
  Json j{{"depth", n.depth}, {"subset", to_json(n.subset)["points"]}};
  if (n.chosen_subspace) {
    j["chosen_subspace"] = to_json(*n.chosen_subspace);
    j["star_covering"] = n.star_covering;
  }
  j["box"] = n.box;
  if (n.leaf_reason != LeafReason::none) j["leaf_reason"] = std::string(to_string(n.leaf_reason));
  Json kids = Json::array();
  for (const auto& c : n.children) kids.push_back(to_json(c));
  j["children"] = kids;
  return j;
}

Json to_json(const SliceRankResult& r) {
  Json j{{"value", r.value}, {"method", std::string(to_string(r.method))}};
  if (r.witness) j["witness"] = to_json(*r.witness);
  return j;
}

namespace {

bool inline_array(const Json& j) {
  return std::all_of(j.begin(), j.end(), [](const Json& v) {
    return v.is_primitive() || (v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& w) { return w.is_primitive(); }));
  });
}

void emit(std::ostringstream& out, const std::string& prefix, const Json& j) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) emit(out, prefix.empty() ? k : prefix + "." + k, v);
    return;
  }
  if (j.is_array() && !inline_array(j)) {
    for (std::size_t i = 0; i < j.size(); ++i) emit(out, prefix + "[" + std::to_string(i) + "]", j[i]);
    if (j.empty()) out << prefix << ": []\n";
    return;
  }
  out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
}

}  // namespace

std::string text_record(const Json& j) {
  std::ostringstream out;
  emit(out, "", j);
  return out.str();
}

}  // namespace covering::io
