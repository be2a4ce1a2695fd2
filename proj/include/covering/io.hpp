#pragma once

// File formats and report emission.
//
// Instance:  {"shape": [n_1, ..., n_d], "points": [[x_1, ..., x_d], ...]}
// Family:    {"family": [[axes of B_1], ...]} with 1-based axes; [] is the
//            empty pattern. Shorthands: slices, points, lines, full.
// Tensor:    {"shape": [...], "p": prime, "entries": [...]} row-major, last
//            axis fastest.
// Coordinates and axes are 1-based in every file and report.

#include <cstddef>
#include <string>
#include <string_view>

#include <json.hpp>

#include "covering/cover_solver.hpp"
#include "covering/restrictions.hpp"
#include "covering/tensor.hpp"

namespace covering::io {

using Json = nlohmann::ordered_json;

struct Instance {
  LatticeSubset subset;
  /// Repeated points dropped while reading.
  std::size_t duplicates = 0;
};

/// Throws ParseError on malformed input and RangeError on out-of-range points.
Instance instance_from_json(const Json& j);
Instance read_instance(const std::string& path);
Json to_json(const LatticeSubset& a);

/// A shorthand name, inline JSON, or a path to a family file.
PatternFamily parse_family(std::string_view spec, int d);
PatternFamily family_from_json(const Json& j, int d);
Json to_json(const PatternFamily& m);

FieldTensor tensor_from_json(const Json& j);
FieldTensor read_tensor(const std::string& path);
Json to_json(const FieldTensor& t);

Json read_json_file(const std::string& path);

Json to_json(const Point& p);
Json to_json(const Subspace& s);
Json to_json(const CoverDecomposition& c);
Json to_json(const CoverResult& r);
Json to_json(const IndependenceResult& r);
Json to_json(const DecompositionEnumeration& e);
Json to_json(const MeetBoundReport& r);
Json to_json(const RestrictionCertificate& c);
Json to_json(const Coloring& c);
Json to_json(const BoundedSizeReport& r);
Json to_json(const DescentTreeNode& n);
Json to_json(const SliceRankResult& r);

/// One `key: value` line per scalar, dotted keys for nested objects; arrays
/// of scalars and points stay inline.
std::string text_record(const Json& j);

}  // namespace covering::io
