#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>

#include "json.hpp"

#include "graphon/bipartite.hpp"
#include "graphon/graphon_core.hpp"
#include "graphon/verify.hpp"

namespace graphon::io {

using Json = nlohmann::ordered_json;

/// A parsed input document: either a named graphon family or a weighted
/// graph. Grid families remember their native size.
struct GraphonInput {
  FamilySpec spec;
  std::optional<std::size_t> native_grid;  // set for grid kernels
};
struct GraphInput {
  WeightedGraph graph;
};
using Input = std::variant<GraphonInput, GraphInput>;

/// Accepts a graphon document, a graph document, or a report whose
/// results.graphon holds a graphon document. Throws ParseError.
Input parse_input(const Json& doc);

/// Reads and parses a file. Throws IoError when it cannot be read.
Input load_input(const std::string& path);

Json read_json_file(const std::string& path);

Json graphon_to_json(const FamilySpec& spec);
Json graph_to_json(const WeightedGraph& g);
Json kernel_to_json(const SquareMatrix& k);

/// 12 significant digits, the precision used for all reported slacks.
double round12(double x);

/// Decimal with 12 significant digits, for CSV cells.
std::string format12(double x);

Json partition_to_json(const SignedPartition& p);
Json witness_to_json(const NamedWitness& w);
Json check_to_json(const Check& c);
Json report_to_json(const VerificationReport& r);

}  // namespace graphon::io
