#include "graphon/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "graphon/error.hpp"

namespace graphon::io {
namespace {

[[noreturn]] void parse_fail(const std::string& what) {
  throw Error(ErrorCode::ParseError, what);
}

double number(const Json& v, const std::string& where) {
  if (!v.is_number()) parse_fail(where + " must be a number");
  return v.get<double>();
}

std::vector<double> vector_of(const Json& v, const std::string& where) {
  if (!v.is_array()) parse_fail(where + " must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const Json& e : v) out.push_back(number(e, where));
  return out;
}

std::vector<std::vector<double>> matrix_of(const Json& v, const std::string& where) {
  if (!v.is_array()) parse_fail(where + " must be an array of rows");
  std::vector<std::vector<double>> out;
  out.reserve(v.size());
  for (const Json& row : v) out.push_back(vector_of(row, where));
  return out;
}

const Json& field(const Json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end()) parse_fail(std::string("missing field \"") + key + "\"");
  return *it;
}

GraphonInput parse_graphon(const Json& doc) {
  const Json& fam = field(doc, "family");
  if (!fam.is_string()) parse_fail("\"family\" must be a string");
  const std::string name = fam.get<std::string>();
  if (name == "constant") {
    return {ConstantFamily{number(field(doc, "c"), "c")}, std::nullopt};
  }
  if (name == "sbm") {
    return {SbmFamily{vector_of(field(doc, "block_sizes"), "block_sizes"),
                      matrix_of(field(doc, "block_matrix"), "block_matrix")},
            std::nullopt};
  }
  if (name == "separable") return {SeparableFamily{}, std::nullopt};
  if (name == "grid") {
    auto kernel = matrix_of(field(doc, "kernel"), "kernel");
    const std::size_t size = kernel.size();
    return {GridFamily{std::move(kernel)}, size};
  }
  parse_fail("unknown family \"" + name + "\"");
}

GraphInput parse_graph(const Json& doc) {
  const Json& n = field(doc, "n");
  if (!n.is_number_unsigned()) parse_fail("\"n\" must be a non-negative integer");
  auto weights = matrix_of(field(doc, "weights"), "weights");
  if (weights.size() != n.get<std::size_t>()) {
    parse_fail("\"weights\" has " + std::to_string(weights.size()) + " rows, n = " +
               std::to_string(n.get<std::size_t>()));
  }
  return {WeightedGraph::from_weights(weights)};
}

}  // namespace

Input parse_input(const Json& doc) {
  if (!doc.is_object()) parse_fail("input must be a JSON object");
  if (doc.contains("family")) return parse_graphon(doc);
  if (doc.contains("weights")) return parse_graph(doc);
  if (doc.contains("results")) {
    const Json& results = doc["results"];
    if (results.is_object() && results.contains("graphon")) {
      return parse_graphon(results["graphon"]);
    }
  }
  parse_fail("input is neither a graphon, a graph, nor a report with results.graphon");
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

Input load_input(const std::string& path) { return parse_input(read_json_file(path)); }

Json kernel_to_json(const SquareMatrix& k) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < k.size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < k.size(); ++j) row.push_back(k(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json graphon_to_json(const FamilySpec& spec) {
  Json out;
  std::visit(
      [&out](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, ConstantFamily>) {
          out["family"] = "constant";
          out["c"] = f.c;
        } else if constexpr (std::is_same_v<T, SbmFamily>) {
          out["family"] = "sbm";
          out["block_sizes"] = f.block_sizes;
          out["block_matrix"] = f.block_matrix;
        } else if constexpr (std::is_same_v<T, SeparableFamily>) {
          out["family"] = "separable";
        } else {
          out["family"] = "grid";
          out["kernel"] = f.kernel;
        }
      },
      spec);
  return out;
}

Json graph_to_json(const WeightedGraph& g) {
  Json out;
  out["n"] = g.n();
  out["weights"] = kernel_to_json(g.weights());
  return out;
}

double round12(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

std::string format12(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

Json partition_to_json(const SignedPartition& p) {
  Json out;
  out["left"] = p.left();
  out["right"] = p.right();
  return out;
}

Json witness_to_json(const NamedWitness& w) {
  Json out;
  out["name"] = w.name;
  out["beta"] = w.beta;
  out["grid"] = w.grid;
  out["left"] = w.partition.left();
  out["right"] = w.partition.right();
  if (w.threshold) out["threshold"] = *w.threshold;
  return out;
}

Json check_to_json(const Check& c) {
  Json out;
  out["name"] = c.name;
  out["lhs"] = c.lhs;
  out["rhs"] = c.rhs;
  out["slack"] = round12(c.slack);
  out["passed"] = c.passed;
  return out;
}

Json report_to_json(const VerificationReport& r) {
  Json out;
  out["kind"] = r.kind;
  out["grid"] = r.grid;
  out["lambda_max"] = r.lambda_max;
  if (r.beta_rounding) out["beta_rounding"] = *r.beta_rounding;
  if (r.beta_exhaustive) out["beta_exhaustive"] = *r.beta_exhaustive;
  for (const auto& [name, value] : r.values) out[name] = value;
  if (!r.predicates.empty()) {
    Json preds = Json::object();
    for (const auto& [name, value] : r.predicates) preds[name] = value;
    out["predicates"] = std::move(preds);
  }
  Json wits = Json::array();
  for (const NamedWitness& w : r.witnesses) wits.push_back(witness_to_json(w));
  out["witnesses"] = std::move(wits);
  out["tolerance"] = r.tolerance;
  return out;
}

}  // namespace graphon::io
