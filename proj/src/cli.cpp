#include "graphon/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "graphon/bipartite.hpp"
#include "graphon/error.hpp"
#include "graphon/graphon_core.hpp"
#include "graphon/io.hpp"
#include "graphon/spectral.hpp"
#include "graphon/verify.hpp"

namespace graphon::cli {
namespace {

using io::Json;

struct Outcome {
  Json results = Json::object();
  std::vector<Check> checks;
  std::size_t grid = 0;
  std::vector<std::string> csv_rows;  // first row is the header
};

void validate(const RunConfig& c) {
  if (c.grid < 1) throw Error(ErrorCode::BadParameters, "--grid must be >= 1");
  if (!(c.tol > 0.0)) throw Error(ErrorCode::BadParameters, "--tol must be > 0");
  if (c.max_iter < 1) throw Error(ErrorCode::BadParameters, "--max-iter must be >= 1");
  if (c.blocks < 1) throw Error(ErrorCode::BadParameters, "--blocks must be >= 1");
  if (c.restarts < 1) throw Error(ErrorCode::BadParameters, "--restarts must be >= 1");
  if (!c.csv.empty() && c.command != Command::mixing && c.command != Command::round) {
    throw Error(ErrorCode::BadParameters, "--csv is only produced by mixing and round");
  }
}

SpectralOptions spectral_options(const RunConfig& c) {
  SpectralOptions o;
  o.tol = c.tol;
  o.max_iter = c.max_iter;
  o.seed = c.seed;
  return o;
}

VerifyOptions verify_options(const RunConfig& c) {
  VerifyOptions o;
  o.spectral = spectral_options(c);
  o.restarts = c.restarts;
  return o;
}

Graphon build(const io::GraphonInput& in, const RunConfig& c) {
  std::size_t m = c.grid;
  if (in.native_grid && !c.grid_explicit) m = *in.native_grid;
  return family(in.spec, m);
}

/// Graph inputs become their associated graphon with `blocks` cells per vertex.
Graphon as_graphon(const io::Input& in, const RunConfig& c) {
  if (const auto* g = std::get_if<io::GraphInput>(&in)) {
    return associated_graphon(g->graph, c.blocks);
  }
  return build(std::get<io::GraphonInput>(in), c);
}

Json ratio_json(const RatioReport& r) {
  Json out;
  out["beta"] = r.beta;
  out["witness"] = io::partition_to_json(r.witness);
  return out;
}

Json rounding_json(const NamedWitness& w) {
  Json out;
  out["beta"] = w.beta;
  out["witness"] = io::partition_to_json(w.partition);
  if (w.threshold) out["threshold"] = *w.threshold;
  out["witness_grid"] = w.grid;
  return out;
}

Json spectrum_json(const SpectralResult& s) {
  Json out;
  out["lambda_max"] = s.lambda_max;
  out["matrix_top"] = s.matrix_top;
  out["method"] = std::string(method_name(s.method));
  out["iterations"] = s.iterations;
  out["residual"] = s.residual;
  if (s.eigenfunction) out["eigenfunction"] = s.eigenfunction->values;
  return out;
}

Outcome cmd_lambda_max(const io::Input& in, const RunConfig& c) {
  Outcome o;
  if (const auto* g = std::get_if<io::GraphInput>(&in)) {
    o.grid = g->graph.n();
    o.results = spectrum_json(lambda_max_graph(g->graph, spectral_options(c)));
  } else {
    const Graphon w = build(std::get<io::GraphonInput>(in), c);
    o.grid = w.m();
    o.results = spectrum_json(lambda_max(w, spectral_options(c)));
  }
  return o;
}

Outcome cmd_beta(const io::Input& in, const RunConfig& c) {
  Outcome o;
  const auto* g = std::get_if<io::GraphInput>(&in);
  // Cells of W_G with one cell per vertex carry the same ratio as vertices.
  const Graphon w = g ? associated_graphon(g->graph, 1) : build(std::get<io::GraphonInput>(in), c);
  o.grid = w.m();

  BetaMethod method = c.method;
  if (method == BetaMethod::automatic) {
    method = w.m() <= kExhaustiveMaxSize ? BetaMethod::both : BetaMethod::rounding;
  }
  std::optional<RatioReport> exact;
  std::optional<NamedWitness> rounded;
  if (method != BetaMethod::rounding) {
    exact = g ? beta_graph_exact(g->graph) : beta_exhaustive(w);
  }
  if (method != BetaMethod::exhaustive) {
    rounded = spectral_rounding(w, lambda_max(w, spectral_options(c)));
  }
  if (exact && rounded) {
    o.results["exhaustive"] = ratio_json(*exact);
    o.results["rounding"] = rounding_json(*rounded);
  } else if (exact) {
    o.results = ratio_json(*exact);
  } else {
    o.results = rounding_json(*rounded);
  }
  return o;
}

Outcome cmd_verify(const io::Input& in, const RunConfig& c) {
  Outcome o;
  const VerifyOptions opts = verify_options(c);
  if (const auto* g = std::get_if<io::GraphInput>(&in)) {
    const VerificationReport rep = verify_graph_correspondence(g->graph, c.blocks, opts);
    o.grid = rep.grid;
    o.results = io::report_to_json(rep);
    o.checks = rep.checks;
    return o;
  }
  const Graphon w = build(std::get<io::GraphonInput>(in), c);
  const VerificationReport rep = verify_graphon(w, opts);
  o.grid = w.m();
  o.results = io::report_to_json(rep);
  o.checks = rep.checks;

  const auto& d = w.degrees();
  if (*std::min_element(d.begin(), d.end()) >= opts.degree_floor) {
    const VerificationReport eq = bipartite_equivalence(w, opts);
    o.results["bipartite_equivalence"] = io::report_to_json(eq);
    o.checks.insert(o.checks.end(), eq.checks.begin(), eq.checks.end());
  }
  return o;
}

Outcome cmd_from_graph(const io::Input& in, const RunConfig& c) {
  const auto* g = std::get_if<io::GraphInput>(&in);
  if (!g) throw Error(ErrorCode::BadParameters, "from-graph needs a graph input");
  Outcome o;
  const Graphon w = associated_graphon(g->graph, c.blocks);
  o.grid = w.m();
  Json graphon;
  graphon["family"] = "grid";
  graphon["kernel"] = io::kernel_to_json(w.kernel());
  o.results["graphon"] = std::move(graphon);
  o.results["blocks"] = c.blocks;

  const SpectralResult sg = lambda_max_graph(g->graph, spectral_options(c));
  const SpectralResult sw = lambda_max(w, spectral_options(c));
  o.results["lambda_max_graph"] = sg.lambda_max;
  o.results["lambda_max_graphon"] = sw.lambda_max;
  // The two spectra agree only for loopless graphs; heavy loops can push
  // the graph value below the graphon's floor of 1.
  if (g->graph.loopless()) {
    o.checks.push_back(
        make_check("lambda_match", std::abs(sw.lambda_max - sg.lambda_max), 0.0, 1e-8));
  }
  return o;
}

Outcome cmd_mixing(const io::Input& in, const RunConfig& c) {
  Outcome o;
  const Graphon w = as_graphon(in, c);
  o.grid = w.m();
  const std::vector<double> seq = mixing_sequence(w, c.levels);
  Json rows = Json::array();
  o.csv_rows.push_back("n,beta");
  for (std::size_t n = 0; n < seq.size(); ++n) {
    Json row;
    row["n"] = n;
    row["beta"] = seq[n];
    rows.push_back(std::move(row));
    o.csv_rows.push_back(std::to_string(n) + "," + io::format12(seq[n]));
  }
  o.results["levels"] = c.levels;
  o.results["sequence"] = std::move(rows);
  return o;
}

Outcome cmd_round(const io::Input& in, const RunConfig& c) {
  Outcome o;
  const Graphon w = as_graphon(in, c);
  o.grid = w.m();
  const SpectralResult spectrum = lambda_max(w, spectral_options(c));
  const RoundingSource src = rounding_source(w, spectrum);
  const RatioReport best = threshold_rounding(src.graphon, src.f);

  o.results["lambda_max"] = spectrum.lambda_max;
  o.results["beta"] = best.beta;
  if (best.threshold) o.results["threshold"] = *best.threshold;
  o.results["witness"] = io::partition_to_json(best.witness);
  o.results["witness_grid"] = src.graphon.m();
  o.results["eigenfunction_on_grid"] = spectrum.eigenfunction.has_value();

  o.csv_rows.push_back("t,beta");
  for (const SweepPoint& p : threshold_sweep(src.graphon, src.f)) {
    o.csv_rows.push_back(io::format12(p.t) + "," + io::format12(p.beta));
  }
  const double gap = 2.0 - spectrum.lambda_max;
  o.checks.push_back(make_check("cheeger_constructive", best.beta * best.beta, 2.0 * gap, 1e-8));
  return o;
}

Outcome dispatch(const io::Input& in, const RunConfig& c) {
  switch (c.command) {
    case Command::lambda_max: return cmd_lambda_max(in, c);
    case Command::beta: return cmd_beta(in, c);
    case Command::verify: return cmd_verify(in, c);
    case Command::from_graph: return cmd_from_graph(in, c);
    case Command::mixing: return cmd_mixing(in, c);
    case Command::round: return cmd_round(in, c);
  }
  throw Error(ErrorCode::BadParameters, "unknown command");
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) throw Error(ErrorCode::IoError, "cannot write " + path);
}

}  // namespace

std::optional<Command> parse_command(const std::string& name) {
  if (name == "lambda-max") return Command::lambda_max;
  if (name == "beta") return Command::beta;
  if (name == "verify") return Command::verify;
  if (name == "from-graph") return Command::from_graph;
  if (name == "mixing") return Command::mixing;
  if (name == "round") return Command::round;
  return std::nullopt;
}

std::string command_name(Command c) {
  switch (c) {
    case Command::lambda_max: return "lambda-max";
    case Command::beta: return "beta";
    case Command::verify: return "verify";
    case Command::from_graph: return "from-graph";
    case Command::mixing: return "mixing";
    case Command::round: return "round";
  }
  return "unknown";
}

std::optional<BetaMethod> parse_beta_method(const std::string& name) {
  if (name == "exhaustive") return BetaMethod::exhaustive;
  if (name == "rounding") return BetaMethod::rounding;
  if (name == "both") return BetaMethod::both;
  return std::nullopt;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  try {
    validate(config);
    const io::Input input = io::load_input(config.input);
    const Outcome o = dispatch(input, config);

    Json report;
    report["command"] = command_name(config.command);
    report["input"] = config.input;
    report["grid"] = o.grid;
    report["results"] = o.results;
    Json checks = Json::array();
    bool passed = true;
    for (const Check& c : o.checks) {
      checks.push_back(io::check_to_json(c));
      passed = passed && c.passed;
    }
    report["checks"] = std::move(checks);
    double ms = 0.0;
    if (!config.no_timing) {
      ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
               .count();
    }
    report["runtime_ms"] = ms;

    const std::string text = report.dump(2) + "\n";
    if (config.output.empty()) {
      out << text;
    } else {
      write_text(config.output, text);
    }
    if (!config.csv.empty()) {
      std::string csv;
      for (const std::string& row : o.csv_rows) csv += row + "\n";
      write_text(config.csv, csv);
    }
    if (!passed) {
      for (const Check& c : o.checks) {
        if (!c.passed) err << "check failed: " << c.name << " (slack " << c.slack << ")\n";
      }
      return kExitCheckFailed;
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

int run(const RunConfig& config) { return run(config, std::cout, std::cerr); }

}  // namespace graphon::cli
