/*
 Copyright 2026 The stlpi Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
#include "stlpi/problem_io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace stlpi {

using nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& message) {
  throw std::runtime_error(message);
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

double parse_double_field(const std::string& field, const char* what) {
  double value = 0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc() || res.ptr != end) {
    fail(std::string("trajectory CSV: malformed ") + what + " field '" +
         field + "'");
  }
  return value;
}

Eigen::VectorXd to_vector(const ordered_json& node, const char* what) {
  if (!node.is_array()) fail(std::string(what) + " must be an array");
  Eigen::VectorXd out(node.size());
  for (size_t i = 0; i < node.size(); ++i) {
    if (!node[i].is_number()) fail(std::string(what) + " must be numeric");
    out[static_cast<Eigen::Index>(i)] = node[i].get<double>();
  }
  return out;
}

Eigen::MatrixXd to_covariance(const ordered_json& node, int input_dim) {
  if (node.is_number()) {
    // A bare number means s * I.
    return node.get<double>() *
           Eigen::MatrixXd::Identity(input_dim, input_dim);
  }
  if (!node.is_array() || node.empty()) {
    fail("covariance must be a number, an array, or a matrix");
  }
  if (node[0].is_number()) {
    const Eigen::VectorXd diag = to_vector(node, "covariance diagonal");
    if (diag.size() != input_dim) {
      fail("covariance diagonal length must equal the input dimension");
    }
    return diag.asDiagonal();
  }
  const int n = static_cast<int>(node.size());
  if (n != input_dim) fail("covariance must be n_u x n_u");
  Eigen::MatrixXd cov(n, n);
  for (int r = 0; r < n; ++r) {
    const Eigen::VectorXd row = to_vector(node[r], "covariance row");
    if (row.size() != n) fail("covariance must be n_u x n_u");
    cov.row(r) = row;
  }
  return cov;
}

System make_model(const ordered_json& node) {
  if (!node.is_object() || !node.contains("type")) {
    fail("model must be an object with a 'type'");
  }
  const std::string type = node["type"].get<std::string>();
  if (type == "scalar_integrator") return scalar_integrator();
  if (type == "double_integrator") {
    return double_integrator(node.value("dt", 1.0));
  }
  if (type == "single_track") {
    return single_track(node.value("dt", 0.1), node.value("wheelbase", 2.0));
  }
  fail("unknown model type '" + type + "'");
}

Predicate make_predicate(const std::string& name, const ordered_json& node) {
  if (!node.is_object() || !node.contains("type")) {
    fail("predicate '" + name + "' must be an object with a 'type'");
  }
  const std::string type = node["type"].get<std::string>();
  if (type == "affine") {
    return Predicate::affine(
        to_vector(node.at("coefficients"), "predicate coefficients"),
        node.value("offset", 0.0));
  }
  if (type == "circle_inside") {
    const Eigen::VectorXd center =
        to_vector(node.at("center"), "circle center");
    if (center.size() != 2) fail("circle center must have two entries");
    int ix = 0, iy = 1;
    if (node.contains("indices")) {
      const Eigen::VectorXd idx = to_vector(node["indices"], "circle indices");
      if (idx.size() != 2) fail("circle indices must have two entries");
      ix = static_cast<int>(idx[0]);
      iy = static_cast<int>(idx[1]);
    }
    return Predicate::circle_inside(center[0], center[1],
                                    node.at("radius").get<double>(), ix, iy);
  }
  fail("unknown predicate type '" + type + "' for '" + name + "'");
}

StateCostFn make_state_cost(const ordered_json& node, int state_dim,
                            const char* what) {
  if (!node.is_object() || !node.contains("type")) {
    fail(std::string(what) + " must be an object with a 'type'");
  }
  const std::string type = node["type"].get<std::string>();
  if (type == "zero") return {};
  if (type == "linear") {
    Eigen::VectorXd coeffs =
        to_vector(node.at("coefficients"), "cost coefficients");
    if (coeffs.size() != state_dim) {
      fail(std::string(what) + " coefficients must match the state dimension");
    }
    return [coeffs](const Eigen::VectorXd& x) { return coeffs.dot(x); };
  }
  if (type == "quadratic") {
    Eigen::VectorXd weights = to_vector(node.at("weights"), "cost weights");
    Eigen::VectorXd target = to_vector(node.at("target"), "cost target");
    if (weights.size() != state_dim || target.size() != state_dim) {
      fail(std::string(what) +
           " weights and target must match the state dimension");
    }
    return [weights, target](const Eigen::VectorXd& x) {
      return weights.dot((x - target).cwiseAbs2());
    };
  }
  fail("unknown " + std::string(what) + " type '" + type + "'");
}

RobustnessCostMode parse_mode(const std::string& mode) {
  if (mode == "penalize_violation") {
    return RobustnessCostMode::kPenalizeViolationOnly;
  }
  if (mode == "maximize_satisfaction") {
    return RobustnessCostMode::kMaximizeSatisfaction;
  }
  fail("unknown robustness cost mode '" + mode + "'");
}

// Canonical document: fixed key order, defaults materialized, values echoed
// from the input. Two loads of one document serialize identically.
ordered_json canonical_document(const ordered_json& doc) {
  ordered_json out;
  out["name"] = doc.value("name", "custom");
  out["model"] = doc.at("model");
  out["horizon"] = doc.at("horizon");
  out["x0"] = doc.at("x0");
  out["formula"] = doc.at("formula");
  out["predicates"] = doc.value("predicates", ordered_json::object());
  out["terminal_cost"] =
      doc.value("terminal_cost", ordered_json{{"type", "zero"}});
  out["stage_cost"] = doc.value("stage_cost", ordered_json{{"type", "zero"}});
  const ordered_json solver = doc.value("solver", ordered_json::object());
  ordered_json s;
  s["iterations"] = solver.value("iterations", 1);
  s["samples"] = solver.value("samples", 1);
  s["shrink"] = solver.value("shrink", 0.5);
  s["covariance"] = solver.value("covariance", ordered_json(1.0));
  s["temperature"] = solver.value("temperature", 1.0);
  s["stl_weight"] = solver.value("stl_weight", 1.0);
  s["mode"] = solver.value("mode", "penalize_violation");
  s["seed"] = solver.value("seed", 0);
  if (solver.contains("initial_inputs")) {
    s["initial_inputs"] = solver["initial_inputs"];
  }
  out["solver"] = s;
  return out;
}

}  // namespace

ProblemSpec load_problem(const ordered_json& doc) {
  if (!doc.is_object()) fail("problem document must be a JSON object");
  for (const char* key : {"model", "horizon", "x0", "formula"}) {
    if (!doc.contains(key)) {
      fail(std::string("problem document is missing '") + key + "'");
    }
  }

  ProblemSpec spec;
  spec.document = canonical_document(doc);
  const ordered_json& canon = spec.document;

  spec.name = canon["name"].get<std::string>();
  spec.model = make_model(canon["model"]);
  if (!canon["horizon"].is_number_integer() ||
      canon["horizon"].get<int>() < 1) {
    fail("horizon must be an integer >= 1");
  }
  spec.horizon = canon["horizon"].get<int>();
  spec.x0 = to_vector(canon["x0"], "x0");
  if (spec.x0.size() != spec.model.state_dim) {
    fail("x0 length must equal the model state dimension");
  }

  for (const auto& [name, body] : canon["predicates"].items()) {
    spec.predicates.emplace(name, make_predicate(name, body));
  }
  spec.formula_text = canon["formula"].get<std::string>();
  try {
    spec.formula = parse_formula(spec.formula_text, spec.predicates);
  } catch (const ParseError& err) {
    fail(std::string("formula: ") + err.what());
  }

  const ordered_json& s = canon["solver"];
  spec.solver.iterations = s["iterations"].get<int>();
  spec.solver.samples = s["samples"].get<int>();
  spec.solver.shrink = s["shrink"].get<double>();
  spec.solver.covariance =
      to_covariance(s["covariance"], spec.model.input_dim);
  spec.solver.temperature = s["temperature"].get<double>();
  spec.solver.stl_weight = s["stl_weight"].get<double>();
  spec.solver.mode = parse_mode(s["mode"].get<std::string>());
  spec.solver.seed = s["seed"].get<uint64_t>();
  if (s.contains("initial_inputs")) {
    const ordered_json& rows = s["initial_inputs"];
    if (!rows.is_array() || static_cast<int>(rows.size()) != spec.horizon) {
      fail("initial_inputs must have one row per step");
    }
    spec.solver.initial_inputs.resize(spec.model.input_dim, spec.horizon);
    for (int k = 0; k < spec.horizon; ++k) {
      const Eigen::VectorXd row = to_vector(rows[k], "initial_inputs row");
      if (row.size() != spec.model.input_dim) {
        fail("initial_inputs rows must match the input dimension");
      }
      spec.solver.initial_inputs.col(k) = row;
    }
  }
  spec.solver.stage_cost =
      make_state_cost(canon["stage_cost"], spec.model.state_dim, "stage_cost");
  spec.solver.terminal_cost = make_state_cost(
      canon["terminal_cost"], spec.model.state_dim, "terminal_cost");
  return spec;
}

ProblemSpec load_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open problem file '" + path + "'");
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const std::exception& err) {
    fail("problem file '" + path + "' is not valid JSON: " + err.what());
  }
  ProblemSpec spec = load_problem(doc);
  if (!doc.contains("name")) {
    spec.name = path;
    spec.document["name"] = path;
  }
  return spec;
}

nlohmann::ordered_json apply_overrides(
    ordered_json doc, const std::vector<std::string>& overrides) {
  static const std::map<std::string, std::string> aliases = {
      {"J", "solver.iterations"},      {"M", "solver.samples"},
      {"nu", "solver.shrink"},         {"lambda", "solver.temperature"},
      {"gamma", "solver.stl_weight"},  {"sigma", "solver.covariance"},
      {"K", "horizon"},                {"seed", "solver.seed"},
      {"mode", "solver.mode"},         {"iterations", "solver.iterations"},
      {"samples", "solver.samples"},   {"shrink", "solver.shrink"},
      {"temperature", "solver.temperature"},
      {"stl_weight", "solver.stl_weight"},
      {"covariance", "solver.covariance"},
      {"initial_inputs", "solver.initial_inputs"},
      {"u_init", "solver.initial_inputs"},
  };
  for (const std::string& entry : overrides) {
    const size_t eq = entry.find('=');
    if (eq == std::string::npos || eq == 0) {
      fail("override '" + entry + "' is not of the form key=value");
    }
    std::string key = entry.substr(0, eq);
    const std::string raw = entry.substr(eq + 1);
    if (key.find('.') == std::string::npos) {
      auto it = aliases.find(key);
      if (it != aliases.end()) key = it->second;
    }
    ordered_json value = ordered_json::parse(raw, nullptr, false);
    if (value.is_discarded()) value = raw;

    ordered_json* cursor = &doc;
    size_t start = 0;
    while (true) {
      const size_t dot = key.find('.', start);
      const std::string part =
          key.substr(start, dot == std::string::npos ? dot : dot - start);
      if (part.empty()) fail("override key '" + key + "' has an empty part");
      if (dot == std::string::npos) {
        (*cursor)[part] = value;
        break;
      }
      cursor = &(*cursor)[part];
      if (!cursor->is_object() && !cursor->is_null()) {
        fail("override key '" + key + "' descends into a non-object");
      }
      start = dot + 1;
    }
  }
  return doc;
}

std::string write_trajectory_csv(const Eigen::MatrixXd& states,
                                 const Eigen::MatrixXd& inputs, double dt) {
  const int K = static_cast<int>(inputs.cols());
  if (states.cols() != K + 1) {
    fail("states must have one more column than inputs");
  }
  std::ostringstream os;
  os << "k,t";
  for (int i = 0; i < states.rows(); ++i) os << ",x" << i;
  for (int i = 0; i < inputs.rows(); ++i) os << ",u" << i;
  os << "\n";
  for (int k = 0; k <= K; ++k) {
    os << k << ',' << format_double(k * dt);
    for (int i = 0; i < states.rows(); ++i) {
      os << ',' << format_double(states(i, k));
    }
    for (int i = 0; i < inputs.rows(); ++i) {
      os << ',';
      if (k < K) os << format_double(inputs(i, k));
    }
    os << "\n";
  }
  return os.str();
}

TrajectoryData read_trajectory_csv(const std::string& text, int state_dim,
                                   int input_dim) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    size_t start = 0;
    while (true) {
      const size_t comma = line.find(',', start);
      fields.push_back(line.substr(
          start, comma == std::string::npos ? comma : comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    rows.push_back(std::move(fields));
  }
  if (rows.size() < 3) {
    fail("trajectory CSV: need a header and at least two data rows");
  }

  std::ostringstream expected;
  expected << "k,t";
  for (int i = 0; i < state_dim; ++i) expected << ",x" << i;
  for (int i = 0; i < input_dim; ++i) expected << ",u" << i;
  std::ostringstream got;
  for (size_t i = 0; i < rows[0].size(); ++i) {
    if (i) got << ',';
    got << rows[0][i];
  }
  if (got.str() != expected.str()) {
    fail("trajectory CSV: header '" + got.str() + "' does not match '" +
         expected.str() + "'");
  }

  const int K = static_cast<int>(rows.size()) - 2;
  const size_t columns = 2 + state_dim + input_dim;
  TrajectoryData out;
  out.states.resize(state_dim, K + 1);
  out.inputs.resize(input_dim, K);
  for (int k = 0; k <= K; ++k) {
    const auto& row = rows[k + 1];
    if (row.size() != columns) {
      fail("trajectory CSV: row " + std::to_string(k) + " has " +
           std::to_string(row.size()) + " fields, expected " +
           std::to_string(columns));
    }
    if (static_cast<int>(parse_double_field(row[0], "k")) != k) {
      fail("trajectory CSV: step column must count 0..K in order");
    }
    parse_double_field(row[1], "t");
    for (int i = 0; i < state_dim; ++i) {
      out.states(i, k) = parse_double_field(row[2 + i], "state");
    }
    for (int i = 0; i < input_dim; ++i) {
      const std::string& field = row[2 + state_dim + i];
      if (k < K) {
        out.inputs(i, k) = parse_double_field(field, "input");
      } else if (!field.empty()) {
        fail("trajectory CSV: input fields must be blank on the final row");
      }
    }
  }
  return out;
}

nlohmann::ordered_json make_run_record(const ProblemSpec& spec,
                                       const SolveResult& result,
                                       double wall_clock_ms) {
  ordered_json record;
  record["problem"] = spec.name;
  record["seed"] = spec.solver.seed;
  record["config"] = spec.document;
  ordered_json iterations = ordered_json::array();
  for (const IterationDiagnostics& diag : result.iterations) {
    iterations.push_back(ordered_json{
        {"iteration", diag.iteration},
        {"weighted_cost", diag.weighted_cost},
        {"best_cost", diag.best_cost},
        {"effective_samples", diag.effective_samples},
        {"temperature", diag.temperature},
        {"covariance_scale", diag.covariance_scale},
        {"clamped_samples", diag.clamped_samples},
    });
  }
  record["iterations"] = iterations;
  record["final_cost"] = result.final_cost;
  record["final_robustness"] = result.final_robustness;
  record["satisfied"] = result.final_robustness > 0.0;
  record["clamped_samples_total"] = result.clamped_samples_total;
  ordered_json states = ordered_json::array();
  for (int k = 0; k < result.states.cols(); ++k) {
    ordered_json row = ordered_json::array();
    for (int i = 0; i < result.states.rows(); ++i) {
      row.push_back(result.states(i, k));
    }
    states.push_back(row);
  }
  ordered_json inputs = ordered_json::array();
  for (int k = 0; k < result.inputs.cols(); ++k) {
    ordered_json row = ordered_json::array();
    for (int i = 0; i < result.inputs.rows(); ++i) {
      row.push_back(result.inputs(i, k));
    }
    inputs.push_back(row);
  }
  record["trajectory"] = ordered_json{{"states", states}, {"inputs", inputs}};
  record["wall_clock_ms"] = wall_clock_ms;
  return record;
}

nlohmann::ordered_json make_eval_report(const ProblemSpec& spec,
                                        const Eigen::MatrixXd& states) {
  if (states.rows() != spec.model.state_dim) {
    fail("trajectory state dimension does not match the problem");
  }
  if (states.cols() != spec.horizon + 1) {
    fail("trajectory length does not match the problem horizon");
  }
  ordered_json report;
  report["problem"] = spec.name;
  report["formula"] = spec.formula_text;
  const double rho = robustness(spec.formula, states, 0);
  report["robustness"] = rho;
  report["satisfied"] = rho > 0.0;
  ordered_json conjuncts = ordered_json::array();
  const std::vector<Formula> parts =
      spec.formula.kind() == Formula::Kind::kAnd
          ? spec.formula.children()
          : std::vector<Formula>{spec.formula};
  for (const Formula& part : parts) {
    const double part_rho = robustness(part, states, 0);
    conjuncts.push_back(ordered_json{
        {"formula", part.to_string()},
        {"robustness", part_rho},
        {"satisfied", part_rho > 0.0},
    });
  }
  report["conjuncts"] = conjuncts;
  return report;
}

}  // namespace stlpi
