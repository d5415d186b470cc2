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
#include <doctest.h>

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "stlpi/benchmarks.hpp"
#include "stlpi/robustness.hpp"

using stlpi::BruteForceResult;
using stlpi::Formula;
using stlpi::ProblemSpec;
using stlpi::RobustnessCostMode;
using stlpi::brute_force_solve;
using stlpi::builtin_problem_json;
using stlpi::builtin_problem_names;
using stlpi::load_builtin;
using stlpi::load_problem;
using stlpi::problem_i;
using stlpi::problem_ii;
using stlpi::problem_iii;
using stlpi::robustness;
using stlpi::satisfies_boolean;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> values) {
  Eigen::VectorXd out(values.size());
  int i = 0;
  for (double v : values) out[i++] = v;
  return out;
}

// Scalar integrator instance with the stacked-gate formula on a short
// horizon, small enough for exhaustive grid search.
ProblemSpec mini_gate_problem(int horizon) {
  nlohmann::ordered_json doc = {
      {"name", "mini_gate"},
      {"model", {{"type", "scalar_integrator"}}},
      {"horizon", horizon},
      {"x0", {0.0}},
      {"formula", "F[0,3](gate & F[1,3](gate))"},
      {"predicates",
       {{"gate",
         {{"type", "affine"}, {"coefficients", {-1.0}}, {"offset", 1.0}}}}},
      {"terminal_cost", {{"type", "linear"}, {"coefficients", {-1.0}}}},
      {"solver",
       {{"covariance", 5.6}, {"temperature", 11.2}, {"stl_weight", 1.0}}}};
  return load_problem(doc);
}

}  // namespace

TEST_CASE("the built-in problem list is fixed") {
  const auto names = builtin_problem_names();
  REQUIRE(names.size() == 3);
  CHECK(names[0] == "problem_i");
  CHECK(names[1] == "problem_ii");
  CHECK(names[2] == "problem_iii");

  CHECK_THROWS_AS(builtin_problem_json("problem_iv"), std::invalid_argument);
  CHECK_THROWS_AS(load_builtin(""), std::invalid_argument);
}

TEST_CASE("problem i carries its published configuration") {
  const ProblemSpec spec = problem_i();
  CHECK(spec.name == "problem_i");
  CHECK(spec.model.state_dim == 1);
  CHECK(spec.model.input_dim == 1);
  CHECK(spec.model.dt == 1.0);
  CHECK(spec.horizon == 10);
  CHECK(spec.x0 == vec({0.48}));
  CHECK(spec.formula_text == "F[0,10](gate & F[1,10](gate))");

  CHECK(spec.solver.iterations == 19);
  CHECK(spec.solver.samples == 955);
  CHECK(spec.solver.shrink == 0.3);
  CHECK(spec.solver.covariance == 5.6 * Eigen::MatrixXd::Identity(1, 1));
  CHECK(spec.solver.temperature == 11.2);
  CHECK(spec.solver.stl_weight == 1.0);
  CHECK(spec.solver.mode == RobustnessCostMode::kPenalizeViolationOnly);
  CHECK(spec.solver.seed == 0);
  CHECK(spec.solver.initial_inputs.size() == 0);

  CHECK(!spec.solver.stage_cost);
  REQUIRE(spec.solver.terminal_cost);
  CHECK(spec.solver.terminal_cost(vec({2.0})) == -2.0);
}

TEST_CASE("problem ii carries its published configuration") {
  const ProblemSpec spec = problem_ii();
  CHECK(spec.name == "problem_ii");
  CHECK(spec.model.state_dim == 4);
  CHECK(spec.model.input_dim == 2);
  CHECK(spec.model.dt == 1.0);
  CHECK(spec.horizon == 15);
  CHECK(spec.x0 == vec({2.0, 2.0, 0.0, 0.0}));
  CHECK(spec.formula_text ==
        "G[0,15](!in_circle) & "
        "F[0,15](right_of & left_of & above_of & below_of)");

  CHECK(spec.solver.iterations == 75);
  CHECK(spec.solver.samples == 1140);
  CHECK(spec.solver.shrink == 0.8);
  CHECK(spec.solver.covariance == 3.4 * Eigen::MatrixXd::Identity(2, 2));
  CHECK(spec.solver.temperature == 60.8);
  CHECK(spec.solver.stl_weight == 10.0);
  CHECK(spec.solver.mode == RobustnessCostMode::kMaximizeSatisfaction);

  // The obstacle predicate peaks at one full radius squared in the center.
  Eigen::MatrixXd at_center = Eigen::MatrixXd::Zero(4, 1);
  CHECK(spec.predicates.at("in_circle")(at_center, 0) == 1.0);
  Eigen::MatrixXd at_start = vec({2.0, 2.0, 0.0, 0.0});
  CHECK(spec.predicates.at("in_circle")(at_start, 0) == -7.0);
  CHECK(spec.predicates.at("right_of")(at_start, 0) == 5.0);

  REQUIRE(spec.solver.terminal_cost);
  CHECK(spec.solver.terminal_cost(vec({2.0, 3.0, 9.0, 9.0})) == 5.0);
}

TEST_CASE("problem iii carries its published configuration") {
  const ProblemSpec spec = problem_iii();
  CHECK(spec.name == "problem_iii");
  CHECK(spec.model.state_dim == 5);
  CHECK(spec.model.input_dim == 2);
  CHECK(spec.model.dt == 0.1);
  CHECK(spec.horizon == 50);
  CHECK(spec.x0 == vec({0.0, 0.0, 0.0, 3.0, 0.0}));

  CHECK(spec.solver.iterations == 40);
  CHECK(spec.solver.samples == 81650);
  CHECK(spec.solver.shrink == 0.8);
  CHECK(spec.solver.covariance == 0.002 * Eigen::MatrixXd::Identity(2, 2));
  CHECK(spec.solver.temperature == 0.2);
  CHECK(spec.solver.stl_weight == 1000.0);
  CHECK(spec.solver.mode == RobustnessCostMode::kPenalizeViolationOnly);

  // Arena, obstacles, tasks, and the exclusion constraint, in that order.
  REQUIRE(spec.formula.kind() == Formula::Kind::kAnd);
  REQUIRE(spec.formula.children().size() == 4);

  REQUIRE(spec.solver.terminal_cost);
  CHECK(spec.solver.terminal_cost(vec({2.0, 3.0, 1.0, 1.0, 1.0})) == 5.0);
}

TEST_CASE("shipped data files match the embedded problems") {
  for (const std::string& name : builtin_problem_names()) {
    const std::string path =
        std::string(STLPI_DATA_DIR) + "/" + name + ".json";
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), path);
    std::ostringstream text;
    text << in.rdbuf();
    CHECK(text.str() == builtin_problem_json(name));
  }
}

TEST_CASE("built-in formulas survive a print and re-parse round trip") {
  for (const std::string& name : builtin_problem_names()) {
    const ProblemSpec spec = load_builtin(name);
    CAPTURE(name);
    CHECK(spec.formula_text == spec.document["formula"].get<std::string>());
    const Formula reparsed =
        stlpi::parse_formula(spec.formula.to_string(), spec.predicates);
    CHECK(structurally_equal(reparsed, spec.formula));
  }
}

TEST_CASE("problem i is satisfied by holding the state at zero") {
  const ProblemSpec spec = problem_i();
  const Eigen::MatrixXd states = Eigen::MatrixXd::Zero(1, spec.horizon + 1);
  CHECK(robustness(spec.formula, states) == 1.0);
  CHECK(satisfies_boolean(spec.formula, states));
}

TEST_CASE("problem iii violates only the obstacle conjunct when driven straight") {
  const ProblemSpec spec = problem_iii();
  const Eigen::MatrixXd inputs = Eigen::MatrixXd::Zero(2, spec.horizon);
  const Eigen::MatrixXd states = rollout(spec.model, spec.x0, inputs);

  // At three meters per second the undisturbed car crosses the third
  // obstacle around x = 8, so the no-collision conjunct fails while the
  // arena, the tasks, and the exclusion constraint all still hold.
  const auto& conjuncts = spec.formula.children();
  REQUIRE(conjuncts.size() == 4);
  CHECK(satisfies_boolean(conjuncts[0], states));
  CHECK(!satisfies_boolean(conjuncts[1], states));
  CHECK(satisfies_boolean(conjuncts[2], states));
  CHECK(satisfies_boolean(conjuncts[3], states));
  CHECK(!satisfies_boolean(spec.formula, states));
  CHECK(robustness(spec.formula, states) == -0.15);
}

TEST_CASE("brute force recovers the analytic LQ optimum") {
  nlohmann::ordered_json doc = {
      {"model", {{"type", "scalar_integrator"}}},
      {"horizon", 2},
      {"x0", {0.0}},
      {"formula", "true"},
      {"terminal_cost",
       {{"type", "quadratic"}, {"weights", {1.0}}, {"target", {1.0}}}},
      {"solver", {{"covariance", 1.0}, {"temperature", 1.0}}}};
  const ProblemSpec spec = load_problem(doc);

  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(i * 0.1);
  const BruteForceResult best = brute_force_solve(spec, grid);

  CHECK(best.inputs(0, 0) == grid[4]);
  CHECK(best.inputs(0, 1) == grid[4]);
  CHECK(std::abs(best.cost - 0.2) <= 1e-12);
  CHECK(best.states.cols() == 3);
  CHECK(best.states(0, 2) == best.inputs(0, 0) + best.inputs(0, 1));
}

TEST_CASE("refining the grid never increases the brute force optimum") {
  const ProblemSpec spec = mini_gate_problem(3);
  const BruteForceResult coarse = brute_force_solve(spec, {-2.0, 0.0, 2.0});
  const BruteForceResult fine =
      brute_force_solve(spec, {-2.0, -1.0, 0.0, 1.0, 2.0});
  CHECK(fine.cost <= coarse.cost);
}

TEST_CASE("a single grid point fixes the whole input sequence") {
  nlohmann::ordered_json doc = {{"model", {{"type", "scalar_integrator"}}},
                                {"horizon", 1},
                                {"x0", {0.0}},
                                {"formula", "true"},
                                {"solver", {{"covariance", 1.0}}}};
  const BruteForceResult best = brute_force_solve(load_problem(doc), {0.7});
  CHECK(best.inputs(0, 0) == 0.7);
  CHECK(best.states(0, 1) == 0.7);
}

TEST_CASE("brute force rejects oversized searches and empty grids") {
  const ProblemSpec spec = mini_gate_problem(5);
  std::vector<double> grid;
  for (int i = 0; i < 50; ++i) grid.push_back(0.01 * i);
  CHECK_THROWS_AS(brute_force_solve(spec, grid), std::invalid_argument);
  CHECK_THROWS_AS(brute_force_solve(spec, {}), std::invalid_argument);
}
