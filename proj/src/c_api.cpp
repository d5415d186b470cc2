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
#include "stlpi.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "stlpi/benchmarks.hpp"
#include "stlpi/problem_io.hpp"
#include "stlpi/solver.hpp"

struct stlpi_problem {
  stlpi::ProblemSpec spec;
  std::string scratch;
};

struct stlpi_result {
  stlpi::ProblemSpec spec;
  stlpi::SolveResult result;
  std::string scratch;
};

namespace {

thread_local std::string g_last_error;

template <typename Fn>
stlpi_status guarded(Fn&& fn) {
  try {
    fn();
    return STLPI_OK;
  } catch (const std::invalid_argument& err) {
    g_last_error = err.what();
    return STLPI_ERROR_INVALID;
  } catch (const stlpi::ParseError& err) {
    g_last_error = err.what();
    return STLPI_ERROR_INVALID;
  } catch (const std::exception& err) {
    g_last_error = err.what();
    return STLPI_ERROR_RUNTIME;
  }
}

stlpi_status require(bool condition, const char* message) {
  if (condition) return STLPI_OK;
  g_last_error = message;
  return STLPI_ERROR_INVALID;
}

}  // namespace

extern "C" {

const char* stlpi_version(void) { return "0.1.0"; }

const char* stlpi_last_error(void) { return g_last_error.c_str(); }

const char* stlpi_builtin_names_json(void) {
  static const std::string names = [] {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const std::string& name : stlpi::builtin_problem_names()) {
      arr.push_back(name);
    }
    return arr.dump();
  }();
  return names.c_str();
}

const char* stlpi_builtin_json(const char* name) {
  if (name == nullptr) return nullptr;
  try {
    return stlpi::builtin_problem_json(name).c_str();
  } catch (const std::exception&) {
    return nullptr;
  }
}

stlpi_status stlpi_problem_builtin(const char* name, stlpi_problem** out) {
  if (stlpi_status s = require(name && out, "name and out must be non-null");
      s != STLPI_OK) {
    return s;
  }
  return guarded([&] {
    *out = new stlpi_problem{stlpi::load_builtin(name), {}};
  });
}

stlpi_status stlpi_problem_from_json(const char* json_text,
                                     stlpi_problem** out) {
  if (stlpi_status s =
          require(json_text && out, "json_text and out must be non-null");
      s != STLPI_OK) {
    return s;
  }
  return guarded([&] {
    nlohmann::ordered_json doc = nlohmann::ordered_json::parse(json_text);
    *out = new stlpi_problem{stlpi::load_problem(doc), {}};
  });
}

stlpi_status stlpi_problem_from_file(const char* path, stlpi_problem** out) {
  if (stlpi_status s = require(path && out, "path and out must be non-null");
      s != STLPI_OK) {
    return s;
  }
  return guarded([&] {
    *out = new stlpi_problem{stlpi::load_problem_file(path), {}};
  });
}

stlpi_status stlpi_problem_override(stlpi_problem* problem,
                                    const char* key_value) {
  if (stlpi_status s = require(problem && key_value,
                               "problem and key_value must be non-null");
      s != STLPI_OK) {
    return s;
  }
  return guarded([&] {
    nlohmann::ordered_json doc =
        stlpi::apply_overrides(problem->spec.document, {key_value});
    stlpi::ProblemSpec spec = stlpi::load_problem(doc);
    problem->spec = std::move(spec);
  });
}

void stlpi_problem_free(stlpi_problem* problem) { delete problem; }

const char* stlpi_problem_name(const stlpi_problem* problem) {
  return problem ? problem->spec.name.c_str() : nullptr;
}

int stlpi_problem_state_dim(const stlpi_problem* problem) {
  return problem ? problem->spec.model.state_dim : 0;
}

int stlpi_problem_input_dim(const stlpi_problem* problem) {
  return problem ? problem->spec.model.input_dim : 0;
}

int stlpi_problem_horizon(const stlpi_problem* problem) {
  return problem ? problem->spec.horizon : 0;
}

int stlpi_problem_penalizes_violation_only(const stlpi_problem* problem) {
  return problem && problem->spec.solver.mode ==
                        stlpi::RobustnessCostMode::kPenalizeViolationOnly
             ? 1
             : 0;
}

const char* stlpi_problem_document(stlpi_problem* problem) {
  if (!problem) return nullptr;
  problem->scratch = problem->spec.document.dump(2);
  return problem->scratch.c_str();
}

stlpi_status stlpi_solve(const stlpi_problem* problem, stlpi_result** out) {
  if (stlpi_status s =
          require(problem && out, "problem and out must be non-null");
      s != STLPI_OK) {
    return s;
  }
  return guarded([&] {
    stlpi::SolveResult result =
        stlpi::solve(problem->spec.model, problem->spec.x0,
                     problem->spec.formula, problem->spec.solver,
                     problem->spec.horizon);
    *out = new stlpi_result{problem->spec, std::move(result), {}};
  });
}

void stlpi_result_free(stlpi_result* result) { delete result; }

double stlpi_result_final_cost(const stlpi_result* result) {
  return result ? result->result.final_cost : 0.0;
}

double stlpi_result_final_robustness(const stlpi_result* result) {
  return result ? result->result.final_robustness : 0.0;
}

int stlpi_result_satisfied(const stlpi_result* result) {
  return result && result->result.final_robustness > 0.0 ? 1 : 0;
}

int64_t stlpi_result_clamped_samples(const stlpi_result* result) {
  return result ? result->result.clamped_samples_total : 0;
}

const char* stlpi_result_record_json(stlpi_result* result,
                                     double wall_clock_ms) {
  if (!result) return nullptr;
  result->scratch =
      stlpi::make_run_record(result->spec, result->result, wall_clock_ms)
          .dump(2);
  return result->scratch.c_str();
}

const char* stlpi_result_trajectory_csv(stlpi_result* result) {
  if (!result) return nullptr;
  result->scratch = stlpi::write_trajectory_csv(
      result->result.states, result->result.inputs, result->spec.model.dt);
  return result->scratch.c_str();
}

stlpi_status stlpi_eval_csv(const stlpi_problem* problem,
                            const char* csv_text, char** report_json) {
  if (stlpi_status s =
          require(problem && csv_text && report_json,
                  "problem, csv_text and report_json must be non-null");
      s != STLPI_OK) {
    return s;
  }
  return guarded([&] {
    const stlpi::TrajectoryData data = stlpi::read_trajectory_csv(
        csv_text, problem->spec.model.state_dim,
        problem->spec.model.input_dim);
    const std::string report =
        stlpi::make_eval_report(problem->spec, data.states).dump(2);
    char* buffer = static_cast<char*>(std::malloc(report.size() + 1));
    if (!buffer) throw std::bad_alloc();
    std::memcpy(buffer, report.c_str(), report.size() + 1);
    *report_json = buffer;
  });
}

void stlpi_string_free(char* text) { std::free(text); }

}  // extern "C"
