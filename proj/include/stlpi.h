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
#ifndef STLPI_H
#define STLPI_H

/*
 * C interface to the stlpi library. Problems are loaded from JSON
 * documents (built-in benchmarks or files), optionally modified with
 * key=value overrides, solved, and queried for results. All functions
 * returning stlpi_status leave an explanation in stlpi_last_error() on
 * failure. Handles are freed with the matching _free function; strings
 * returned as const char* stay owned by their handle and remain valid
 * until the next call on that handle or its destruction.
 */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct stlpi_problem stlpi_problem;
typedef struct stlpi_result stlpi_result;

typedef enum stlpi_status {
  STLPI_OK = 0,
  /* Invalid call: null argument, unknown built-in name, or a solver
   * configuration that fails validation. */
  STLPI_ERROR_INVALID = 1,
  /* Failure while loading or running: malformed document or override,
   * unreadable file, solver hard error. */
  STLPI_ERROR_RUNTIME = 2
} stlpi_status;

/* Library version string, e.g. "0.1.0". */
const char* stlpi_version(void);

/* Message describing the most recent error on this thread. */
const char* stlpi_last_error(void);

/* JSON array of built-in problem names. */
const char* stlpi_builtin_names_json(void);

/* Raw JSON text of a built-in problem definition. NULL if unknown. */
const char* stlpi_builtin_json(const char* name);

stlpi_status stlpi_problem_builtin(const char* name, stlpi_problem** out);
stlpi_status stlpi_problem_from_json(const char* json_text,
                                     stlpi_problem** out);
stlpi_status stlpi_problem_from_file(const char* path, stlpi_problem** out);

/* Applies one key=value override (dotted path or alias, see the problem
 * schema) and re-resolves the problem. */
stlpi_status stlpi_problem_override(stlpi_problem* problem,
                                    const char* key_value);

void stlpi_problem_free(stlpi_problem* problem);

const char* stlpi_problem_name(const stlpi_problem* problem);
int stlpi_problem_state_dim(const stlpi_problem* problem);
int stlpi_problem_input_dim(const stlpi_problem* problem);
int stlpi_problem_horizon(const stlpi_problem* problem);
/* 1 when the robustness cost mode only penalizes violations. */
int stlpi_problem_penalizes_violation_only(const stlpi_problem* problem);
/* Resolved problem document as JSON text. */
const char* stlpi_problem_document(stlpi_problem* problem);

/* Runs the solver; writes a result handle on success. */
stlpi_status stlpi_solve(const stlpi_problem* problem, stlpi_result** out);

void stlpi_result_free(stlpi_result* result);

double stlpi_result_final_cost(const stlpi_result* result);
double stlpi_result_final_robustness(const stlpi_result* result);
/* 1 when the final robustness is strictly positive. */
int stlpi_result_satisfied(const stlpi_result* result);
int64_t stlpi_result_clamped_samples(const stlpi_result* result);

/* Run record JSON; wall_clock_ms is echoed into the record and is the
 * only field that may differ between identical runs. */
const char* stlpi_result_record_json(stlpi_result* result,
                                     double wall_clock_ms);

/* Trajectory as CSV with header k,t,x0..,u0.. */
const char* stlpi_result_trajectory_csv(stlpi_result* result);

/* Robustness report for a trajectory CSV against the problem's formula.
 * On success *report_json is a malloc'd string; free with stlpi_string_free. */
stlpi_status stlpi_eval_csv(const stlpi_problem* problem,
                            const char* csv_text, char** report_json);

void stlpi_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif /* STLPI_H */
