// Copyright 2026 The phaseless Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PHASELESS_PHASELESS_H_
#define PHASELESS_PHASELESS_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(PHASELESS_BUILDING)
#define PL_API __declspec(dllexport)
#else
#define PL_API __declspec(dllimport)
#endif
#else
#define PL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

// Complex numbers cross the boundary as interleaved (re, im) pairs.

typedef enum pl_status {
  PL_OK = 0,
  PL_INVALID_ARGUMENT = 1,
  PL_NOT_A_ZERO = 2,
  PL_INVALID_OVERLAP = 3,
  PL_INVALID_TYPE = 4,
  PL_OUT_OF_RANGE = 5,
  PL_PARSE_ERROR = 6,
  PL_FRAME_INVALID = 7,
  PL_DIM_MISMATCH = 8,
  PL_ZERO_REFERENCE = 9,
  PL_INDEX_OUT_OF_WINDOW = 10,
  PL_SHIFT_TOO_SMALL = 11,
  PL_NOT_OVERSAMPLED = 12,
  PL_EMPTY_OVERLAP = 13,
  PL_PHASE_BREAK = 14,
  PL_IO_ERROR = 15,
  PL_INTERNAL = 99
} pl_status;

typedef enum pl_factor_method {
  PL_FACTOR_DIRECT = 0,
  PL_FACTOR_LEADING_EIGEN = 1
} pl_factor_method;

typedef struct pl_frame pl_frame;
typedef struct pl_grid pl_grid;
typedef struct pl_signal pl_signal;
typedef struct pl_measurement pl_measurement;
typedef struct pl_result pl_result;

PL_API const char* pl_version(void);
PL_API const char* pl_status_name(pl_status status);
// Message of the last failed call on this thread; "" after success.
PL_API const char* pl_last_error(void);
// Releases strings returned through char** out parameters.
PL_API void pl_string_free(char* s);

// Frames.
typedef struct pl_frame_report {
  double norm_deviation;
  double tightness_deviation;
  double uniformity_deviation;
  double tight_constant;
  double pair_constant;
  int count_ok;
  int pass;
} pl_frame_report;

PL_API pl_status pl_frame_builtin_k2(pl_frame** out);
PL_API pl_status pl_frame_load(const char* path, double tol, pl_frame** out);
// A negative tol parses without validating.
PL_API pl_status pl_frame_from_json(const char* json, double tol, pl_frame** out);
PL_API void pl_frame_free(pl_frame* frame);
PL_API pl_status pl_frame_dims(const pl_frame* frame, int* K, int* M);
PL_API pl_status pl_frame_to_json(const pl_frame* frame, char** out);
PL_API pl_status pl_frame_validate(const pl_frame* frame, double tol,
                                   pl_frame_report* out);
PL_API pl_status pl_frame_report_json(const pl_frame* frame, double tol, char** out);
// x: K complex values; out: M intensities |<x, a_m>|^2.
PL_API pl_status pl_frame_intensities(const pl_frame* frame, const double* x,
                                      double* out);
// c: M intensities; x_out: K complex values with the reference entry real
// and positive. residual (optional) receives the rank-1 residual.
PL_API pl_status pl_frame_recover(const pl_frame* frame, const double* c,
                                  double* x_out, double* residual);

// Grids.
PL_API pl_status pl_grid_create(int K, int a, double T_tilde, double shift_h,
                                int64_t first_block, int64_t last_block,
                                pl_grid** out);
PL_API void pl_grid_free(pl_grid* grid);
PL_API pl_status pl_grid_period(const pl_grid* grid, double* beta);
PL_API pl_status pl_grid_point(const pl_grid* grid, int64_t global, double* z);
// points: K complex values of block n.
PL_API pl_status pl_grid_block(const pl_grid* grid, int64_t n, double* points);
// points: a complex values shared by blocks n and n + 1.
PL_API pl_status pl_grid_overlap(const pl_grid* grid, int64_t n, double* points);
PL_API pl_status pl_sampling_rate_ratio(int K, int a, double T_tilde, double T,
                                        double* out);

// Signals x(z) = sum_j c_j psi_j(z) over the kernels of a grid.
PL_API pl_status pl_signal_create(const pl_grid* grid, const int64_t* indices,
                                  const double* coeffs, size_t count,
                                  pl_signal** out);
PL_API pl_status pl_signal_from_json(const char* json, pl_signal** out);
PL_API void pl_signal_free(pl_signal* signal);
PL_API pl_status pl_signal_eval(const pl_signal* signal, const double* z,
                                double* out);

// Measurements.
PL_API pl_status pl_measure(const pl_signal* signal, const pl_grid* grid,
                            const pl_frame* frame, double noise_sigma,
                            uint64_t seed, pl_measurement** out);
PL_API pl_status pl_measurement_from_json(const char* json, pl_measurement** out);
PL_API pl_status pl_measurement_to_json(const pl_measurement* meas, char** out);
PL_API void pl_measurement_free(pl_measurement* meas);

// Reconstruction. PhaseBreaks do not fail the call; query them on the result.
typedef struct pl_reconstruct_options {
  double overlap_tol;
  int64_t truncation_N;
  int has_anchor;
  int64_t anchor_block;
  pl_factor_method factor_method;
} pl_reconstruct_options;

PL_API void pl_reconstruct_options_default(pl_reconstruct_options* options);
PL_API pl_status pl_reconstruct(const pl_measurement* meas, const pl_frame* frame,
                                const pl_reconstruct_options* options,
                                pl_result** out);
PL_API void pl_result_free(pl_result* result);
PL_API size_t pl_result_failure_count(const pl_result* result);
PL_API pl_status pl_result_failure_block(const pl_result* result, size_t i,
                                         int64_t* block);
PL_API int64_t pl_result_anchor_block(const pl_result* result);
PL_API pl_status pl_result_sample(const pl_result* result, int64_t global,
                                  double* value);
// Truncated series sum over |j| <= N of s_j psi_j(z) on the measurement grid.
PL_API pl_status pl_result_interpolate(const pl_result* result, const double* z,
                                       int64_t N, double* out);
PL_API pl_status pl_result_to_json(const pl_result* result, char** out);
// Best global phase aligning the recovered samples with the truth evaluated
// on the measurement grid, and the residual after alignment.
PL_API pl_status pl_result_align(const pl_result* result, const pl_signal* truth,
                                 double* theta, double* rel_l2, double* max_abs);

// Experiment runner driven by a JSON configuration.
typedef struct pl_run_output {
  char* measurement_json;
  char* signal_json;
  char* result_json;
  char* metrics_csv;
  char* convergence_csv;
  size_t n_phasebreaks;
} pl_run_output;

PL_API void pl_run_output_clear(pl_run_output* out);
PL_API pl_status pl_experiment_simulate(const char* config_json, pl_run_output* out);
PL_API pl_status pl_experiment_reconstruct(const char* config_json,
                                           const char* measurement_json,
                                           pl_run_output* out);
PL_API pl_status pl_experiment_e2e(const char* config_json, pl_run_output* out);
PL_API pl_status pl_experiment_convergence(const char* config_json,
                                           const int64_t* Ns, size_t count,
                                           pl_run_output* out);
PL_API pl_status pl_rate_table(const int* Ks, size_t nK, const int* as, size_t na,
                               const double* ratios, size_t nr, char** csv);

#ifdef __cplusplus
}  // extern "C"
#endif

#endif  // PHASELESS_PHASELESS_H_
