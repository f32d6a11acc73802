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

#include "phaseless/phaseless.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <sstream>
#include <string>

#include "phaseless/error.hpp"
#include "phaseless/experiment.hpp"

using namespace phaseless;

struct pl_frame {
  MeasurementFrame frame;
};
struct pl_grid {
  InterpolationGrid grid;
};
struct pl_signal {
  SignalSpec spec;
};
struct pl_measurement {
  MeasurementSet meas;
};
struct pl_result {
  RecoveryResult result;
  InterpolationGrid grid;
};

namespace {

thread_local std::string last_error;

pl_status Record(ErrorCode code, const std::string& message) {
  last_error = message;
  return static_cast<pl_status>(code);
}

// Runs body, translating exceptions into status codes.
template <typename Body>
pl_status Guard(Body&& body) {
  try {
    last_error.clear();
    body();
    return PL_OK;
  } catch (const Error& e) {
    return Record(e.code(), e.what());
  } catch (const std::bad_alloc&) {
    return Record(ErrorCode::kInternal, "out of memory");
  } catch (const std::exception& e) {
    return Record(ErrorCode::kInternal, e.what());
  } catch (...) {
    return Record(ErrorCode::kInternal, "unknown error");
  }
}

void Require(bool ok, const char* what) {
  if (!ok) Fail(ErrorCode::kInvalidArgument, what);
}

char* Dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Complex Load(const double* p) { return {p[0], p[1]}; }

void Store(Complex v, double* p) {
  p[0] = v.real();
  p[1] = v.imag();
}

std::string MetricsCsv(const MetricsRow& row) {
  return MetricsCsvHeader() + MetricsCsvRow(row);
}

}  // namespace

extern "C" {

const char* pl_version(void) { return "0.1.0"; }

const char* pl_status_name(pl_status status) {
  // ErrorCodeName returns views of string literals.
  return ErrorCodeName(static_cast<ErrorCode>(status)).data();
}

const char* pl_last_error(void) { return last_error.c_str(); }

void pl_string_free(char* s) { std::free(s); }

pl_status pl_frame_builtin_k2(pl_frame** out) {
  return Guard([&] {
    Require(out != nullptr, "null output");
    *out = new pl_frame{BuiltinFrameK2()};
  });
}

pl_status pl_frame_load(const char* path, double tol, pl_frame** out) {
  return Guard([&] {
    Require(path != nullptr && out != nullptr, "null argument");
    *out = new pl_frame{LoadFrame(path, tol)};
  });
}

pl_status pl_frame_from_json(const char* json, double tol, pl_frame** out) {
  return Guard([&] {
    Require(json != nullptr && out != nullptr, "null argument");
    *out = new pl_frame{ParseFrame(json, tol)};
  });
}

void pl_frame_free(pl_frame* frame) { delete frame; }

pl_status pl_frame_dims(const pl_frame* frame, int* K, int* M) {
  return Guard([&] {
    Require(frame != nullptr && K != nullptr && M != nullptr, "null argument");
    *K = frame->frame.K;
    *M = frame->frame.M;
  });
}

pl_status pl_frame_to_json(const pl_frame* frame, char** out) {
  return Guard([&] {
    Require(frame != nullptr && out != nullptr, "null argument");
    *out = Dup(FrameToJson(frame->frame));
  });
}

pl_status pl_frame_validate(const pl_frame* frame, double tol, pl_frame_report* out) {
  return Guard([&] {
    Require(frame != nullptr && out != nullptr, "null argument");
    const FrameReport r = ValidateFrame(frame->frame, tol);
    *out = {r.norm_deviation,  r.tightness_deviation, r.uniformity_deviation,
            r.tight_constant,  r.pair_constant,       r.count_ok ? 1 : 0,
            r.pass ? 1 : 0};
  });
}

pl_status pl_frame_report_json(const pl_frame* frame, double tol, char** out) {
  return Guard([&] {
    Require(frame != nullptr && out != nullptr, "null argument");
    *out = Dup(FrameReportToJson(ValidateFrame(frame->frame, tol), tol));
  });
}

pl_status pl_frame_intensities(const pl_frame* frame, const double* x, double* out) {
  return Guard([&] {
    Require(frame != nullptr && x != nullptr && out != nullptr, "null argument");
    CVector v(frame->frame.K);
    for (int k = 0; k < frame->frame.K; ++k) v(k) = Load(x + 2 * k);
    const std::vector<double> c = Intensities(v, frame->frame);
    std::copy(c.begin(), c.end(), out);
  });
}

pl_status pl_frame_recover(const pl_frame* frame, const double* c, double* x_out,
                           double* residual) {
  return Guard([&] {
    Require(frame != nullptr && c != nullptr && x_out != nullptr, "null argument");
    const HermitianMatrix q = RecoverRank1(
        std::span<const double>(c, static_cast<std::size_t>(frame->frame.M)),
        frame->frame);
    const CVector x = FactorRank1(q, std::nullopt, 0.0, {});
    for (int k = 0; k < frame->frame.K; ++k) Store(x(k), x_out + 2 * k);
    if (residual != nullptr) *residual = Rank1Residual(q);
  });
}

pl_status pl_grid_create(int K, int a, double T_tilde, double shift_h,
                         int64_t first_block, int64_t last_block, pl_grid** out) {
  return Guard([&] {
    Require(out != nullptr, "null output");
    *out = new pl_grid{
        InterpolationGrid::Build(K, a, T_tilde, shift_h, {first_block, last_block})};
  });
}

void pl_grid_free(pl_grid* grid) { delete grid; }

pl_status pl_grid_period(const pl_grid* grid, double* beta) {
  return Guard([&] {
    Require(grid != nullptr && beta != nullptr, "null argument");
    *beta = grid->grid.period();
  });
}

pl_status pl_grid_point(const pl_grid* grid, int64_t global, double* z) {
  return Guard([&] {
    Require(grid != nullptr && z != nullptr, "null argument");
    if (global < grid->grid.first_global() || global > grid->grid.last_global()) {
      Fail(ErrorCode::kIndexOutOfWindow, "global index outside the grid window");
    }
    Store(grid->grid.Point(global), z);
  });
}

pl_status pl_grid_block(const pl_grid* grid, int64_t n, double* points) {
  return Guard([&] {
    Require(grid != nullptr && points != nullptr, "null argument");
    const auto block = grid->grid.Block(n);
    for (std::size_t k = 0; k < block.size(); ++k) Store(block[k], points + 2 * k);
  });
}

pl_status pl_grid_overlap(const pl_grid* grid, int64_t n, double* points) {
  return Guard([&] {
    Require(grid != nullptr && points != nullptr, "null argument");
    const auto overlap = grid->grid.OverlapPoints(n);
    for (std::size_t k = 0; k < overlap.size(); ++k) Store(overlap[k], points + 2 * k);
  });
}

pl_status pl_sampling_rate_ratio(int K, int a, double T_tilde, double T, double* out) {
  return Guard([&] {
    Require(out != nullptr, "null output");
    *out = SamplingRateRatio(K, a, T_tilde, T);
  });
}

pl_status pl_signal_create(const pl_grid* grid, const int64_t* indices,
                           const double* coeffs, size_t count, pl_signal** out) {
  return Guard([&] {
    Require(grid != nullptr && out != nullptr, "null argument");
    Require(count == 0 || (indices != nullptr && coeffs != nullptr), "null coefficients");
    std::map<std::int64_t, Complex> c;
    for (size_t i = 0; i < count; ++i) c[indices[i]] = Load(coeffs + 2 * i);
    *out = new pl_signal{MakeSignal(grid->grid, std::move(c))};
  });
}

pl_status pl_signal_from_json(const char* json, pl_signal** out) {
  return Guard([&] {
    Require(json != nullptr && out != nullptr, "null argument");
    *out = new pl_signal{SignalFromJson(json)};
  });
}

void pl_signal_free(pl_signal* signal) { delete signal; }

pl_status pl_signal_eval(const pl_signal* signal, const double* z, double* out) {
  return Guard([&] {
    Require(signal != nullptr && z != nullptr && out != nullptr, "null argument");
    Store(EvalSignal(signal->spec, Load(z)), out);
  });
}

pl_status pl_measure(const pl_signal* signal, const pl_grid* grid,
                     const pl_frame* frame, double noise_sigma, uint64_t seed,
                     pl_measurement** out) {
  return Guard([&] {
    Require(signal && grid && frame && out, "null argument");
    const SignalSpec& spec = signal->spec;
    const KernelParams params = KernelParams::For(spec.grid.sine_type());
    *out = new pl_measurement{
        Measure([&](Complex z) { return EvalSignal(spec, z, params); }, grid->grid,
                frame->frame, noise_sigma, seed)};
  });
}

pl_status pl_measurement_from_json(const char* json, pl_measurement** out) {
  return Guard([&] {
    Require(json != nullptr && out != nullptr, "null argument");
    *out = new pl_measurement{MeasurementFromJson(json)};
  });
}

pl_status pl_measurement_to_json(const pl_measurement* meas, char** out) {
  return Guard([&] {
    Require(meas != nullptr && out != nullptr, "null argument");
    *out = Dup(MeasurementToJson(meas->meas));
  });
}

void pl_measurement_free(pl_measurement* meas) { delete meas; }

void pl_reconstruct_options_default(pl_reconstruct_options* options) {
  if (options == nullptr) return;
  const ReconstructionConfig defaults;
  options->overlap_tol = defaults.overlap_tol;
  options->truncation_N = defaults.truncation_N;
  options->has_anchor = 0;
  options->anchor_block = 0;
  options->factor_method = PL_FACTOR_DIRECT;
}

pl_status pl_reconstruct(const pl_measurement* meas, const pl_frame* frame,
                         const pl_reconstruct_options* options, pl_result** out) {
  return Guard([&] {
    Require(meas && frame && out, "null argument");
    ReconstructionConfig config;
    if (options != nullptr) {
      config.overlap_tol = options->overlap_tol;
      config.truncation_N = options->truncation_N;
      if (options->has_anchor) config.anchor_block = options->anchor_block;
      config.factor.method = options->factor_method == PL_FACTOR_LEADING_EIGEN
                                 ? FactorMethod::kLeadingEigen
                                 : FactorMethod::kDirect;
    }
    *out = new pl_result{Reconstruct(meas->meas, frame->frame, config),
                         meas->meas.grid()};
  });
}

void pl_result_free(pl_result* result) { delete result; }

size_t pl_result_failure_count(const pl_result* result) {
  return result == nullptr ? 0 : result->result.failures.size();
}

pl_status pl_result_failure_block(const pl_result* result, size_t i, int64_t* block) {
  return Guard([&] {
    Require(result != nullptr && block != nullptr, "null argument");
    if (i >= result->result.failures.size()) {
      Fail(ErrorCode::kOutOfRange, "failure index out of range");
    }
    *block = result->result.failures[i].block;
  });
}

int64_t pl_result_anchor_block(const pl_result* result) {
  return result == nullptr ? 0 : result->result.anchor_block;
}

pl_status pl_result_sample(const pl_result* result, int64_t global, double* value) {
  return Guard([&] {
    Require(result != nullptr && value != nullptr, "null argument");
    const auto it = result->result.samples.find(global);
    if (it == result->result.samples.end()) {
      Fail(ErrorCode::kOutOfRange, "no recovered sample at this index");
    }
    Store(it->second, value);
  });
}

pl_status pl_result_interpolate(const pl_result* result, const double* z, int64_t N,
                                double* out) {
  return Guard([&] {
    Require(result != nullptr && z != nullptr && out != nullptr, "null argument");
    Require(N >= 1, "N must be >= 1");
    ReconstructionConfig config;
    config.truncation_N = N;
    Store(InterpolateFourier(result->result.samples, result->grid, Load(z), config),
          out);
  });
}

pl_status pl_result_to_json(const pl_result* result, char** out) {
  return Guard([&] {
    Require(result != nullptr && out != nullptr, "null argument");
    *out = Dup(ResultToJson(result->result));
  });
}

pl_status pl_result_align(const pl_result* result, const pl_signal* truth,
                          double* theta, double* rel_l2, double* max_abs) {
  return Guard([&] {
    Require(result != nullptr && truth != nullptr, "null argument");
    const KernelParams params = KernelParams::For(truth->spec.grid.sine_type());
    SampleMap expected;
    for (const auto& [j, v] : result->result.samples) {
      expected[j] = EvalSignal(truth->spec, result->grid.Point(j), params);
    }
    const AlignmentMetrics m = AlignGlobalPhase(result->result.samples, expected);
    if (theta != nullptr) *theta = m.theta;
    if (rel_l2 != nullptr) *rel_l2 = m.rel_l2;
    if (max_abs != nullptr) *max_abs = m.max_abs;
  });
}

void pl_run_output_clear(pl_run_output* out) {
  if (out == nullptr) return;
  std::free(out->measurement_json);
  std::free(out->signal_json);
  std::free(out->result_json);
  std::free(out->metrics_csv);
  std::free(out->convergence_csv);
  *out = pl_run_output{};
}

pl_status pl_experiment_simulate(const char* config_json, pl_run_output* out) {
  return Guard([&] {
    Require(config_json != nullptr && out != nullptr, "null argument");
    const ExperimentConfig config = ParseExperimentConfig(config_json);
    const Simulation sim = Simulate(config);
    pl_run_output_clear(out);
    out->measurement_json = Dup(MeasurementToJson(sim.measurements));
    out->signal_json = Dup(SignalToJson(sim.signal, sim.augmented ? &*sim.augmented : nullptr));
  });
}

pl_status pl_experiment_reconstruct(const char* config_json,
                                    const char* measurement_json, pl_run_output* out) {
  return Guard([&] {
    Require(config_json && measurement_json && out, "null argument");
    const ExperimentConfig config = ParseExperimentConfig(config_json);
    const MeasurementSet meas = MeasurementFromJson(measurement_json);
    const Reconstruction rec = ReconstructExperiment(config, meas);
    pl_run_output_clear(out);
    out->result_json = Dup(ReconstructionToJson(rec));
    out->metrics_csv = Dup(MetricsCsv(rec.metrics));
    out->n_phasebreaks = rec.result.failures.size();
  });
}

pl_status pl_experiment_e2e(const char* config_json, pl_run_output* out) {
  return Guard([&] {
    Require(config_json != nullptr && out != nullptr, "null argument");
    const ExperimentConfig config = ParseExperimentConfig(config_json);
    const Simulation sim = Simulate(config);
    const Reconstruction rec = ReconstructExperiment(config, sim.measurements);
    pl_run_output_clear(out);
    out->measurement_json = Dup(MeasurementToJson(sim.measurements));
    out->signal_json = Dup(SignalToJson(sim.signal, sim.augmented ? &*sim.augmented : nullptr));
    out->result_json = Dup(ReconstructionToJson(rec));
    out->metrics_csv = Dup(MetricsCsv(rec.metrics));
    out->n_phasebreaks = rec.result.failures.size();
  });
}

pl_status pl_experiment_convergence(const char* config_json, const int64_t* Ns,
                                    size_t count, pl_run_output* out) {
  return Guard([&] {
    Require(config_json != nullptr && out != nullptr, "null argument");
    Require(count == 0 || Ns != nullptr, "null N list");
    const ExperimentConfig config = ParseExperimentConfig(config_json);
    const std::vector<std::int64_t> list(Ns, Ns + count);
    pl_run_output_clear(out);
    out->convergence_csv = Dup(ConvergenceCsv(config, list));
  });
}

pl_status pl_rate_table(const int* Ks, size_t nK, const int* as, size_t na,
                        const double* ratios, size_t nr, char** csv) {
  return Guard([&] {
    Require(csv != nullptr, "null output");
    Require((nK == 0 || Ks) && (na == 0 || as) && (nr == 0 || ratios), "null list");
    *csv = Dup(RateTableCsv({Ks, Ks + nK}, {as, as + na}, {ratios, ratios + nr}));
  });
}

}  // extern "C"
