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

#ifndef PHASELESS_EXPERIMENT_HPP_
#define PHASELESS_EXPERIMENT_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "phaseless/frames.hpp"
#include "phaseless/reconstruct.hpp"
#include "phaseless/serialize.hpp"
#include "phaseless/simulator.hpp"

namespace phaseless {

struct SignalSource {
  enum class Kind { kRandom, kFile };
  Kind kind = Kind::kRandom;
  // kRandom: coefficients at signal-grid indices [first_index, first_index + count).
  std::int64_t first_index = 0;
  std::int64_t count = 64;
  double magnitude = 1.0;
  std::uint64_t seed = 7;
  // Coefficients forced to zero after drawing.
  std::vector<std::int64_t> zero_indices;
  // Rescale so that SupBound <= max_sup_bound; 0 disables.
  double max_sup_bound = 0.0;
  // kFile: SignalSpec JSON.
  std::string path;
};

struct ProbeSpec {
  enum class Kind { kGrid, kExplicit };
  Kind kind = Kind::kGrid;
  // kGrid: `count` real probes on [from, to]; unset bounds follow the signal
  // support, nudged off the sampling grid.
  std::optional<double> from;
  std::optional<double> to;
  int count = 33;
  std::vector<Complex> points;
};

// Field names follow the JSON config keys.
struct ExperimentConfig {
  std::string run_id = "run";
  int K = 2;
  int a = 1;
  double T = 6.283185307179586;
  double T_tilde = 6.283185307179586;
  std::optional<double> T_prime;
  double shift_h = 0.0;
  double H_u = 1.0;
  std::optional<double> D;  // empty: auto
  BlockRange n_range{0, 63};
  std::int64_t truncation_N = 1024;
  double overlap_tol = 1e-7;
  double noise_sigma = 0.0;
  std::uint64_t seed = 1;
  SeriesMode mode = SeriesMode::kLpSeries;
  std::optional<std::int64_t> anchor_block;
  FactorMethod factor_method = FactorMethod::kDirect;
  std::string frame = "builtin-k2";
  double frame_tol = 1e-10;
  double p_exponent = 2.0;
  SignalSource signal;
  ProbeSpec probes;
};

// Throws kParseError for malformed JSON or unknown keys, kInvalidOverlap
// unless 1 <= a < K, and kInvalidArgument when the parameters violate
// T <= T~ or, in the augmented mode, T < T' < T~.
ExperimentConfig ParseExperimentConfig(const std::string& json_text);
void ValidateExperimentConfig(const ExperimentConfig& config);

InterpolationGrid MeasurementGrid(const ExperimentConfig& config);
// Real-zero grid of type T carrying the ground-truth coefficients.
InterpolationGrid SignalGrid(const ExperimentConfig& config);
MeasurementFrame ResolveFrame(const ExperimentConfig& config);
SignalSpec BuildSignal(const ExperimentConfig& config);
ReconstructionConfig ToReconstructionConfig(const ExperimentConfig& config);
std::vector<Complex> ProbePoints(const ExperimentConfig& config,
                                 const SignalSpec& signal);

struct Simulation {
  InterpolationGrid grid;
  MeasurementFrame frame;
  SignalSpec signal;
  std::optional<AugmentedSignal> augmented;
  MeasurementSet measurements;
};

Simulation Simulate(const ExperimentConfig& config);

struct Evaluation {
  Complex z;
  Complex value;
};

struct Reconstruction {
  RecoveryResult result;
  MetricsRow metrics;
  std::vector<Evaluation> evaluations;
  // Global phase of the recovered samples relative to the truth.
  double theta0 = 0.0;
};

// Recovers the grid samples, interpolates at the probe points and scores
// against the ground truth regenerated from the config.
Reconstruction ReconstructExperiment(const ExperimentConfig& config,
                                     const MeasurementSet& measurements);

std::string ReconstructionToJson(const Reconstruction& rec);

// CSV with columns K,a,T_tilde_over_T,rate_over_nyquist; rows sorted and
// combinations with a >= K skipped.
std::string RateTableCsv(const std::vector<int>& Ks, const std::vector<int>& as,
                         const std::vector<double>& ratios);

// CSV with columns N,median_abs_err,max_abs_err over the probe points.
std::string ConvergenceCsv(const ExperimentConfig& config,
                           const std::vector<std::int64_t>& Ns);

}  // namespace phaseless

#endif  // PHASELESS_EXPERIMENT_HPP_
