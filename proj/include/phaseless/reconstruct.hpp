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

#ifndef PHASELESS_RECONSTRUCT_HPP_
#define PHASELESS_RECONSTRUCT_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "phaseless/frames.hpp"
#include "phaseless/gridgeom.hpp"
#include "phaseless/simulator.hpp"

namespace phaseless {

using SampleMap = std::map<std::int64_t, Complex>;

enum class SeriesMode { kLpSeries, kBoundedSeries, kAugmentedCorollary };

struct ReconstructionConfig {
  // A nonzero overlap entry needs magnitude >= overlap_tol * sqrt(trace Q_n).
  double overlap_tol = 1e-7;
  // Blocks with trace Q_n <= zero_block_tol * max_n trace Q_n hold zeros.
  double zero_block_tol = 1e-12;
  std::int64_t truncation_N = 64;
  SeriesMode mode = SeriesMode::kLpSeries;
  std::vector<Complex> eval_points;
  // Defaults to the leftmost nonzero block.
  std::optional<std::int64_t> anchor_block;
  FactorOptions factor;
  // Type parameter T' of the function behind bounded samples; the bounded
  // series requires T~ > T'.
  double bounded_T_prime = 0.0;
  // Power m of the convergence factor used by the bounded series.
  int bounded_order = 8;
  // 0 selects 1e-6 of the grid spacing.
  double singularity_eps = 0.0;
};

struct BlockRecovery {
  HermitianMatrix Q;
  double trace = 0.0;
  double rank1_residual = 0.0;
  bool zero_block = false;
};

using BlockMap = std::map<std::int64_t, BlockRecovery>;

struct BlockDiagnostics {
  int ref_index = -1;              // slot carrying the reference phase
  double overlap_magnitude = 0.0;  // |x| at that slot
  double rank1_residual = 0.0;
  double trace = 0.0;
  bool zero_block = false;
  // Largest disagreement at shared points with the already-fixed neighbor.
  double overlap_discrepancy = 0.0;
};

struct PhaseBreak {
  std::int64_t block = 0;
  double best_overlap_magnitude = 0.0;
  double threshold = 0.0;
};

struct RecoveryResult {
  SampleMap samples;
  std::int64_t anchor_block = 0;
  std::map<std::int64_t, BlockDiagnostics> diagnostics;
  std::vector<PhaseBreak> failures;
};

struct AlignmentMetrics {
  double theta = 0.0;
  double rel_l2 = 0.0;
  double max_abs = 0.0;
  std::size_t common = 0;
};

// Per-block Q_n with rank-1 residual and zero-block flag.
BlockMap RecoverBlocks(const MeasurementSet& meas, const MeasurementFrame& frame,
                       const ReconstructionConfig& config = {});

// Fixes theta_0 = 0 at the anchor and scans outward in both directions,
// taking each block's reference phase from the largest shared entry. A block
// whose shared entries all fall below the threshold stops the scan in that
// direction and is reported as a PhaseBreak.
RecoveryResult PropagatePhase(const BlockMap& blocks, const InterpolationGrid& grid,
                              const ReconstructionConfig& config);

// Convenience: RecoverBlocks followed by PropagatePhase.
RecoveryResult Reconstruct(const MeasurementSet& meas, const MeasurementFrame& frame,
                           const ReconstructionConfig& config);

// sum over |j| <= N of s_j psi_j(z).
Complex InterpolateFourier(const SampleMap& samples, const InterpolationGrid& grid,
                           Complex z, const ReconstructionConfig& config);

// Oversampled series for bounded samples of a function of type T'/2:
//   sum over |j - c| <= N of s_j psi_j(z) sinc(e (l_j - z) / m)^m,
// with e = (T~ - T')/2, m = config.bounded_order and c the stored index
// nearest z. The factor makes every term decay like |j|^-(m+1) while leaving
// grid values untouched. Throws kNotOversampled unless T~ > T'.
Complex InterpolateBounded(const SampleMap& samples, const InterpolationGrid& grid,
                           Complex z, const ReconstructionConfig& config);

// x~(z) = v(z) e^{i theta_0} - D cos(T' z / 2) at every config.eval_points
// entry, with v interpolated by the bounded series.
std::vector<Complex> SubtractTestSignal(const RecoveryResult& result, double D,
                                        double T_prime,
                                        const InterpolationGrid& grid,
                                        const ReconstructionConfig& config);

// x(t) = sum_j s_j psi_j(t) where psi_j(t) = e^{i l_j t} / T~ on
// |t| <= T~/2 and 0 outside; the inverse transform of psi_j under
// F x(w) = int x(t) e^{-i w t} dt.
std::vector<Complex> SynthesizeTime(const SampleMap& samples,
                                    const InterpolationGrid& grid,
                                    std::span<const double> t_points,
                                    const ReconstructionConfig& config);

// theta = arg sum_j r_j conj(t_j); metrics of r e^{-i theta} - t on the
// common support. Throws kEmptyOverlap when the supports are disjoint.
AlignmentMetrics AlignGlobalPhase(const SampleMap& recovered, const SampleMap& truth);

}  // namespace phaseless

#endif  // PHASELESS_RECONSTRUCT_HPP_
