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

#include "phaseless/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "phaseless/error.hpp"

namespace phaseless {
namespace {

double EffectiveEps(const InterpolationGrid& grid,
                    const ReconstructionConfig& config) {
  return config.singularity_eps > 0.0 ? config.singularity_eps
                                      : 1e-6 * grid.spacing();
}

// Samples with |j| <= N.
auto TruncatedRange(const SampleMap& samples, std::int64_t N) {
  return std::pair{samples.lower_bound(-N), samples.upper_bound(N)};
}

}  // namespace

BlockMap RecoverBlocks(const MeasurementSet& meas, const MeasurementFrame& frame,
                       const ReconstructionConfig& config) {
  if (frame.K != meas.K || frame.M != meas.M) {
    std::ostringstream os;
    os << "frame (K=" << frame.K << ", M=" << frame.M
       << ") does not match measurements (K=" << meas.K << ", M=" << meas.M
       << ")";
    Fail(ErrorCode::kDimMismatch, os.str());
  }
  BlockMap out;
  double max_trace = 0.0;
  for (std::int64_t n = meas.blocks.first; n <= meas.blocks.last; ++n) {
    BlockRecovery rec;
    rec.Q = RecoverRank1(meas.block(n), frame);
    rec.trace = rec.Q.trace();
    rec.rank1_residual = Rank1Residual(rec.Q);
    max_trace = std::max(max_trace, rec.trace);
    out.emplace(n, std::move(rec));
  }
  for (auto& [n, rec] : out) {
    rec.zero_block = !(rec.trace > config.zero_block_tol * max_trace);
  }
  return out;
}

RecoveryResult PropagatePhase(const BlockMap& blocks, const InterpolationGrid& grid,
                              const ReconstructionConfig& config) {
  if (blocks.empty()) Fail(ErrorCode::kInvalidArgument, "no blocks to propagate");
  const BlockRange range{blocks.begin()->first, blocks.rbegin()->first};
  if (range.size() != static_cast<std::int64_t>(blocks.size())) {
    Fail(ErrorCode::kInvalidArgument, "blocks must be contiguous");
  }
  for (std::int64_t n : {range.first, range.last}) grid.Block(n);  // bounds

  const int K = grid.K();
  const int a = grid.overlap();
  RecoveryResult result;
  std::map<std::int64_t, CVector> fixed;

  auto store = [&](std::int64_t n, const CVector& x) {
    for (int k = 0; k < K; ++k) result.samples.emplace(grid.ToGlobal(n, k), x[k]);
    fixed.emplace(n, x);
  };
  auto base_diag = [&](const BlockRecovery& rec) {
    BlockDiagnostics d;
    d.trace = rec.trace;
    d.rank1_residual = rec.rank1_residual;
    d.zero_block = rec.zero_block;
    return d;
  };

  std::optional<std::int64_t> anchor = config.anchor_block;
  if (anchor) {
    const auto it = blocks.find(*anchor);
    if (it == blocks.end()) Fail(ErrorCode::kOutOfRange, "anchor block outside window");
    if (it->second.zero_block) {
      Fail(ErrorCode::kInvalidArgument, "anchor block has zero trace");
    }
  } else {
    for (const auto& [n, rec] : blocks) {
      if (!rec.zero_block) {
        anchor = n;
        break;
      }
    }
  }
  if (!anchor) {
    // Nothing but zeros: every sample is known exactly.
    result.anchor_block = range.first;
    for (const auto& [n, rec] : blocks) {
      store(n, CVector::Zero(K));
      result.diagnostics[n] = base_diag(rec);
    }
    return result;
  }
  result.anchor_block = *anchor;
  {
    const BlockRecovery& rec = blocks.at(*anchor);
    BlockDiagnostics d = base_diag(rec);
    d.ref_index = DefaultReference(rec.Q);
    const CVector x = FactorRank1(rec.Q, d.ref_index, 0.0, config.factor);
    d.overlap_magnitude = std::abs(x[d.ref_index]);
    store(*anchor, x);
    result.diagnostics[*anchor] = d;
  }

  // step = +1 scans right (shared slots k of block n are slots K-a+k of
  // block n-1); step = -1 scans left with the roles swapped.
  auto scan = [&](int step) {
    for (std::int64_t n = *anchor + step; range.contains(n); n += step) {
      const BlockRecovery& rec = blocks.at(n);
      const CVector& prev = fixed.at(n - step);
      const int own_offset = step > 0 ? 0 : K - a;
      const int prev_offset = step > 0 ? K - a : 0;
      BlockDiagnostics d = base_diag(rec);

      CVector x;
      if (rec.zero_block) {
        x = CVector::Zero(K);
      } else {
        int best = -1;
        double best_mag = -1.0;
        for (int i = 0; i < a; ++i) {
          const double mag =
              std::sqrt(std::max(0.0, rec.Q(own_offset + i, own_offset + i).real()));
          if (mag > best_mag) {
            best_mag = mag;
            best = own_offset + i;
          }
        }
        const double threshold =
            std::max(config.overlap_tol * std::sqrt(rec.trace),
                     std::sqrt(config.factor.diag_tol * rec.trace));
        if (!(best_mag >= threshold) || best_mag == 0.0) {
          result.failures.push_back({n, best_mag, threshold});
          result.diagnostics[n] = d;
          return;
        }
        const double phase = std::arg(prev[prev_offset + (best - own_offset)]);
        x = FactorRank1(rec.Q, best, phase, config.factor);
        d.ref_index = best;
        d.overlap_magnitude = best_mag;
      }
      for (int i = 0; i < a; ++i) {
        d.overlap_discrepancy = std::max(
            d.overlap_discrepancy, std::abs(x[own_offset + i] - prev[prev_offset + i]));
      }
      store(n, x);
      result.diagnostics[n] = d;
    }
  };
  scan(+1);
  scan(-1);
  std::sort(result.failures.begin(), result.failures.end(),
            [](const PhaseBreak& l, const PhaseBreak& r) { return l.block < r.block; });
  return result;
}

RecoveryResult Reconstruct(const MeasurementSet& meas, const MeasurementFrame& frame,
                           const ReconstructionConfig& config) {
  return PropagatePhase(RecoverBlocks(meas, frame, config), meas.grid(), config);
}

Complex InterpolateFourier(const SampleMap& samples, const InterpolationGrid& grid,
                           Complex z, const ReconstructionConfig& config) {
  const SineTypeFn fn = grid.sine_type();
  const double eps = EffectiveEps(grid, config);
  const auto [begin, end] = TruncatedRange(samples, config.truncation_N);
  Complex sum{};
  for (auto it = begin; it != end; ++it) {
    sum += it->second * KernelPsiUnchecked(fn, grid.Point(it->first), z, eps);
  }
  return sum;
}

Complex InterpolateBounded(const SampleMap& samples, const InterpolationGrid& grid,
                           Complex z, const ReconstructionConfig& config) {
  if (!(config.bounded_T_prime > 0.0)) {
    Fail(ErrorCode::kInvalidArgument, "bounded series needs the type parameter T'");
  }
  if (!(grid.T_tilde() > config.bounded_T_prime)) {
    std::ostringstream os;
    os << "bounded series requires T~ > T' (T~ = " << grid.T_tilde()
       << ", T' = " << config.bounded_T_prime << ")";
    Fail(ErrorCode::kNotOversampled, os.str());
  }
  if (config.bounded_order < 1) {
    Fail(ErrorCode::kInvalidArgument, "bounded_order must be >= 1");
  }
  if (samples.empty()) return {};
  const SineTypeFn fn = grid.sine_type();
  const double eps = EffectiveEps(grid, config);
  const int m = config.bounded_order;
  const double e = 0.5 * (grid.T_tilde() - config.bounded_T_prime) / m;
  std::int64_t centre = samples.begin()->first;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [j, v] : samples) {
    const double d = std::abs(grid.Point(j) - z);
    if (d < best) {
      best = d;
      centre = j;
    }
  }
  const std::int64_t N = config.truncation_N;
  Complex sum{};
  for (auto it = samples.lower_bound(centre - N);
       it != samples.end() && it->first <= centre + N; ++it) {
    const Complex lambda = grid.Point(it->first);
    const Complex u = e * (lambda - z);
    const Complex factor = std::abs(u) < 1e-8 ? Complex{1.0} : std::sin(u) / u;
    sum += it->second * KernelPsiUnchecked(fn, lambda, z, eps) * std::pow(factor, m);
  }
  return sum;
}

std::vector<Complex> SubtractTestSignal(const RecoveryResult& result, double D,
                                        double T_prime,
                                        const InterpolationGrid& grid,
                                        const ReconstructionConfig& config) {
  ReconstructionConfig bounded = config;
  bounded.bounded_T_prime = T_prime;
  std::vector<Complex> out;
  out.reserve(config.eval_points.size());
  for (const Complex z : config.eval_points) {
    out.push_back(InterpolateBounded(result.samples, grid, z, bounded) -
                  EvalTestSignal(D, T_prime, z));
  }
  return out;
}

std::vector<Complex> SynthesizeTime(const SampleMap& samples,
                                    const InterpolationGrid& grid,
                                    std::span<const double> t_points,
                                    const ReconstructionConfig& config) {
  const double half = 0.5 * grid.T_tilde();
  const double scale = 1.0 / grid.T_tilde();
  const Complex i{0.0, 1.0};
  const auto [begin, end] = TruncatedRange(samples, config.truncation_N);
  std::vector<Complex> out;
  out.reserve(t_points.size());
  for (const double t : t_points) {
    Complex sum{};
    if (std::abs(t) <= half) {
      for (auto it = begin; it != end; ++it) {
        sum += it->second * std::exp(i * grid.Point(it->first) * t);
      }
    }
    out.push_back(scale * sum);
  }
  return out;
}

AlignmentMetrics AlignGlobalPhase(const SampleMap& recovered, const SampleMap& truth) {
  AlignmentMetrics m;
  Complex cross{};
  for (const auto& [j, r] : recovered) {
    const auto it = truth.find(j);
    if (it == truth.end()) continue;
    cross += r * std::conj(it->second);
    ++m.common;
  }
  if (m.common == 0) Fail(ErrorCode::kEmptyOverlap, "no common sample indices");
  m.theta = std::arg(cross);
  const Complex unrotate = std::polar(1.0, -m.theta);
  double diff2 = 0.0;
  double truth2 = 0.0;
  for (const auto& [j, r] : recovered) {
    const auto it = truth.find(j);
    if (it == truth.end()) continue;
    const double err = std::abs(r * unrotate - it->second);
    diff2 += err * err;
    truth2 += std::norm(it->second);
    m.max_abs = std::max(m.max_abs, err);
  }
  m.rel_l2 = truth2 > 0.0 ? std::sqrt(diff2 / truth2) : std::sqrt(diff2);
  return m;
}

}  // namespace phaseless
