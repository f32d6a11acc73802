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

#include "phaseless/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "phaseless/error.hpp"

namespace phaseless {

SignalSpec MakeSignal(const InterpolationGrid& grid,
                      std::map<std::int64_t, Complex> coeffs, double p) {
  for (const auto& [j, value] : coeffs) {
    if (j < grid.first_global() || j > grid.last_global()) {
      std::ostringstream os;
      os << "coefficient index " << j << " outside the grid window ["
         << grid.first_global() << ", " << grid.last_global() << "]";
      Fail(ErrorCode::kIndexOutOfWindow, os.str());
    }
  }
  if (!(p >= 1.0)) Fail(ErrorCode::kInvalidArgument, "p must be in [1, inf]");
  return SignalSpec{grid, std::move(coeffs), p};
}

SignalSpec RandomSignal(const InterpolationGrid& grid, std::int64_t first,
                        std::int64_t count, double magnitude,
                        std::uint64_t seed, double p) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> radius(0.5 * magnitude, magnitude);
  std::uniform_real_distribution<double> angle(-std::numbers::pi,
                                               std::numbers::pi);
  std::map<std::int64_t, Complex> coeffs;
  for (std::int64_t j = first; j < first + count; ++j) {
    const double r = radius(rng);
    coeffs[j] = std::polar(r, angle(rng));
  }
  return MakeSignal(grid, std::move(coeffs), p);
}

Complex EvalSignal(const SignalSpec& spec, Complex z, const KernelParams& params) {
  const SineTypeFn fn = spec.grid.sine_type();
  Complex sum{};
  for (const auto& [j, c] : spec.coeffs) {
    sum += c * KernelPsiUnchecked(fn, spec.grid.Point(j), z,
                                  params.singularity_eps);
  }
  return sum;
}

Complex EvalSignal(const SignalSpec& spec, Complex z) {
  return EvalSignal(spec, z, KernelParams::For(spec.grid.sine_type()));
}

double SupBound(const SignalSpec& spec, double probe_density) {
  if (!(probe_density > 0.0)) {
    Fail(ErrorCode::kInvalidArgument, "probe density must be positive");
  }
  if (spec.coeffs.empty()) return 0.0;
  const double step = spec.grid.spacing();
  const double lo = spec.grid.Point(spec.coeffs.begin()->first).real() - 10 * step;
  const double hi = spec.grid.Point(spec.coeffs.rbegin()->first).real() + 10 * step;
  const auto probes =
      static_cast<std::int64_t>(std::ceil((hi - lo) / step * probe_density));
  const KernelParams params = KernelParams::For(spec.grid.sine_type());
  double peak = 0.0;
  for (std::int64_t i = 0; i <= probes; ++i) {
    const double xi = lo + (hi - lo) * static_cast<double>(i) /
                               static_cast<double>(probes);
    peak = std::max(peak, std::abs(EvalSignal(spec, {xi, 0.0}, params)));
  }
  return 1.5 * peak;
}

AugmentedSignal Augment(const SignalSpec& spec, const AugmentOptions& options) {
  if (!(options.T > 0.0) || !(options.T_prime > options.T)) {
    Fail(ErrorCode::kInvalidArgument, "augmentation requires 0 < T < T'");
  }
  AugmentedSignal aug{spec};
  aug.T = options.T;
  aug.T_prime = options.T_prime;
  aug.H_u = options.H_u;
  aug.A_u = CosineLowerBoundAu(options.T_prime, options.H_u);
  aug.M_sup = SupBound(spec, options.probe_density);

  const double gap = options.T_prime - options.T;
  const double shift = std::abs(options.grid_shift);
  if (options.D) {
    aug.D = *options.D;
    if (!(aug.D > 0.0)) Fail(ErrorCode::kInvalidArgument, "D must be positive");
  } else {
    if (shift <= options.H_u) {
      std::ostringstream os;
      os << "grid shift |h| = " << shift << " does not exceed H_u = "
         << options.H_u;
      Fail(ErrorCode::kShiftTooSmall, os.str());
    }
    const double target = std::max(0.9 * shift, options.H_u);
    // Strictly above the bound M/A_u exp((T - T') H / 2).
    aug.D = aug.M_sup > 0.0
                ? 1.1 * aug.M_sup / aug.A_u * std::exp(-gap * target / 2.0)
                : 1.0;
  }
  aug.H = aug.M_sup > 0.0
              ? std::max(options.H_u,
                         2.0 / gap * std::log(aug.M_sup / (aug.D * aug.A_u)))
              : options.H_u;
  if (!(shift > aug.H)) {
    std::ostringstream os;
    os << "grid shift |h| = " << shift << " does not clear H = " << aug.H;
    Fail(ErrorCode::kShiftTooSmall, os.str());
  }
  return aug;
}

Complex EvalTestSignal(double D, double T_prime, Complex z) {
  return D * std::cos(0.5 * T_prime * z);
}

Complex EvalAugmented(const AugmentedSignal& aug, Complex z) {
  return EvalSignal(aug.base, z) + EvalTestSignal(aug.D, aug.T_prime, z);
}

const std::vector<double>& MeasurementSet::block(std::int64_t n) const {
  if (!blocks.contains(n)) {
    Fail(ErrorCode::kOutOfRange, "block outside the measurement window");
  }
  return samples[static_cast<std::size_t>(n - blocks.first)];
}

InterpolationGrid MeasurementSet::grid() const {
  return InterpolationGrid::Build(K, a, T_tilde, shift_h, blocks);
}

MeasurementSet Measure(const SignalFn& signal, const InterpolationGrid& grid,
                       const MeasurementFrame& frame, double noise_sigma,
                       std::uint64_t seed) {
  if (frame.K != grid.K()) {
    Fail(ErrorCode::kDimMismatch, "frame K differs from grid K");
  }
  if (!(noise_sigma >= 0.0)) {
    Fail(ErrorCode::kInvalidArgument, "noise sigma must be nonnegative");
  }
  MeasurementSet out;
  out.K = grid.K();
  out.a = grid.overlap();
  out.beta = grid.period();
  out.T_tilde = grid.T_tilde();
  out.shift_h = grid.shift();
  out.blocks = grid.blocks();
  out.frame_id = frame.id;
  out.M = frame.M;
  out.noise_sigma = noise_sigma;
  out.seed = seed;

  std::vector<Complex> values;
  values.reserve(static_cast<std::size_t>(grid.point_count()));
  for (std::int64_t j = grid.first_global(); j <= grid.last_global(); ++j) {
    values.push_back(signal(grid.Point(j)));
  }

  CVector x(grid.K());
  for (std::int64_t n = grid.blocks().first; n <= grid.blocks().last; ++n) {
    for (int k = 0; k < grid.K(); ++k) {
      x[k] = values[static_cast<std::size_t>(grid.ToGlobal(n, k) -
                                             grid.first_global())];
    }
    std::vector<double> c = Intensities(x, frame);
    if (noise_sigma > 0.0) {
      std::mt19937_64 rng(seed ^ static_cast<std::uint64_t>(n));
      std::normal_distribution<double> noise(0.0, noise_sigma);
      for (double& value : c) value = std::max(0.0, value + noise(rng));
    }
    out.samples.push_back(std::move(c));
  }
  return out;
}

}  // namespace phaseless
