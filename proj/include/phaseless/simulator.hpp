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

#ifndef PHASELESS_SIMULATOR_HPP_
#define PHASELESS_SIMULATOR_HPP_

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "phaseless/frames.hpp"
#include "phaseless/gridgeom.hpp"
#include "phaseless/sinetype.hpp"

namespace phaseless {

// Fourier-domain signal x(z) = sum_j c_j psi_j(z), a finite expansion over
// the kernels of `grid`. Evaluating at grid point j returns c_j exactly.
struct SignalSpec {
  InterpolationGrid grid;
  std::map<std::int64_t, Complex> coeffs;
  double p_exponent = 2.0;  // declared class, metadata only
};

SignalSpec MakeSignal(const InterpolationGrid& grid,
                      std::map<std::int64_t, Complex> coeffs, double p = 2.0);

// Coefficients r e^{i phi} at global indices [first, first + count), with
// r uniform in [magnitude/2, magnitude] and phi uniform.
SignalSpec RandomSignal(const InterpolationGrid& grid, std::int64_t first,
                        std::int64_t count, double magnitude,
                        std::uint64_t seed, double p = 2.0);

Complex EvalSignal(const SignalSpec& spec, Complex z, const KernelParams& params);
Complex EvalSignal(const SignalSpec& spec, Complex z);

// Probed estimate of sup over the real line of |x|, times 1.5. Probes cover
// the coefficient support widened by 10 grid spacings on both sides, with
// `probe_density` probes per spacing.
double SupBound(const SignalSpec& spec, double probe_density = 16.0);

// v(z) = x(z) + D cos(T' z / 2).
struct AugmentedSignal {
  SignalSpec base;
  double T = 0.0;        // support parameter of the base signal
  double T_prime = 0.0;  // type parameter of the test signal
  double D = 0.0;
  double H = 0.0;        // v has no zeros for |Im z| > H
  double H_u = 0.0;
  double A_u = 0.0;
  double M_sup = 0.0;
};

struct AugmentOptions {
  double T = 0.0;
  double T_prime = 0.0;
  double H_u = 1.0;
  std::optional<double> D;  // empty: choose from the grid shift
  double grid_shift = 0.0;
  double probe_density = 16.0;
};

// With D given, H = max(H_u, 2/(T'-T) ln(M_sup / (D A_u))). Without D the
// amplitude is picked so that H ends up below 0.9 |h|. Throws
// kShiftTooSmall when |grid_shift| <= H.
AugmentedSignal Augment(const SignalSpec& spec, const AugmentOptions& options);

Complex EvalTestSignal(double D, double T_prime, Complex z);
Complex EvalAugmented(const AugmentedSignal& aug, Complex z);

// Intensity samples c_n^(m) for every block of the grid window.
struct MeasurementSet {
  int K = 0;
  int a = 0;
  double beta = 0.0;
  double T_tilde = 0.0;
  double shift_h = 0.0;
  BlockRange blocks;
  std::string frame_id;
  int M = 0;
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;
  // samples[n - blocks.first][m]
  std::vector<std::vector<double>> samples;

  // Present when the measured signal was augmented by D cos(T' z / 2).
  struct TestSignal {
    double D = 0.0;
    double T_prime = 0.0;
    double H = 0.0;
  };
  std::optional<TestSignal> test_signal;

  const std::vector<double>& block(std::int64_t n) const;
  InterpolationGrid grid() const;
};

using SignalFn = std::function<Complex(Complex)>;

// Gaussian noise of std noise_sigma is added per sample, then clamped at
// zero; block n draws from a generator seeded with seed ^ n.
MeasurementSet Measure(const SignalFn& signal, const InterpolationGrid& grid,
                       const MeasurementFrame& frame, double noise_sigma = 0.0,
                       std::uint64_t seed = 0);

}  // namespace phaseless

#endif  // PHASELESS_SIMULATOR_HPP_
