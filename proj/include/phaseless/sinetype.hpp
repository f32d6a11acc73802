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

#ifndef PHASELESS_SINETYPE_HPP_
#define PHASELESS_SINETYPE_HPP_

#include <complex>
#include <cstdint>
#include <span>

namespace phaseless {

using Complex = std::complex<double>;

enum class SineKind { kCanonicalSine, kShiftedSine, kCosine };

// Closed-form sine-type function of exponential type sigma:
//   CanonicalSine  sin(sigma z)            zeros n*pi/sigma
//   ShiftedSine    sin(sigma (z - i h))    zeros n*pi/sigma + i h
//   Cosine         cos(sigma z)            zeros (n + 1/2)*pi/sigma
// The factories take the full width parameter (T~ for sines, T' for the
// cosine); sigma is half of it.
class SineTypeFn {
 public:
  static SineTypeFn CanonicalSine(double width);
  static SineTypeFn ShiftedSine(double width, double shift_h);
  static SineTypeFn Cosine(double width);

  SineKind kind() const { return kind_; }
  double type() const { return sigma_; }
  double width() const { return 2.0 * sigma_; }
  double shift() const { return shift_h_; }
  // Distance between consecutive zeros, pi / sigma.
  double spacing() const;

  // The n-th zero in increasing real-part order.
  Complex Zero(std::int64_t n) const;
  // Index of the zero nearest to z (by real part).
  std::int64_t NearestZeroIndex(Complex z) const;

 private:
  SineTypeFn(SineKind kind, double sigma, double shift_h);

  SineKind kind_;
  double sigma_;
  double shift_h_;
};

struct KernelParams {
  std::int64_t series_halfwidth_N = 64;
  // |z - lambda_n| below this switches to the Taylor branch.
  double singularity_eps = 0.0;

  // Default eps is 1e-6 of the zero spacing.
  static KernelParams For(const SineTypeFn& fn, std::int64_t halfwidth = 64);
};

Complex Eval(const SineTypeFn& fn, Complex z);

// S'(zero). Throws kNotAZero when |S(zero)| > 1e-9 * max(1, |S'(zero)|).
Complex DerivativeAtZero(const SineTypeFn& fn, Complex zero);

// Analytic S''(z); vanishes at the zeros of every supported family.
Complex SecondDerivative(const SineTypeFn& fn, Complex z);

// psi_n(z) = S(z) / (S'(lambda_n) (z - lambda_n)).
Complex KernelPsi(const SineTypeFn& fn, Complex lambda_n, Complex z,
                  const KernelParams& params);

// S(z)/S'(lambda_n) * [1/(z - lambda_n) + 1/lambda_n]; the 1/lambda_n term
// is dropped when lambda_n == 0.
Complex KernelPsiBounded(const SineTypeFn& fn, Complex lambda_n, Complex z,
                         const KernelParams& params);

// Unchecked variants for hot loops: lambda_n is trusted to be a zero.
Complex KernelPsiUnchecked(const SineTypeFn& fn, Complex lambda_n, Complex z,
                           double singularity_eps);
Complex KernelPsiBoundedUnchecked(const SineTypeFn& fn, Complex lambda_n,
                                  Complex z, double singularity_eps);

// A_u = (1 - exp(-T' H_u / 2)) / 2, the lower constant of cos(T' z / 2)
// for |Im z| >= H_u.
double CosineLowerBoundAu(double T_prime, double H_u);

// Sum over n != n0 with |n - n0| <= halfwidth of 1 / |z_n - z_n0|^2.
double SeparationSum(std::span<const Complex> zeros, std::size_t n0,
                     std::size_t halfwidth);

}  // namespace phaseless

#endif  // PHASELESS_SINETYPE_HPP_
