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

#include "phaseless/sinetype.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "phaseless/error.hpp"

namespace phaseless {
namespace {

constexpr Complex kI{0.0, 1.0};

void RequirePositive(double width) {
  if (!(width > 0.0) || !std::isfinite(width)) {
    std::ostringstream os;
    os << "sine-type width must be positive and finite, got " << width;
    Fail(ErrorCode::kInvalidType, os.str());
  }
}

// sin(x)/x with the removable singularity patched by the leading term.
Complex Sinc(Complex x) {
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

}  // namespace

SineTypeFn::SineTypeFn(SineKind kind, double sigma, double shift_h)
    : kind_(kind), sigma_(sigma), shift_h_(shift_h) {}

SineTypeFn SineTypeFn::CanonicalSine(double width) {
  RequirePositive(width);
  return SineTypeFn(SineKind::kCanonicalSine, width / 2.0, 0.0);
}

SineTypeFn SineTypeFn::ShiftedSine(double width, double shift_h) {
  RequirePositive(width);
  if (!std::isfinite(shift_h)) {
    Fail(ErrorCode::kInvalidArgument, "imaginary shift must be finite");
  }
  return SineTypeFn(SineKind::kShiftedSine, width / 2.0, shift_h);
}

SineTypeFn SineTypeFn::Cosine(double width) {
  RequirePositive(width);
  return SineTypeFn(SineKind::kCosine, width / 2.0, 0.0);
}

double SineTypeFn::spacing() const { return std::numbers::pi / sigma_; }

Complex SineTypeFn::Zero(std::int64_t n) const {
  const double step = spacing();
  switch (kind_) {
    case SineKind::kCanonicalSine:
      return {static_cast<double>(n) * step, 0.0};
    case SineKind::kShiftedSine:
      return {static_cast<double>(n) * step, shift_h_};
    case SineKind::kCosine:
      return {(static_cast<double>(n) + 0.5) * step, 0.0};
  }
  return {};
}

std::int64_t SineTypeFn::NearestZeroIndex(Complex z) const {
  const double offset = kind_ == SineKind::kCosine ? 0.5 : 0.0;
  return static_cast<std::int64_t>(std::llround(z.real() / spacing() - offset));
}

KernelParams KernelParams::For(const SineTypeFn& fn, std::int64_t halfwidth) {
  if (halfwidth < 1) Fail(ErrorCode::kInvalidArgument, "series halfwidth must be >= 1");
  KernelParams params;
  params.series_halfwidth_N = halfwidth;
  params.singularity_eps = 1e-6 * fn.spacing();
  return params;
}

Complex Eval(const SineTypeFn& fn, Complex z) {
  const double s = fn.type();
  switch (fn.kind()) {
    case SineKind::kCanonicalSine:
      return std::sin(s * z);
    case SineKind::kShiftedSine:
      return std::sin(s * (z - kI * fn.shift()));
    case SineKind::kCosine:
      return std::cos(s * z);
  }
  return {};
}

namespace {

Complex Derivative(const SineTypeFn& fn, Complex z) {
  const double s = fn.type();
  switch (fn.kind()) {
    case SineKind::kCanonicalSine:
      return s * std::cos(s * z);
    case SineKind::kShiftedSine:
      return s * std::cos(s * (z - kI * fn.shift()));
    case SineKind::kCosine:
      return -s * std::sin(s * z);
  }
  return {};
}

}  // namespace

Complex DerivativeAtZero(const SineTypeFn& fn, Complex zero) {
  const Complex value = Eval(fn, zero);
  const Complex slope = Derivative(fn, zero);
  if (std::abs(value) > 1e-9 * std::max(1.0, std::abs(slope))) {
    std::ostringstream os;
    os << "point " << zero << " is not a zero: |S| = " << std::abs(value);
    Fail(ErrorCode::kNotAZero, os.str());
  }
  return slope;
}

Complex SecondDerivative(const SineTypeFn& fn, Complex z) {
  const double s2 = fn.type() * fn.type();
  switch (fn.kind()) {
    case SineKind::kCanonicalSine:
      return -s2 * std::sin(fn.type() * z);
    case SineKind::kShiftedSine:
      return -s2 * std::sin(fn.type() * (z - kI * fn.shift()));
    case SineKind::kCosine:
      return -s2 * std::cos(fn.type() * z);
  }
  return {};
}

// For every supported family, S(lambda_n + w) / S'(lambda_n) equals
// sin(sigma w) / sigma exactly, so both kernels are evaluated in the local
// coordinate w. This keeps full relative accuracy far from the origin where
// sin(sigma z) itself loses digits to argument reduction.
Complex KernelPsiUnchecked(const SineTypeFn& fn, Complex lambda_n, Complex z,
                           double singularity_eps) {
  const Complex w = z - lambda_n;
  if (std::abs(w) < singularity_eps) {
    const Complex curvature = SecondDerivative(fn, lambda_n) /
                              (2.0 * Derivative(fn, lambda_n));
    return 1.0 + curvature * w;
  }
  return Sinc(fn.type() * w);
}

Complex KernelPsiBoundedUnchecked(const SineTypeFn& fn, Complex lambda_n,
                                  Complex z, double singularity_eps) {
  const Complex psi = KernelPsiUnchecked(fn, lambda_n, z, singularity_eps);
  if (lambda_n == Complex{}) return psi;
  const Complex w = z - lambda_n;
  return psi + std::sin(fn.type() * w) / (fn.type() * lambda_n);
}

Complex KernelPsi(const SineTypeFn& fn, Complex lambda_n, Complex z,
                  const KernelParams& params) {
  DerivativeAtZero(fn, lambda_n);
  return KernelPsiUnchecked(fn, lambda_n, z, params.singularity_eps);
}

Complex KernelPsiBounded(const SineTypeFn& fn, Complex lambda_n, Complex z,
                         const KernelParams& params) {
  DerivativeAtZero(fn, lambda_n);
  return KernelPsiBoundedUnchecked(fn, lambda_n, z, params.singularity_eps);
}

double CosineLowerBoundAu(double T_prime, double H_u) {
  if (!(T_prime > 0.0) || !(H_u > 0.0)) {
    Fail(ErrorCode::kInvalidArgument, "T' and H_u must be positive");
  }
  return 0.5 * (1.0 - std::exp(-0.5 * T_prime * H_u));
}

double SeparationSum(std::span<const Complex> zeros, std::size_t n0,
                     std::size_t halfwidth) {
  if (n0 >= zeros.size()) {
    Fail(ErrorCode::kOutOfRange, "anchor index outside the zero sequence");
  }
  const std::size_t lo = n0 > halfwidth ? n0 - halfwidth : 0;
  const std::size_t hi = std::min(zeros.size() - 1, n0 + halfwidth);
  double sum = 0.0;
  for (std::size_t n = lo; n <= hi; ++n) {
    if (n == n0) continue;
    const double d2 = std::norm(zeros[n] - zeros[n0]);
    if (d2 == 0.0) {
      Fail(ErrorCode::kInvalidArgument, "zeros must be pairwise distinct");
    }
    sum += 1.0 / d2;
  }
  return sum;
}

}  // namespace phaseless
