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

#ifndef PHASELESS_FRAMES_HPP_
#define PHASELESS_FRAMES_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "phaseless/sinetype.hpp"

namespace phaseless {

using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

// Family of M unit vectors in C^K used as modulation coefficients.
struct MeasurementFrame {
  int K = 0;
  int M = 0;
  std::vector<CVector> vectors;
  std::string id;
};

struct FrameReport {
  double norm_deviation = 0.0;        // max | ||a_m|| - 1 |
  double tightness_deviation = 0.0;   // max entry of |sum a a* - (M/K) I|
  double uniformity_deviation = 0.0;  // spread of |<a_i, a_j>|^2, i != j
  double tight_constant = 0.0;        // mean diagonal of sum a a*
  double pair_constant = 0.0;         // mean of |<a_i, a_j>|^2, i != j
  bool count_ok = false;              // M == K^2
  bool pass = false;

  // First failed check, empty on pass.
  std::string failure() const;
};

// K x K Hermitian matrix. Construction does not symmetrize; use
// Hermitian() to check.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(CMatrix m) : m_(std::move(m)) {}

  int dim() const { return static_cast<int>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }
  Complex operator()(int i, int k) const { return m_(i, k); }
  double trace() const { return m_.diagonal().real().sum(); }
  bool Hermitian(double tol = 0.0) const;

 private:
  CMatrix m_;
};

enum class FactorMethod {
  kDirect,        // sqrt of the diagonal, phases from the reference row
  kLeadingEigen,  // leading eigenpair, for noisy Q
};

struct FactorOptions {
  double diag_tol = 1e-10;
  FactorMethod method = FactorMethod::kDirect;
};

// The K = 2 tight frame a1 = (a, b), a2 = (b, a), a3 = (a, -b), a4 = (-b, a)
// with a = sqrt((1 - 1/sqrt 3)/2), b = e^{i 5 pi/4} sqrt((1 + 1/sqrt 3)/2).
MeasurementFrame BuiltinFrameK2();

// Frame file: {"K": k, "M": m, "vectors": [[[re, im], ...K], ...M]}.
// Throws kParseError on malformed input and kFrameInvalid when validation at
// `tol` fails; a negative tol skips validation.
MeasurementFrame ParseFrame(const std::string& json_text, double tol = 1e-10,
                            const std::string& id = "inline");
MeasurementFrame LoadFrame(const std::string& path, double tol = 1e-10);

FrameReport ValidateFrame(const MeasurementFrame& frame, double tol);

// |<x, a_m>|^2 with <x, a> = sum_k x_k conj(a_k).
std::vector<double> Intensities(const CVector& x, const MeasurementFrame& frame);

// Q = (K+1)/K sum_m c_m a_m a_m* - (1/K) (sum_m c_m) I.
HermitianMatrix RecoverRank1(std::span<const double> c,
                             const MeasurementFrame& frame);

// argmax_k Q_kk.
int DefaultReference(const HermitianMatrix& q);

// Factorizes Q ~ x x* with arg x_ref = phase:
//   x_k = sqrt(Q_kk) e^{i (phase - arg Q_{ref,k})}.
// Throws kZeroReference when Q_{ref,ref} <= diag_tol * trace(Q).
CVector FactorRank1(const HermitianMatrix& q, std::optional<int> ref,
                    double phase, const FactorOptions& options = {});

// |second eigenvalue| / trace; 0 for a zero matrix.
double Rank1Residual(const HermitianMatrix& q);

}  // namespace phaseless

#endif  // PHASELESS_FRAMES_HPP_
