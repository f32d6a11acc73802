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

#include "phaseless/frames.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "phaseless/error.hpp"

namespace phaseless {

std::string FrameReport::failure() const {
  if (pass) return {};
  if (!count_ok) return "vector count M must equal K^2";
  std::ostringstream os;
  os << "norm deviation " << norm_deviation << ", tightness deviation "
     << tightness_deviation << ", uniformity deviation "
     << uniformity_deviation;
  return os.str();
}

bool HermitianMatrix::Hermitian(double tol) const {
  if (m_.rows() != m_.cols()) return false;
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

MeasurementFrame BuiltinFrameK2() {
  const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
  const Complex a{std::sqrt(0.5 * (1.0 - inv_sqrt3)), 0.0};
  const Complex b = std::polar(std::sqrt(0.5 * (1.0 + inv_sqrt3)),
                               5.0 * std::numbers::pi / 4.0);
  MeasurementFrame frame;
  frame.K = 2;
  frame.M = 4;
  frame.id = "builtin-k2";
  const Complex rows[4][2] = {{a, b}, {b, a}, {a, -b}, {-b, a}};
  for (const auto& row : rows) {
    CVector v(2);
    v << row[0], row[1];
    frame.vectors.push_back(std::move(v));
  }
  return frame;
}

FrameReport ValidateFrame(const MeasurementFrame& frame, double tol) {
  FrameReport report;
  const int K = frame.K;
  const int M = static_cast<int>(frame.vectors.size());
  report.count_ok = K >= 1 && M == frame.M && M == K * K;
  if (K < 1 || M == 0) return report;

  CMatrix sum = CMatrix::Zero(K, K);
  for (const CVector& v : frame.vectors) {
    if (v.size() != K) {
      report.count_ok = false;
      return report;
    }
    report.norm_deviation =
        std::max(report.norm_deviation, std::abs(v.norm() - 1.0));
    sum += v * v.adjoint();
  }
  const double target = static_cast<double>(M) / K;
  report.tight_constant = sum.diagonal().real().mean();
  report.tightness_deviation =
      (sum - target * CMatrix::Identity(K, K)).cwiseAbs().maxCoeff();

  std::vector<double> pairs;
  for (int i = 0; i < M; ++i) {
    for (int j = i + 1; j < M; ++j) {
      pairs.push_back(std::norm(frame.vectors[j].dot(frame.vectors[i])));
    }
  }
  if (!pairs.empty()) {
    double mean = 0.0;
    for (double p : pairs) mean += p;
    mean /= static_cast<double>(pairs.size());
    report.pair_constant = mean;
    for (double p : pairs) {
      report.uniformity_deviation =
          std::max(report.uniformity_deviation, std::abs(p - mean));
    }
  }
  report.pass = report.count_ok && report.norm_deviation <= tol &&
                report.tightness_deviation <= tol &&
                report.uniformity_deviation <= tol;
  return report;
}

MeasurementFrame ParseFrame(const std::string& json_text, double tol,
                            const std::string& id) {
  MeasurementFrame frame;
  frame.id = id;
  try {
    const auto doc = nlohmann::json::parse(json_text);
    frame.K = doc.at("K").get<int>();
    frame.M = doc.at("M").get<int>();
    const auto& rows = doc.at("vectors");
    if (!rows.is_array()) throw std::runtime_error("vectors must be an array");
    for (const auto& row : rows) {
      if (!row.is_array()) throw std::runtime_error("vector must be an array");
      CVector v(static_cast<Eigen::Index>(row.size()));
      for (std::size_t k = 0; k < row.size(); ++k) {
        const auto& entry = row[k];
        if (!entry.is_array() || entry.size() != 2) {
          throw std::runtime_error("entries must be [re, im] pairs");
        }
        v[static_cast<Eigen::Index>(k)] = {entry[0].get<double>(),
                                           entry[1].get<double>()};
      }
      frame.vectors.push_back(std::move(v));
    }
    if (doc.contains("id")) frame.id = doc["id"].get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParseError, std::string("frame: ") + e.what());
  } catch (const std::runtime_error& e) {
    Fail(ErrorCode::kParseError, std::string("frame: ") + e.what());
  }
  if (frame.K < 1 || frame.M != frame.K * frame.K ||
      static_cast<int>(frame.vectors.size()) != frame.M) {
    Fail(ErrorCode::kParseError, "frame: header K, M inconsistent with data");
  }
  for (const CVector& v : frame.vectors) {
    if (v.size() != frame.K) {
      Fail(ErrorCode::kParseError, "frame: vector length differs from K");
    }
  }
  if (tol < 0.0) return frame;
  const FrameReport report = ValidateFrame(frame, tol);
  if (!report.pass) {
    Fail(ErrorCode::kFrameInvalid, "frame " + frame.id + ": " + report.failure());
  }
  return frame;
}

MeasurementFrame LoadFrame(const std::string& path, double tol) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kIoError, "cannot open frame file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseFrame(buffer.str(), tol, path);
}

std::vector<double> Intensities(const CVector& x, const MeasurementFrame& frame) {
  if (x.size() != frame.K) {
    Fail(ErrorCode::kDimMismatch, "signal block length differs from frame K");
  }
  std::vector<double> c;
  c.reserve(frame.vectors.size());
  // Eigen's dot conjugates the left operand: a.dot(x) = sum conj(a_k) x_k.
  for (const CVector& a : frame.vectors) c.push_back(std::norm(a.dot(x)));
  return c;
}

HermitianMatrix RecoverRank1(std::span<const double> c,
                             const MeasurementFrame& frame) {
  const int K = frame.K;
  if (static_cast<int>(c.size()) != frame.M ||
      frame.M != static_cast<int>(frame.vectors.size())) {
    Fail(ErrorCode::kDimMismatch, "intensity count differs from frame M");
  }
  CMatrix q = CMatrix::Zero(K, K);
  double total = 0.0;
  for (int m = 0; m < frame.M; ++m) {
    q += c[m] * (frame.vectors[m] * frame.vectors[m].adjoint());
    total += c[m];
  }
  q *= static_cast<double>(K + 1) / K;
  q.diagonal().array() -= total / K;
  return HermitianMatrix(std::move(q));
}

int DefaultReference(const HermitianMatrix& q) {
  int best = 0;
  for (int k = 1; k < q.dim(); ++k) {
    if (q(k, k).real() > q(best, best).real()) best = k;
  }
  return best;
}

CVector FactorRank1(const HermitianMatrix& q, std::optional<int> ref,
                    double phase, const FactorOptions& options) {
  const int K = q.dim();
  const int i = ref.value_or(DefaultReference(q));
  if (i < 0 || i >= K) Fail(ErrorCode::kOutOfRange, "reference index outside [0, K)");
  const double diag = q(i, i).real();
  if (!(diag > options.diag_tol * q.trace())) {
    std::ostringstream os;
    os << "reference entry Q(" << i << "," << i << ") = " << diag
       << " is too small";
    Fail(ErrorCode::kZeroReference, os.str());
  }

  CVector x(K);
  if (options.method == FactorMethod::kLeadingEigen) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(q.matrix());
    const double top = std::max(0.0, solver.eigenvalues()[K - 1]);
    x = std::sqrt(top) * solver.eigenvectors().col(K - 1);
    x *= std::polar(1.0, phase - std::arg(x[i]));
    return x;
  }
  for (int k = 0; k < K; ++k) {
    const double magnitude = std::sqrt(std::max(0.0, q(k, k).real()));
    x[k] = k == i ? std::polar(magnitude, phase)
                  : std::polar(magnitude, phase - std::arg(q(i, k)));
  }
  return x;
}

double Rank1Residual(const HermitianMatrix& q) {
  const double trace = q.trace();
  if (q.dim() < 2) return 0.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(q.matrix(),
                                                Eigen::EigenvaluesOnly);
  std::vector<double> mags;
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    mags.push_back(std::abs(solver.eigenvalues()[k]));
  }
  std::sort(mags.begin(), mags.end(), std::greater<>());
  const double scale = std::max(std::abs(trace), mags[0]);
  if (scale == 0.0) return 0.0;
  return mags[1] / scale;
}

}  // namespace phaseless
