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

#ifndef PHASELESS_SERIALIZE_HPP_
#define PHASELESS_SERIALIZE_HPP_

#include <string>

#include "phaseless/frames.hpp"
#include "phaseless/reconstruct.hpp"
#include "phaseless/simulator.hpp"

namespace phaseless {

// Shortest decimal that parses back to the same double.
std::string FormatDouble(double value);

std::string FrameToJson(const MeasurementFrame& frame);
std::string FrameReportToJson(const FrameReport& report, double tol);

// Coefficients are [index, re, im] triples.
std::string SignalToJson(const SignalSpec& spec,
                         const AugmentedSignal* augmentation = nullptr);
SignalSpec SignalFromJson(const std::string& text);

// Samples are [n, m, value] triples.
std::string MeasurementToJson(const MeasurementSet& meas);
MeasurementSet MeasurementFromJson(const std::string& text);

std::string ResultToJson(const RecoveryResult& result);

struct MetricsRow {
  std::string run_id;
  int K = 0;
  int a = 0;
  double oversampling = 1.0;  // T~ / T
  std::int64_t N = 0;
  double noise_sigma = 0.0;
  double rel_l2 = 0.0;
  double max_abs = 0.0;
  double theta0 = 0.0;
  std::size_t n_phasebreaks = 0;
};

std::string MetricsCsvHeader();
std::string MetricsCsvRow(const MetricsRow& row);

}  // namespace phaseless

#endif  // PHASELESS_SERIALIZE_HPP_
