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

#include "phaseless/serialize.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "phaseless/error.hpp"

namespace phaseless {
namespace {

using nlohmann::json;

std::string Quote(const std::string& s) { return json(s).dump(); }

void WriteGrid(std::ostringstream& os, const InterpolationGrid& grid) {
  os << "{\"K\": " << grid.K() << ", \"a\": " << grid.overlap()
     << ", \"T_tilde\": " << FormatDouble(grid.T_tilde())
     << ", \"shift_h\": " << FormatDouble(grid.shift()) << ", \"blocks\": ["
     << grid.blocks().first << ", " << grid.blocks().last << "]}";
}

InterpolationGrid ReadGrid(const json& g) {
  const auto blocks = g.at("blocks");
  return InterpolationGrid::Build(
      g.at("K").get<int>(), g.at("a").get<int>(), g.at("T_tilde").get<double>(),
      g.at("shift_h").get<double>(),
      {blocks.at(0).get<std::int64_t>(), blocks.at(1).get<std::int64_t>()});
}

template <typename Fn>
auto Parsed(const std::string& what, Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParseError, what + ": " + e.what());
  }
}

}  // namespace

std::string FormatDouble(double value) {
  if (std::isnan(value)) return "\"nan\"";
  if (std::isinf(value)) return value > 0 ? "\"inf\"" : "\"-inf\"";
  char buffer[32];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc{}) Fail(ErrorCode::kInternal, "double formatting failed");
  return std::string(buffer, end);
}

std::string FrameToJson(const MeasurementFrame& frame) {
  std::ostringstream os;
  os << "{\"id\": " << Quote(frame.id) << ", \"K\": " << frame.K
     << ", \"M\": " << frame.M << ", \"vectors\": [";
  for (std::size_t m = 0; m < frame.vectors.size(); ++m) {
    os << (m ? ",\n  [" : "\n  [");
    for (Eigen::Index k = 0; k < frame.vectors[m].size(); ++k) {
      const Complex v = frame.vectors[m][k];
      os << (k ? ", [" : "[") << FormatDouble(v.real()) << ", "
         << FormatDouble(v.imag()) << "]";
    }
    os << "]";
  }
  os << "\n]}\n";
  return os.str();
}

std::string FrameReportToJson(const FrameReport& report, double tol) {
  std::ostringstream os;
  os << "{\"pass\": " << (report.pass ? "true" : "false")
     << ", \"tol\": " << FormatDouble(tol)
     << ", \"count_ok\": " << (report.count_ok ? "true" : "false")
     << ", \"norm_deviation\": " << FormatDouble(report.norm_deviation)
     << ", \"tightness_deviation\": " << FormatDouble(report.tightness_deviation)
     << ", \"uniformity_deviation\": " << FormatDouble(report.uniformity_deviation)
     << ", \"tight_constant\": " << FormatDouble(report.tight_constant)
     << ", \"pair_constant\": " << FormatDouble(report.pair_constant) << "}\n";
  return os.str();
}

std::string SignalToJson(const SignalSpec& spec, const AugmentedSignal* augmentation) {
  std::ostringstream os;
  os << "{\"grid\": ";
  WriteGrid(os, spec.grid);
  os << ",\n \"p_exponent\": " << FormatDouble(spec.p_exponent);
  if (augmentation) {
    const AugmentedSignal& a = *augmentation;
    os << ",\n \"augmentation\": {\"T\": " << FormatDouble(a.T)
       << ", \"T_prime\": " << FormatDouble(a.T_prime)
       << ", \"D\": " << FormatDouble(a.D) << ", \"H\": " << FormatDouble(a.H)
       << ", \"H_u\": " << FormatDouble(a.H_u)
       << ", \"A_u\": " << FormatDouble(a.A_u)
       << ", \"M_sup\": " << FormatDouble(a.M_sup) << "}";
  }
  os << ",\n \"coeffs\": [";
  bool first = true;
  for (const auto& [j, c] : spec.coeffs) {
    os << (first ? "\n  [" : ",\n  [") << j << ", " << FormatDouble(c.real())
       << ", " << FormatDouble(c.imag()) << "]";
    first = false;
  }
  os << "\n]}\n";
  return os.str();
}

SignalSpec SignalFromJson(const std::string& text) {
  return Parsed("signal", [&] {
    const json doc = json::parse(text);
    const InterpolationGrid grid = ReadGrid(doc.at("grid"));
    std::map<std::int64_t, Complex> coeffs;
    for (const auto& t : doc.at("coeffs")) {
      coeffs[t.at(0).get<std::int64_t>()] = {t.at(1).get<double>(),
                                             t.at(2).get<double>()};
    }
    double p = 2.0;
    if (doc.contains("p_exponent")) {
      const auto& pe = doc["p_exponent"];
      p = pe.is_string() && pe.get<std::string>() == "inf"
              ? std::numeric_limits<double>::infinity()
              : pe.get<double>();
    }
    return MakeSignal(grid, std::move(coeffs), p);
  });
}

std::string MeasurementToJson(const MeasurementSet& meas) {
  std::ostringstream os;
  os << "{\"K\": " << meas.K << ", \"a\": " << meas.a
     << ", \"beta\": " << FormatDouble(meas.beta)
     << ", \"T_tilde\": " << FormatDouble(meas.T_tilde)
     << ", \"shift_h\": " << FormatDouble(meas.shift_h) << ", \"blocks\": ["
     << meas.blocks.first << ", " << meas.blocks.last << "]"
     << ",\n \"frame_id\": " << Quote(meas.frame_id) << ", \"M\": " << meas.M
     << ", \"noise_sigma\": " << FormatDouble(meas.noise_sigma)
     << ", \"seed\": " << meas.seed;
  if (meas.test_signal) {
    os << ",\n \"test_signal\": {\"D\": " << FormatDouble(meas.test_signal->D)
       << ", \"T_prime\": " << FormatDouble(meas.test_signal->T_prime)
       << ", \"H\": " << FormatDouble(meas.test_signal->H) << "}";
  }
  os << ",\n \"samples\": [";
  bool first = true;
  for (std::int64_t n = meas.blocks.first; n <= meas.blocks.last; ++n) {
    const auto& row = meas.block(n);
    for (std::size_t m = 0; m < row.size(); ++m) {
      os << (first ? "\n  [" : ",\n  [") << n << ", " << m << ", "
         << FormatDouble(row[m]) << "]";
      first = false;
    }
  }
  os << "\n]}\n";
  return os.str();
}

MeasurementSet MeasurementFromJson(const std::string& text) {
  return Parsed("measurements", [&] {
    const json doc = json::parse(text);
    MeasurementSet meas;
    meas.K = doc.at("K").get<int>();
    meas.a = doc.at("a").get<int>();
    meas.beta = doc.at("beta").get<double>();
    meas.T_tilde = doc.at("T_tilde").get<double>();
    meas.shift_h = doc.at("shift_h").get<double>();
    meas.blocks = {doc.at("blocks").at(0).get<std::int64_t>(),
                   doc.at("blocks").at(1).get<std::int64_t>()};
    meas.frame_id = doc.at("frame_id").get<std::string>();
    meas.M = doc.at("M").get<int>();
    meas.noise_sigma = doc.at("noise_sigma").get<double>();
    meas.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("test_signal")) {
      const auto& ts = doc["test_signal"];
      meas.test_signal = MeasurementSet::TestSignal{
          ts.at("D").get<double>(), ts.at("T_prime").get<double>(),
          ts.at("H").get<double>()};
    }
    // Rebuilding the grid validates K, a, T~ and the block range.
    const InterpolationGrid grid = meas.grid();
    if (std::abs(grid.period() - meas.beta) > 1e-12 * std::max(1.0, meas.beta)) {
      Fail(ErrorCode::kParseError, "measurements: beta inconsistent with K, a, T~");
    }
    if (meas.M < 1) Fail(ErrorCode::kParseError, "measurements: M must be positive");
    const auto rows = static_cast<std::size_t>(meas.blocks.size());
    meas.samples.assign(rows, std::vector<double>(meas.M, -1.0));
    std::size_t seen = 0;
    for (const auto& t : doc.at("samples")) {
      const auto n = t.at(0).get<std::int64_t>();
      const auto m = t.at(1).get<std::int64_t>();
      if (!meas.blocks.contains(n) || m < 0 || m >= meas.M) {
        Fail(ErrorCode::kParseError, "measurements: sample index out of range");
      }
      double& slot = meas.samples[static_cast<std::size_t>(n - meas.blocks.first)]
                                 [static_cast<std::size_t>(m)];
      if (slot != -1.0) Fail(ErrorCode::kParseError, "measurements: duplicate sample");
      slot = t.at(2).get<double>();
      ++seen;
    }
    if (seen != rows * static_cast<std::size_t>(meas.M)) {
      Fail(ErrorCode::kParseError, "measurements: missing samples");
    }
    return meas;
  });
}

std::string ResultToJson(const RecoveryResult& result) {
  std::ostringstream os;
  os << "{\"anchor_block\": " << result.anchor_block << ",\n \"failures\": [";
  for (std::size_t i = 0; i < result.failures.size(); ++i) {
    const PhaseBreak& f = result.failures[i];
    os << (i ? ", " : "") << "{\"kind\": \"PhaseBreak\", \"block\": " << f.block
       << ", \"best_overlap_magnitude\": " << FormatDouble(f.best_overlap_magnitude)
       << ", \"threshold\": " << FormatDouble(f.threshold) << "}";
  }
  os << "],\n \"diagnostics\": [";
  bool first = true;
  for (const auto& [n, d] : result.diagnostics) {
    os << (first ? "\n  " : ",\n  ") << "{\"block\": " << n
       << ", \"ref_index\": " << d.ref_index
       << ", \"overlap_magnitude\": " << FormatDouble(d.overlap_magnitude)
       << ", \"rank1_residual\": " << FormatDouble(d.rank1_residual)
       << ", \"trace\": " << FormatDouble(d.trace)
       << ", \"zero_block\": " << (d.zero_block ? "true" : "false")
       << ", \"overlap_discrepancy\": " << FormatDouble(d.overlap_discrepancy) << "}";
    first = false;
  }
  os << "],\n \"samples\": [";
  first = true;
  for (const auto& [j, v] : result.samples) {
    os << (first ? "\n  [" : ",\n  [") << j << ", " << FormatDouble(v.real())
       << ", " << FormatDouble(v.imag()) << "]";
    first = false;
  }
  os << "\n]}\n";
  return os.str();
}

std::string MetricsCsvHeader() {
  return "run_id,K,a,T_tilde_over_T,N,noise_sigma,rel_l2,max_abs,theta0,n_phasebreaks\n";
}

std::string MetricsCsvRow(const MetricsRow& row) {
  std::ostringstream os;
  os << row.run_id << ',' << row.K << ',' << row.a << ','
     << FormatDouble(row.oversampling) << ',' << row.N << ','
     << FormatDouble(row.noise_sigma) << ',' << FormatDouble(row.rel_l2) << ','
     << FormatDouble(row.max_abs) << ',' << FormatDouble(row.theta0) << ','
     << row.n_phasebreaks << '\n';
  return os.str();
}

}  // namespace phaseless
