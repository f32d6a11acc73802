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

#include "phaseless/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "phaseless/error.hpp"

namespace phaseless {
namespace {

using nlohmann::json;

const std::set<std::string> kTopLevelKeys = {
    "run_id", "K", "a", "T", "T_tilde", "T_prime", "shift_h", "H_u", "D",
    "n_range", "truncation_N", "overlap_tol", "noise_sigma", "seed", "mode",
    "anchor_block", "factor_method", "frame", "frame_tol", "p_exponent",
    "signal", "probes", "output", "comment"};
const std::set<std::string> kSignalKeys = {
    "source", "first_index", "count", "magnitude", "seed", "zero_indices",
    "max_sup_bound", "path", "comment"};
const std::set<std::string> kProbeKeys = {"kind", "from", "to", "count", "points",
                                          "comment"};

void RequireKnownKeys(const json& obj, const std::set<std::string>& keys,
                      const std::string& where) {
  if (!obj.is_object()) Fail(ErrorCode::kParseError, where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (!keys.contains(key)) {
      Fail(ErrorCode::kParseError, "unknown " + where + " key '" + key + "'");
    }
  }
}

SeriesMode ParseMode(const std::string& name) {
  if (name == "LpSeries") return SeriesMode::kLpSeries;
  if (name == "BoundedSeries") return SeriesMode::kBoundedSeries;
  if (name == "AugmentedCorollary") return SeriesMode::kAugmentedCorollary;
  Fail(ErrorCode::kParseError, "unknown mode '" + name + "'");
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kIoError, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

double Median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  double m = values[mid];
  if (values.size() % 2 == 0) {
    m = 0.5 * (m + *std::max_element(values.begin(), values.begin() + mid));
  }
  return m;
}

}  // namespace

ExperimentConfig ParseExperimentConfig(const std::string& json_text) {
  ExperimentConfig c;
  try {
    const json doc = json::parse(json_text);
    if (!doc.is_object()) Fail(ErrorCode::kParseError, "config must be an object");
    for (const auto& [key, value] : doc.items()) {
      if (!kTopLevelKeys.contains(key)) {
        Fail(ErrorCode::kParseError, "unknown config key '" + key + "'");
      }
    }
    auto get = [&](const char* key, auto& field) {
      if (doc.contains(key)) doc.at(key).get_to(field);
    };
    get("run_id", c.run_id);
    get("K", c.K);
    get("a", c.a);
    get("T", c.T);
    get("T_tilde", c.T_tilde);
    if (doc.contains("T_prime") && !doc["T_prime"].is_null()) {
      c.T_prime = doc["T_prime"].get<double>();
    }
    get("shift_h", c.shift_h);
    get("H_u", c.H_u);
    if (doc.contains("D")) {
      const auto& d = doc["D"];
      if (d.is_string()) {
        if (d.get<std::string>() != "auto") {
          Fail(ErrorCode::kParseError, "D must be a number or \"auto\"");
        }
      } else if (!d.is_null()) {
        c.D = d.get<double>();
      }
    }
    if (doc.contains("n_range")) {
      c.n_range = {doc["n_range"].at(0).get<std::int64_t>(),
                   doc["n_range"].at(1).get<std::int64_t>()};
    }
    get("truncation_N", c.truncation_N);
    get("overlap_tol", c.overlap_tol);
    get("noise_sigma", c.noise_sigma);
    get("seed", c.seed);
    if (doc.contains("mode")) c.mode = ParseMode(doc["mode"].get<std::string>());
    if (doc.contains("anchor_block") && !doc["anchor_block"].is_null()) {
      c.anchor_block = doc["anchor_block"].get<std::int64_t>();
    }
    if (doc.contains("factor_method")) {
      const auto name = doc["factor_method"].get<std::string>();
      if (name == "direct") {
        c.factor_method = FactorMethod::kDirect;
      } else if (name == "leading_eigen") {
        c.factor_method = FactorMethod::kLeadingEigen;
      } else {
        Fail(ErrorCode::kParseError, "unknown factor_method '" + name + "'");
      }
    }
    get("frame", c.frame);
    get("frame_tol", c.frame_tol);
    if (doc.contains("p_exponent")) {
      const auto& p = doc["p_exponent"];
      c.p_exponent = p.is_string() && p.get<std::string>() == "inf"
                         ? std::numeric_limits<double>::infinity()
                         : p.get<double>();
    }
    if (doc.contains("signal")) {
      const auto& s = doc["signal"];
      RequireKnownKeys(s, kSignalKeys, "signal");
      const auto source = s.value("source", std::string("random"));
      if (source == "random") {
        c.signal.kind = SignalSource::Kind::kRandom;
      } else if (source == "file") {
        c.signal.kind = SignalSource::Kind::kFile;
        c.signal.path = s.at("path").get<std::string>();
      } else {
        Fail(ErrorCode::kParseError, "unknown signal source '" + source + "'");
      }
      c.signal.first_index = s.value("first_index", c.signal.first_index);
      c.signal.count = s.value("count", c.signal.count);
      c.signal.magnitude = s.value("magnitude", c.signal.magnitude);
      c.signal.seed = s.value("seed", c.signal.seed);
      c.signal.max_sup_bound = s.value("max_sup_bound", c.signal.max_sup_bound);
      if (s.contains("zero_indices")) {
        s["zero_indices"].get_to(c.signal.zero_indices);
      }
    }
    if (doc.contains("probes")) {
      const auto& p = doc["probes"];
      RequireKnownKeys(p, kProbeKeys, "probes");
      const auto kind = p.value("kind", std::string("grid"));
      if (kind == "grid") {
        c.probes.kind = ProbeSpec::Kind::kGrid;
        if (p.contains("from")) c.probes.from = p["from"].get<double>();
        if (p.contains("to")) c.probes.to = p["to"].get<double>();
        c.probes.count = p.value("count", c.probes.count);
      } else if (kind == "explicit") {
        c.probes.kind = ProbeSpec::Kind::kExplicit;
        for (const auto& z : p.at("points")) {
          c.probes.points.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
        }
      } else {
        Fail(ErrorCode::kParseError, "unknown probe kind '" + kind + "'");
      }
    }
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParseError, std::string("config: ") + e.what());
  }
  ValidateExperimentConfig(c);
  return c;
}

void ValidateExperimentConfig(const ExperimentConfig& c) {
  auto invalid = [](const std::string& what) {
    Fail(ErrorCode::kInvalidArgument, "config: " + what);
  };
  if (c.K < 2 || c.a < 1 || c.a >= c.K) {
    Fail(ErrorCode::kInvalidOverlap, "config: need K >= 2 and 1 <= a < K");
  }
  if (!(c.T > 0.0)) invalid("T must be positive");
  if (!(c.T <= c.T_tilde)) invalid("T must not exceed T_tilde");
  if (c.truncation_N < 1) invalid("truncation_N must be >= 1");
  if (!(c.overlap_tol > 0.0)) invalid("overlap_tol must be positive");
  if (!(c.noise_sigma >= 0.0)) invalid("noise_sigma must be nonnegative");
  if (!(c.H_u > 0.0)) invalid("H_u must be positive");
  if (c.n_range.last < c.n_range.first) invalid("n_range is empty");
  if (c.signal.kind == SignalSource::Kind::kRandom && c.signal.count < 0) {
    invalid("signal.count must be nonnegative");
  }
  if (c.probes.kind == ProbeSpec::Kind::kGrid && c.probes.count < 1) {
    invalid("probes.count must be >= 1");
  }
  if (c.mode == SeriesMode::kAugmentedCorollary) {
    if (!c.T_prime) invalid("AugmentedCorollary requires T_prime");
    if (!(c.T < *c.T_prime && *c.T_prime < c.T_tilde)) {
      invalid("AugmentedCorollary requires T < T_prime < T_tilde");
    }
  }
  if (c.mode == SeriesMode::kBoundedSeries &&
      !(c.T_tilde > c.T_prime.value_or(c.T))) {
    Fail(ErrorCode::kNotOversampled, "config: BoundedSeries requires T_tilde > T'");
  }
}

InterpolationGrid MeasurementGrid(const ExperimentConfig& c) {
  return InterpolationGrid::Build(c.K, c.a, c.T_tilde, c.shift_h, c.n_range);
}

InterpolationGrid SignalGrid(const ExperimentConfig& c) {
  return InterpolationGrid::Build(c.K, c.a, c.T, 0.0, c.n_range);
}

MeasurementFrame ResolveFrame(const ExperimentConfig& c) {
  if (c.frame == "builtin-k2") return BuiltinFrameK2();
  return LoadFrame(c.frame, c.frame_tol);
}

SignalSpec BuildSignal(const ExperimentConfig& c) {
  if (c.signal.kind == SignalSource::Kind::kFile) {
    return SignalFromJson(ReadFile(c.signal.path));
  }
  SignalSpec spec = RandomSignal(SignalGrid(c), c.signal.first_index,
                                 c.signal.count, c.signal.magnitude,
                                 c.signal.seed, c.p_exponent);
  for (const std::int64_t j : c.signal.zero_indices) {
    if (j < spec.grid.first_global() || j > spec.grid.last_global()) {
      Fail(ErrorCode::kIndexOutOfWindow, "zero index outside the signal window");
    }
    spec.coeffs[j] = Complex{};
  }
  if (c.signal.max_sup_bound > 0.0) {
    const double bound = SupBound(spec);
    if (bound > c.signal.max_sup_bound) {
      const double scale = c.signal.max_sup_bound / bound;
      for (auto& [j, v] : spec.coeffs) v *= scale;
    }
  }
  return spec;
}

ReconstructionConfig ToReconstructionConfig(const ExperimentConfig& c) {
  ReconstructionConfig rc;
  rc.overlap_tol = c.overlap_tol;
  rc.truncation_N = c.truncation_N;
  rc.mode = c.mode;
  rc.anchor_block = c.anchor_block;
  rc.factor.method = c.factor_method;
  rc.bounded_T_prime = c.T_prime.value_or(c.T);
  return rc;
}

std::vector<Complex> ProbePoints(const ExperimentConfig& c, const SignalSpec& signal) {
  if (c.probes.kind == ProbeSpec::Kind::kExplicit) return c.probes.points;
  const double nudge = 0.3 * (2.0 * std::numbers::pi / c.T_tilde);
  double lo = 0.0;
  double hi = 1.0;
  if (!signal.coeffs.empty()) {
    lo = signal.grid.Point(signal.coeffs.begin()->first).real() + nudge;
    hi = signal.grid.Point(signal.coeffs.rbegin()->first).real() - nudge;
  }
  lo = c.probes.from.value_or(lo);
  hi = c.probes.to.value_or(hi);
  std::vector<Complex> points;
  for (int i = 0; i < c.probes.count; ++i) {
    const double t = c.probes.count == 1 ? 0.0 : static_cast<double>(i) / (c.probes.count - 1);
    points.emplace_back(lo + t * (hi - lo), 0.0);
  }
  return points;
}

Simulation Simulate(const ExperimentConfig& c) {
  ValidateExperimentConfig(c);
  Simulation sim{MeasurementGrid(c), ResolveFrame(c), BuildSignal(c), std::nullopt, {}};
  if (c.mode == SeriesMode::kAugmentedCorollary) {
    AugmentOptions options;
    options.T = c.T;
    options.T_prime = *c.T_prime;
    options.H_u = c.H_u;
    options.D = c.D;
    options.grid_shift = c.shift_h;
    sim.augmented = Augment(sim.signal, options);
    const AugmentedSignal& aug = *sim.augmented;
    sim.measurements = Measure([&](Complex z) { return EvalAugmented(aug, z); },
                               sim.grid, sim.frame, c.noise_sigma, c.seed);
    sim.measurements.test_signal = MeasurementSet::TestSignal{aug.D, aug.T_prime, aug.H};
  } else {
    const SignalSpec& signal = sim.signal;
    const KernelParams params = KernelParams::For(signal.grid.sine_type());
    sim.measurements =
        Measure([&](Complex z) { return EvalSignal(signal, z, params); }, sim.grid,
                sim.frame, c.noise_sigma, c.seed);
  }
  return sim;
}

Reconstruction ReconstructExperiment(const ExperimentConfig& c,
                                     const MeasurementSet& meas) {
  ValidateExperimentConfig(c);
  const MeasurementFrame frame = ResolveFrame(c);
  const InterpolationGrid grid = meas.grid();
  const ReconstructionConfig rc = ToReconstructionConfig(c);
  const bool augmented = c.mode == SeriesMode::kAugmentedCorollary;
  if (augmented && !meas.test_signal) {
    Fail(ErrorCode::kInvalidArgument,
         "AugmentedCorollary needs measurements carrying test_signal parameters");
  }

  Reconstruction rec;
  rec.result = Reconstruct(meas, frame, rc);

  const SignalSpec signal = BuildSignal(c);
  const KernelParams params = KernelParams::For(signal.grid.sine_type());
  auto truth_at = [&](Complex z) {
    Complex v = EvalSignal(signal, z, params);
    if (augmented) v += EvalTestSignal(meas.test_signal->D, meas.test_signal->T_prime, z);
    return v;
  };
  SampleMap truth;
  for (std::int64_t j = grid.first_global(); j <= grid.last_global(); ++j) {
    truth[j] = truth_at(grid.Point(j));
  }
  const AlignmentMetrics align = AlignGlobalPhase(rec.result.samples, truth);
  rec.theta0 = align.theta;

  MetricsRow& row = rec.metrics;
  row.run_id = c.run_id;
  row.K = grid.K();
  row.a = grid.overlap();
  row.oversampling = grid.T_tilde() / c.T;
  row.N = c.truncation_N;
  row.noise_sigma = meas.noise_sigma;
  row.theta0 = align.theta;
  row.n_phasebreaks = rec.result.failures.size();
  row.rel_l2 = align.rel_l2;
  row.max_abs = align.max_abs;

  if (augmented) {
    // x~ = d - u against x e^{i theta} - u (1 - e^{i theta}).
    const double D = meas.test_signal->D;
    const double Tp = meas.test_signal->T_prime;
    const Complex rot = std::polar(1.0, align.theta);
    double diff2 = 0.0;
    double ref2 = 0.0;
    double max_abs = 0.0;
    for (const auto& [j, d] : rec.result.samples) {
      const Complex z = grid.Point(j);
      const Complex u = EvalTestSignal(D, Tp, z);
      const Complex x_tilde = d - u;
      const Complex expected = EvalSignal(signal, z, params) * rot - u * (1.0 - rot);
      const double err = std::abs(x_tilde - expected);
      diff2 += err * err;
      ref2 += std::norm(expected);
      max_abs = std::max(max_abs, err);
    }
    row.rel_l2 = ref2 > 0.0 ? std::sqrt(diff2 / ref2) : std::sqrt(diff2);
    row.max_abs = max_abs;
  }

  ReconstructionConfig eval_rc = rc;
  eval_rc.eval_points = ProbePoints(c, signal);
  if (rec.result.failures.empty()) {
    std::vector<Complex> values;
    if (augmented) {
      values = SubtractTestSignal(rec.result, meas.test_signal->D,
                                  meas.test_signal->T_prime, grid, eval_rc);
    } else {
      for (const Complex z : eval_rc.eval_points) {
        values.push_back(c.mode == SeriesMode::kLpSeries
                             ? InterpolateFourier(rec.result.samples, grid, z, eval_rc)
                             : InterpolateBounded(rec.result.samples, grid, z, eval_rc));
      }
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
      rec.evaluations.push_back({eval_rc.eval_points[i], values[i]});
    }
  }
  return rec;
}

std::string ReconstructionToJson(const Reconstruction& rec) {
  std::ostringstream os;
  os << "{\"theta0\": " << FormatDouble(rec.theta0)
     << ", \"rel_l2\": " << FormatDouble(rec.metrics.rel_l2)
     << ", \"max_abs\": " << FormatDouble(rec.metrics.max_abs)
     << ", \"n_phasebreaks\": " << rec.metrics.n_phasebreaks
     << ",\n\"evaluations\": [";
  for (std::size_t i = 0; i < rec.evaluations.size(); ++i) {
    const Evaluation& e = rec.evaluations[i];
    os << (i ? ",\n  [" : "\n  [") << FormatDouble(e.z.real()) << ", "
       << FormatDouble(e.z.imag()) << ", " << FormatDouble(e.value.real()) << ", "
       << FormatDouble(e.value.imag()) << "]";
  }
  os << "\n],\n\"result\": " << ResultToJson(rec.result) << "}\n";
  return os.str();
}

std::string RateTableCsv(const std::vector<int>& Ks, const std::vector<int>& as,
                         const std::vector<double>& ratios) {
  if (Ks.empty() || as.empty() || ratios.empty()) {
    Fail(ErrorCode::kInvalidArgument, "rate table needs K, a and ratio lists");
  }
  std::vector<std::tuple<int, int, double>> rows;
  for (int K : Ks) {
    for (int a : as) {
      if (a < 1 || a >= K) continue;
      for (double r : ratios) rows.emplace_back(K, a, r);
    }
  }
  if (rows.empty()) Fail(ErrorCode::kInvalidOverlap, "no valid (K, a) combination");
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  std::ostringstream os;
  os << "K,a,T_tilde_over_T,rate_over_nyquist\n";
  for (const auto& [K, a, r] : rows) {
    os << K << ',' << a << ',' << FormatDouble(r) << ','
       << FormatDouble(SamplingRateRatio(K, a, r, 1.0)) << '\n';
  }
  return os.str();
}

std::string ConvergenceCsv(const ExperimentConfig& c,
                           const std::vector<std::int64_t>& Ns) {
  if (Ns.empty()) Fail(ErrorCode::kInvalidArgument, "convergence needs at least one N");
  for (const std::int64_t N : Ns) {
    if (N < 1) Fail(ErrorCode::kInvalidArgument, "N must be >= 1");
  }
  const Simulation sim = Simulate(c);
  const Reconstruction rec = ReconstructExperiment(c, sim.measurements);
  if (!rec.result.failures.empty()) {
    std::ostringstream os;
    os << "phase propagation broke at block " << rec.result.failures.front().block;
    Fail(ErrorCode::kPhaseBreak, os.str());
  }
  const std::vector<Complex> probes = ProbePoints(c, sim.signal);
  const KernelParams params = KernelParams::For(sim.signal.grid.sine_type());
  const Complex rot = std::polar(1.0, rec.theta0);
  std::vector<Complex> truth;
  for (const Complex z : probes) {
    Complex v = EvalSignal(sim.signal, z, params);
    if (sim.augmented) v += EvalTestSignal(sim.augmented->D, sim.augmented->T_prime, z);
    truth.push_back(v * rot);
  }

  ReconstructionConfig rc = ToReconstructionConfig(c);
  std::ostringstream os;
  os << "N,median_abs_err,max_abs_err\n";
  for (const std::int64_t N : Ns) {
    rc.truncation_N = N;
    std::vector<double> errors;
    for (std::size_t i = 0; i < probes.size(); ++i) {
      const Complex approx =
          c.mode == SeriesMode::kLpSeries
              ? InterpolateFourier(rec.result.samples, sim.grid, probes[i], rc)
              : InterpolateBounded(rec.result.samples, sim.grid, probes[i], rc);
      errors.push_back(std::abs(approx - truth[i]));
    }
    const double worst = *std::max_element(errors.begin(), errors.end());
    os << N << ',' << FormatDouble(Median(errors)) << ',' << FormatDouble(worst) << '\n';
  }
  return os.str();
}

}  // namespace phaseless
