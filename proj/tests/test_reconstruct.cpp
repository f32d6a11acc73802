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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "phaseless/error.hpp"
#include "phaseless/reconstruct.hpp"

using namespace phaseless;
using std::numbers::pi;

namespace {

ErrorCode CodeOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kOk;
}

struct Pipeline {
  InterpolationGrid grid;
  SignalSpec signal;
  MeasurementSet meas;
};

Pipeline Run(const InterpolationGrid& grid, const SignalSpec& signal,
             const MeasurementFrame& frame = BuiltinFrameK2(), double noise = 0.0) {
  const auto fx = [&](Complex z) { return EvalSignal(signal, z); };
  return {grid, signal, Measure(fx, grid, frame, noise, 1)};
}

SampleMap Truth(const Pipeline& p) {
  SampleMap truth;
  for (std::int64_t j = p.grid.first_global(); j <= p.grid.last_global(); ++j) {
    truth[j] = EvalSignal(p.signal, p.grid.Point(j));
  }
  return truth;
}

InterpolationGrid Shannon(std::int64_t first = 0, std::int64_t last = 63) {
  return InterpolationGrid::Build(2, 1, 2.0 * pi, 0.0, {first, last});
}

MeasurementFrame SicK3() {
  MeasurementFrame f;
  f.K = 3;
  f.M = 9;
  f.id = "sic-k3";
  const Complex w = std::polar(1.0, 2.0 * pi / 3.0);
  CVector fid(3);
  fid << 0.0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
  for (int shift = 0; shift < 3; ++shift) {
    for (int mod = 0; mod < 3; ++mod) {
      CVector v(3);
      for (int k = 0; k < 3; ++k) v[(k + shift) % 3] = std::pow(w, mod * k) * fid[k];
      f.vectors.push_back(v);
    }
  }
  return f;
}

double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

}  // namespace

TEST_CASE("block recovery") {
  const auto g = Shannon(0, 15);
  std::map<std::int64_t, Complex> coeffs;
  for (std::int64_t j = 0; j < 8; ++j) coeffs[j] = Complex(1.0 + j, 0.5);
  const Pipeline p = Run(g, MakeSignal(g, coeffs));
  const BlockMap blocks = RecoverBlocks(p.meas, BuiltinFrameK2());
  CHECK(blocks.size() == 16);
  for (const auto& [n, rec] : blocks) {
    CHECK(rec.rank1_residual <= 1e-9);
    CHECK(rec.zero_block == (n >= 8));
    if (rec.zero_block) CHECK(rec.Q.matrix().norm() < 1e-12);
  }
  MeasurementFrame wrong = BuiltinFrameK2();
  wrong.M = 5;
  CHECK(CodeOf([&] { RecoverBlocks(p.meas, wrong); }) == ErrorCode::kDimMismatch);
}

TEST_CASE("single kernel is recovered exactly") {
  const auto g = InterpolationGrid::Build(3, 1, 2.0, 0.0, {0, 9});
  // Index 7 is slot 1 of block 3 and belongs to no other block.
  const Complex c{0.6, -0.8};
  const MeasurementFrame sic = SicK3();
  const Pipeline p = Run(g, MakeSignal(g, {{7, c}}), sic);
  ReconstructionConfig cfg;
  REQUIRE(ValidateFrame(sic, 1e-12).pass);
  const RecoveryResult r = Reconstruct(p.meas, sic, cfg);
  CHECK(r.failures.empty());
  CHECK(r.anchor_block == 3);
  const AlignmentMetrics m = AlignGlobalPhase(r.samples, Truth(p));
  CHECK(m.max_abs < 1e-12);
  CHECK(r.samples.size() == static_cast<std::size_t>(g.point_count()));
  int zero_blocks = 0;
  for (const auto& [n, d] : r.diagnostics) zero_blocks += d.zero_block;
  CHECK(zero_blocks == 9);
}

TEST_CASE("random signal end to end") {
  const auto g = Shannon();
  const Pipeline p = Run(g, RandomSignal(g, 0, 64, 1.0, 7));
  const RecoveryResult r = Reconstruct(p.meas, BuiltinFrameK2(), {});
  CHECK(r.failures.empty());
  CHECK(r.anchor_block == 0);
  CHECK(r.samples.size() == 65);
  const AlignmentMetrics m = AlignGlobalPhase(r.samples, Truth(p));
  CHECK(m.rel_l2 <= 1e-8);
  CHECK(m.max_abs <= 1e-8);
  for (const auto& [n, d] : r.diagnostics) {
    CHECK(d.overlap_discrepancy < 1e-12);
    CHECK(d.rank1_residual < 1e-9);
    if (n != r.anchor_block) CHECK(d.ref_index == 0);
  }
}

TEST_CASE("larger blocks and overlaps") {
  for (auto [K, a] : {std::pair{3, 1}, {3, 2}}) {
    const auto g = InterpolationGrid::Build(K, a, 2.0 * pi, 0.0, {0, 40});
    const MeasurementFrame sic = SicK3();
    const Pipeline p = Run(g, RandomSignal(g, g.first_global(), g.point_count(), 1.0, 3), sic);
    const RecoveryResult r = Reconstruct(p.meas, sic, {});
    CHECK(r.failures.empty());
    CHECK(AlignGlobalPhase(r.samples, Truth(p)).rel_l2 < 1e-10);
  }
}

TEST_CASE("anchor independence") {
  const auto g = Shannon();
  const Pipeline p = Run(g, RandomSignal(g, 0, 64, 1.0, 7));
  const RecoveryResult base = Reconstruct(p.meas, BuiltinFrameK2(), {});
  for (std::int64_t anchor : {0, 17, 40, 63}) {
    ReconstructionConfig cfg;
    cfg.anchor_block = anchor;
    const RecoveryResult r = Reconstruct(p.meas, BuiltinFrameK2(), cfg);
    CHECK(r.anchor_block == anchor);
    CHECK(r.failures.empty());
    const AlignmentMetrics m = AlignGlobalPhase(r.samples, base.samples);
    CHECK(m.max_abs <= 1e-9);
  }
  ReconstructionConfig out_of_range;
  out_of_range.anchor_block = 64;
  CHECK(CodeOf([&] { Reconstruct(p.meas, BuiltinFrameK2(), out_of_range); }) ==
        ErrorCode::kOutOfRange);
}

TEST_CASE("zero at a shared point breaks the propagation") {
  const auto g = Shannon();
  SignalSpec x = RandomSignal(g, 0, 64, 1.0, 7);
  // Blocks 19 and 20 share only index 20.
  x.coeffs[20] = 0.0;
  const Pipeline p = Run(g, x);
  const RecoveryResult r = Reconstruct(p.meas, BuiltinFrameK2(), {});
  REQUIRE(r.failures.size() == 1);
  CHECK(r.failures[0].block == 20);
  CHECK(r.failures[0].best_overlap_magnitude < r.failures[0].threshold);
  // Samples left of the gap are still recovered.
  CHECK(r.samples.size() == 21);
  CHECK(AlignGlobalPhase(r.samples, Truth(p)).rel_l2 < 1e-10);

  // Anchored on the right, the leftward scan stops at block 19.
  ReconstructionConfig cfg;
  cfg.anchor_block = 40;
  const RecoveryResult right = Reconstruct(p.meas, BuiltinFrameK2(), cfg);
  REQUIRE(right.failures.size() == 1);
  CHECK(right.failures[0].block == 19);
  CHECK(right.samples.begin()->first == 20);
}

TEST_CASE("zero blocks in the interior") {
  const auto g = Shannon(0, 20);
  std::map<std::int64_t, Complex> coeffs;
  for (std::int64_t j = 0; j <= 21; ++j) {
    if (j < 8 || j > 12) coeffs[j] = Complex(1.0, 0.1 * j);
  }
  const Pipeline p = Run(g, MakeSignal(g, coeffs));
  const RecoveryResult r = Reconstruct(p.meas, BuiltinFrameK2(), {});
  // Blocks 8..11 hold zeros; block 12 cannot be linked to them.
  for (std::int64_t n = 8; n <= 11; ++n) CHECK(r.diagnostics.at(n).zero_block);
  REQUIRE(r.failures.size() == 1);
  CHECK(r.failures[0].block == 12);
}

TEST_CASE("all-zero measurements") {
  const auto g = Shannon(0, 5);
  const Pipeline p = Run(g, MakeSignal(g, {}));
  const RecoveryResult r = Reconstruct(p.meas, BuiltinFrameK2(), {});
  CHECK(r.failures.empty());
  CHECK(r.samples.size() == 7);
  for (const auto& [j, v] : r.samples) CHECK(v == Complex{});
}

TEST_CASE("noisy reconstruction degrades gracefully") {
  const auto g = Shannon();
  const SignalSpec x = RandomSignal(g, 0, 64, 1.0, 7);
  double prev = 0.0;
  for (double sigma : {1e-8, 1e-6, 1e-4}) {
    const Pipeline p = Run(g, x, BuiltinFrameK2(), sigma);
    ReconstructionConfig cfg;
    cfg.factor.method = FactorMethod::kLeadingEigen;
    const RecoveryResult r = Reconstruct(p.meas, BuiltinFrameK2(), cfg);
    CHECK(r.failures.empty());
    const double err = AlignGlobalPhase(r.samples, Truth(p)).rel_l2;
    CHECK(err < 1e3 * sigma);
    CHECK(err > prev);
    prev = err;
    double worst = 0.0;
    for (const auto& [n, d] : r.diagnostics) worst = std::max(worst, d.overlap_discrepancy);
    CHECK(worst > 0.0);
  }
}

TEST_CASE("fourier interpolation") {
  const auto g = Shannon(-40, 40);
  const Pipeline p = Run(g, RandomSignal(g, -30, 61, 1.0, 9));
  const RecoveryResult r = Reconstruct(p.meas, BuiltinFrameK2(), {});
  ReconstructionConfig cfg;
  cfg.truncation_N = 64;
  for (const auto& [j, v] : r.samples) {
    if (std::abs(j) <= 64) {
      CHECK(std::abs(InterpolateFourier(r.samples, g, g.Point(j), cfg) - v) < 1e-14);
    }
  }
  const AlignmentMetrics m = AlignGlobalPhase(r.samples, Truth(p));
  const Complex rot = std::polar(1.0, m.theta);
  for (double t = -25.3; t < 25.0; t += 1.37) {
    CHECK(std::abs(InterpolateFourier(r.samples, g, t, cfg) - rot * EvalSignal(p.signal, t)) <
          1e-12);
  }
}

TEST_CASE("truncation error shrinks as N doubles") {
  const auto g = Shannon(-100, 100);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> pos(-10.0, 10.0);
  std::vector<double> probes;
  for (int i = 0; i < 25; ++i) probes.push_back(pos(rng) + 0.31);
  std::vector<SignalSpec> signals;
  for (int s = 0; s < 20; ++s) {
    SignalSpec x = RandomSignal(g, -90, 181, 1.0, 100 + s);
    for (auto& [j, c] : x.coeffs) c /= 1.0 + std::abs(static_cast<double>(j));
    signals.push_back(std::move(x));
  }
  double prev = std::numeric_limits<double>::infinity();
  for (std::int64_t N : {8, 16, 32, 64, 128}) {
    ReconstructionConfig cfg;
    cfg.truncation_N = N;
    std::vector<double> errs;
    for (const SignalSpec& x : signals) {
      SampleMap samples;
      for (const auto& [j, c] : x.coeffs) samples[j] = c;
      for (double t : probes) {
        errs.push_back(std::abs(InterpolateFourier(samples, g, t, cfg) - EvalSignal(x, t)));
      }
    }
    const double med = Median(errs);
    CHECK(med <= prev);
    prev = med;
  }
  CHECK(prev < 1e-12);
}

TEST_CASE("bounded series") {
  const double T = 2.0 * pi;
  const auto sig = Shannon(-60, 60);
  const auto g = InterpolationGrid::Build(2, 1, 1.5 * T, 0.0, {-300, 300});
  const SignalSpec x = RandomSignal(sig, -20, 41, 1.0, 4);
  SampleMap samples;
  for (std::int64_t j = g.first_global(); j <= g.last_global(); ++j) {
    samples[j] = EvalSignal(x, g.Point(j));
  }
  ReconstructionConfig cfg;
  cfg.bounded_T_prime = T;
  cfg.truncation_N = 250;
  for (std::int64_t j = -50; j <= 50; j += 7) {
    CHECK(std::abs(InterpolateBounded(samples, g, g.Point(j), cfg) - samples.at(j)) < 1e-14);
  }
  ReconstructionConfig fourier = cfg;
  fourier.truncation_N = 300;
  for (double t = -15.0; t < 15.0; t += 0.93) {
    const Complex b = InterpolateBounded(samples, g, t, cfg);
    CHECK(std::abs(b - InterpolateFourier(samples, g, t, fourier)) < 1e-5);
    CHECK(std::abs(b - EvalSignal(x, t)) < 1e-6);
  }

  // A bounded, non-decaying input: u(z) = cos(T' z / 2).
  const double Tp = 1.2 * T;
  SampleMap u;
  for (std::int64_t j = g.first_global(); j <= g.last_global(); ++j) {
    u[j] = std::cos(0.5 * Tp * g.Point(j));
  }
  cfg.bounded_T_prime = Tp;
  double prev = std::numeric_limits<double>::infinity();
  for (std::int64_t N : {16, 32, 64, 128, 256}) {
    cfg.truncation_N = N;
    double worst = 0.0;
    for (double t = -5.0; t < 5.0; t += 0.37) {
      worst = std::max(worst, std::abs(InterpolateBounded(u, g, t, cfg) - std::cos(0.5 * Tp * t)));
    }
    CHECK(worst < prev);
    prev = worst;
  }
  CHECK(prev < 1e-8);
  // An odd bounded input, for which the centring term matters.
  SampleMap odd;
  for (std::int64_t j = g.first_global(); j <= g.last_global(); ++j) {
    odd[j] = std::sin(0.5 * Tp * g.Point(j)) + 0.25;
  }
  for (double t = -5.0; t < 5.0; t += 0.37) {
    CHECK(std::abs(InterpolateBounded(odd, g, t, cfg) - std::sin(0.5 * Tp * t) - 0.25) < 1e-8);
  }

  cfg.bounded_T_prime = 1.5 * T;
  CHECK(CodeOf([&] { InterpolateBounded(u, g, 0.3, cfg); }) == ErrorCode::kNotOversampled);
  cfg.bounded_T_prime = 0.0;
  CHECK(CodeOf([&] { InterpolateBounded(u, g, 0.3, cfg); }) == ErrorCode::kInvalidArgument);
  cfg.bounded_T_prime = Tp;
  cfg.bounded_order = 0;
  CHECK(CodeOf([&] { InterpolateBounded(u, g, 0.3, cfg); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("bounded series on a shifted grid") {
  const double T = 2.0 * pi;
  const double Tp = 1.2 * T;
  const auto g = InterpolationGrid::Build(2, 1, 1.5 * T, 1.0, {-400, 400});
  SampleMap u;
  for (std::int64_t j = g.first_global(); j <= g.last_global(); ++j) {
    u[j] = std::cos(0.5 * Tp * g.Point(j)) + 0.5 * std::sin(0.3 * g.Point(j));
  }
  ReconstructionConfig cfg;
  cfg.bounded_T_prime = Tp;
  cfg.truncation_N = 300;
  for (double t = -5.0; t < 5.0; t += 0.41) {
    for (double eta : {0.0, 1.0}) {
      const Complex z{t, eta};
      const Complex expected = std::cos(0.5 * Tp * z) + 0.5 * std::sin(0.3 * z);
      CHECK(std::abs(InterpolateBounded(u, g, z, cfg) - expected) < 1e-6);
    }
  }
}

TEST_CASE("test signal subtraction") {
  const double T = 2.0 * pi;
  const double Tp = 1.2 * T;
  const double D = 0.8;
  const auto g = InterpolationGrid::Build(2, 1, 1.5 * T, 0.0, {-300, 300});
  ReconstructionConfig cfg;
  cfg.truncation_N = 250;
  cfg.eval_points = {0.0, 0.7, Complex{-2.1, 0.0}, 3.3};

  // Zero base signal with a known phase: x~ = u (e^{i theta} - 1).
  const double theta = 0.9;
  RecoveryResult r;
  for (std::int64_t j = g.first_global(); j <= g.last_global(); ++j) {
    r.samples[j] = std::polar(1.0, theta) * D * std::cos(0.5 * Tp * g.Point(j));
  }
  auto out = SubtractTestSignal(r, D, Tp, g, cfg);
  REQUIRE(out.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    const Complex u = D * std::cos(0.5 * Tp * cfg.eval_points[i]);
    CHECK(std::abs(out[i] - u * (std::polar(1.0, theta) - 1.0)) < 1e-8);
  }

  // theta = 0: x~ = x.
  const auto sig = Shannon(-60, 60);
  const SignalSpec x = RandomSignal(sig, -10, 21, 1.0, 2);
  for (std::int64_t j = g.first_global(); j <= g.last_global(); ++j) {
    r.samples[j] = EvalSignal(x, g.Point(j)) + D * std::cos(0.5 * Tp * g.Point(j));
  }
  out = SubtractTestSignal(r, D, Tp, g, cfg);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(std::abs(out[i] - EvalSignal(x, cfg.eval_points[i])) < 1e-8);
  }
  CHECK(CodeOf([&] { SubtractTestSignal(r, D, 1.5 * T, g, cfg); }) ==
        ErrorCode::kNotOversampled);
}

TEST_CASE("time synthesis round trip") {
  namespace bq = boost::math::quadrature;
  for (double h : {0.0, 0.3}) {
    const double T_tilde = 2.0 * pi;
    const auto g = InterpolationGrid::Build(2, 1, T_tilde, h, {-20, 20});
    const SignalSpec x = RandomSignal(g, -20, 41, 1.0, 17);
    SampleMap samples;
    for (const auto& [j, c] : x.coeffs) samples[j] = c;
    ReconstructionConfig cfg;
    cfg.truncation_N = 64;
    // Forward transform on a fine partition of the support with Gauss rules.
    const int pieces = 64;
    const double half = T_tilde / 2.0;
    auto forward = [&](Complex omega) {
      Complex total{};
      for (int p = 0; p < pieces; ++p) {
        const double lo = -half + 2.0 * half * p / pieces;
        const double hi = lo + 2.0 * half / pieces;
        std::vector<double> ts;
        auto re = [&](double t) {
          const double pt[] = {t};
          const Complex v = SynthesizeTime(samples, g, pt, cfg)[0] *
                            std::exp(Complex{0.0, -1.0} * omega * t);
          return v.real();
        };
        auto im = [&](double t) {
          const double pt[] = {t};
          const Complex v = SynthesizeTime(samples, g, pt, cfg)[0] *
                            std::exp(Complex{0.0, -1.0} * omega * t);
          return v.imag();
        };
        total += Complex{bq::gauss<double, 20>::integrate(re, lo, hi),
                         bq::gauss<double, 20>::integrate(im, lo, hi)};
      }
      return total;
    };
    for (std::int64_t j = -20; j <= 20; j += 3) {
      CHECK(std::abs(forward(g.Point(j)) - samples[j]) < 1e-8);
    }
    CHECK(std::abs(forward(Complex{0.37, h}) - EvalSignal(x, Complex{0.37, h})) < 1e-8);
  }
}

TEST_CASE("time synthesis basics") {
  const auto g = Shannon(0, 4);
  const double ts[] = {-4.0, -1.0, 0.0, 2.5, 3.5};
  const SampleMap empty;
  for (const Complex v : SynthesizeTime(empty, g, ts, {})) CHECK(v == Complex{});
  const SampleMap one{{0, 1.0}};
  const auto single = SynthesizeTime(one, g, ts, {});
  CHECK(single[0] == Complex{});
  CHECK(single[4] == Complex{});
  for (int i = 1; i < 4; ++i) CHECK(std::abs(std::abs(single[i]) - 1.0 / (2.0 * pi)) < 1e-15);
  const SampleMap a{{1, 2.0}, {2, Complex{0.0, 1.0}}};
  const SampleMap b{{1, -1.0}, {3, 0.5}};
  SampleMap sum = a;
  for (const auto& [j, v] : b) sum[j] += v;
  const auto sa = SynthesizeTime(a, g, ts, {});
  const auto sb = SynthesizeTime(b, g, ts, {});
  const auto ss = SynthesizeTime(sum, g, ts, {});
  for (int i = 0; i < 5; ++i) CHECK(std::abs(ss[i] - sa[i] - sb[i]) < 1e-15);
}

TEST_CASE("global phase alignment") {
  SampleMap truth;
  std::mt19937_64 rng(8);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int j = 0; j < 30; ++j) truth[j] = {n(rng), n(rng)};
  SampleMap rotated;
  for (const auto& [j, v] : truth) rotated[j] = v * std::polar(1.0, 1.2);
  AlignmentMetrics m = AlignGlobalPhase(rotated, truth);
  CHECK(m.theta == doctest::Approx(1.2).epsilon(1e-14));
  CHECK(m.rel_l2 < 1e-15);
  CHECK(m.common == 30);
  m = AlignGlobalPhase(truth, truth);
  CHECK(m.theta == 0.0);

  SampleMap noisy;
  for (const auto& [j, v] : truth) noisy[j] = v * std::polar(1.0, -2.0) + Complex{0.3 * n(rng), 0.3 * n(rng)};
  m = AlignGlobalPhase(noisy, truth);
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 360; ++k) {
    const Complex rot = std::polar(1.0, -2.0 * pi * k / 360.0);
    double e = 0.0;
    for (const auto& [j, v] : truth) e += std::norm(noisy.at(j) * rot - v);
    best = std::min(best, e);
  }
  double aligned = 0.0;
  double ref = 0.0;
  for (const auto& [j, v] : truth) {
    aligned += std::norm(noisy.at(j) * std::polar(1.0, -m.theta) - v);
    ref += std::norm(v);
  }
  CHECK(aligned <= best + 1e-12);
  CHECK(m.rel_l2 == doctest::Approx(std::sqrt(aligned / ref)));

  const SampleMap disjoint{{100, 1.0}};
  CHECK(CodeOf([&] { AlignGlobalPhase(disjoint, truth); }) == ErrorCode::kEmptyOverlap);
}
