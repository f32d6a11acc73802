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

#include <cmath>
#include <numbers>

#include "phaseless/error.hpp"
#include "phaseless/simulator.hpp"

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

InterpolationGrid Shannon(std::int64_t blocks = 63) {
  return InterpolationGrid::Build(2, 1, 2.0 * pi, 0.0, {0, blocks});
}

}  // namespace

TEST_CASE("signal construction") {
  const auto g = Shannon(9);
  const SignalSpec one = MakeSignal(g, {{0, 1.0}});
  const Complex z{0.37, 0.1};
  CHECK(std::abs(EvalSignal(one, z) - std::sin(pi * z) / (pi * z)) < 1e-15);
  const SignalSpec empty = MakeSignal(g, {});
  CHECK(EvalSignal(empty, z) == Complex{});
  CHECK(CodeOf([&] { MakeSignal(g, {{11, 1.0}}); }) == ErrorCode::kIndexOutOfWindow);
  CHECK(CodeOf([&] { MakeSignal(g, {{-1, 1.0}}); }) == ErrorCode::kIndexOutOfWindow);
  CHECK(CodeOf([&] { MakeSignal(g, {}, 0.5); }) == ErrorCode::kInvalidArgument);
  CHECK(MakeSignal(g, {}, std::numeric_limits<double>::infinity()).p_exponent ==
        std::numeric_limits<double>::infinity());
}

TEST_CASE("evaluation at grid points returns the coefficients") {
  for (double h : {0.0, 0.6}) {
    const auto g = InterpolationGrid::Build(3, 1, 5.0, h, {0, 31});
    const SignalSpec s = RandomSignal(g, 0, 64, 1.0, 21);
    CHECK(s.coeffs.size() == 64);
    for (const auto& [j, c] : s.coeffs) {
      CHECK(std::abs(c) >= 0.5);
      CHECK(std::abs(c) <= 1.0);
      CHECK(std::abs(EvalSignal(s, g.Point(j)) - c) < 1e-13);
    }
    CHECK(std::abs(EvalSignal(s, g.Point(64))) < 1e-14);
  }
}

TEST_CASE("midpoint of a Shannon grid") {
  const auto g = Shannon(4);
  const SignalSpec s = MakeSignal(g, {{0, 1.0}});
  CHECK(std::abs(EvalSignal(s, 0.5) - 2.0 / pi) < 1e-15);
}

TEST_CASE("evaluation is linear") {
  const auto g = Shannon(15);
  const SignalSpec x = RandomSignal(g, 0, 16, 1.0, 1);
  const SignalSpec y = RandomSignal(g, 4, 12, 2.0, 2);
  const Complex alpha{0.3, -1.1};
  const Complex beta{2.0, 0.5};
  std::map<std::int64_t, Complex> mix;
  for (const auto& [j, c] : x.coeffs) mix[j] += alpha * c;
  for (const auto& [j, c] : y.coeffs) mix[j] += beta * c;
  const SignalSpec combo = MakeSignal(g, mix);
  for (double t = -2.0; t < 20.0; t += 0.77) {
    const Complex expected = alpha * EvalSignal(x, t) + beta * EvalSignal(y, t);
    CHECK(std::abs(EvalSignal(combo, t) - expected) < 1e-13);
  }
}

TEST_CASE("random signals are reproducible") {
  const auto g = Shannon();
  const SignalSpec a = RandomSignal(g, 0, 64, 1.0, 7);
  const SignalSpec b = RandomSignal(g, 0, 64, 1.0, 7);
  const SignalSpec c = RandomSignal(g, 0, 64, 1.0, 8);
  CHECK(a.coeffs == b.coeffs);
  CHECK(a.coeffs != c.coeffs);
}

TEST_CASE("sup bound") {
  const auto g = Shannon(15);
  CHECK(SupBound(MakeSignal(g, {})) == 0.0);
  const double single = SupBound(MakeSignal(g, {{5, 1.0}}));
  CHECK(single == doctest::Approx(1.5).epsilon(1e-12));
  const SignalSpec x = RandomSignal(g, 0, 16, 1.0, 4);
  std::map<std::int64_t, Complex> twice;
  for (const auto& [j, c] : x.coeffs) twice[j] = 2.0 * c;
  CHECK(SupBound(MakeSignal(g, twice)) == doctest::Approx(2.0 * SupBound(x)).epsilon(1e-14));
  // Dominates the true supremum on a finer probe set.
  double peak = 0.0;
  for (double t = -20.0; t < 40.0; t += 0.001) peak = std::max(peak, std::abs(EvalSignal(x, t)));
  CHECK(SupBound(x) >= peak);
  CHECK(CodeOf([&] { SupBound(x, 0.0); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("augmentation with explicit D") {
  const auto g = Shannon(15);
  const double T = 2.0 * pi;
  AugmentOptions opt;
  opt.T = T;
  opt.T_prime = 1.2 * T;
  opt.H_u = 1.0;
  opt.grid_shift = 100.0;

  opt.D = 3.0;
  const AugmentedSignal zero = Augment(MakeSignal(g, {}), opt);
  CHECK(zero.H == opt.H_u);
  CHECK(zero.M_sup == 0.0);

  const SignalSpec x = RandomSignal(g, 0, 16, 1.0, 3);
  const double M = SupBound(x);
  const double Au = CosineLowerBoundAu(opt.T_prime, opt.H_u);
  opt.D = M / Au;
  CHECK(Augment(x, opt).H == doctest::Approx(opt.H_u));

  opt.D = 1e-3;
  const AugmentedSignal small = Augment(x, opt);
  opt.D = 2e-3;
  const AugmentedSignal doubled = Augment(x, opt);
  CHECK(small.H > opt.H_u);
  CHECK(small.H - doubled.H == doctest::Approx(2.0 / (opt.T_prime - T) * std::log(2.0)));
  CHECK(small.H == doctest::Approx(2.0 / (opt.T_prime - T) * std::log(M / (1e-3 * Au))));

  opt.grid_shift = small.H * 0.99;
  opt.D = 1e-3;
  CHECK(CodeOf([&] { Augment(x, opt); }) == ErrorCode::kShiftTooSmall);
  opt.D = -1.0;
  opt.grid_shift = 100.0;
  CHECK(CodeOf([&] { Augment(x, opt); }) == ErrorCode::kInvalidArgument);
  opt.D = 1.0;
  opt.T_prime = T;
  CHECK(CodeOf([&] { Augment(x, opt); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("automatic D clears the grid shift") {
  const auto g = Shannon(15);
  const SignalSpec x = RandomSignal(g, 0, 16, 1.0, 3);
  AugmentOptions opt;
  opt.T = 2.0 * pi;
  opt.T_prime = 1.2 * opt.T;
  opt.H_u = 1.0;
  for (double h : {1.5, 2.0, -3.0}) {
    opt.grid_shift = h;
    const AugmentedSignal aug = Augment(x, opt);
    CHECK(aug.D > 0.0);
    CHECK(aug.H < std::abs(h));
    CHECK(aug.H >= opt.H_u);
  }
  opt.grid_shift = 0.9;
  CHECK(CodeOf([&] { Augment(x, opt); }) == ErrorCode::kShiftTooSmall);
}

TEST_CASE("augmented values") {
  const double T = 2.0 * pi;
  const double Tp = 1.2 * T;
  const double T_tilde = 1.5 * T;
  const auto sig = InterpolationGrid::Build(2, 1, T, 0.0, {0, 31});
  AugmentOptions opt;
  opt.T = T;
  opt.T_prime = Tp;
  opt.grid_shift = 2.0;
  opt.D = 0.7;
  const AugmentedSignal zero = Augment(MakeSignal(sig, {}), opt);
  CHECK(EvalAugmented(zero, 0.0) == Complex{0.7});
  const SignalSpec x = RandomSignal(sig, 0, 32, 1.0, 13);
  opt.D.reset();
  const AugmentedSignal aug = Augment(x, opt);
  for (double t = -3.0; t < 25.0; t += 0.61) {
    const Complex diff = EvalSignal(x, t) - EvalAugmented(aug, t);
    CHECK(std::abs(diff + aug.D * std::cos(Tp * t / 2)) < 1e-14);
  }
  // No zeros on the shifted measurement line, with the lower bound of the proof.
  const auto g = InterpolationGrid::Build(2, 1, T_tilde, 2.0, {0, 63});
  const double bound = aug.D * aug.A_u * std::exp(Tp * 2.0 / 2) - aug.M_sup * std::exp(T * 2.0 / 2);
  CHECK(bound > 0.0);
  for (std::int64_t j = g.first_global(); j <= g.last_global(); ++j) {
    CHECK(std::abs(EvalAugmented(aug, g.Point(j))) >= bound);
  }
}

TEST_CASE("measurement") {
  const auto g = Shannon(7);
  const MeasurementFrame f = BuiltinFrameK2();
  const MeasurementSet zero = Measure([](Complex) { return Complex{}; }, g, f);
  CHECK(zero.samples.size() == 8);
  for (const auto& block : zero.samples) {
    CHECK(block.size() == 4);
    for (double c : block) CHECK(c == 0.0);
  }
  CHECK(zero.beta == doctest::Approx(1.0));
  CHECK(zero.frame_id == "builtin-k2");

  // Index 0 sits only in slot 0 of block 0.
  const SignalSpec single = MakeSignal(g, {{0, 1.0}});
  const MeasurementSet m = Measure([&](Complex z) { return EvalSignal(single, z); }, g, f);
  for (int k = 0; k < 4; ++k) {
    CHECK(std::abs(m.block(0)[k] - std::norm(f.vectors[k][0])) < 1e-15);
  }
  for (int k = 0; k < 4; ++k) CHECK(std::abs(m.block(1)[k]) < 1e-28);
  CHECK(CodeOf([&] { m.block(8); }) == ErrorCode::kOutOfRange);

  const SignalSpec x = RandomSignal(g, 0, 9, 1.0, 5);
  const auto fx = [&](Complex z) { return EvalSignal(x, z); };
  const auto rot = [&](Complex z) { return std::polar(1.0, 2.1) * EvalSignal(x, z); };
  const MeasurementSet a = Measure(fx, g, f);
  const MeasurementSet b = Measure(rot, g, f);
  for (std::size_t n = 0; n < a.samples.size(); ++n) {
    for (int k = 0; k < 4; ++k) {
      CHECK(a.samples[n][k] >= 0.0);
      CHECK(std::abs(a.samples[n][k] - b.samples[n][k]) <= 1e-15 * (1 + a.samples[n][k]));
    }
  }
  const MeasurementFrame k3 = [] {
    MeasurementFrame f3 = BuiltinFrameK2();
    f3.K = 3;
    return f3;
  }();
  CHECK(CodeOf([&] { Measure(fx, g, k3); }) == ErrorCode::kDimMismatch);
  CHECK(CodeOf([&] { Measure(fx, g, f, -1.0); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("noise is seeded per block and clamped") {
  const auto g = Shannon(15);
  const MeasurementFrame f = BuiltinFrameK2();
  const SignalSpec x = RandomSignal(g, 0, 16, 1.0, 5);
  const auto fx = [&](Complex z) { return EvalSignal(x, z); };
  const MeasurementSet a = Measure(fx, g, f, 0.1, 42);
  const MeasurementSet b = Measure(fx, g, f, 0.1, 42);
  const MeasurementSet c = Measure(fx, g, f, 0.1, 43);
  CHECK(a.samples == b.samples);
  CHECK(a.samples != c.samples);
  const MeasurementSet zero = Measure([](Complex) { return Complex{}; }, g, f, 1.0, 1);
  int positive = 0;
  for (const auto& block : zero.samples) {
    for (double v : block) {
      CHECK(v >= 0.0);
      positive += v > 0.0;
    }
  }
  CHECK(positive > 0);
  // Block windows that overlap draw identical noise for shared blocks.
  const auto sub = InterpolationGrid::Build(2, 1, 2.0 * pi, 0.0, {4, 15});
  const MeasurementSet d = Measure(fx, sub, f, 0.1, 42);
  CHECK(d.block(7) == a.block(7));
}

TEST_CASE("ground truth agrees at shared points") {
  const auto g = InterpolationGrid::Build(4, 2, 3.0, 0.0, {0, 9});
  const SignalSpec x = RandomSignal(g, 0, 22, 1.0, 6);
  for (std::int64_t n = 1; n <= 9; ++n) {
    const auto prev = g.Block(n - 1);
    const auto cur = g.Block(n);
    for (int i = 0; i < 2; ++i) {
      CHECK(EvalSignal(x, cur[i]) == EvalSignal(x, prev[2 + i]));
    }
  }
}
