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

#include "phaseless/gridgeom.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "phaseless/error.hpp"

namespace phaseless {
namespace {

void CheckOverlap(int K, int a) {
  if (K < 2 || a < 1 || a > K - 1) {
    std::ostringstream os;
    os << "overlap a=" << a << " must lie in [1, K-1] for K=" << K;
    Fail(ErrorCode::kInvalidOverlap, os.str());
  }
}

}  // namespace

InterpolationGrid InterpolationGrid::Build(int K, int a, double T_tilde,
                                           double shift_h, BlockRange blocks) {
  CheckOverlap(K, a);
  if (!(T_tilde > 0.0) || !std::isfinite(T_tilde)) {
    Fail(ErrorCode::kInvalidType, "T~ must be positive");
  }
  if (!std::isfinite(shift_h)) {
    Fail(ErrorCode::kInvalidArgument, "shift h must be finite");
  }
  if (blocks.last < blocks.first) {
    Fail(ErrorCode::kInvalidArgument, "block range is empty");
  }
  InterpolationGrid grid;
  grid.K_ = K;
  grid.a_ = a;
  grid.T_tilde_ = T_tilde;
  grid.shift_h_ = shift_h;
  grid.delta_ = 2.0 * std::numbers::pi / T_tilde;
  grid.blocks_ = blocks;
  return grid;
}

void InterpolationGrid::CheckBlock(std::int64_t n) const {
  if (!blocks_.contains(n)) {
    std::ostringstream os;
    os << "block " << n << " outside [" << blocks_.first << ", "
       << blocks_.last << "]";
    Fail(ErrorCode::kOutOfRange, os.str());
  }
}

std::vector<Complex> InterpolationGrid::BasePoints() const {
  std::vector<Complex> points;
  points.reserve(K_);
  for (int k = 0; k < K_; ++k) points.push_back(Point(k));
  return points;
}

std::vector<Complex> InterpolationGrid::Block(std::int64_t n) const {
  CheckBlock(n);
  std::vector<Complex> points;
  points.reserve(K_);
  for (int k = 0; k < K_; ++k) points.push_back(Point(ToGlobal(n, k)));
  return points;
}

std::vector<Complex> InterpolationGrid::OverlapPoints(std::int64_t n) const {
  CheckBlock(n);
  CheckBlock(n + 1);
  std::vector<Complex> points;
  points.reserve(a_);
  for (int i = 0; i < a_; ++i) points.push_back(Point(ToGlobal(n + 1, i)));
  return points;
}

Complex InterpolationGrid::Point(std::int64_t global) const {
  return {static_cast<double>(global) * delta_, shift_h_};
}

std::int64_t InterpolationGrid::first_global() const {
  return blocks_.first * (K_ - a_);
}

std::int64_t InterpolationGrid::last_global() const {
  return blocks_.last * (K_ - a_) + K_ - 1;
}

std::int64_t InterpolationGrid::ToGlobal(std::int64_t block, int slot) const {
  CheckBlock(block);
  if (slot < 0 || slot >= K_) {
    Fail(ErrorCode::kOutOfRange, "slot outside [0, K)");
  }
  return block * (K_ - a_) + slot;
}

BlockSlot InterpolationGrid::FromGlobal(std::int64_t global) const {
  if (global < first_global() || global > last_global()) {
    std::ostringstream os;
    os << "global index " << global << " outside the grid window";
    Fail(ErrorCode::kOutOfRange, os.str());
  }
  const std::int64_t stride = K_ - a_;
  // Floor division; indices may be negative.
  std::int64_t block = global / stride;
  if (global % stride != 0 && global < 0) --block;
  if (block > blocks_.last) block = blocks_.last;
  return {block, static_cast<int>(global - block * stride)};
}

double SamplingRateRatio(int K, int a, double T_tilde, double T) {
  CheckOverlap(K, a);
  if (!(T > 0.0) || !(T_tilde >= T)) {
    Fail(ErrorCode::kInvalidType, "sampling rate needs T~ >= T > 0");
  }
  return static_cast<double>(K) * K / static_cast<double>(K - a) *
         (T_tilde / T);
}

}  // namespace phaseless
