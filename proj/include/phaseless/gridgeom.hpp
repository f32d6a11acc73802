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

#ifndef PHASELESS_GRIDGEOM_HPP_
#define PHASELESS_GRIDGEOM_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "phaseless/sinetype.hpp"

namespace phaseless {

// Inclusive range of block indices [first, last].
struct BlockRange {
  std::int64_t first = 0;
  std::int64_t last = 0;

  std::int64_t size() const { return last - first + 1; }
  bool contains(std::int64_t n) const { return n >= first && n <= last; }
};

// Position of a point inside a block; slot is 0-based.
struct BlockSlot {
  std::int64_t block = 0;
  int slot = 0;

  bool operator==(const BlockSlot&) const = default;
};

// Interpolation sequence made of K-point blocks. Block n holds the points
//   n * beta + (k * delta + i h),  k = 0..K-1,
// with delta = 2 pi / T~ and beta = (K - a) delta, so the first a slots of
// block n coincide with the last a slots of block n - 1. The union of all
// blocks is exactly the zero set of sin(T~ (z - i h) / 2).
//
// Every physical point carries one global index j; its location is
// j * delta + i h.
class InterpolationGrid {
 public:
  static InterpolationGrid Build(int K, int a, double T_tilde, double shift_h,
                                 BlockRange blocks);

  int K() const { return K_; }
  int overlap() const { return a_; }
  double T_tilde() const { return T_tilde_; }
  double shift() const { return shift_h_; }
  double spacing() const { return delta_; }
  double period() const { return static_cast<double>(K_ - a_) * delta_; }
  BlockRange blocks() const { return blocks_; }

  // The sine-type function whose zeros are the grid points.
  SineTypeFn sine_type() const {
    return SineTypeFn::ShiftedSine(T_tilde_, shift_h_);
  }

  // lambda_1..lambda_K of block 0.
  std::vector<Complex> BasePoints() const;
  std::vector<Complex> Block(std::int64_t n) const;
  // Points shared by blocks n and n + 1.
  std::vector<Complex> OverlapPoints(std::int64_t n) const;

  Complex Point(std::int64_t global) const;
  std::int64_t first_global() const;
  std::int64_t last_global() const;
  std::int64_t point_count() const { return last_global() - first_global() + 1; }

  std::int64_t ToGlobal(std::int64_t block, int slot) const;
  std::int64_t ToGlobal(BlockSlot at) const { return ToGlobal(at.block, at.slot); }
  // Canonical owner of a global index: the latest block containing it.
  BlockSlot FromGlobal(std::int64_t global) const;

 private:
  InterpolationGrid() = default;
  void CheckBlock(std::int64_t n) const;

  int K_ = 2;
  int a_ = 1;
  double T_tilde_ = 1.0;
  double shift_h_ = 0.0;
  double delta_ = 1.0;
  BlockRange blocks_;
};

// Total sampling rate relative to Nyquist: K^2 / (K - a) * T~ / T.
double SamplingRateRatio(int K, int a, double T_tilde, double T);

}  // namespace phaseless

#endif  // PHASELESS_GRIDGEOM_HPP_
