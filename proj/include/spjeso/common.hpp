// Copyright 2026 The spjeso Authors
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

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace spjeso {

/// Wall-clock length of one slot. Delay formulas are evaluated in plain
/// seconds; the slot length only documents the quasi-static granularity.
inline constexpr double kSecondsPerSlot = 5.0;

/// Data volumes are configured in megabytes but divided by bit rates.
inline constexpr double kBitsPerMegabyte = 8.0e6;
inline constexpr double kBitsPerMegabit = 1.0e6;

/// Noise density in dBm/Hz to total noise power in watts over a bandwidth.
inline double noisePowerWatts(double dbmPerHz, double bandwidthHz) {
  return std::pow(10.0, (dbmPerHz - 30.0) / 10.0) * bandwidthHz;
}

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Vec2&) const = default;
};

inline double distance(const Vec2& a, const Vec2& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

/// Dense row-major matrix just big enough for decision/state grids.
template <typename T>
class Grid {
 public:
  Grid() = default;
  Grid(int rows, int cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  T& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  const T& operator()(int r, int c) const {
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }

  const std::vector<T>& data() const { return data_; }
  void fill(T value) { data_.assign(data_.size(), value); }

  bool operator==(const Grid&) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

/// Floating-point text with 9 significant digits, the precision used by
/// every CSV emitted by the harness.
inline std::string formatG9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

/// Full-precision text used by theorem records (round-trips exactly).
inline std::string formatG17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// Raised when a requested enumeration would exceed its configured ceiling.
class SearchSpaceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace spjeso
