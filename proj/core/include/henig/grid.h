// Copyright 2026 The Henig Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef HENIG_GRID_H_
#define HENIG_GRID_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "henig/linear_algebra.h"

namespace henig {

struct GridAxis {
  double lo = 0.0;
  double hi = 1.0;
  int count = 2;
};

// Finite tensor lattice. Points are enumerated lexicographically with the
// first axis varying slowest; endpoints are hit exactly.
class GridSpec {
 public:
  explicit GridSpec(std::vector<GridAxis> axes);

  static GridSpec Uniform(int dim, double lo, double hi, int count);
  // "201x201:[0,10]x[0,1]".
  static GridSpec Parse(std::string_view text);

  int dim() const { return static_cast<int>(axes_.size()); }
  const std::vector<GridAxis>& axes() const { return axes_; }
  std::size_t size() const;

  double Coordinate(int axis, int k) const;
  Vec Point(std::size_t index) const;
  // Largest spacing over the axes.
  double MaxStep() const;

  std::string ToString() const;

 private:
  std::vector<GridAxis> axes_;
};

}  // namespace henig

#endif  // HENIG_GRID_H_
