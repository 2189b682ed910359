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
#include "henig/grid.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>
#include <utility>

#include "henig/error.h"

namespace henig {
namespace {

std::vector<std::string> SplitOutsideBrackets(std::string_view text,
                                              char sep) {
  std::vector<std::string> parts(1);
  int depth = 0;
  for (char ch : text) {
    if (ch == '[') ++depth;
    if (ch == ']') --depth;
    if (ch == sep && depth == 0) {
      parts.emplace_back();
    } else {
      parts.back().push_back(ch);
    }
  }
  return parts;
}

double ParseNumber(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::kInvalidInput, "bad grid number '" + s + "'");
  }
  return v;
}

}  // namespace

GridSpec::GridSpec(std::vector<GridAxis> axes) : axes_(std::move(axes)) {
  if (axes_.empty()) throw Error(ErrorCode::kInvalidInput, "grid has no axes");
  for (const GridAxis& a : axes_) {
    if (a.count < 2) throw Error(ErrorCode::kInvalidInput, "grid count < 2");
    if (!(a.lo < a.hi)) {
      throw Error(ErrorCode::kInvalidInput, "grid interval needs lo < hi");
    }
  }
}

GridSpec GridSpec::Uniform(int dim, double lo, double hi, int count) {
  return GridSpec(std::vector<GridAxis>(dim, GridAxis{lo, hi, count}));
}

GridSpec GridSpec::Parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw Error(ErrorCode::kInvalidInput,
                "grid must look like 201x201:[0,10]x[0,1]");
  }
  const auto counts = SplitOutsideBrackets(text.substr(0, colon), 'x');
  const auto boxes = SplitOutsideBrackets(text.substr(colon + 1), 'x');
  if (counts.size() != boxes.size()) {
    throw Error(ErrorCode::kInvalidInput, "grid counts and intervals differ");
  }
  std::vector<GridAxis> axes;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const std::string& box = boxes[i];
    const auto comma = box.find(',');
    if (box.size() < 5 || box.front() != '[' || box.back() != ']' ||
        comma == std::string::npos) {
      throw Error(ErrorCode::kInvalidInput, "bad grid interval '" + box + "'");
    }
    GridAxis axis;
    axis.lo = ParseNumber(box.substr(1, comma - 1));
    axis.hi = ParseNumber(box.substr(comma + 1, box.size() - comma - 2));
    const double count = ParseNumber(counts[i]);
    if (count != std::floor(count) || count > 1e7) {
      throw Error(ErrorCode::kInvalidInput, "bad grid count");
    }
    axis.count = static_cast<int>(count);
    axes.push_back(axis);
  }
  return GridSpec(std::move(axes));
}

std::size_t GridSpec::size() const {
  std::size_t total = 1;
  for (const GridAxis& a : axes_) total *= static_cast<std::size_t>(a.count);
  return total;
}

double GridSpec::Coordinate(int axis, int k) const {
  const GridAxis& a = axes_[axis];
  if (k == a.count - 1) return a.hi;
  return a.lo + (a.hi - a.lo) * static_cast<double>(k) / (a.count - 1);
}

Vec GridSpec::Point(std::size_t index) const {
  Vec x(axes_.size());
  for (int axis = dim() - 1; axis >= 0; --axis) {
    const auto count = static_cast<std::size_t>(axes_[axis].count);
    x[axis] = Coordinate(axis, static_cast<int>(index % count));
    index /= count;
  }
  return x;
}

double GridSpec::MaxStep() const {
  double step = 0.0;
  for (const GridAxis& a : axes_) {
    step = std::max(step, (a.hi - a.lo) / (a.count - 1));
  }
  return step;
}

std::string GridSpec::ToString() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    if (i > 0) out << 'x';
    out << axes_[i].count;
  }
  out << ':';
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    if (i > 0) out << 'x';
    out << '[' << axes_[i].lo << ',' << axes_[i].hi << ']';
  }
  return out.str();
}

}  // namespace henig
