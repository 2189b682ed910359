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
#include "henig/linear_algebra.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "henig/error.h"

namespace henig {

void CheckDim(std::size_t actual, std::size_t expected, const char* what) {
  if (actual != expected) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + ": expected dimension " +
                    std::to_string(expected) + ", got " +
                    std::to_string(actual));
  }
}

double Dot(std::span<const double> a, std::span<const double> b) {
  CheckDim(b.size(), a.size(), "dot product");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

double NormInf(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

double Norm1(std::span<const double> a) {
  double s = 0.0;
  for (double v : a) s += std::abs(v);
  return s;
}

double Norm2(std::span<const double> a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return std::sqrt(s);
}

double DistanceInf(std::span<const double> a, std::span<const double> b) {
  return NormInf(Subtract(a, b));
}

double Distance2(std::span<const double> a, std::span<const double> b) {
  return Norm2(Subtract(a, b));
}

Vec Add(std::span<const double> a, std::span<const double> b) {
  CheckDim(b.size(), a.size(), "vector sum");
  Vec out(a.begin(), a.end());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

Vec Subtract(std::span<const double> a, std::span<const double> b) {
  CheckDim(b.size(), a.size(), "vector difference");
  Vec out(a.begin(), a.end());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
  return out;
}

Vec Scale(double alpha, std::span<const double> a) {
  Vec out(a.begin(), a.end());
  for (double& v : out) v *= alpha;
  return out;
}

Vec Negate(std::span<const double> a) { return Scale(-1.0, a); }

void Axpy(double alpha, std::span<const double> x, std::span<double> y) {
  CheckDim(y.size(), x.size(), "axpy");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

Vec MatVec(const Mat& m, std::span<const double> x) {
  Vec out;
  out.reserve(m.size());
  for (const Vec& row : m) out.push_back(Dot(row, x));
  return out;
}

}  // namespace henig
