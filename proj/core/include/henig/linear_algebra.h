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

#ifndef HENIG_LINEAR_ALGEBRA_H_
#define HENIG_LINEAR_ALGEBRA_H_

#include <span>
#include <vector>

namespace henig {

using Vec = std::vector<double>;
// Row-major dense matrix: one Vec per row.
using Mat = std::vector<Vec>;

double Dot(std::span<const double> a, std::span<const double> b);
double NormInf(std::span<const double> a);
double Norm1(std::span<const double> a);
double Norm2(std::span<const double> a);
double DistanceInf(std::span<const double> a, std::span<const double> b);
double Distance2(std::span<const double> a, std::span<const double> b);

Vec Add(std::span<const double> a, std::span<const double> b);
Vec Subtract(std::span<const double> a, std::span<const double> b);
Vec Scale(double alpha, std::span<const double> a);
Vec Negate(std::span<const double> a);
// y += alpha * x.
void Axpy(double alpha, std::span<const double> x, std::span<double> y);
Vec MatVec(const Mat& m, std::span<const double> x);

// Throws kDimensionMismatch when the sizes differ; 'what' names the operand.
void CheckDim(std::size_t actual, std::size_t expected, const char* what);

}  // namespace henig

#endif  // HENIG_LINEAR_ALGEBRA_H_
