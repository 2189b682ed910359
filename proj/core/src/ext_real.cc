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
#include "henig/ext_real.h"

#include "henig/error.h"

namespace henig {

double ExtReal::value() const {
  if (!is_finite()) {
    throw Error(ErrorCode::kInternal, "value() called on an infinite ExtReal");
  }
  return value_;
}

ExtReal operator+(ExtReal lhs, ExtReal rhs) {
  if (lhs.is_finite() && rhs.is_finite()) return ExtReal(lhs.value_ + rhs.value_);
  if ((lhs.is_plus_infinity() && rhs.is_minus_infinity()) ||
      (lhs.is_minus_infinity() && rhs.is_plus_infinity())) {
    throw Error(ErrorCode::kInvalidInput, "+inf + -inf is undefined");
  }
  return lhs.is_finite() ? rhs : lhs;
}

ExtReal operator-(ExtReal value) {
  if (value.is_plus_infinity()) return ExtReal::MinusInfinity();
  if (value.is_minus_infinity()) return ExtReal::PlusInfinity();
  return ExtReal(-value.value_);
}

ExtReal operator*(double alpha, ExtReal value) {
  if (value.is_finite()) return ExtReal(alpha * value.value_);
  return alpha >= 0.0 ? value : -value;
}

std::ostream& operator<<(std::ostream& os, ExtReal value) {
  if (value.is_plus_infinity()) return os << "+inf";
  if (value.is_minus_infinity()) return os << "-inf";
  return os << value.ToDouble();
}

}  // namespace henig
