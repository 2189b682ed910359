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

#ifndef HENIG_EXT_REAL_H_
#define HENIG_EXT_REAL_H_

#include <compare>
#include <limits>
#include <ostream>

namespace henig {

// A value in R u {+inf, -inf}. Infinities are explicit states, never large
// finite doubles.
class ExtReal {
 public:
  enum class Kind { kFinite, kPlusInfinity, kMinusInfinity };

  constexpr ExtReal() = default;
  // Implicit: doubles convert freely; IEEE infinities map to the infinite
  // elements.
  constexpr ExtReal(double value)  // NOLINT
      : kind_(value == std::numeric_limits<double>::infinity()
                  ? Kind::kPlusInfinity
                  : value == -std::numeric_limits<double>::infinity()
                        ? Kind::kMinusInfinity
                        : Kind::kFinite),
        value_(kind_ == Kind::kFinite ? value : 0.0) {}

  static constexpr ExtReal PlusInfinity() {
    return ExtReal(Kind::kPlusInfinity);
  }
  static constexpr ExtReal MinusInfinity() {
    return ExtReal(Kind::kMinusInfinity);
  }

  constexpr Kind kind() const { return kind_; }
  constexpr bool is_finite() const { return kind_ == Kind::kFinite; }
  constexpr bool is_plus_infinity() const {
    return kind_ == Kind::kPlusInfinity;
  }
  constexpr bool is_minus_infinity() const {
    return kind_ == Kind::kMinusInfinity;
  }

  // Finite value. Calling this on an infinity throws.
  double value() const;

  // IEEE representation, for reporting only.
  constexpr double ToDouble() const {
    switch (kind_) {
      case Kind::kPlusInfinity:
        return std::numeric_limits<double>::infinity();
      case Kind::kMinusInfinity:
        return -std::numeric_limits<double>::infinity();
      case Kind::kFinite:
        break;
    }
    return value_;
  }

  // z + (+inf) = +inf. Mixing +inf and -inf throws.
  friend ExtReal operator+(ExtReal lhs, ExtReal rhs);
  friend ExtReal operator-(ExtReal lhs, double rhs) { return lhs + (-rhs); }
  friend ExtReal operator-(ExtReal value);
  // alpha * (+inf) = +inf for every alpha >= 0 (including 0); negative
  // alpha flips the sign of an infinity.
  friend ExtReal operator*(double alpha, ExtReal value);

  friend std::partial_ordering operator<=>(ExtReal lhs, ExtReal rhs) {
    return lhs.ToDouble() <=> rhs.ToDouble();
  }
  friend bool operator==(ExtReal lhs, ExtReal rhs) {
    return lhs.ToDouble() == rhs.ToDouble();
  }

 private:
  explicit constexpr ExtReal(Kind kind) : kind_(kind) {}

  Kind kind_ = Kind::kFinite;
  double value_ = 0.0;
};

std::ostream& operator<<(std::ostream& os, ExtReal value);

}  // namespace henig

#endif  // HENIG_EXT_REAL_H_
