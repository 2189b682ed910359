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
#ifndef HENIG_CONVEX_FN_H_
#define HENIG_CONVEX_FN_H_

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "henig/ext_real.h"
#include "henig/linear_algebra.h"
#include "henig/polyhedron.h"

namespace henig {

struct AffinePiece {
  Vec slope;
  double offset = 0.0;
};

// f(x) = max_k (<slope_k, x> + offset_k) on 'domain', +inf elsewhere.
// Closed, proper and convex by construction.
class PolyhedralFn {
 public:
  PolyhedralFn(std::vector<AffinePiece> pieces, Polyhedron domain);
  // Full-domain max-of-affine.
  explicit PolyhedralFn(std::vector<AffinePiece> pieces);

  static PolyhedralFn Affine(Vec slope, double offset);
  static PolyhedralFn Zero(int dim);
  static PolyhedralFn Indicator(Polyhedron set);

  int dim() const { return domain_.dim(); }
  const std::vector<AffinePiece>& pieces() const { return pieces_; }
  const Polyhedron& domain() const { return domain_; }
  int num_pieces() const { return static_cast<int>(pieces_.size()); }

  bool has_full_domain() const { return domain_.is_whole_space(); }
  bool is_affine() const { return pieces_.size() == 1 && has_full_domain(); }

  // Max over pieces, ignoring the domain.
  double MaxPiece(std::span<const double> x) const;
  ExtReal operator()(std::span<const double> x) const;

  // Pieces within 'tol' (relative) of the max at x, in index order.
  std::vector<int> ActivePieces(std::span<const double> x,
                                double tol = 1e-9) const;

  // c * f. Requires c >= 0 unless f is affine.
  PolyhedralFn ScaledBy(double c) const;

 private:
  std::vector<AffinePiece> pieces_;
  Polyhedron domain_;
};

// Pointwise sum; pieces are all pairwise sums, domains intersect.
PolyhedralFn Sum(const PolyhedralFn& lhs, const PolyhedralFn& rhs);

enum class BuiltinKind {
  kReluSq,          // (max{0, x_coord})^2
  kEuclMinusLast,   // ||x||_2 - x_last
  kNegQuadPlusOne,  // x_coord^2 + 1
  kConstPlusCoord,  // constant + coef * x_coord
};

std::string_view BuiltinName(BuiltinKind kind);
std::optional<BuiltinKind> ParseBuiltinName(std::string_view name);

// A whitelisted convex function that supports evaluation only.
struct BlackBoxFn {
  BuiltinKind kind = BuiltinKind::kReluSq;
  int dim = 1;
  int coord = 0;  // 0-based coordinate the builtin reads.
  double constant = 0.0;
  double coef = 1.0;

  static BlackBoxFn Make(BuiltinKind kind, int dim);
  double operator()(std::span<const double> x) const;
};

// Proper convex lsc function on R^n: polyhedral, black-box builtin, or a
// non-negative multiple of another ConvexFn. Immutable value type.
//
// Scaled(0, g) is the zero function on all of R^n, whatever g's domain.
class ConvexFn {
 public:
  enum class Kind { kPolyhedral, kBlackBox, kScaled };

  ConvexFn(PolyhedralFn f);  // NOLINT: polyhedral functions convert freely.
  ConvexFn(BlackBoxFn f);    // NOLINT

  static ConvexFn Scaled(double c, ConvexFn inner);

  Kind kind() const;
  int dim() const;

  ExtReal operator()(std::span<const double> x) const;

  const PolyhedralFn* polyhedral() const;
  const BlackBoxFn* black_box() const;
  // For Kind::kScaled.
  double scale() const;
  const ConvexFn& inner() const;

  bool IsZeroFunction() const;

  // Flattens Polyhedral / Scaled(c >= 0, polyhedral) / Scaled(0, anything)
  // to a single PolyhedralFn; nullopt when a black box is reached with a
  // positive coefficient.
  std::optional<PolyhedralFn> AsPolyhedral() const;

 private:
  struct ScaledRep {
    double c;
    std::shared_ptr<const ConvexFn> inner;
  };
  std::variant<PolyhedralFn, BlackBoxFn, ScaledRep> rep_;
};

}  // namespace henig

#endif  // HENIG_CONVEX_FN_H_
