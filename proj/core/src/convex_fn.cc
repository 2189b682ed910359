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
#include "henig/convex_fn.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "henig/error.h"

namespace henig {

PolyhedralFn::PolyhedralFn(std::vector<AffinePiece> pieces, Polyhedron domain)
    : pieces_(std::move(pieces)), domain_(std::move(domain)) {
  if (pieces_.empty()) {
    throw Error(ErrorCode::kInvalidInput, "polyhedral function has no pieces");
  }
  for (const AffinePiece& p : pieces_) {
    CheckDim(p.slope.size(), domain_.dim(), "piece slope");
    if (!std::isfinite(p.offset)) {
      throw Error(ErrorCode::kInvalidInput, "piece offset must be finite");
    }
  }
}

PolyhedralFn::PolyhedralFn(std::vector<AffinePiece> pieces)
    : PolyhedralFn(pieces, Polyhedron::Whole(
                               pieces.empty()
                                   ? 1
                                   : static_cast<int>(pieces[0].slope.size()))) {}

PolyhedralFn PolyhedralFn::Affine(Vec slope, double offset) {
  return PolyhedralFn({AffinePiece{std::move(slope), offset}});
}

PolyhedralFn PolyhedralFn::Zero(int dim) {
  return PolyhedralFn({AffinePiece{Vec(dim, 0.0), 0.0}});
}

PolyhedralFn PolyhedralFn::Indicator(Polyhedron set) {
  const int n = set.dim();
  return PolyhedralFn({AffinePiece{Vec(n, 0.0), 0.0}}, std::move(set));
}

double PolyhedralFn::MaxPiece(std::span<const double> x) const {
  CheckDim(x.size(), dim(), "point");
  double best = -std::numeric_limits<double>::infinity();
  for (const AffinePiece& p : pieces_) {
    best = std::max(best, Dot(p.slope, x) + p.offset);
  }
  return best;
}

ExtReal PolyhedralFn::operator()(std::span<const double> x) const {
  CheckDim(x.size(), dim(), "point");
  if (!domain_.Contains(x)) return ExtReal::PlusInfinity();
  return MaxPiece(x);
}

std::vector<int> PolyhedralFn::ActivePieces(std::span<const double> x,
                                            double tol) const {
  const double top = MaxPiece(x);
  const double slack = tol * (1.0 + std::fabs(top));
  std::vector<int> active;
  for (int k = 0; k < num_pieces(); ++k) {
    if (Dot(pieces_[k].slope, x) + pieces_[k].offset >= top - slack) {
      active.push_back(k);
    }
  }
  return active;
}

PolyhedralFn PolyhedralFn::ScaledBy(double c) const {
  if (!std::isfinite(c)) {
    throw Error(ErrorCode::kInvalidInput, "scale factor must be finite");
  }
  if (c < 0.0 && !is_affine()) {
    throw Error(ErrorCode::kInvalidInput,
                "negative multiple of a non-affine function is not convex");
  }
  if (c == 0.0) return Zero(dim());
  std::vector<AffinePiece> pieces;
  pieces.reserve(pieces_.size());
  for (const AffinePiece& p : pieces_) {
    pieces.push_back({Scale(c, p.slope), c * p.offset});
  }
  return PolyhedralFn(std::move(pieces), domain_);
}

PolyhedralFn Sum(const PolyhedralFn& lhs, const PolyhedralFn& rhs) {
  CheckDim(rhs.dim(), lhs.dim(), "summand");
  std::vector<AffinePiece> pieces;
  for (const AffinePiece& p : lhs.pieces()) {
    for (const AffinePiece& q : rhs.pieces()) {
      pieces.push_back({Add(p.slope, q.slope), p.offset + q.offset});
    }
  }
  return PolyhedralFn(std::move(pieces), lhs.domain().Intersect(rhs.domain()));
}

std::string_view BuiltinName(BuiltinKind kind) {
  switch (kind) {
    case BuiltinKind::kReluSq:
      return "relu_sq";
    case BuiltinKind::kEuclMinusLast:
      return "eucl_minus_last";
    case BuiltinKind::kNegQuadPlusOne:
      return "neg_quad_plus_one";
    case BuiltinKind::kConstPlusCoord:
      return "const_plus_coord";
  }
  return "unknown";
}

std::optional<BuiltinKind> ParseBuiltinName(std::string_view name) {
  for (BuiltinKind kind :
       {BuiltinKind::kReluSq, BuiltinKind::kEuclMinusLast,
        BuiltinKind::kNegQuadPlusOne, BuiltinKind::kConstPlusCoord}) {
    if (BuiltinName(kind) == name) return kind;
  }
  return std::nullopt;
}

BlackBoxFn BlackBoxFn::Make(BuiltinKind kind, int dim) {
  if (dim < 1) throw Error(ErrorCode::kInvalidInput, "builtin dim < 1");
  BlackBoxFn f;
  f.kind = kind;
  f.dim = dim;
  f.coord = (kind == BuiltinKind::kReluSq) ? 0 : dim - 1;
  return f;
}

double BlackBoxFn::operator()(std::span<const double> x) const {
  CheckDim(x.size(), dim, "point");
  if (coord < 0 || coord >= dim) {
    throw Error(ErrorCode::kInvalidInput, "builtin coordinate out of range");
  }
  switch (kind) {
    case BuiltinKind::kReluSq: {
      const double t = std::max(0.0, x[coord]);
      return t * t;
    }
    case BuiltinKind::kEuclMinusLast:
      return Norm2(x) - x[dim - 1];
    case BuiltinKind::kNegQuadPlusOne:
      return x[coord] * x[coord] + 1.0;
    case BuiltinKind::kConstPlusCoord:
      return constant + coef * x[coord];
  }
  throw Error(ErrorCode::kInternal, "unknown builtin");
}

ConvexFn::ConvexFn(PolyhedralFn f) : rep_(std::move(f)) {}

ConvexFn::ConvexFn(BlackBoxFn f) : rep_(f) {
  if (f.dim < 1 || f.coord < 0 || f.coord >= f.dim) {
    throw Error(ErrorCode::kInvalidInput, "malformed builtin");
  }
}

ConvexFn ConvexFn::Scaled(double c, ConvexFn inner) {
  if (!(c >= 0.0) || !std::isfinite(c)) {
    throw Error(ErrorCode::kInvalidInput, "scaling coefficient must be >= 0");
  }
  ConvexFn out = inner;
  out.rep_ = ScaledRep{c, std::make_shared<const ConvexFn>(std::move(inner))};
  return out;
}

ConvexFn::Kind ConvexFn::kind() const {
  switch (rep_.index()) {
    case 0:
      return Kind::kPolyhedral;
    case 1:
      return Kind::kBlackBox;
    default:
      return Kind::kScaled;
  }
}

int ConvexFn::dim() const {
  if (const auto* p = std::get_if<PolyhedralFn>(&rep_)) return p->dim();
  if (const auto* b = std::get_if<BlackBoxFn>(&rep_)) return b->dim;
  return std::get<ScaledRep>(rep_).inner->dim();
}

ExtReal ConvexFn::operator()(std::span<const double> x) const {
  if (const auto* p = std::get_if<PolyhedralFn>(&rep_)) return (*p)(x);
  if (const auto* b = std::get_if<BlackBoxFn>(&rep_)) return (*b)(x);
  const ScaledRep& s = std::get<ScaledRep>(rep_);
  CheckDim(x.size(), s.inner->dim(), "point");
  if (s.c == 0.0) return 0.0;
  return s.c * (*s.inner)(x);
}

const PolyhedralFn* ConvexFn::polyhedral() const {
  return std::get_if<PolyhedralFn>(&rep_);
}

const BlackBoxFn* ConvexFn::black_box() const {
  return std::get_if<BlackBoxFn>(&rep_);
}

double ConvexFn::scale() const {
  const auto* s = std::get_if<ScaledRep>(&rep_);
  return s != nullptr ? s->c : 1.0;
}

const ConvexFn& ConvexFn::inner() const {
  const auto* s = std::get_if<ScaledRep>(&rep_);
  if (s == nullptr) throw Error(ErrorCode::kInternal, "not a scaled function");
  return *s->inner;
}

bool ConvexFn::IsZeroFunction() const {
  const auto* s = std::get_if<ScaledRep>(&rep_);
  return s != nullptr && (s->c == 0.0 || s->inner->IsZeroFunction());
}

std::optional<PolyhedralFn> ConvexFn::AsPolyhedral() const {
  if (const auto* p = std::get_if<PolyhedralFn>(&rep_)) return *p;
  if (const auto* b = std::get_if<BlackBoxFn>(&rep_)) {
    if (b->kind != BuiltinKind::kConstPlusCoord) return std::nullopt;
    Vec slope(b->dim, 0.0);
    slope[b->coord] = b->coef;
    return PolyhedralFn::Affine(std::move(slope), b->constant);
  }
  const ScaledRep& s = std::get<ScaledRep>(rep_);
  if (s.c == 0.0) return PolyhedralFn::Zero(s.inner->dim());
  std::optional<PolyhedralFn> inner = s.inner->AsPolyhedral();
  if (!inner) return std::nullopt;
  return inner->ScaledBy(s.c);
}

}  // namespace henig
