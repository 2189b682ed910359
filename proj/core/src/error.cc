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
#include "henig/error.h"

namespace henig {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput:
      return "InvalidInput";
    case ErrorCode::kDimensionMismatch:
      return "DimensionMismatch";
    case ErrorCode::kEmptyPolyhedron:
      return "EmptyPolyhedron";
    case ErrorCode::kNumericalFailure:
      return "NumericalFailure";
    case ErrorCode::kConjugateUnsupported:
      return "ConjugateUnsupported";
    case ErrorCode::kPointOutsideDomain:
      return "PointOutsideDomain";
    case ErrorCode::kUnsupportedDomain:
      return "UnsupportedDomain";
    case ErrorCode::kBRSearchFailed:
      return "BRSearchFailed";
    case ErrorCode::kGeneratorFormRequired:
      return "GeneratorFormRequired";
    case ErrorCode::kInequalityFormRequired:
      return "InequalityFormRequired";
    case ErrorCode::kDenominatorNearZero:
      return "DenominatorNearZero";
    case ErrorCode::kHorizonTooShort:
      return "HorizonTooShort";
    case ErrorCode::kUnsupportedData:
      return "UnsupportedData";
    case ErrorCode::kSchema:
      return "SchemaError";
    case ErrorCode::kInternal:
      return "InternalError";
  }
  return "UnknownError";
}

}  // namespace henig
