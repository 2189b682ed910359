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
#include "henig/io.h"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <utility>

#include "henig/error.h"

namespace henig {
namespace {

[[noreturn]] void SchemaError(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::kSchema, path + ": " + msg);
}

const Json& Field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) SchemaError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) SchemaError(path, std::string("missing field '") + key + "'");
  return *it;
}

double ParseDouble(std::string_view text, const std::string& path) {
  std::string s(text);
  if (s == "Infinity" || s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-Infinity" || s == "-inf") return -std::numeric_limits<double>::infinity();
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    SchemaError(path, "not a number: '" + s + "'");
  }
  return v;
}

double AsNumber(const Json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "Infinity" || s == "-Infinity") return ParseDouble(s, path);
  }
  SchemaError(path, "expected a number");
}

int AsInt(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) SchemaError(path, "expected an integer");
  return j.get<int>();
}

Vec AsVec(const Json& j, const std::string& path) {
  if (!j.is_array()) SchemaError(path, "expected an array");
  Vec v;
  for (std::size_t i = 0; i < j.size(); ++i) {
    v.push_back(AsNumber(j[i], path + "/" + std::to_string(i)));
  }
  return v;
}

Mat AsMat(const Json& j, const std::string& path, int cols) {
  if (!j.is_array()) SchemaError(path, "expected an array of rows");
  Mat m;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "/" + std::to_string(i);
    m.push_back(AsVec(j[i], p));
    if (cols >= 0 && static_cast<int>(m.back().size()) != cols) {
      SchemaError(p, "row has " + std::to_string(m.back().size()) +
                         " entries, expected " + std::to_string(cols));
    }
  }
  return m;
}

Json VecToJson(std::span<const double> v) {
  Json a = Json::array();
  for (double x : v) a.push_back(NumberToJson(x));
  return a;
}

Json MatToJson(const Mat& m) {
  Json a = Json::array();
  for (const Vec& row : m) a.push_back(VecToJson(row));
  return a;
}

// Certificate entry fields: a number or a closed-form term string.
double SequenceValue(const Json& j, int n, const std::string& path) {
  if (j.is_string()) {
    try {
      return ParseSequenceTerm(j.get<std::string>())(n);
    } catch (const Error& e) {
      SchemaError(path, e.what());
    }
  }
  return AsNumber(j, path);
}

class EntryReader {
 public:
  EntryReader(const Json* entry, const Json* closed_form, int n,
              std::string path)
      : entry_(entry), closed_form_(closed_form), n_(n),
        path_(std::move(path)) {}

  double Scalar(const char* key) const {
    auto [j, p] = Lookup(key);
    return SequenceValue(*j, n_, p);
  }

  Vec Vector(const char* key, int len) const {
    auto [j, p] = Lookup(key);
    return VectorFrom(*j, p, len);
  }

  std::vector<Vec> Blocks(const char* key, int count, int len) const {
    auto [j, p] = Lookup(key);
    if (!j->is_array() || static_cast<int>(j->size()) != count) {
      SchemaError(p, "expected " + std::to_string(count) + " vectors");
    }
    std::vector<Vec> out;
    for (int i = 0; i < count; ++i) {
      out.push_back(VectorFrom((*j)[i], p + "/" + std::to_string(i), len));
    }
    return out;
  }

 private:
  std::pair<const Json*, std::string> Lookup(const char* key) const {
    if (entry_ != nullptr && entry_->contains(key)) {
      return {&(*entry_)[key], path_ + "/" + key};
    }
    if (closed_form_ != nullptr && closed_form_->contains(key)) {
      return {&(*closed_form_)[key], std::string("closed_form/") + key};
    }
    SchemaError(path_, std::string("missing field '") + key + "'");
  }

  Vec VectorFrom(const Json& j, const std::string& p, int len) const {
    if (!j.is_array() || static_cast<int>(j.size()) != len) {
      SchemaError(p, "expected an array of length " + std::to_string(len));
    }
    Vec v;
    for (int i = 0; i < len; ++i) {
      v.push_back(SequenceValue(j[i], n_, p + "/" + std::to_string(i)));
    }
    return v;
  }

  const Json* entry_;
  const Json* closed_form_;
  int n_;
  std::string path_;
};

Json BlocksToJson(const std::vector<Vec>& blocks) {
  Json a = Json::array();
  for (const Vec& v : blocks) a.push_back(VecToJson(v));
  return a;
}

}  // namespace

Json LoadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) SchemaError(path.string(), "cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    SchemaError(path.string(), e.what());
  }
}

std::string DumpJson(const Json& doc) { return doc.dump(2) + "\n"; }

void WriteJsonFile(const std::filesystem::path& path, const Json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kInvalidInput, "cannot write " + path.string());
  out << DumpJson(doc);
}

Json NumberToJson(double v) {
  if (std::isnan(v)) return "NaN";
  if (std::isinf(v)) return v > 0 ? "Infinity" : "-Infinity";
  return v;
}

Polyhedron ParsePolyhedron(const Json& j, int dim, const std::string& path) {
  if (!j.is_object()) SchemaError(path, "expected an object");
  if (j.contains("lower") || j.contains("upper")) {
    // Box form; null leaves a side open.
    auto bound = [&](const char* key, double open) {
      std::vector<ExtReal> out(dim, ExtReal(open));
      if (!j.contains(key)) return out;
      const Json& a = j[key];
      if (!a.is_array() || static_cast<int>(a.size()) != dim) {
        SchemaError(path + "/" + key, "expected " + std::to_string(dim) + " bounds");
      }
      for (int i = 0; i < dim; ++i) {
        if (!a[i].is_null()) {
          out[i] = ExtReal(AsNumber(a[i], path + "/" + key));
        }
      }
      return out;
    };
    const double inf = std::numeric_limits<double>::infinity();
    return Polyhedron::Box(bound("lower", -inf), bound("upper", inf));
  }
  Mat a = j.contains("A") ? AsMat(j["A"], path + "/A", dim) : Mat{};
  Vec b = j.contains("b") ? AsVec(j["b"], path + "/b") : Vec{};
  Mat e = j.contains("E") ? AsMat(j["E"], path + "/E", dim) : Mat{};
  Vec d = j.contains("d") ? AsVec(j["d"], path + "/d") : Vec{};
  if (a.size() != b.size()) SchemaError(path, "A and b differ in length");
  if (e.size() != d.size()) SchemaError(path, "E and d differ in length");
  return Polyhedron(dim, std::move(a), std::move(b), std::move(e), std::move(d));
}

Json PolyhedronToJson(const Polyhedron& p) {
  Json j = Json::object();
  j["A"] = MatToJson(p.ineq_lhs());
  j["b"] = VecToJson(p.ineq_rhs());
  if (p.num_equalities() > 0) {
    j["E"] = MatToJson(p.eq_lhs());
    j["d"] = VecToJson(p.eq_rhs());
  }
  return j;
}

ConvexFn ParseFunction(const Json& j, int dim, const std::string& path) {
  const std::string type = Field(j, "type", path).is_string()
                               ? j["type"].get<std::string>()
                               : std::string();
  if (type == "max_affine") {
    const Json& pieces = Field(j, "pieces", path);
    if (!pieces.is_array() || pieces.empty()) {
      SchemaError(path + "/pieces", "expected a non-empty array");
    }
    std::vector<AffinePiece> out;
    for (std::size_t k = 0; k < pieces.size(); ++k) {
      const std::string p = path + "/pieces/" + std::to_string(k);
      Vec a = AsVec(Field(pieces[k], "a", p), p + "/a");
      if (static_cast<int>(a.size()) != dim) {
        SchemaError(p + "/a", "slope has dimension " + std::to_string(a.size()) +
                                  ", expected " + std::to_string(dim));
      }
      out.push_back({std::move(a), AsNumber(Field(pieces[k], "b", p), p + "/b")});
    }
    if (j.contains("domain")) {
      return PolyhedralFn(std::move(out),
                          ParsePolyhedron(j["domain"], dim, path + "/domain"));
    }
    return PolyhedralFn(std::move(out));
  }
  if (type == "builtin") {
    const Json& name = Field(j, "name", path);
    const auto kind = name.is_string() ? ParseBuiltinName(name.get<std::string>())
                                       : std::nullopt;
    if (!kind) SchemaError(path + "/name", "unknown builtin");
    const int fdim = AsInt(Field(j, "dim", path), path + "/dim");
    if (fdim != dim) {
      SchemaError(path + "/dim", "builtin has dimension " + std::to_string(fdim) +
                                     ", expected " + std::to_string(dim));
    }
    BlackBoxFn f = BlackBoxFn::Make(*kind, dim);
    if (j.contains("coord")) f.coord = AsInt(j["coord"], path + "/coord");
    if (f.coord < 0 || f.coord >= dim) SchemaError(path + "/coord", "out of range");
    if (j.contains("constant")) f.constant = AsNumber(j["constant"], path + "/constant");
    if (j.contains("coef")) f.coef = AsNumber(j["coef"], path + "/coef");
    return f;
  }
  if (type == "scaled") {
    const double c = AsNumber(Field(j, "c", path), path + "/c");
    if (!(c >= 0.0) || !std::isfinite(c)) {
      SchemaError(path + "/c", "scale must be finite and >= 0");
    }
    return ConvexFn::Scaled(c, ParseFunction(Field(j, "inner", path), dim,
                                             path + "/inner"));
  }
  SchemaError(path + "/type", "expected max_affine, builtin or scaled");
}

Json FunctionToJson(const ConvexFn& f) {
  switch (f.kind()) {
    case ConvexFn::Kind::kPolyhedral: {
      const PolyhedralFn& p = *f.polyhedral();
      Json pieces = Json::array();
      for (const AffinePiece& piece : p.pieces()) {
        pieces.push_back({{"a", VecToJson(piece.slope)},
                          {"b", NumberToJson(piece.offset)}});
      }
      Json j = {{"type", "max_affine"}, {"pieces", pieces}};
      if (!p.has_full_domain()) j["domain"] = PolyhedronToJson(p.domain());
      return j;
    }
    case ConvexFn::Kind::kBlackBox: {
      const BlackBoxFn& b = *f.black_box();
      return {{"type", "builtin"},
              {"name", std::string(BuiltinName(b.kind))},
              {"dim", b.dim},
              {"coord", b.coord},
              {"constant", NumberToJson(b.constant)},
              {"coef", NumberToJson(b.coef)}};
    }
    case ConvexFn::Kind::kScaled:
      return {{"type", "scaled"},
              {"c", NumberToJson(f.scale())},
              {"inner", FunctionToJson(f.inner())}};
  }
  throw Error(ErrorCode::kInternal, "unknown function kind");
}

PolyhedralCone ParseCone(const Json& j, const std::string& path) {
  const Json& type = Field(j, "type", path);
  const std::string t = type.is_string() ? type.get<std::string>() : "";
  if (t == "nonneg_orthant") {
    const int p = AsInt(Field(j, "dim", path), path + "/dim");
    if (p < 1) SchemaError(path + "/dim", "must be >= 1");
    return PolyhedralCone::NonnegOrthant(p);
  }
  if (t == "generators") {
    Mat g = AsMat(Field(j, "vectors", path), path + "/vectors", -1);
    if (g.empty()) SchemaError(path + "/vectors", "need at least one generator");
    for (const Vec& v : g) {
      if (v.size() != g.front().size()) SchemaError(path + "/vectors", "ragged");
    }
    return PolyhedralCone::FromGenerators(std::move(g));
  }
  if (t == "inequalities") {
    Mat h = AsMat(Field(j, "rows", path), path + "/rows", -1);
    if (h.empty()) SchemaError(path + "/rows", "need at least one row");
    for (const Vec& v : h) {
      if (v.size() != h.front().size()) SchemaError(path + "/rows", "ragged");
    }
    return PolyhedralCone::FromInequalities(std::move(h));
  }
  SchemaError(path + "/type", "expected nonneg_orthant, generators or inequalities");
}

Json ConeToJson(const PolyhedralCone& cone) {
  if (cone.is_orthant()) return {{"type", "nonneg_orthant"}, {"dim", cone.dim()}};
  if (cone.has_generators()) {
    return {{"type", "generators"}, {"vectors", MatToJson(cone.generators())}};
  }
  return {{"type", "inequalities"}, {"rows", MatToJson(cone.inequalities())}};
}

ProblemFile ParseProblem(const Json& j) {
  try {
    const int n = AsInt(Field(j, "n", ""), "n");
    if (n < 1) SchemaError("n", "must be >= 1");
    const Json& objs = Field(j, "objectives", "");
    if (!objs.is_array()) SchemaError("objectives", "expected an array");
    std::vector<Objective> objectives;
    for (std::size_t i = 0; i < objs.size(); ++i) {
      const std::string p = "objectives/" + std::to_string(i);
      objectives.push_back({ParseFunction(Field(objs[i], "f", p), n, p + "/f"),
                            ParseFunction(Field(objs[i], "neg_g", p), n,
                                          p + "/neg_g")});
    }
    const Json& hj = Field(j, "h", "");
    if (!hj.is_array()) SchemaError("h", "expected an array");
    std::vector<ConvexFn> h;
    for (std::size_t k = 0; k < hj.size(); ++k) {
      h.push_back(ParseFunction(hj[k], n, "h/" + std::to_string(k)));
    }
    PolyhedralCone cone = ParseCone(Field(j, "cone", ""));
    if (cone.dim() != static_cast<int>(h.size())) {
      SchemaError("cone", "dimension " + std::to_string(cone.dim()) +
                              " does not match " + std::to_string(h.size()) +
                              " constraint components");
    }
    Polyhedron c = j.contains("C") ? ParsePolyhedron(j["C"], n)
                                   : Polyhedron::Whole(n);
    ProblemFile file{
        j.value("name", std::string()), j.value("description", std::string()),
        FractionalProblem(n, std::move(objectives), std::move(h),
                          std::move(cone), std::move(c))};
    return file;
  } catch (const Json::exception& e) {
    SchemaError("problem", e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kSchema) throw;
    SchemaError("problem", e.what());
  }
}

Json ProblemToJson(const ProblemFile& file) {
  const FractionalProblem& p = file.problem;
  Json objs = Json::array();
  for (const Objective& o : p.objectives()) {
    objs.push_back({{"f", FunctionToJson(o.f)}, {"neg_g", FunctionToJson(o.neg_g)}});
  }
  Json h = Json::array();
  for (const ConvexFn& f : p.h()) h.push_back(FunctionToJson(f));
  Json j = Json::object();
  if (!file.name.empty()) j["name"] = file.name;
  if (!file.description.empty()) j["description"] = file.description;
  j["n"] = p.n();
  j["objectives"] = objs;
  j["h"] = h;
  j["cone"] = ConeToJson(p.cone());
  j["C"] = PolyhedronToJson(p.constraint_set());
  return j;
}

ProblemFile LoadProblem(const std::filesystem::path& path) {
  return ParseProblem(LoadJsonFile(path));
}

double SequenceTerm::operator()(int n) const {
  const double dn = static_cast<double>(n);
  switch (power) {
    case 0:
      return coef;
    case 1:
      return coef / dn;
    default:
      return coef / (dn * dn);
  }
}

SequenceTerm ParseSequenceTerm(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (ch != ' ') s.push_back(ch);
  }
  SequenceTerm term;
  std::string head = s;
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    head = s.substr(0, slash);
    const std::string tail = s.substr(slash + 1);
    if (tail == "n") {
      term.power = 1;
    } else if (tail == "n^2") {
      term.power = 2;
    } else {
      throw Error(ErrorCode::kSchema, "closed form '" + std::string(text) +
                                          "': denominator must be n or n^2");
    }
  }
  char* end = nullptr;
  term.coef = std::strtod(head.c_str(), &end);
  if (head.empty() || end != head.c_str() + head.size() ||
      !std::isfinite(term.coef)) {
    throw Error(ErrorCode::kSchema, "closed form '" + std::string(text) +
                                        "': expected c, c/n or c/n^2");
  }
  return term;
}

std::string SequenceTermToString(const SequenceTerm& term) {
  std::string c = Json(term.coef).dump();
  if (term.power == 1) return c + "/n";
  if (term.power == 2) return c + "/n^2";
  return c;
}

CertificateKind KindOf(const AnyCertificate& cert) {
  switch (cert.index()) {
    case 0:
      return CertificateKind::kEpigraph;
    case 1:
      return CertificateKind::kEpsilon;
    default:
      return CertificateKind::kExact;
  }
}

int Horizon(const AnyCertificate& cert) {
  return std::visit(
      [](const auto& c) { return static_cast<int>(c.entries.size()); }, cert);
}

AnyCertificate ParseCertificate(const Json& j) {
  try {
    const Json& tag = Field(j, "theorem", "");
    if (!tag.is_string()) SchemaError("theorem", "expected a string");
    CertificateKind kind;
    try {
      kind = ParseCertificateTag(tag.get<std::string>());
    } catch (const Error& e) {
      SchemaError("theorem", e.what());
    }
    const Vec lambda = AsVec(Field(j, "lambda", ""), "lambda");
    const int m = static_cast<int>(lambda.size());
    if (m < 1) SchemaError("lambda", "empty");

    const Json* closed = j.contains("closed_form") ? &j["closed_form"] : nullptr;
    if (closed != nullptr && !closed->is_object()) {
      SchemaError("closed_form", "expected an object");
    }
    const Json empty_entries = Json::array();
    const Json& entries = j.contains("entries") ? j["entries"] : empty_entries;
    if (!entries.is_array()) SchemaError("entries", "expected an array");
    int horizon = static_cast<int>(entries.size());
    if (j.contains("N")) {
      horizon = AsInt(j["N"], "N");
      if (horizon < static_cast<int>(entries.size())) {
        SchemaError("N", "smaller than the number of explicit entries");
      }
      if (horizon > static_cast<int>(entries.size()) && closed == nullptr) {
        SchemaError("N", "exceeds the explicit entries and there is no closed_form");
      }
    }
    if (horizon < 0) SchemaError("N", "negative");

    // Vector lengths come from the first entry or the closed form.
    auto infer_len = [&](const char* key, bool nested) -> int {
      const Json* src = nullptr;
      if (!entries.empty() && entries[0].contains(key)) {
        src = &entries[0][key];
      } else if (closed != nullptr && closed->contains(key)) {
        src = &(*closed)[key];
      }
      if (src == nullptr || !src->is_array()) return 0;
      if (nested) {
        return src->empty() || !(*src)[0].is_array()
                   ? 0
                   : static_cast<int>((*src)[0].size());
      }
      return static_cast<int>(src->size());
    };
    const int n_dim = infer_len("xstar", true);
    const int p = infer_len("ystar", false);

    auto reader = [&](int k) {
      const Json* e = k < static_cast<int>(entries.size()) ? &entries[k] : nullptr;
      if (e != nullptr && !e->is_object()) {
        SchemaError("entries/" + std::to_string(k), "expected an object");
      }
      return EntryReader(e, closed, k + 1, "entries/" + std::to_string(k));
    };

    switch (kind) {
      case CertificateKind::kEpigraph: {
        EpiCertificate c{lambda, {}};
        for (int k = 0; k < horizon; ++k) {
          const EntryReader r = reader(k);
          EpiEntry e;
          e.xstar = r.Blocks("xstar", m, n_dim);
          e.a = r.Vector("a", m);
          e.wstar = r.Blocks("wstar", m, n_dim);
          e.b = r.Vector("b", m);
          e.cstar = r.Vector("cstar", n_dim);
          e.d = r.Scalar("d");
          e.ystar = r.Vector("ystar", p);
          e.s = r.Scalar("s");
          e.vstar = r.Vector("vstar", p);
          e.ustar = r.Vector("ustar", n_dim);
          e.t = r.Scalar("t");
          c.entries.push_back(std::move(e));
        }
        return c;
      }
      case CertificateKind::kEpsilon: {
        EpsCertificate c{lambda, {}};
        for (int k = 0; k < horizon; ++k) {
          const EntryReader r = reader(k);
          EpsEntry e;
          e.gamma = r.Scalar("gamma");
          e.xstar = r.Blocks("xstar", m, n_dim);
          e.wstar = r.Blocks("wstar", m, n_dim);
          e.cstar = r.Vector("cstar", n_dim);
          e.ystar = r.Vector("ystar", p);
          e.vstar = r.Vector("vstar", p);
          e.ustar = r.Vector("ustar", n_dim);
          c.entries.push_back(std::move(e));
        }
        return c;
      }
      case CertificateKind::kExact: {
        ExactCertificate c{lambda, {}};
        for (int k = 0; k < horizon; ++k) {
          const EntryReader r = reader(k);
          ExactEntry e;
          e.x = r.Blocks("x", m, n_dim);
          e.xstar = r.Blocks("xstar", m, n_dim);
          e.w = r.Blocks("w", m, n_dim);
          e.wstar = r.Blocks("wstar", m, n_dim);
          e.c = r.Vector("c", n_dim);
          e.cstar = r.Vector("cstar", n_dim);
          e.y = r.Vector("y", p);
          e.ystar = r.Vector("ystar", p);
          e.vstar = r.Vector("vstar", p);
          e.u = r.Vector("u", n_dim);
          e.ustar = r.Vector("ustar", n_dim);
          c.entries.push_back(std::move(e));
        }
        return c;
      }
    }
    throw Error(ErrorCode::kInternal, "unknown certificate kind");
  } catch (const Json::exception& e) {
    SchemaError("certificate", e.what());
  }
}

Json CertificateToJson(const AnyCertificate& cert) {
  Json entries = Json::array();
  Vec lambda;
  if (const auto* c = std::get_if<EpiCertificate>(&cert)) {
    lambda = c->lambda;
    for (const EpiEntry& e : c->entries) {
      entries.push_back({{"xstar", BlocksToJson(e.xstar)},
                         {"a", VecToJson(e.a)},
                         {"wstar", BlocksToJson(e.wstar)},
                         {"b", VecToJson(e.b)},
                         {"cstar", VecToJson(e.cstar)},
                         {"d", NumberToJson(e.d)},
                         {"ystar", VecToJson(e.ystar)},
                         {"s", NumberToJson(e.s)},
                         {"vstar", VecToJson(e.vstar)},
                         {"ustar", VecToJson(e.ustar)},
                         {"t", NumberToJson(e.t)}});
    }
  } else if (const auto* c = std::get_if<EpsCertificate>(&cert)) {
    lambda = c->lambda;
    for (const EpsEntry& e : c->entries) {
      entries.push_back({{"gamma", NumberToJson(e.gamma)},
                         {"xstar", BlocksToJson(e.xstar)},
                         {"wstar", BlocksToJson(e.wstar)},
                         {"cstar", VecToJson(e.cstar)},
                         {"ystar", VecToJson(e.ystar)},
                         {"vstar", VecToJson(e.vstar)},
                         {"ustar", VecToJson(e.ustar)}});
    }
  } else {
    const auto& exact = std::get<ExactCertificate>(cert);
    lambda = exact.lambda;
    for (const ExactEntry& e : exact.entries) {
      entries.push_back({{"x", BlocksToJson(e.x)},
                         {"xstar", BlocksToJson(e.xstar)},
                         {"w", BlocksToJson(e.w)},
                         {"wstar", BlocksToJson(e.wstar)},
                         {"c", VecToJson(e.c)},
                         {"cstar", VecToJson(e.cstar)},
                         {"y", VecToJson(e.y)},
                         {"ystar", VecToJson(e.ystar)},
                         {"vstar", VecToJson(e.vstar)},
                         {"u", VecToJson(e.u)},
                         {"ustar", VecToJson(e.ustar)}});
    }
  }
  Json j = Json::object();
  j["theorem"] = CertificateTag(KindOf(cert));
  j["lambda"] = VecToJson(lambda);
  j["N"] = static_cast<int>(entries.size());
  j["entries"] = std::move(entries);
  return j;
}

AnyCertificate LoadCertificate(const std::filesystem::path& path) {
  return ParseCertificate(LoadJsonFile(path));
}

VerificationReport VerifyAny(const FractionalProblem& prob,
                             std::span<const double> xbar,
                             const AnyCertificate& cert,
                             const VerifyOptions& options) {
  if (const auto* c = std::get_if<EpiCertificate>(&cert)) {
    return VerifyEpiCertificate(prob, xbar, *c, options);
  }
  if (const auto* c = std::get_if<EpsCertificate>(&cert)) {
    return VerifyEpsCertificate(prob, xbar, *c, options);
  }
  return VerifyExactCertificate(prob, xbar, std::get<ExactCertificate>(cert),
                                options);
}

Json VerdictToJson(const EfficiencyVerdict& v) {
  Json scan = Json::array();
  for (const LadderStep& s : v.scan) {
    Json step = {{"eps", s.eps}, {"refuted", s.refuted}};
    if (s.refuted) step["counterexample"] = VecToJson(s.counterexample);
    scan.push_back(std::move(step));
  }
  Json j = {{"verdict", VerdictName(v.kind)},
            {"reason", v.reason},
            {"grid", v.grid},
            {"feasible_samples", v.feasible_samples},
            {"ladder", std::move(scan)}};
  if (v.kind == EfficiencyVerdict::Kind::kProperlyEfficient) j["eps"] = v.eps;
  if (!v.counterexample.empty()) j["counterexample"] = VecToJson(v.counterexample);
  return j;
}

Json EquivalenceToJson(const EquivalenceResult& r) {
  return {{"agree", r.agree},
          {"original", VerdictToJson(r.original)},
          {"parametric", VerdictToJson(r.parametric)}};
}

Json VerificationReportToJson(const VerificationReport& r) {
  // Per-block summary keeps reports small at N = 1000; failures are listed
  // individually.
  struct BlockSummary {
    int checks = 0;
    int failures = 0;
    // Slack is lhs - rhs of the defining inequality; larger is worse.
    double worst_slack = -std::numeric_limits<double>::infinity();
  };
  std::map<std::string, BlockSummary> blocks;
  Json failures = Json::array();
  for (const MembershipCheck& c : r.memberships) {
    BlockSummary& b = blocks[c.block];
    ++b.checks;
    b.worst_slack = std::max(b.worst_slack, c.slack);
    if (!c.holds) {
      ++b.failures;
      failures.push_back({{"n", c.n},
                          {"block", c.block},
                          {"holds", false},
                          {"slack", NumberToJson(c.slack)}});
    }
  }
  Json summary = Json::object();
  for (const auto& [name, b] : blocks) {
    summary[name] = {{"checks", b.checks},
                     {"failures", b.failures},
                     {"holds", b.failures == 0},
                     {"worst_slack", NumberToJson(b.worst_slack)}};
  }
  Json traces = Json::object();
  for (const ResidualTrace& t : r.traces) {
    const double last = t.values.empty() ? 0.0 : t.values.back();
    traces[t.name] = {{"values", VecToJson(t.values)},
                      {"last", NumberToJson(last)},
                      {"converges", t.converges},
                      {"margin", NumberToJson(r.options.conv_tol - last)}};
  }
  return {{"theorem", CertificateTag(r.kind)},
          {"N", r.horizon},
          {"tolerances",
           {{"membership", r.options.membership_tol},
            {"conv", r.options.conv_tol},
            {"jitter", r.options.jitter}}},
          {"accept", r.accept},
          {"verdict", r.accept ? "Accept" : "Reject"},
          {"reason", r.reason},
          {"membership_failures", r.membership_failures},
          {"memberships", std::move(summary)},
          {"failed_memberships", std::move(failures)},
          {"traces", std::move(traces)},
          {"finite_horizon_note",
           "convergence is judged at a finite horizon by the documented rule; "
           "acceptance is a heuristic stand-in for the limit"}};
}

Json KktToJson(const KktResult& r) {
  Json j = {{"status", KktStatusName(r.status)}, {"reason", r.reason}};
  if (r.status == KktResult::Status::kHolds) j["ystar"] = VecToJson(r.ystar);
  return j;
}

Json SlaterToJson(const SlaterResult& r) {
  Json j = {{"holds", r.holds}, {"samples", r.samples}};
  if (r.holds) j["witness"] = VecToJson(r.witness);
  return j;
}

Json TransferRecordsToJson(const std::vector<TransferRecord>& records) {
  Json a = Json::array();
  for (const TransferRecord& t : records) {
    a.push_back({{"n", t.n},
                 {"block", t.block},
                 {"gamma", t.gamma},
                 {"distance", t.distance},
                 {"dual_distance", t.dual_distance},
                 {"value_gap", t.value_gap}});
  }
  return a;
}

Vec ParseVectorText(std::string_view text) {
  Vec out;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    item = first == std::string::npos ? "" : item.substr(first, last - first + 1);
    out.push_back(ParseDouble(item, "vector"));
  }
  if (out.empty()) throw Error(ErrorCode::kInvalidInput, "empty vector");
  return out;
}

}  // namespace henig
