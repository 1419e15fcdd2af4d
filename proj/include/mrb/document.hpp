#ifndef MRB_DOCUMENT_HPP
#define MRB_DOCUMENT_HPP

// Text formats for algebras and the supplementary block files. Everything is
// JSON; rationals travel as "p/q" strings, indices are 1-based integers.

#include <mrb/deformation.hpp>
#include <mrb/extensions.hpp>

#include <json.hpp>
#include <openssl/evp.h>

#include <cstddef>
#include <cstdio>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace mrb {

using Json = nlohmann::ordered_json;

/// An algebra with an optional operator and an optional explicit
/// representation.
struct AlgebraDocument {
  LeibnizAlgebra algebra;
  std::optional<OperatorContext> op;
  std::optional<Representation> rep;

  /// The explicit representation, else the regular one (K_V = K, or zero
  /// without an operator).
  Representation representation() const {
    if (rep) return *rep;
    return op ? regular_rep(algebra, *op) : regular_rep(algebra);
  }

  friend bool operator==(const AlgebraDocument&, const AlgebraDocument&) = default;
};

namespace doc {

/// Key-path aware reader: every ParseError names the offending location.
class Reader {
 public:
  static Error error(const std::string& path, const std::string& what) {
    return Error(Errc::ParseError, (path.empty() ? "/" : path) + ": " + what);
  }

  static const Json& key(const Json& obj, const std::string& path, const char* name) {
    if (!obj.is_object()) throw error(path, "expected an object");
    auto it = obj.find(name);
    if (it == obj.end()) throw error(path, std::string("missing key \"") + name + "\"");
    return *it;
  }

  static void only_keys(const Json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) throw error(path, "expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      bool ok = false;
      for (const char* a : allowed) ok = ok || it.key() == a;
      if (!ok) throw error(path, "unknown key \"" + it.key() + "\"");
    }
  }

  static std::size_t size(const Json& j, const std::string& path) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
      throw error(path, "expected a non-negative integer");
    return j.get<std::size_t>();
  }

  static Rational rational(const Json& j, const std::string& path) {
    if (!j.is_string()) throw error(path, "rationals are written as \"p/q\" strings");
    auto r = parse_rational(j.get<std::string>());
    if (!r) throw error(path, "malformed rational \"" + j.get<std::string>() + "\"");
    return *r;
  }

  static const Json& array(const Json& j, const std::string& path, std::optional<std::size_t> len = {}) {
    if (!j.is_array()) throw error(path, "expected an array");
    if (len && j.size() != *len)
      throw error(path, "expected " + std::to_string(*len) + " entries, found " + std::to_string(j.size()));
    return j;
  }

  static Vector vector(const Json& j, const std::string& path, std::size_t len) {
    array(j, path, len);
    Vector v(len);
    for (std::size_t i = 0; i < len; ++i) v[i] = rational(j[i], path + "/" + std::to_string(i));
    return v;
  }

  static Matrix matrix(const Json& j, const std::string& path, std::size_t rows, std::size_t cols) {
    array(j, path, rows);
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      std::string rp = path + "/" + std::to_string(r);
      array(j[r], rp, cols);
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = rational(j[r][c], rp + "/" + std::to_string(c));
    }
    return m;
  }

  static std::vector<Matrix> matrices(const Json& j, const std::string& path, std::size_t count, std::size_t rows,
                                      std::size_t cols) {
    array(j, path, count);
    std::vector<Matrix> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(matrix(j[i], path + "/" + std::to_string(i), rows, cols));
    return out;
  }
};

inline Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(Errc::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(col) +
                                      ": malformed JSON");
  }
}

inline Json rational(const Rational& r) { return to_string(r); }

inline Json vector(const Vector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

inline Json matrix(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(vector(m.row(r)));
  return out;
}

inline Json matrices(const std::vector<Matrix>& ms) {
  Json out = Json::array();
  for (const auto& m : ms) out.push_back(matrix(m));
  return out;
}

inline LeibnizAlgebra read_algebra(const Json& j, const std::string& path) {
  Reader::only_keys(j, path, {"dim", "bracket"});
  std::size_t dim = Reader::size(Reader::key(j, path, "dim"), path + "/dim");
  const Json& list = Reader::array(Reader::key(j, path, "bracket"), path + "/bracket");
  std::vector<StructureConstant> constants;
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> seen;
  for (std::size_t n = 0; n < list.size(); ++n) {
    std::string ep = path + "/bracket/" + std::to_string(n);
    const Json& e = Reader::array(list[n], ep, 4);
    std::size_t idx[3];
    for (std::size_t t = 0; t < 3; ++t) {
      idx[t] = Reader::size(e[t], ep + "/" + std::to_string(t));
      if (idx[t] < 1 || idx[t] > dim)
        throw Error(Errc::IndexOutOfRange, ep + ": index " + std::to_string(idx[t]) + " outside 1.." +
                                               std::to_string(dim));
    }
    if (!seen.insert({idx[0], idx[1], idx[2]}).second)
      throw Error(Errc::DuplicateKey, ep + ": repeated key (" + std::to_string(idx[0]) + "," +
                                          std::to_string(idx[1]) + "," + std::to_string(idx[2]) + ")");
    constants.push_back({idx[0] - 1, idx[1] - 1, idx[2] - 1, Reader::rational(e[3], ep + "/3")});
  }
  return LeibnizAlgebra(dim, std::move(constants));
}

inline Json write_algebra(const LeibnizAlgebra& a) {
  Json list = Json::array();
  for (const auto& s : a.structure_constants())
    list.push_back(Json::array({s.i + 1, s.j + 1, s.k + 1, to_string(s.c)}));
  Json out;
  out["dim"] = a.dim();
  out["bracket"] = std::move(list);
  return out;
}

inline OperatorContext read_operator(const Json& j, const std::string& path, std::size_t dim) {
  Reader::only_keys(j, path, {"weight", "matrix"});
  Rational w = Reader::rational(Reader::key(j, path, "weight"), path + "/weight");
  return {Reader::matrix(Reader::key(j, path, "matrix"), path + "/matrix", dim, dim), w};
}

inline Json write_operator(const OperatorContext& ctx) {
  Json out;
  out["weight"] = to_string(ctx.weight);
  out["matrix"] = matrix(ctx.op);
  return out;
}

inline Representation read_representation(const Json& j, const std::string& path, std::size_t dim) {
  Reader::only_keys(j, path, {"dimV", "rhoL", "rhoR", "kV"});
  std::size_t m = Reader::size(Reader::key(j, path, "dimV"), path + "/dimV");
  Representation r;
  r.dim_v = m;
  r.rho_l = Reader::matrices(Reader::key(j, path, "rhoL"), path + "/rhoL", dim, m, m);
  r.rho_r = Reader::matrices(Reader::key(j, path, "rhoR"), path + "/rhoR", dim, m, m);
  r.k_v = Reader::matrix(Reader::key(j, path, "kV"), path + "/kV", m, m);
  return r;
}

inline Json write_representation(const Representation& r) {
  Json out;
  out["dimV"] = r.dim_v;
  out["rhoL"] = matrices(r.rho_l);
  out["rhoR"] = matrices(r.rho_r);
  out["kV"] = matrix(r.k_v);
  return out;
}

inline AlgebraDocument read_document(const Json& j, const std::string& path) {
  Reader::only_keys(j, path, {"field", "algebra", "operator", "representation"});
  const Json& field = Reader::key(j, path, "field");
  if (!field.is_string() || field.get<std::string>() != "rational")
    throw Reader::error(path + "/field", "field must be \"rational\"");
  AlgebraDocument d;
  d.algebra = read_algebra(Reader::key(j, path, "algebra"), path + "/algebra");
  if (j.contains("operator")) d.op = read_operator(j["operator"], path + "/operator", d.algebra.dim());
  if (j.contains("representation"))
    d.rep = read_representation(j["representation"], path + "/representation", d.algebra.dim());
  return d;
}

inline Json write_document(const AlgebraDocument& d) {
  Json out;
  out["field"] = "rational";
  out["algebra"] = write_algebra(d.algebra);
  if (d.op) out["operator"] = write_operator(*d.op);
  if (d.rep) out["representation"] = write_representation(*d.rep);
  return out;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace doc

inline AlgebraDocument parse_document(std::string_view text) { return doc::read_document(doc::parse_json(text), ""); }

/// Canonical form: fixed key order, sorted structure constants, zero
/// coefficients dropped, rationals in lowest terms, two-space indentation.
inline std::string serialize_document(const AlgebraDocument& d) { return doc::dump(doc::write_document(d)); }

/// "sha256:<hex>" of the canonical serialization, so formatting differences in
/// the input do not change it.
inline std::string document_digest(const AlgebraDocument& d) {
  std::string text = serialize_document(d);
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  std::string hex = "sha256:";
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

namespace doc {

inline void check_digest(const Json& j, const AlgebraDocument& base) {
  const Json& d = Reader::key(j, "", "base_digest");
  if (!d.is_string()) throw Reader::error("/base_digest", "expected a string");
  if (d.get<std::string>() != document_digest(base))
    throw Error(Errc::DigestMismatch, "block file refers to base " + d.get<std::string>() + ", input document is " +
                                          document_digest(base));
}

}  // namespace doc

/// d x d mask: null for a free entry, "p/q" for a fixed one.
inline OperatorMask parse_mask(std::string_view text, std::size_t dim) {
  Json j = doc::parse_json(text);
  doc::Reader::array(j, "", dim);
  OperatorMask mask = OperatorMask::all_free(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    std::string rp = "/" + std::to_string(r);
    doc::Reader::array(j[r], rp, dim);
    for (std::size_t c = 0; c < dim; ++c)
      if (!j[r][c].is_null()) mask.entries[r * dim + c] = doc::Reader::rational(j[r][c], rp + "/" + std::to_string(c));
  }
  return mask;
}

/// Deformation block file: orders 1..N of mu (d x d^2 each) and K (d x d),
/// order 0 being the base document; optionally a trivializer for order 1.
struct DeformationDocument {
  TruncatedDeformation deformation;
  std::optional<Trivializer> trivializer;
};

inline DeformationDocument parse_deformation(std::string_view text, const AlgebraDocument& base) {
  using doc::Reader;
  Json j = doc::parse_json(text);
  Reader::only_keys(j, "", {"base_digest", "order", "mu", "K", "trivializer"});
  doc::check_digest(j, base);
  if (!base.op) throw Error(Errc::DimensionMismatch, "deformations need an operator in the base document");
  const std::size_t d = base.algebra.dim();
  std::size_t order = Reader::size(Reader::key(j, "", "order"), "/order");
  std::vector<Matrix> mu_blocks = Reader::matrices(Reader::key(j, "", "mu"), "/mu", order, d, d * d);
  std::vector<Matrix> k_blocks = Reader::matrices(Reader::key(j, "", "K"), "/K", order, d, d);
  std::vector<Cochain> mu{TruncatedDeformation::bracket_cochain(base.algebra)};
  std::vector<Matrix> kk{base.op->op};
  for (std::size_t i = 0; i < order; ++i) {
    mu.emplace_back(d, 2, std::move(mu_blocks[i]));
    kk.push_back(std::move(k_blocks[i]));
  }
  DeformationDocument out{TruncatedDeformation(base.algebra, *base.op, std::move(mu), std::move(kk)), std::nullopt};
  if (j.contains("trivializer")) {
    const Json& t = j["trivializer"];
    Reader::only_keys(t, "/trivializer", {"psi1", "x"});
    out.trivializer = Trivializer{Reader::matrix(Reader::key(t, "/trivializer", "psi1"), "/trivializer/psi1", d, d),
                                  Reader::vector(Reader::key(t, "/trivializer", "x"), "/trivializer/x", d)};
  }
  return out;
}

inline Json deformation_json(const TruncatedDeformation& def, const AlgebraDocument& base) {
  Json out;
  out["base_digest"] = document_digest(base);
  out["order"] = def.order();
  Json mu = Json::array(), kk = Json::array();
  for (std::size_t i = 1; i <= def.order(); ++i) {
    mu.push_back(doc::matrix(def.mu()[i].values()));
    kk.push_back(doc::matrix(def.kk()[i]));
  }
  out["mu"] = std::move(mu);
  out["K"] = std::move(kk);
  return out;
}

/// Cocycle block file: psi (dimV x d^2) and chi (dimV x d) over the base
/// document's representation.
inline CocyclePair parse_cocycle(std::string_view text, const AlgebraDocument& base) {
  using doc::Reader;
  Json j = doc::parse_json(text);
  Reader::only_keys(j, "", {"base_digest", "psi", "chi"});
  doc::check_digest(j, base);
  const std::size_t d = base.algebra.dim(), m = base.representation().dim_v;
  return {Cochain(d, 2, Reader::matrix(Reader::key(j, "", "psi"), "/psi", m, d * d)),
          Cochain(d, 1, Reader::matrix(Reader::key(j, "", "chi"), "/chi", m, d))};
}

inline Json cocycle_json(const CocyclePair& c, const AlgebraDocument& base) {
  Json out;
  out["base_digest"] = document_digest(base);
  out["psi"] = doc::matrix(c.psi.values());
  out["chi"] = doc::matrix(c.chi.values());
  return out;
}

/// Extension block file: the total algebra as an embedded document (with its
/// operator), plus i, p and K_V. The base is the input document.
inline ExtensionData parse_extension(std::string_view text, const AlgebraDocument& base) {
  using doc::Reader;
  Json j = doc::parse_json(text);
  Reader::only_keys(j, "", {"base_digest", "total", "incl", "proj", "fiberOp"});
  doc::check_digest(j, base);
  if (!base.op) throw Error(Errc::DimensionMismatch, "extensions need an operator in the base document");
  AlgebraDocument total = doc::read_document(Reader::key(j, "", "total"), "/total");
  if (!total.op) throw Reader::error("/total", "the total algebra needs an operator");
  const std::size_t d = base.algebra.dim(), n = total.algebra.dim();
  if (n < d) throw Reader::error("/total", "total algebra is smaller than the base");
  const std::size_t m = n - d;
  ExtensionData e;
  e.total = total.algebra;
  e.total_op = *total.op;
  e.incl = Reader::matrix(Reader::key(j, "", "incl"), "/incl", n, m);
  e.proj = Reader::matrix(Reader::key(j, "", "proj"), "/proj", d, n);
  e.fiber_op = Reader::matrix(Reader::key(j, "", "fiberOp"), "/fiberOp", m, m);
  e.base = base.algebra;
  e.base_op = *base.op;
  return e;
}

inline Json extension_json(const ExtensionData& e, const AlgebraDocument& base) {
  Json out;
  out["base_digest"] = document_digest(base);
  out["total"] = doc::write_document(AlgebraDocument{e.total, e.total_op, std::nullopt});
  out["incl"] = doc::matrix(e.incl);
  out["proj"] = doc::matrix(e.proj);
  out["fiberOp"] = doc::matrix(e.fiber_op);
  return out;
}

}  // namespace mrb

#endif  // MRB_DOCUMENT_HPP
