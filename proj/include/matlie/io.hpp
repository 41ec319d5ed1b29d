#pragma once

// JSON interchange for fields, matrices, subspaces, algebra maps and recovery
// results. Requires nlohmann/json (json.hpp on the include path).

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "matlie/error.hpp"
#include "matlie/field.hpp"
#include "matlie/matrix.hpp"
#include "matlie/recovery.hpp"
#include "matlie/subspace.hpp"

namespace matlie::io {

using json = nlohmann::json;

namespace detail {

inline const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(Errc::ParseError, std::string("missing key \"") + key + "\"");
  return j.at(key);
}

inline std::uint64_t require_uint(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    throw Error(Errc::ParseError, std::string("\"") + key + "\" must be a nonnegative integer");
  return v.get<std::uint64_t>();
}

}  // namespace detail

// Fields ------------------------------------------------------------------------

inline json to_json(const Field& f) {
  switch (f.kind()) {
    case FieldKind::Rationals: return {{"kind", "Q"}};
    case FieldKind::Prime: return {{"kind", "GF"}, {"p", f.characteristic()}};
    case FieldKind::Extension:
      return {{"kind", "GFext"}, {"p", f.characteristic()}, {"m", f.degree()}, {"modulus", f.modulus()}};
  }
  return {};
}

inline Field field_from_json(const json& j) {
  const json& kind = detail::require(j, "kind");
  if (!kind.is_string()) throw Error(Errc::ParseError, "field kind must be a string");
  const auto k = kind.get<std::string>();
  if (k == "Q") return Field::rationals();
  if (k == "GF") return Field::prime(detail::require_uint(j, "p"));
  if (k == "GFext") {
    const auto p = detail::require_uint(j, "p");
    const auto m = static_cast<unsigned>(detail::require_uint(j, "m"));
    std::vector<std::uint64_t> modulus;
    if (j.contains("modulus")) {
      if (!j.at("modulus").is_array()) throw Error(Errc::ParseError, "modulus must be a coefficient array");
      for (const auto& c : j.at("modulus")) {
        if (!c.is_number_integer() || c.get<long long>() < 0) throw Error(Errc::ParseError, "bad modulus coefficient");
        modulus.push_back(c.get<std::uint64_t>());
      }
    }
    return Field::extension(p, m, std::move(modulus));
  }
  throw Error(Errc::ParseError, "unknown field kind \"" + k + "\"");
}

/// Command-line field syntax: q | gf:p | gfext:p:m[:c0,c1,...,cm].
inline Field parse_field_flag(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const auto colon = text.find(':', start);
    parts.push_back(text.substr(start, colon - start));
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  auto number = [&](const std::string& s) -> std::uint64_t {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw Error(Errc::ParseError, "bad number \"" + s + "\" in field \"" + text + "\"");
    return std::stoull(s);
  };
  if ((parts[0] == "q" || parts[0] == "Q") && parts.size() == 1) return Field::rationals();
  if (parts[0] == "gf" && parts.size() == 2) return Field::prime(number(parts[1]));
  if (parts[0] == "gfext" && (parts.size() == 3 || parts.size() == 4)) {
    std::vector<std::uint64_t> modulus;
    if (parts.size() == 4) {
      std::size_t s = 0;
      for (;;) {
        const auto comma = parts[3].find(',', s);
        modulus.push_back(number(parts[3].substr(s, comma - s)));
        if (comma == std::string::npos) break;
        s = comma + 1;
      }
    }
    return Field::extension(number(parts[1]), static_cast<unsigned>(number(parts[2])), std::move(modulus));
  }
  throw Error(Errc::ParseError, "unrecognised field \"" + text + "\"");
}

// Matrices ----------------------------------------------------------------------

inline json to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.field().format(m(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"field", to_json(m.field())}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

inline Elem scalar_from_json(const Field& f, const json& v) {
  if (v.is_string()) return f.parse(v.get<std::string>());
  if (v.is_number_integer()) return f.from_int(v.get<long long>());
  throw Error(Errc::ParseError, "scalar must be a string or an integer");
}

/// `field` overrides a missing "field" key.
inline Matrix matrix_from_json(const json& j, const Field* fallback = nullptr) {
  const Field f = j.contains("field") ? field_from_json(j.at("field"))
                  : fallback         ? *fallback
                                     : throw Error(Errc::ParseError, "matrix without field");
  const auto rows = detail::require_uint(j, "rows");
  const auto cols = detail::require_uint(j, "cols");
  const json& entries = detail::require(j, "entries");
  if (!entries.is_array() || entries.size() != rows) throw Error(Errc::ParseError, "entries must have `rows` rows");
  Matrix m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = entries[i];
    if (!row.is_array() || row.size() != cols) throw Error(Errc::ParseError, "entry row has the wrong length");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = scalar_from_json(f, row[k]);
  }
  return m;
}

// Subspaces ---------------------------------------------------------------------

inline json to_json(const Subspace& s) {
  json basis = json::array();
  for (const auto& b : s.basis()) basis.push_back(to_json(b));
  return {{"ambient", {{"field", to_json(s.field())}, {"rows", s.rows()}, {"cols", s.cols()}}},
          {"dim", s.dim()},
          {"basis", std::move(basis)}};
}

/// Accepts any generating set; the result is canonical.
inline Subspace subspace_from_json(const json& j) {
  const json& amb = detail::require(j, "ambient");
  const Field f = field_from_json(detail::require(amb, "field"));
  const auto rows = detail::require_uint(amb, "rows");
  const auto cols = detail::require_uint(amb, "cols");
  std::vector<Matrix> gens;
  const json& basis = detail::require(j, "basis");
  if (!basis.is_array()) throw Error(Errc::ParseError, "basis must be an array");
  for (const auto& b : basis) gens.push_back(matrix_from_json(b, &f));
  return Subspace::span(f, rows, cols, gens);
}

// Algebra maps ------------------------------------------------------------------

inline json to_json(const FieldAutomorphism& t) {
  if (t.is_identity()) return {{"kind", "identity"}};
  return {{"kind", "frobenius"}, {"power", t.power()}};
}

inline FieldAutomorphism twist_from_json(const json& j) {
  const json& kind = detail::require(j, "kind");
  if (kind == "identity") return FieldAutomorphism::identity();
  if (kind == "frobenius") return FieldAutomorphism::frobenius(static_cast<unsigned>(detail::require_uint(j, "power")));
  throw Error(Errc::ParseError, "twist kind must be identity or frobenius");
}

inline std::string unit_key(std::size_t i, std::size_t j) { return std::to_string(i) + "," + std::to_string(j); }

inline json to_json(const AlgebraMap& map) {
  json images = json::object();
  for (std::size_t i = 1; i <= map.n(); ++i)
    for (std::size_t j = 1; j <= map.n(); ++j) images[unit_key(i, j)] = to_json(map.image(i, j));
  return {{"n", map.n()}, {"field", to_json(map.field())}, {"twist", to_json(map.twist())}, {"images", std::move(images)}};
}

inline AlgebraMap algebra_map_from_json(const json& j) {
  const auto n = detail::require_uint(j, "n");
  const Field f = field_from_json(detail::require(j, "field"));
  const FieldAutomorphism twist = j.contains("twist") ? twist_from_json(j.at("twist")) : FieldAutomorphism{};
  const json& images = detail::require(j, "images");
  if (!images.is_object()) throw Error(Errc::ParseError, "images must be an object keyed \"i,j\"");
  if (images.size() != n * n) throw Error(Errc::ParseError, "images must list all n^2 matrix units");
  std::vector<Matrix> out;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t k = 1; k <= n; ++k) {
      const auto key = unit_key(i, k);
      if (!images.contains(key)) throw Error(Errc::ParseError, "missing image for E(" + key + ")");
      out.push_back(matrix_from_json(images.at(key), &f));
    }
  return {f, n, std::move(out), twist};
}

// Results -----------------------------------------------------------------------

inline json to_json(const RecoveryResult& r) {
  return {{"conjugator", to_json(r.conjugator)},
          {"kernel_vector", to_json(r.kernel_vector)},
          {"kernel_dim", r.kernel_dim},
          {"verified", r.verified},
          {"scalar_class", "any nonzero scalar multiple of the conjugator is equivalent"}};
}

inline RecoveryResult recovery_result_from_json(const json& j) {
  RecoveryResult r;
  r.conjugator = matrix_from_json(detail::require(j, "conjugator"));
  r.kernel_vector = matrix_from_json(detail::require(j, "kernel_vector"));
  r.kernel_dim = detail::require_uint(j, "kernel_dim");
  const json& v = detail::require(j, "verified");
  if (!v.is_boolean()) throw Error(Errc::ParseError, "verified must be boolean");
  r.verified = v.get<bool>();
  return r;
}

inline json to_json(const LieDecomposition& d) {
  return {{"sigma_kind", to_string(d.sigma_kind)},
          {"sigma_conjugator", to_json(d.sigma_conjugator)},
          {"tau_coefficient", d.tau_coefficient.to_string()},
          {"twist", to_json(d.twist)},
          {"residual_zero", d.residual_zero},
          {"warnings", d.warnings}};
}

inline LieDecomposition lie_decomposition_from_json(const json& j) {
  LieDecomposition d;
  const auto kind = detail::require(j, "sigma_kind").get<std::string>();
  if (kind == "Automorphism") d.sigma_kind = SigmaKind::Automorphism;
  else if (kind == "NegativeAntiAutomorphism") d.sigma_kind = SigmaKind::NegativeAntiAutomorphism;
  else throw Error(Errc::ParseError, "unknown sigma_kind");
  d.sigma_conjugator = matrix_from_json(detail::require(j, "sigma_conjugator"));
  const Field& f = d.sigma_conjugator.field();
  d.tau_coefficient = Scalar::parse(f, detail::require(j, "tau_coefficient").get<std::string>());
  d.twist = j.contains("twist") ? twist_from_json(j.at("twist")) : FieldAutomorphism{};
  d.residual_zero = detail::require(j, "residual_zero").get<bool>();
  if (j.contains("warnings")) d.warnings = j.at("warnings").get<std::vector<std::string>>();
  return d;
}

}  // namespace matlie::io
