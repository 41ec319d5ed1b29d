#pragma once

// Exact scalar fields: the rationals, prime fields GF(p) and extension fields
// GF(p^m) = GF(p)[x]/(f), plus the Frobenius automorphisms of the latter.
//
// Elements are stored as an `Elem`: an mpq_class for Q, and for finite fields a
// single integer code. Prime-field codes are residues in [0, p); an extension
// element c0 + c1 x + ... + c_{m-1} x^{m-1} has code sum(c_i * p^i).

#include <gmpxx.h>

#include <cctype>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "matlie/error.hpp"

namespace matlie {

enum class FieldKind { Rationals, Prime, Extension };

using Elem = std::variant<mpq_class, std::uint64_t>;

namespace detail {

using u64 = std::uint64_t;
using Poly = std::vector<u64>;  // ascending coefficients over GF(p)

inline u64 mulmod(u64 a, u64 b, u64 p) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % p);
}

inline u64 powmod(u64 base, u64 e, u64 p) {
  u64 result = 1 % p;
  base %= p;
  while (e) {
    if (e & 1) result = mulmod(result, base, p);
    base = mulmod(base, base, p);
    e >>= 1;
  }
  return result;
}

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Reduces a modulo the monic polynomial f.
inline Poly poly_mod(Poly a, const Poly& f, u64 p) {
  trim(a);
  const std::size_t m = f.size() - 1;
  for (std::size_t i = a.size(); i-- > m;) {
    const u64 c = a[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= m; ++j) {
      const u64 t = mulmod(c, f[j], p);
      u64& slot = a[i - m + j];
      slot = slot >= t ? slot - t : slot + p - t;
    }
  }
  if (a.size() > m) a.resize(m);
  trim(a);
  return a;
}

inline Poly poly_mul(const Poly& a, const Poly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] = (out[i + j] + mulmod(a[i], b[j], p)) % p;
  }
  trim(out);
  return out;
}

inline Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, u64 p) {
  return poly_mod(poly_mul(a, b, p), f, p);
}

inline Poly poly_powmod(Poly base, u64 e, const Poly& f, u64 p) {
  Poly result{1};
  result = poly_mod(result, f, p);
  base = poly_mod(std::move(base), f, p);
  while (e) {
    if (e & 1) result = poly_mulmod(result, base, f, p);
    base = poly_mulmod(base, base, f, p);
    e >>= 1;
  }
  return result;
}

inline Poly poly_sub(Poly a, const Poly& b, u64 p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i] % p) % p;
  trim(a);
  return a;
}

// Monic gcd.
inline Poly poly_gcd(Poly a, Poly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    const u64 lead_inv = powmod(b.back(), p - 2, p);
    for (auto& c : b) c = mulmod(c, lead_inv, p);
    a = poly_mod(std::move(a), b, p);
    std::swap(a, b);
  }
  if (!a.empty()) {
    const u64 lead_inv = powmod(a.back(), p - 2, p);
    for (auto& c : a) c = mulmod(c, lead_inv, p);
  }
  return a;
}

// Rabin's test for a monic f of degree m >= 1 over GF(p):
// x^(p^m) = x mod f, and gcd(x^(p^(m/l)) - x, f) = 1 for every prime l | m.
inline bool is_irreducible(const Poly& f, u64 p) {
  const std::size_t m = f.size() - 1;
  if (m == 0) return false;
  if (m == 1) return true;
  const Poly x{0, 1};
  auto frobenius_iterate = [&](std::size_t times) {
    Poly h = poly_mod(x, f, p);
    for (std::size_t i = 0; i < times; ++i) h = poly_powmod(h, p, f, p);
    return h;
  };
  if (poly_sub(frobenius_iterate(m), poly_mod(x, f, p), p).size() != 0) return false;
  std::size_t rest = m;
  for (std::size_t l = 2; l <= rest; ++l) {
    if (rest % l) continue;
    while (rest % l == 0) rest /= l;
    const Poly g = poly_gcd(poly_sub(frobenius_iterate(m / l), x, p), f, p);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace detail

/// A runtime description of one exact field. Cheap to copy; two Field values
/// compare equal iff they describe the same field with the same modulus.
class Field {
 public:
  /// Defaults to the rationals.
  Field() : Field(rationals()) {}

  static Field rationals() {
    static const Field q{std::make_shared<const Impl>(Impl{FieldKind::Rationals, 0, 1, {}, 0, {}})};
    return q;
  }

  static Field prime(std::uint64_t p) {
    check_prime(p);
    return Field{std::make_shared<const Impl>(Impl{FieldKind::Prime, p, 1, {}, p, {1}})};
  }

  /// GF(p^m). `modulus` lists ascending coefficients of a monic irreducible
  /// polynomial of degree m; when empty, the smallest one is chosen (see
  /// default_modulus).
  static Field extension(std::uint64_t p, unsigned m, std::vector<std::uint64_t> modulus = {}) {
    check_prime(p);
    if (m < 2) throw Error(Errc::InvalidField, "extension degree must be >= 2");
    std::vector<std::uint64_t> powers{1};
    for (unsigned i = 0; i < m; ++i) {
      if (powers.back() > (std::uint64_t{1} << 62) / p)
        throw Error(Errc::InvalidField, "field order p^m exceeds 2^62");
      powers.push_back(powers.back() * p);
    }
    if (modulus.empty()) {
      modulus = default_modulus(p, m);
    } else {
      if (modulus.size() != m + 1 || modulus.back() != 1)
        throw Error(Errc::InvalidField, "modulus must be monic of degree m");
      for (auto c : modulus)
        if (c >= p) throw Error(Errc::InvalidField, "modulus coefficient out of range");
      if (!detail::is_irreducible(modulus, p))
        throw Error(Errc::InvalidField, "modulus is reducible over GF(p)");
    }
    const std::uint64_t q = powers.back();
    powers.pop_back();
    return Field{std::make_shared<const Impl>(
        Impl{FieldKind::Extension, p, m, std::move(modulus), q, std::move(powers)})};
  }

  /// Smallest monic irreducible of degree m, ordering candidates by the
  /// integer sum(c_i p^i) of their non-leading coefficients.
  static std::vector<std::uint64_t> default_modulus(std::uint64_t p, unsigned m) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < m; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      detail::Poly f(m + 1, 0);
      std::uint64_t c = code;
      for (unsigned i = 0; i < m; ++i) {
        f[i] = c % p;
        c /= p;
      }
      f[m] = 1;
      if (f[0] != 0 && detail::is_irreducible(f, p)) return f;
    }
    throw Error(Errc::InvalidField, "no irreducible polynomial found");
  }

  FieldKind kind() const { return impl_->kind; }
  bool is_finite() const { return impl_->kind != FieldKind::Rationals; }
  /// 0 for Q.
  std::uint64_t characteristic() const { return impl_->p; }
  /// 1 for Q and prime fields.
  unsigned degree() const { return impl_->m; }
  const std::vector<std::uint64_t>& modulus() const { return impl_->modulus; }
  std::optional<std::uint64_t> order() const {
    if (!is_finite()) return std::nullopt;
    return impl_->q;
  }

  std::string describe() const {
    switch (impl_->kind) {
      case FieldKind::Rationals: return "Q";
      case FieldKind::Prime: return "GF(" + std::to_string(impl_->p) + ")";
      case FieldKind::Extension: {
        std::string s = "GF(" + std::to_string(impl_->p) + "^" + std::to_string(impl_->m) + ")[";
        for (std::size_t i = 0; i < impl_->modulus.size(); ++i)
          s += (i ? "," : "") + std::to_string(impl_->modulus[i]);
        return s + "]";
      }
    }
    return "?";
  }

  bool operator==(const Field& other) const {
    if (impl_ == other.impl_) return true;
    return impl_->kind == other.impl_->kind && impl_->p == other.impl_->p &&
           impl_->m == other.impl_->m && impl_->modulus == other.impl_->modulus;
  }

  // Element construction ---------------------------------------------------

  Elem zero() const { return rational() ? Elem{mpq_class(0)} : code(0); }
  Elem one() const { return rational() ? Elem{mpq_class(1)} : code(1); }

  Elem from_int(long long v) const {
    if (rational()) return Elem{mpq_class(static_cast<long>(v))};
    const auto p = static_cast<long long>(impl_->p);
    long long r = v % p;
    if (r < 0) r += p;
    return code(static_cast<std::uint64_t>(r));
  }

  /// The finite-field element with the given code (code < order()).
  Elem element(std::uint64_t c) const {
    if (rational() || c >= impl_->q) throw Error(Errc::IndexOutOfRange, "element code out of range");
    return code(c);
  }

  /// Ascending coefficients over GF(p) (length m); finite fields only.
  std::vector<std::uint64_t> coefficients(const Elem& a) const {
    std::vector<std::uint64_t> out(impl_->m, 0);
    std::uint64_t c = std::get<std::uint64_t>(a);
    for (unsigned i = 0; i < impl_->m; ++i) {
      out[i] = c % impl_->p;
      c /= impl_->p;
    }
    return out;
  }

  Elem from_coefficients(std::span<const std::uint64_t> coeffs) const {
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < coeffs.size() && i < impl_->m; ++i) c += (coeffs[i] % impl_->p) * impl_->powers[i];
    return code(c);
  }

  // Arithmetic -------------------------------------------------------------

  bool is_zero(const Elem& a) const {
    if (rational()) return sgn(std::get<mpq_class>(a)) == 0;
    return std::get<std::uint64_t>(a) == 0;
  }

  bool equal(const Elem& a, const Elem& b) const {
    if (rational()) return std::get<mpq_class>(a) == std::get<mpq_class>(b);
    return std::get<std::uint64_t>(a) == std::get<std::uint64_t>(b);
  }

  Elem add(const Elem& a, const Elem& b) const {
    switch (impl_->kind) {
      case FieldKind::Rationals:
        return Elem{mpq_class(std::get<mpq_class>(a) + std::get<mpq_class>(b))};
      case FieldKind::Prime: {
        const auto p = impl_->p;
        const auto s = std::get<std::uint64_t>(a) + std::get<std::uint64_t>(b);
        return code(s >= p ? s - p : s);
      }
      case FieldKind::Extension: return ext_combine(a, b, false);
    }
    return zero();
  }

  Elem neg(const Elem& a) const {
    switch (impl_->kind) {
      case FieldKind::Rationals: return Elem{mpq_class(-std::get<mpq_class>(a))};
      case FieldKind::Prime: {
        const auto v = std::get<std::uint64_t>(a);
        return code(v == 0 ? 0 : impl_->p - v);
      }
      case FieldKind::Extension: return ext_combine(zero(), a, true);
    }
    return zero();
  }

  Elem sub(const Elem& a, const Elem& b) const {
    switch (impl_->kind) {
      case FieldKind::Rationals:
        return Elem{mpq_class(std::get<mpq_class>(a) - std::get<mpq_class>(b))};
      case FieldKind::Prime: {
        const auto p = impl_->p;
        const auto x = std::get<std::uint64_t>(a);
        const auto y = std::get<std::uint64_t>(b);
        return code(x >= y ? x - y : x + p - y);
      }
      case FieldKind::Extension: return ext_combine(a, b, true);
    }
    return zero();
  }

  Elem mul(const Elem& a, const Elem& b) const {
    switch (impl_->kind) {
      case FieldKind::Rationals:
        return Elem{mpq_class(std::get<mpq_class>(a) * std::get<mpq_class>(b))};
      case FieldKind::Prime:
        return code(detail::mulmod(std::get<std::uint64_t>(a), std::get<std::uint64_t>(b), impl_->p));
      case FieldKind::Extension: {
        const auto x = coefficients(a);
        const auto y = coefficients(b);
        auto r = detail::poly_mulmod(detail::Poly(x.begin(), x.end()), detail::Poly(y.begin(), y.end()),
                                     impl_->modulus, impl_->p);
        return from_coefficients(r);
      }
    }
    return zero();
  }

  Elem pow(Elem base, std::uint64_t e) const {
    Elem result = one();
    while (e) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  }

  Elem inv(const Elem& a) const {
    if (is_zero(a)) throw Error(Errc::DivisionByZero, "inverse of zero");
    switch (impl_->kind) {
      case FieldKind::Rationals: return Elem{mpq_class(1 / std::get<mpq_class>(a))};
      case FieldKind::Prime:
        return code(detail::powmod(std::get<std::uint64_t>(a), impl_->p - 2, impl_->p));
      case FieldKind::Extension: return pow(a, impl_->q - 2);
    }
    return zero();
  }

  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }

  // Text -------------------------------------------------------------------

  /// Rationals as "a/b" or "a"; residues as decimals (reduced mod p);
  /// extension elements as "[c0,c1,...]" (a bare integer is a prime-subfield
  /// element).
  Elem parse(std::string_view text) const {
    const std::string s = strip(text);
    if (s.empty()) throw Error(Errc::ParseError, "empty scalar");
    if (rational()) {
      const auto slash = s.find('/');
      mpz_class num = parse_int(s.substr(0, slash));
      mpz_class den = 1;
      if (slash != std::string::npos) den = parse_int(s.substr(slash + 1));
      if (den == 0) throw Error(Errc::ParseError, "zero denominator in '" + s + "'");
      mpq_class q(num, den);
      q.canonicalize();
      return Elem{q};
    }
    if (impl_->kind == FieldKind::Extension && s.front() == '[') {
      if (s.back() != ']') throw Error(Errc::ParseError, "unterminated coefficient list '" + s + "'");
      std::vector<std::uint64_t> coeffs;
      std::stringstream ss(s.substr(1, s.size() - 2));
      std::string item;
      while (std::getline(ss, item, ',')) coeffs.push_back(reduce(parse_int(strip(item))));
      if (coeffs.size() > impl_->m) throw Error(Errc::ParseError, "too many coefficients in '" + s + "'");
      return from_coefficients(coeffs);
    }
    return code(reduce(parse_int(s)));
  }

  std::string format(const Elem& a) const {
    switch (impl_->kind) {
      case FieldKind::Rationals: return std::get<mpq_class>(a).get_str();
      case FieldKind::Prime: return std::to_string(std::get<std::uint64_t>(a));
      case FieldKind::Extension: {
        std::string s = "[";
        const auto c = coefficients(a);
        for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
        return s + "]";
      }
    }
    return "?";
  }

 private:
  struct Impl {
    FieldKind kind;
    std::uint64_t p;  // 0 for Q
    unsigned m;
    std::vector<std::uint64_t> modulus;
    std::uint64_t q;                     // field order, 0 for Q
    std::vector<std::uint64_t> powers;   // p^i, i < m
  };

  explicit Field(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  static void check_prime(std::uint64_t p) {
    if (p >= (std::uint64_t{1} << 31)) throw Error(Errc::InvalidField, "p must be below 2^31");
    if (!detail::is_prime(p)) throw Error(Errc::InvalidField, std::to_string(p) + " is not prime");
  }

  bool rational() const { return impl_->kind == FieldKind::Rationals; }
  static Elem code(std::uint64_t c) { return Elem{std::in_place_type<std::uint64_t>, c}; }

  Elem ext_combine(const Elem& a, const Elem& b, bool subtract) const {
    std::uint64_t x = std::get<std::uint64_t>(a);
    std::uint64_t y = std::get<std::uint64_t>(b);
    const auto p = impl_->p;
    std::uint64_t out = 0;
    for (unsigned i = 0; i < impl_->m; ++i) {
      const auto cx = x % p;
      const auto cy = y % p;
      x /= p;
      y /= p;
      const auto c = subtract ? (cx + p - cy) % p : (cx + cy) % p;
      out += c * impl_->powers[i];
    }
    return code(out);
  }

  std::uint64_t reduce(const mpz_class& v) const {
    mpz_class r = v % static_cast<unsigned long>(impl_->p);
    if (r < 0) r += static_cast<unsigned long>(impl_->p);
    return r.get_ui();
  }

  static std::string strip(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
  }

  static mpz_class parse_int(std::string s) {
    s = strip(s);
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (start == s.size()) throw Error(Errc::ParseError, "expected an integer, got '" + s + "'");
    for (std::size_t i = start; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i])))
        throw Error(Errc::ParseError, "expected an integer, got '" + s + "'");
    if (s[0] == '+') s.erase(0, 1);
    return mpz_class(s, 10);
  }

  std::shared_ptr<const Impl> impl_;
};

/// A field element bundled with its field.
class Scalar {
 public:
  Scalar(Field field, Elem value) : field_(std::move(field)), value_(std::move(value)) {}

  static Scalar from_int(const Field& f, long long v) { return {f, f.from_int(v)}; }
  static Scalar parse(const Field& f, std::string_view text) { return {f, f.parse(text)}; }

  const Field& field() const { return field_; }
  const Elem& value() const { return value_; }
  bool is_zero() const { return field_.is_zero(value_); }
  std::string to_string() const { return field_.format(value_); }

  Scalar operator+(const Scalar& o) const { return {field_, field_.add(value_, same(o))}; }
  Scalar operator-(const Scalar& o) const { return {field_, field_.sub(value_, same(o))}; }
  Scalar operator*(const Scalar& o) const { return {field_, field_.mul(value_, same(o))}; }
  Scalar operator/(const Scalar& o) const { return {field_, field_.div(value_, same(o))}; }
  Scalar operator-() const { return {field_, field_.neg(value_)}; }
  Scalar inv() const { return {field_, field_.inv(value_)}; }

  bool operator==(const Scalar& o) const { return field_ == o.field_ && field_.equal(value_, o.value_); }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

 private:
  const Elem& same(const Scalar& o) const {
    if (!(field_ == o.field_))
      throw Error(Errc::FieldMismatch, field_.describe() + " vs " + o.field_.describe());
    return o.value_;
  }

  Field field_;
  Elem value_;
};

/// The identity or a power x -> x^(p^e) of the Frobenius map.
class FieldAutomorphism {
 public:
  FieldAutomorphism() = default;
  static FieldAutomorphism identity() { return {}; }
  static FieldAutomorphism frobenius(unsigned power) {
    FieldAutomorphism f;
    f.power_ = power;
    return f;
  }

  unsigned power() const { return power_; }
  bool is_identity() const { return power_ == 0; }

  void check_compatible(const Field& field) const {
    if (power_ == 0) return;
    if (field.kind() != FieldKind::Extension)
      throw Error(Errc::IncompatibleAutomorphism, "Frobenius needs an extension field, got " + field.describe());
    if (power_ >= field.degree())
      throw Error(Errc::IncompatibleAutomorphism, "Frobenius power must be below the extension degree");
  }

  Elem apply(const Field& field, const Elem& x) const {
    check_compatible(field);
    Elem y = x;
    for (unsigned i = 0; i < power_; ++i) y = field.pow(y, field.characteristic());
    return y;
  }

  Scalar apply(const Scalar& x) const { return {x.field(), apply(x.field(), x.value())}; }

  FieldAutomorphism inverse(const Field& field) const {
    check_compatible(field);
    if (power_ == 0) return {};
    return frobenius(field.degree() - power_);
  }

  bool operator==(const FieldAutomorphism&) const = default;

  std::string describe() const {
    return power_ == 0 ? "identity" : "frobenius^" + std::to_string(power_);
  }

 private:
  unsigned power_ = 0;
};

}  // namespace matlie
