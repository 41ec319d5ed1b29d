#pragma once

// Reference implementations that share no code with the library: plain
// integer arithmetic mod p, hand-written small-field tables, and brute-force
// enumerations.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace oracle {

// GF(4) = GF(2)[x]/(x^2+x+1), elements coded 0, 1, x=2, x+1=3.
inline constexpr std::array<std::array<int, 4>, 4> kGf4Add{{{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}}};
inline constexpr std::array<std::array<int, 4>, 4> kGf4Mul{{{0, 0, 0, 0}, {0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}}};
inline constexpr std::array<int, 4> kGf4Frobenius{0, 1, 3, 2};

// GF(9) = GF(3)[x]/(x^2+1) as pairs a + b x.
struct Gf9 {
  int a = 0, b = 0;
  friend Gf9 operator+(Gf9 u, Gf9 v) { return {(u.a + v.a) % 3, (u.b + v.b) % 3}; }
  friend Gf9 operator*(Gf9 u, Gf9 v) { return {((u.a * v.a - u.b * v.b) % 3 + 3) % 3, (u.a * v.b + u.b * v.a) % 3}; }
  friend bool operator==(Gf9, Gf9) = default;
  int code() const { return a + 3 * b; }
};

inline Gf9 gf9_pow(Gf9 x, int e) {
  Gf9 r{1, 0};
  while (e-- > 0) r = r * x;
  return r;
}

// Dense matrices over GF(p) with long long entries.
using IMat = std::vector<std::vector<long long>>;

inline IMat zeros(std::size_t r, std::size_t c) { return IMat(r, std::vector<long long>(c, 0)); }

inline IMat unit(std::size_t n, std::size_t i, std::size_t j) {  // 0-based
  IMat m = zeros(n, n);
  m[i][j] = 1;
  return m;
}

inline IMat mul(const IMat& a, const IMat& b, long long p) {
  IMat c = zeros(a.size(), b[0].size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] = (c[i][j] + a[i][k] * b[k][j]) % p;
  return c;
}

inline IMat bracket(const IMat& a, const IMat& b, long long p) {
  IMat x = mul(a, b, p), y = mul(b, a, p);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x[0].size(); ++j) x[i][j] = ((x[i][j] - y[i][j]) % p + p) % p;
  return x;
}

inline bool is_zero(const IMat& a) {
  for (const auto& row : a)
    for (auto v : row)
      if (v) return false;
  return true;
}

inline long long inv_mod(long long a, long long p) {
  long long r = 1, e = p - 2;
  a %= p;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

inline std::size_t rank_mod(IMat m, long long p) {
  std::size_t rank = 0;
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][c] % p == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    const long long inv = inv_mod(m[rank][c], p);
    for (auto& v : m[rank]) v = v * inv % p;
    for (std::size_t r = 0; r < rows; ++r)
      if (r != rank && m[r][c] % p) {
        const long long f = m[r][c];
        for (std::size_t k = 0; k < cols; ++k) m[r][k] = ((m[r][k] - f * m[rank][k]) % p + p) % p;
      }
    ++rank;
  }
  return rank;
}

/// Left-normed [r, x_1, ..., x_k].
inline IMat left_normed(IMat r, const std::vector<IMat>& xs, long long p) {
  for (const auto& x : xs) r = bracket(r, x, p);
  return r;
}

/// Calls fn on every k-tuple (with repetition) of indices into [0, size).
inline void for_each_tuple(std::size_t size, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k, 0);
  if (size == 0) return;
  for (;;) {
    fn(idx);
    std::size_t pos = 0;
    while (pos < k && ++idx[pos] == size) idx[pos++] = 0;
    if (pos == k) return;
  }
}

/// dim L_k(H) over GF(p) by enumerating every k-tuple: the constraint matrix
/// has one column per unit E(a,b) and rows from [E(a,b), x_1, ..., x_k].
inline std::size_t lie_centralizer_dim(const std::vector<IMat>& h, std::size_t n, std::size_t k, long long p,
                                       const std::function<bool(const std::vector<std::size_t>&)>& admissible = {}) {
  IMat constraints;
  for_each_tuple(h.size(), k, [&](const std::vector<std::size_t>& idx) {
    if (admissible && !admissible(idx)) return;
    std::vector<IMat> xs;
    for (auto i : idx) xs.push_back(h[i]);
    std::vector<IMat> images;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) images.push_back(left_normed(unit(n, a, b), xs, p));
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v) {
        std::vector<long long> row;
        for (const auto& img : images) row.push_back(img[u][v]);
        constraints.push_back(std::move(row));
      }
  });
  return n * n - (constraints.empty() ? 0 : rank_mod(constraints, p));
}

/// Whether [r, x_1, ..., x_k] vanishes for every k-tuple from H.
inline bool in_lie_centralizer(const IMat& r, const std::vector<IMat>& h, std::size_t k, long long p) {
  bool ok = true;
  for_each_tuple(h.size(), k, [&](const std::vector<std::size_t>& idx) {
    std::vector<IMat> xs;
    for (auto i : idx) xs.push_back(h[i]);
    ok = ok && is_zero(left_normed(r, xs, p));
  });
  return ok;
}

/// max (n^2 - sum n_i^2)/2 + 1 over compositions of n with at most `parts` parts.
inline std::uint64_t max_over_compositions(std::uint64_t n, std::uint64_t parts) {
  std::uint64_t best = 0;
  std::function<void(std::uint64_t, std::uint64_t, std::uint64_t)> rec = [&](std::uint64_t left, std::uint64_t used,
                                                                            std::uint64_t squares) {
    if (left == 0) {
      best = std::max(best, (n * n - squares) / 2 + 1);
      return;
    }
    if (used == parts) return;
    for (std::uint64_t part = 1; part <= left; ++part) rec(left - part, used + 1, squares + part * part);
  };
  rec(n, 0, 0);
  return best;
}

}  // namespace oracle
