#pragma once

// Seeded random scalars and matrices. Draws go straight through the
// mt19937_64 output with rejection sampling, so a seed gives the same corpus
// on every platform (std::uniform_int_distribution is implementation-defined).

#include <cstdint>
#include <random>

#include "matlie/field.hpp"
#include "matlie/matrix.hpp"

namespace matlie {

class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  /// Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return x % bound;
  }

  /// Uniform in [lo, hi].
  long long between(long long lo, long long hi) {
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  bool coin() { return below(2) == 1; }

 private:
  std::mt19937_64 engine_;
};

/// Rationals are small fractions a/b with |a| <= 6, 1 <= b <= 4; finite-field
/// elements are uniform.
inline Elem random_elem(const Field& field, Rng& rng) {
  if (!field.is_finite()) {
    mpq_class q(static_cast<long>(rng.between(-6, 6)), static_cast<unsigned long>(rng.between(1, 4)));
    q.canonicalize();
    return Elem{q};
  }
  return field.element(rng.below(*field.order()));
}

inline Scalar random_nonzero_scalar(const Field& field, Rng& rng) {
  for (;;) {
    Elem e = random_elem(field, rng);
    if (!field.is_zero(e)) return {field, std::move(e)};
  }
}

/// Each entry is nonzero with probability about `density`.
inline Matrix random_matrix(const Field& field, std::size_t rows, std::size_t cols, Rng& rng,
                            double density = 1.0) {
  Matrix m(field, rows, cols);
  const auto threshold = static_cast<std::uint64_t>(density * 1000.0);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (rng.below(1000) < threshold) m(i, j) = random_elem(field, rng);
  return m;
}

inline Matrix random_invertible(const Field& field, std::size_t n, Rng& rng) {
  for (;;) {
    Matrix m = random_matrix(field, n, n, rng);
    if (rank(m) == n) return m;
  }
}

}  // namespace matlie
