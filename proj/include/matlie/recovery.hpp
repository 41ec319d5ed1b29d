#pragma once

// Constructive conjugator recovery for automorphisms and anti-automorphisms
// of M_n(K), possibly twisted by a field automorphism, and the decomposition
// of Lie automorphisms into sigma + tau.
//
// For an automorphism phi, with M = phi(S)^{n-1} phi(E(n,1)) and a nonzero a
// in ker(I - M), the matrix
//   A = [ phi(S)^{n-1} phi(E(n,1)) a | phi(S)^{n-2} phi(E(n,1)) a | ... | phi(E(n,1)) a ]
// satisfies phi(X) = A X A^{-1}. Anti-automorphisms use S^T and E(1,n) in
// place of S and E(n,1) and give phi(X) = A X^T A^{-1}. S, S^T, E(n,1) and
// E(1,n) have 0/1 entries, so a field twist never changes their images.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "matlie/error.hpp"
#include "matlie/field.hpp"
#include "matlie/lie.hpp"
#include "matlie/matrix.hpp"
#include "matlie/subspace.hpp"

namespace matlie {

/// An additive map on M_n(K) that is semilinear for `twist`:
///   map(X) = sum_{i,j} twist(x_ij) * image(i,j).
class AlgebraMap {
 public:
  /// `images` lists phi(E(i,j)) in row-major (i,j) order.
  AlgebraMap(Field field, std::size_t n, std::vector<Matrix> images, FieldAutomorphism twist = {})
      : field_(std::move(field)), n_(n), images_(std::move(images)), twist_(twist) {
    twist_.check_compatible(field_);
    if (images_.size() != n_ * n_) throw Error(Errc::DimensionMismatch, "need n^2 images");
    for (const auto& m : images_)
      if (!(m.field() == field_) || m.rows() != n_ || m.cols() != n_)
        throw Error(Errc::MixedShapes, "every image must be n x n over the map's field");
  }

  static AlgebraMap from_function(const Field& field, std::size_t n,
                                  const std::function<Matrix(const Matrix&)>& fn, FieldAutomorphism twist = {}) {
    std::vector<Matrix> images;
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = 1; j <= n; ++j) images.push_back(fn(matrix_unit(field, n, i, j)));
    return {field, n, std::move(images), twist};
  }

  static AlgebraMap identity(const Field& field, std::size_t n) {
    return from_function(field, n, [](const Matrix& x) { return x; });
  }

  static AlgebraMap transpose_map(const Field& field, std::size_t n) {
    return from_function(field, n, [](const Matrix& x) { return transpose(x); });
  }

  /// X -> B X_f B^{-1}.
  static AlgebraMap conjugation(const Matrix& b, FieldAutomorphism twist = {}) {
    const Matrix b_inv = inverse(b);
    return from_function(
        b.field(), b.rows(), [&](const Matrix& x) { return b * entrywise_map(x, twist) * b_inv; }, twist);
  }

  /// X -> B X_f^T B^{-1}.
  static AlgebraMap anti_conjugation(const Matrix& b, FieldAutomorphism twist = {}) {
    const Matrix b_inv = inverse(b);
    return from_function(
        b.field(), b.rows(), [&](const Matrix& x) { return b * transpose(entrywise_map(x, twist)) * b_inv; },
        twist);
  }

  const Field& field() const { return field_; }
  std::size_t n() const { return n_; }
  const FieldAutomorphism& twist() const { return twist_; }
  const std::vector<Matrix>& images() const { return images_; }

  /// phi(E(i,j)), 1-based.
  const Matrix& image(std::size_t i, std::size_t j) const {
    if (i < 1 || j < 1 || i > n_ || j > n_) throw Error(Errc::IndexOutOfRange, "unit index out of range");
    return images_[(i - 1) * n_ + (j - 1)];
  }

  Matrix operator()(const Matrix& x) const {
    if (!(x.field() == field_) || x.rows() != n_ || x.cols() != n_)
      throw Error(Errc::MixedShapes, "argument outside M_n(K)");
    Matrix out(field_, n_, n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        if (field_.is_zero(x(i, j))) continue;
        out += Scalar(field_, twist_.apply(field_, x(i, j))) * images_[i * n_ + j];
      }
    return out;
  }

  AlgebraMap negated() const {
    std::vector<Matrix> neg;
    neg.reserve(images_.size());
    for (const auto& m : images_) neg.push_back(-m);
    return {field_, n_, std::move(neg), twist_};
  }

  /// phi(S) = sum phi(E(i,i+1)).
  Matrix image_of_shift() const {
    Matrix s(field_, n_, n_);
    for (std::size_t i = 1; i < n_; ++i) s += image(i, i + 1);
    return s;
  }

  /// phi(S^T) = sum phi(E(i+1,i)).
  Matrix image_of_transposed_shift() const {
    Matrix s(field_, n_, n_);
    for (std::size_t i = 1; i < n_; ++i) s += image(i + 1, i);
    return s;
  }

 private:
  Field field_;
  std::size_t n_;
  std::vector<Matrix> images_;
  FieldAutomorphism twist_;
};

struct RecoveryResult {
  Matrix conjugator;     // determined up to a nonzero scalar factor
  Matrix kernel_vector;  // the chosen a, an n x 1 column
  std::size_t kernel_dim = 0;
  bool verified = false;
};

namespace detail {

struct Assembled {
  Matrix conjugator;
  Matrix kernel_vector;
  std::size_t kernel_dim;
};

/// Builds [g^{n-1} c a | g^{n-2} c a | ... | c a] from a generator image g and
/// a corner image c, where a is the first canonical basis vector of
/// ker(I - g^{n-1} c). Throws NotAnAutomorphismImagePair if that kernel is
/// zero or the result is singular.
inline Assembled assemble_conjugator(const Matrix& g, const Matrix& c) {
  if (!g.is_square() || !c.is_square() || g.rows() != c.rows() || !(g.field() == c.field()))
    throw Error(Errc::MixedShapes, "image pair must be two n x n matrices over one field");
  const Field& f = g.field();
  const std::size_t n = g.rows();
  const Matrix m = power(g, n - 1) * c;
  const Subspace ker = kernel(Matrix::identity(f, n) - m);
  if (ker.is_zero()) throw Error(Errc::NotAnAutomorphismImagePair, "I - M has trivial kernel");
  Matrix a = ker.basis().front();
  Matrix conj(f, n, n);
  Matrix col = c * a;
  for (std::size_t k = n; k-- > 0;) {
    for (std::size_t i = 0; i < n; ++i) conj(i, k) = col(i, 0);
    if (k) col = g * col;
  }
  if (rank(conj) != n) throw Error(Errc::NotAnAutomorphismImagePair, "assembled matrix is singular");
  return {std::move(conj), std::move(a), ker.dim()};
}

/// Whether A E(i,j) A^{-1} (or A E(j,i) A^{-1} when `transposed`) equals the
/// map's image of E(i,j) for every unit, using column(A) x row(A^{-1}).
inline bool reproduces_units(const AlgebraMap& map, const Matrix& a, bool transposed, bool negate = false) {
  const Field& f = map.field();
  const std::size_t n = map.n();
  const Matrix a_inv = inverse(a);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t r = transposed ? j : i, s = transposed ? i : j;
      const Matrix& target = map.images()[i * n + j];
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v) {
          Elem e = f.mul(a(u, r), a_inv(s, v));
          if (negate) e = f.neg(e);
          if (!f.equal(e, target(u, v))) return false;
        }
    }
  return true;
}

inline RecoveryResult recover(const AlgebraMap& map, bool anti, Errc failure) {
  const std::size_t n = map.n();
  const Matrix g = anti ? map.image_of_transposed_shift() : map.image_of_shift();
  const Matrix& corner = anti ? map.image(1, n) : map.image(n, 1);
  Assembled parts;
  try {
    parts = assemble_conjugator(g, corner);
  } catch (const Error& e) {
    if (e.code() != Errc::NotAnAutomorphismImagePair) throw;
    throw Error(failure, e.what());
  }
  if (!reproduces_units(map, parts.conjugator, anti))
    throw Error(failure, "recovered conjugator does not reproduce every E(i,j) image");
  return {std::move(parts.conjugator), std::move(parts.kernel_vector), parts.kernel_dim, true};
}

}  // namespace detail

/// Conjugator from the two images phi(S), phi(E(n,1)). `verified` says whether
/// A S A^{-1} and A E(n,1) A^{-1} reproduce the inputs.
inline RecoveryResult conjugator_from_images(const Matrix& phi_s, const Matrix& phi_en1) {
  auto parts = detail::assemble_conjugator(phi_s, phi_en1);
  const Field& f = phi_s.field();
  const std::size_t n = phi_s.rows();
  const Matrix inv = inverse(parts.conjugator);
  const bool ok = parts.conjugator * shift_matrix(f, n) * inv == phi_s &&
                  parts.conjugator * matrix_unit(f, n, n, 1) * inv == phi_en1;
  return {std::move(parts.conjugator), std::move(parts.kernel_vector), parts.kernel_dim, ok};
}

/// phi(X) = A X A^{-1}.
inline RecoveryResult recover_automorphism(const AlgebraMap& map) {
  if (!map.twist().is_identity())
    throw Error(Errc::PreconditionViolated, "map is twisted; use recover_twisted_automorphism");
  return detail::recover(map, false, Errc::NotAnAutomorphism);
}

/// beta(X) = B X_f B^{-1}.
inline RecoveryResult recover_twisted_automorphism(const AlgebraMap& map) {
  return detail::recover(map, false, Errc::NotATwistedAutomorphism);
}

/// phi(X) = A X^T A^{-1}.
inline RecoveryResult recover_antiautomorphism(const AlgebraMap& map) {
  if (!map.twist().is_identity())
    throw Error(Errc::PreconditionViolated, "map is twisted; use recover_twisted_antiautomorphism");
  return detail::recover(map, true, Errc::NotAnAntiAutomorphism);
}

/// beta(X) = B X_f^T B^{-1}.
inline RecoveryResult recover_twisted_antiautomorphism(const AlgebraMap& map) {
  return detail::recover(map, true, Errc::NotATwistedAntiAutomorphism);
}

// Classification --------------------------------------------------------------

enum class MapKind { Automorphism, AntiAutomorphism, LieAutomorphism, None };

inline std::string to_string(MapKind k) {
  switch (k) {
    case MapKind::Automorphism: return "Automorphism";
    case MapKind::AntiAutomorphism: return "AntiAutomorphism";
    case MapKind::LieAutomorphism: return "LieAutomorphism";
    case MapKind::None: return "None";
  }
  return "None";
}

inline bool is_bijective(const AlgebraMap& map) {
  return Subspace::span(map.field(), map.n(), map.n(), map.images()).is_full();
}

/// phi(E(i,j) E(k,l)) = phi(E(i,j)) phi(E(k,l)) for all units (or the reversed
/// product when `anti`).
inline bool is_multiplicative(const AlgebraMap& map, bool anti = false) {
  const std::size_t n = map.n();
  const Matrix zero(map.field(), n, n);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j)
      for (std::size_t k = 1; k <= n; ++k)
        for (std::size_t l = 1; l <= n; ++l) {
          const Matrix& lhs = j == k ? map.image(i, l) : zero;
          const Matrix rhs = anti ? map.image(k, l) * map.image(i, j) : map.image(i, j) * map.image(k, l);
          if (!(lhs == rhs)) return false;
        }
  return true;
}

inline bool preserves_brackets(const AlgebraMap& map) {
  const std::size_t n = map.n();
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j)
      for (std::size_t k = 1; k <= n; ++k)
        for (std::size_t l = 1; l <= n; ++l) {
          Matrix lhs(map.field(), n, n);
          if (j == k) lhs += map.image(i, l);
          if (l == i) lhs -= map.image(k, j);
          if (!(lhs == bracket(map.image(i, j), map.image(k, l)))) return false;
        }
  return true;
}

/// Strongest label among multiplicative, anti-multiplicative and
/// bracket-preserving; None if the map is not bijective or preserves nothing.
inline MapKind classify_map(const AlgebraMap& map) {
  if (!is_bijective(map)) return MapKind::None;
  if (is_multiplicative(map)) return MapKind::Automorphism;
  if (is_multiplicative(map, true)) return MapKind::AntiAutomorphism;
  if (preserves_brackets(map)) return MapKind::LieAutomorphism;
  return MapKind::None;
}

// Lie automorphisms -------------------------------------------------------------

enum class SigmaKind { Automorphism, NegativeAntiAutomorphism };

inline std::string to_string(SigmaKind k) {
  return k == SigmaKind::Automorphism ? "Automorphism" : "NegativeAntiAutomorphism";
}

/// psi(X) = sigma(X) + tau(X) I with tau(X) = c * f(tr X) and sigma either
/// X -> T X_f T^{-1} or X -> -T X_f^T T^{-1}.
struct LieDecomposition {
  SigmaKind sigma_kind = SigmaKind::Automorphism;
  Matrix sigma_conjugator;
  Scalar tau_coefficient{Field::rationals(), Field::rationals().zero()};
  FieldAutomorphism twist;
  bool residual_zero = false;
  std::vector<std::string> warnings;

  Matrix sigma(const Matrix& x) const {
    const Matrix xf = entrywise_map(x, twist);
    const Matrix inv = inverse(sigma_conjugator);
    if (sigma_kind == SigmaKind::Automorphism) return sigma_conjugator * xf * inv;
    return -(sigma_conjugator * transpose(xf) * inv);
  }

  Scalar tau(const Matrix& x) const { return tau_coefficient * twist.apply(trace(x)); }
};

namespace detail {

inline std::vector<std::string> classification_warnings(const Field& f, std::size_t n) {
  std::vector<std::string> w;
  if (n >= 3 && f.is_finite() && n - 1 < 64 && *f.order() < (std::uint64_t{1} << (n - 1)))
    w.push_back("field has fewer than 2^(n-1) elements; the standard classification hypotheses fail");
  if (n == 2 && f.characteristic() == 2)
    w.push_back("n = 2 in characteristic 2; the standard classification hypotheses fail");
  return w;
}

}  // namespace detail

inline LieDecomposition decompose_lie_automorphism(const AlgebraMap& psi) {
  const Field& f = psi.field();
  const std::size_t n = psi.n();
  if (f.characteristic() != 0 && n % f.characteristic() == 0)
    throw Error(Errc::CharacteristicDividesN, "char K divides n, so tr cannot isolate tau");
  if (!is_bijective(psi) || !preserves_brackets(psi))
    throw Error(Errc::NotDecomposable, "map is not a bijective bracket-preserving map");

  const Scalar tr11 = trace(psi.image(1, 1));
  const Scalar n_scalar = Scalar::from_int(f, static_cast<long long>(n));
  const Matrix id = Matrix::identity(f, n);

  for (int eps : {+1, -1}) {
    const Scalar c = (tr11 - Scalar::from_int(f, eps)) / n_scalar;
    std::vector<Matrix> sigma_images = psi.images();
    for (std::size_t i = 0; i < n; ++i) sigma_images[i * n + i] -= c * id;
    const AlgebraMap sigma(f, n, std::move(sigma_images), psi.twist());
    const AlgebraMap candidate = eps > 0 ? sigma : sigma.negated();
    if (!is_multiplicative(candidate, eps < 0)) continue;
    RecoveryResult rec;
    try {
      rec = eps > 0 ? recover_twisted_automorphism(candidate) : recover_twisted_antiautomorphism(candidate);
    } catch (const Error&) {
      continue;
    }
    LieDecomposition out;
    out.sigma_kind = eps > 0 ? SigmaKind::Automorphism : SigmaKind::NegativeAntiAutomorphism;
    out.sigma_conjugator = rec.conjugator;
    out.tau_coefficient = c;
    out.twist = psi.twist();
    out.warnings = detail::classification_warnings(f, n);
    if (!psi.twist().is_identity() && !c.is_zero())
      out.warnings.push_back("tau is semilinear for the twist (c * f(tr X)), not K-linear");
    // psi(E(i,j)) == sigma(E(i,j)) + tau(E(i,j)) I, with sigma rebuilt from the conjugator.
    out.residual_zero = detail::reproduces_units(candidate, rec.conjugator, eps < 0);
    for (std::size_t i = 1; i <= n && out.residual_zero; ++i)
      for (std::size_t j = 1; j <= n && out.residual_zero; ++j) {
        const Matrix unit = matrix_unit(f, n, i, j);
        out.residual_zero = psi.image(i, j) == out.sigma(unit) + out.tau(unit) * id;
      }
    if (out.residual_zero) return out;
  }
  throw Error(Errc::NotDecomposable, "neither sigma branch reproduces the map");
}

/// tau(E(i,j)) = tau(tr(E(i,j)) E(1,1)) on every unit, where tau(X) I is the
/// residual psi(X) - sigma(X).
inline bool tau_trace_property_check(const AlgebraMap& psi, const LieDecomposition& d) {
  const Field& f = psi.field();
  const std::size_t n = psi.n();
  std::vector<Scalar> tau;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j) {
      const Matrix unit = matrix_unit(f, n, i, j);
      const auto value = scalar_value(psi.image(i, j) - d.sigma(unit));
      if (!value) throw Error(Errc::ResidualNotScalar, "psi - sigma is not scalar on a matrix unit");
      tau.push_back(*value);
    }
  const Scalar& tau11 = tau[0];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Scalar& t = tau[i * n + j];
      if (i == j ? !(t == tau11) : !t.is_zero()) return false;
    }
  return true;
}

// The symplectic involution on M_8 ------------------------------------------------

struct SymplecticExample {
  Matrix phi_transposed_shift;  // phi(S^T)
  Matrix phi_power;             // phi(S^T)^{n-1}
  Matrix m;                     // phi(S^T)^{n-1} phi(E(1,n))
  RecoveryResult recovery;
};

inline SymplecticExample reproduce_symplectic_example(const Field& field, std::size_t n = 8) {
  const auto map = AlgebraMap::from_function(field, n, [](const Matrix& x) { return symplectic_involution(x); });
  SymplecticExample ex;
  ex.phi_transposed_shift = map.image_of_transposed_shift();
  ex.phi_power = power(ex.phi_transposed_shift, n - 1);
  ex.m = ex.phi_power * map.image(1, n);
  ex.recovery = recover_antiautomorphism(map);
  return ex;
}

/// [[0, -I],[I, 0]] with m x m blocks.
inline Matrix symplectic_form(const Field& field, std::size_t n) {
  if (n % 2) throw Error(Errc::OddDimension, "symplectic form needs even size");
  const std::size_t m = n / 2;
  Matrix j(field, n, n);
  for (std::size_t i = 0; i < m; ++i) {
    j(i, m + i) = field.neg(field.one());
    j(m + i, i) = field.one();
  }
  return j;
}

}  // namespace matlie
