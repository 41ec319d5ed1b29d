#pragma once

// Commutators, left-normed products, subalgebra closure and the centralizer
// intersection of a generating set.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "matlie/error.hpp"
#include "matlie/matrix.hpp"
#include "matlie/subspace.hpp"

namespace matlie {

inline Matrix bracket(const Matrix& x, const Matrix& y) {
  if (!x.is_square() || !y.is_square() || x.rows() != y.rows())
    throw Error(Errc::DimensionMismatch, "bracket needs square matrices of one size");
  return x * y - y * x;
}

/// [x1, ..., xm]_m = [[x1, ..., x_{m-1}]_{m-1}, xm], with [x1]_1 = x1.
inline Matrix left_normed(std::span<const Matrix> xs) {
  if (xs.empty()) throw Error(Errc::EmptySequence, "left-normed commutator of nothing");
  Matrix acc = xs.front();
  for (std::size_t i = 1; i < xs.size(); ++i) acc = bracket(acc, xs[i]);
  return acc;
}

inline Matrix left_normed(std::initializer_list<Matrix> xs) {
  return left_normed(std::span<const Matrix>(xs.begin(), xs.size()));
}

/// [r, x1, ..., xk]_{k+1}; k = 0 gives r.
inline Matrix left_normed(const Matrix& r, std::span<const Matrix> xs) {
  Matrix acc = r;
  for (const auto& x : xs) acc = bracket(acc, x);
  return acc;
}

enum class ProductKind { Lie, Associative };

struct ClosureResult {
  Subspace subspace;
  std::size_t rounds = 0;
  ProductKind kind = ProductKind::Lie;
};

/// Smallest subspace containing the generators and closed under the bracket
/// (Lie) or the matrix product (Associative; the identity is not adjoined).
///
/// Worklist: each sweep multiplies every element added in the previous sweep
/// against every element found so far (generators included) and spans in the
/// results. A sweep that adds nothing ends the loop, after which every pair of
/// canonical basis elements is checked once more.
inline ClosureResult closure(std::span<const Matrix> generators, ProductKind kind) {
  if (generators.empty()) throw Error(Errc::EmptySequence, "closure of an empty generator set");
  const Field& f = generators.front().field();
  const std::size_t n = generators.front().rows();
  for (const auto& g : generators)
    if (!g.is_square() || g.rows() != n || !(g.field() == f))
      throw Error(Errc::MixedShapes, "generators must be square matrices of one size and field");

  EchelonBasis span(f, n * n);
  std::vector<Matrix> elements;
  elements.reserve(n * n);  // one entry per dimension gained, so never reallocates
  std::vector<std::size_t> frontier;
  for (const auto& g : generators)
    if (span.insert(vectorize(g))) {
      frontier.push_back(elements.size());
      elements.push_back(g);
    }

  auto consider = [&](Matrix m, std::vector<std::size_t>& next) {
    if (span.insert(vectorize(m))) {
      next.push_back(elements.size());
      elements.push_back(std::move(m));
    }
  };

  std::size_t rounds = 0;
  while (!frontier.empty()) {
    ++rounds;
    std::vector<std::size_t> next;
    const std::size_t known = elements.size();
    for (std::size_t idx : frontier) {
      for (std::size_t j = 0; j < known; ++j) {
        const Matrix& x = elements[idx];
        const Matrix& y = elements[j];
        if (kind == ProductKind::Lie) {
          consider(bracket(x, y), next);
        } else {
          consider(x * y, next);
          consider(y * x, next);
        }
      }
    }
    frontier = std::move(next);
  }

  Subspace result = Subspace::span(f, n, n, elements);
  const auto basis = result.basis();
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const Matrix p = kind == ProductKind::Lie ? bracket(basis[i], basis[j]) : basis[i] * basis[j];
      if (!result.contains(p)) throw Error(Errc::PreconditionViolated, "closure fixpoint certification failed");
    }
  return {std::move(result), rounds, kind};
}

/// Executable witness of the expansion
///   [rs, x1..xk]_{k+1} = sum over I |_| J = {1..k} of [r, x_I]_{|I|+1} [s, x_J]_{|J|+1}
/// with I, J increasing. Evaluates both sides and compares them.
inline bool leibniz_expansion_check(const Matrix& r, const Matrix& s, std::span<const Matrix> xs) {
  if (xs.empty()) throw Error(Errc::EmptySequence, "expansion needs k >= 1");
  const std::size_t k = xs.size();
  if (k >= 8 * sizeof(std::size_t)) throw Error(Errc::EnumerationTooLarge, "too many factors");
  const Matrix lhs = left_normed(r * s, xs);
  Matrix rhs(r.field(), r.rows(), r.cols());
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    std::vector<Matrix> left, right;
    for (std::size_t i = 0; i < k; ++i) (mask >> i & 1 ? left : right).push_back(xs[i]);
    rhs += left_normed(r, left) * left_normed(s, right);
  }
  return lhs == rhs;
}

struct CentralizerCheck {
  Subspace intersection;             // intersection of Cen(a_i)
  bool generates_full_algebra = false;
  bool is_central = false;           // generates and the intersection is the scalars
};

/// Intersection of the centralizers of the generators, computed as the common
/// kernel of the maps ad(a_i), compared with the centre of M_n.
inline CentralizerCheck generating_centralizer_check(std::span<const Matrix> generators) {
  if (generators.empty()) throw Error(Errc::EmptySequence, "no generators");
  const Field& f = generators.front().field();
  const std::size_t n = generators.front().rows();
  for (const auto& g : generators)
    if (!g.is_square() || g.rows() != n || !(g.field() == f))
      throw Error(Errc::MixedShapes, "generators must be square matrices of one size and field");
  const Subspace full = Subspace::full(f, n, n);
  std::vector<LinearMap> ads;
  for (const auto& g : generators)
    ads.push_back(LinearMap::from_function(full, [&](const Matrix& r) { return bracket(r, g); }));
  Subspace meet = preimage(ads, Subspace(f, n, n));
  const bool generates = closure(generators, ProductKind::Associative).subspace.is_full();
  const bool central = generates && meet == Subspace::scalars(f, n);
  return {std::move(meet), generates, central};
}

}  // namespace matlie
