#pragma once

// Lie centralizers L_k(H) = { r : [r, x1, ..., xk]_{k+1} = 0 for all xi in H },
// their ascending chain, Lie-nilpotency indices, the hereditary variants, and
// the dimension bounds for Lie-nilpotent subalgebras of M_n.
//
// Levels are built by preimages: r is in L_{k+1}(H) iff [r, h] is in L_k(H)
// for every h in H, so each level is one linear solve. A subset given as a
// span is quantified over its basis (the left-normed bracket is multilinear).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "matlie/error.hpp"
#include "matlie/lie.hpp"
#include "matlie/matrix.hpp"
#include "matlie/random.hpp"
#include "matlie/subspace.hpp"

namespace matlie {

class SubsetH {
 public:
  /// A finite set; duplicates are dropped.
  static SubsetH finite(const Field& field, std::size_t n, std::vector<Matrix> elements) {
    SubsetH h(field, n);
    h.finite_ = true;
    for (auto& x : elements) {
      h.check(x);
      if (std::find(h.quantifiers_.begin(), h.quantifiers_.end(), x) == h.quantifiers_.end())
        h.quantifiers_.push_back(std::move(x));
    }
    return h;
  }

  static SubsetH finite(std::vector<Matrix> elements) {
    if (elements.empty()) throw Error(Errc::EmptySequence, "empty set needs an explicit ambient");
    const Field f = elements.front().field();
    const std::size_t n = elements.front().rows();
    return finite(f, n, std::move(elements));
  }

  static SubsetH span_of(const Subspace& s) {
    if (s.rows() != s.cols()) throw Error(Errc::MixedShapes, "H must live in a square matrix algebra");
    SubsetH h(s.field(), s.rows());
    h.quantifiers_ = s.basis();
    h.span_ = s;
    return h;
  }

  bool is_finite() const { return finite_; }
  const Field& field() const { return field_; }
  std::size_t n() const { return n_; }
  /// The elements (finite set) or the canonical basis (span).
  const std::vector<Matrix>& quantifiers() const { return quantifiers_; }

  Subspace linear_span() const {
    if (span_) return *span_;
    return Subspace::span(field_, n_, n_, quantifiers_);
  }

  bool contains(const Matrix& x) const {
    if (span_) return span_->contains(x);
    return std::find(quantifiers_.begin(), quantifiers_.end(), x) != quantifiers_.end();
  }

 private:
  SubsetH(Field field, std::size_t n) : field_(std::move(field)), n_(n) {}
  void check(const Matrix& x) const {
    if (!(x.field() == field_) || x.rows() != n_ || x.cols() != n_)
      throw Error(Errc::MixedShapes, "elements of H must be n x n over one field");
  }

  Field field_;
  std::size_t n_;
  bool finite_ = false;
  std::vector<Matrix> quantifiers_;
  std::optional<Subspace> span_;
};

namespace detail {

inline std::vector<LinearMap> adjoint_maps(const SubsetH& h) {
  const Subspace full = Subspace::full(h.field(), h.n(), h.n());
  std::vector<LinearMap> ads;
  for (const auto& x : h.quantifiers())
    ads.push_back(LinearMap::from_function(full, [&](const Matrix& r) { return bracket(r, x); }));
  return ads;
}

inline Subspace next_level(const SubsetH& h, const std::vector<LinearMap>& ads, const Subspace& previous) {
  if (ads.empty()) return Subspace::full(h.field(), h.n(), h.n());
  return preimage(ads, previous);
}

}  // namespace detail

inline Subspace lie_centralizer(const SubsetH& h, std::size_t k) {
  if (k < 1) throw Error(Errc::PreconditionViolated, "k must be >= 1");
  const auto ads = detail::adjoint_maps(h);
  Subspace level(h.field(), h.n(), h.n());
  for (std::size_t i = 0; i < k; ++i) level = detail::next_level(h, ads, level);
  return level;
}

struct CentralizerChain {
  std::vector<Subspace> levels;          // levels[i] = L_{i+1}(H)
  std::size_t stabilization_index = 0;   // least t with L_t = L_{t+1}; 0 if not reached
  Subspace omega;                        // L_t (the last level if not stabilized)

  bool stabilized() const { return stabilization_index > 0; }
  const Subspace& level(std::size_t k) const { return levels.at(k - 1); }
};

/// Computes L_1, L_2, ... until two consecutive levels coincide (at the latest
/// after n^2 levels), then `extra_levels` more. `max_k` caps the search.
inline CentralizerChain centralizer_chain(const SubsetH& h, std::optional<std::size_t> max_k = std::nullopt,
                                          std::size_t extra_levels = 0) {
  const std::size_t d = h.n() * h.n();
  const std::size_t cap = max_k.value_or(std::max<std::size_t>(d, 1));
  const auto ads = detail::adjoint_maps(h);
  CentralizerChain chain{{}, 0, Subspace(h.field(), h.n(), h.n())};
  Subspace level(h.field(), h.n(), h.n());
  for (std::size_t k = 1; k <= cap + 1; ++k) {
    level = detail::next_level(h, ads, level);
    chain.levels.push_back(level);
    if (k >= 2 && chain.levels[k - 1] == chain.levels[k - 2]) {
      chain.stabilization_index = k - 1;
      break;
    }
  }
  if (!chain.stabilized() && !max_k)
    throw Error(Errc::PreconditionViolated, "chain failed to stabilize within n^2 levels");
  chain.omega = chain.stabilized() ? chain.levels[chain.stabilization_index - 1] : chain.levels.back();
  for (std::size_t i = 0; i < extra_levels; ++i)
    chain.levels.push_back(detail::next_level(h, ads, chain.levels.back()));
  return chain;
}

/// Evaluates [x1, ..., xj, r, x_{j+1}, ..., xk]_{k+1} for r in L_k(H) and
/// reports whether it vanishes.
inline bool permuted_insertion_check(const SubsetH& h, const Matrix& r, std::span<const Matrix> xs,
                                     std::size_t j) {
  const std::size_t k = xs.size();
  if (k < 1 || j < 1 || j > k) throw Error(Errc::PreconditionViolated, "need 1 <= j <= k");
  for (const auto& x : xs)
    if (!h.contains(x)) throw Error(Errc::PreconditionViolated, "x_i must belong to H");
  if (!lie_centralizer(h, k).contains(r)) throw Error(Errc::PreconditionViolated, "r is not in L_k(H)");
  std::vector<Matrix> seq(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(j));
  seq.push_back(r);
  seq.insert(seq.end(), xs.begin() + static_cast<std::ptrdiff_t>(j), xs.end());
  return left_normed(seq).is_zero();
}

/// Checks L_p(H) L_q(H) inside L_{p+q-1}(H) on every pair of basis elements,
/// plus `samples` products of random combinations.
inline bool product_theorem_check(const SubsetH& h, std::size_t p, std::size_t q, std::size_t samples = 0,
                                  std::uint64_t seed = 0) {
  if (p < 1 || q < 1) throw Error(Errc::PreconditionViolated, "p, q must be >= 1");
  const auto lp = lie_centralizer(h, p).basis();
  const auto lq = lie_centralizer(h, q).basis();
  const Subspace target = lie_centralizer(h, p + q - 1);
  for (const auto& r : lp)
    for (const auto& s : lq)
      if (!target.contains(r * s)) return false;
  Rng rng(seed);
  auto combo = [&](const std::vector<Matrix>& basis) {
    Matrix m(h.field(), h.n(), h.n());
    for (const auto& b : basis) m += Scalar(h.field(), random_elem(h.field(), rng)) * b;
    return m;
  };
  for (std::size_t i = 0; i < samples; ++i)
    if (!target.contains(combo(lp) * combo(lq))) return false;
  return true;
}

enum class HereditaryProperty { Distinct, LinearlyIndependent };

inline constexpr std::uint64_t kMaxHereditaryTuples = 1'000'000;

/// L_k^P(H): r with [r, x1..xk] = 0 for the k-tuples from the finite set H
/// that have property P. Enumerates the tuples directly.
inline Subspace hereditary_centralizer(const SubsetH& h, std::size_t k, HereditaryProperty prop) {
  if (!h.is_finite()) throw Error(Errc::PreconditionViolated, "hereditary variants need a finite H");
  if (k < 1) throw Error(Errc::PreconditionViolated, "k must be >= 1");
  const auto& xs = h.quantifiers();
  const Field& f = h.field();
  const std::size_t n = h.n();
  const std::size_t size = xs.size();
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < k; ++i) {
    count *= std::max<std::size_t>(size, 1);
    if (count > kMaxHereditaryTuples)
      throw Error(Errc::EnumerationTooLarge, "|H|^k exceeds " + std::to_string(kMaxHereditaryTuples));
  }
  if (size == 0) return Subspace::full(f, n, n);

  std::vector<Matrix> units;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j) units.push_back(matrix_unit(f, n, i, j));

  EchelonBasis constraints(f, n * n);
  std::vector<std::size_t> idx(k, 0);
  std::vector<Matrix> tuple(k);
  for (;;) {
    for (std::size_t i = 0; i < k; ++i) tuple[i] = xs[idx[i]];
    bool admissible = true;
    if (prop == HereditaryProperty::Distinct) {
      for (std::size_t a = 0; a < k && admissible; ++a)
        for (std::size_t b = a + 1; b < k && admissible; ++b) admissible = !(tuple[a] == tuple[b]);
    } else {
      admissible = Subspace::span(f, n, n, tuple).dim() == k;
    }
    if (admissible && constraints.dim() < n * n) {
      std::vector<std::vector<Elem>> cols;
      cols.reserve(units.size());
      for (const auto& u : units) cols.push_back(vectorize(left_normed(u, tuple)));
      for (std::size_t row = 0; row < n * n; ++row) {
        std::vector<Elem> c(n * n);
        for (std::size_t u = 0; u < units.size(); ++u) c[u] = cols[u][row];
        constraints.insert(std::move(c));
      }
    }
    std::size_t pos = 0;
    while (pos < k && ++idx[pos] == size) idx[pos++] = 0;
    if (pos == k) break;
  }
  std::vector<Matrix> gens;
  for (auto& v : constraints.null_space()) gens.emplace_back(f, n, n, std::move(v));
  return Subspace::span(f, n, n, gens);
}

// Bounds --------------------------------------------------------------------

/// Closed form of max { (n^2 - sum n_i^2)/2 + 1 : n_1 + ... + n_{k+1} = n }.
inline std::uint64_t dim_bound_g(std::uint64_t n, std::uint64_t k) {
  if (n < 1 || k < 1) throw Error(Errc::PreconditionViolated, "n, k must be >= 1");
  const std::uint64_t parts = k + 1;
  const std::uint64_t q = n / parts, r = n % parts;
  return (n * n - (parts - r) * q * q - r * (q + 1) * (q + 1)) / 2 + 1;
}

/// 1 + (n^2 - n)/2.
inline std::uint64_t conjecture_bound(std::uint64_t n) { return 1 + (n * n - n) / 2; }

/// n split into k+1 nearly equal parts, larger parts first, zeros dropped.
inline std::vector<std::size_t> balanced_composition(std::size_t n, std::size_t k) {
  const std::size_t parts = k + 1;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < parts; ++i) {
    const std::size_t part = n / parts + (i < n % parts ? 1 : 0);
    if (part) out.push_back(part);
  }
  return out;
}

/// Scalars plus every entry strictly above the diagonal blocks given by
/// `parts`; dimension (n^2 - sum parts_i^2)/2 + 1.
inline Subspace extremal_block_algebra(const Field& field, std::size_t n, std::span<const std::size_t> parts) {
  std::size_t total = 0;
  for (auto p : parts) {
    if (p == 0) throw Error(Errc::InvalidComposition, "parts must be positive");
    total += p;
  }
  if (total != n || n == 0) throw Error(Errc::InvalidComposition, "parts must sum to n");
  std::vector<std::size_t> block(n);
  for (std::size_t b = 0, row = 0; b < parts.size(); ++b)
    for (std::size_t i = 0; i < parts[b]; ++i) block[row++] = b;
  std::vector<Matrix> gens{Matrix::identity(field, n)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (block[i] < block[j]) gens.push_back(matrix_unit(field, n, i + 1, j + 1));
  return Subspace::span(field, n, n, gens);
}

// Nilpotency ----------------------------------------------------------------

struct BoundComparison {
  std::uint64_t conjecture_bound = 0;
  bool within_conjecture_bound = false;
  std::optional<std::uint64_t> g_bound;  // dim_bound_g(n, index) when Lie-nilpotent
  std::optional<bool> within_g_bound;
};

struct NilpotencyReport {
  bool is_lie_nilpotent = false;
  std::optional<std::size_t> index;  // least k with H in L_k(H)
  bool is_omega_lie_nilpotent = false;
  std::size_t dim = 0;               // dimension of span(H)
  std::size_t stabilization_index = 0;
  BoundComparison bounds;
};

inline NilpotencyReport nilpotency_report(const SubsetH& h) {
  const auto chain = centralizer_chain(h);
  NilpotencyReport report;
  report.dim = h.linear_span().dim();
  report.stabilization_index = chain.stabilization_index;
  auto contains_all = [&](const Subspace& level) {
    return std::all_of(h.quantifiers().begin(), h.quantifiers().end(),
                       [&](const Matrix& x) { return level.contains(x); });
  };
  for (std::size_t k = 1; k <= chain.stabilization_index; ++k)
    if (contains_all(chain.level(k))) {
      report.index = k;
      break;
    }
  report.is_lie_nilpotent = report.index.has_value();
  report.is_omega_lie_nilpotent = contains_all(chain.omega);
  if (report.is_lie_nilpotent != report.is_omega_lie_nilpotent)
    throw Error(Errc::PreconditionViolated, "omega-Lie-nilpotent without a finite index");
  const std::uint64_t n = h.n();
  report.bounds.conjecture_bound = conjecture_bound(n);
  report.bounds.within_conjecture_bound = report.dim <= report.bounds.conjecture_bound;
  if (report.index) {
    report.bounds.g_bound = dim_bound_g(n, *report.index);
    report.bounds.within_g_bound = report.dim <= *report.bounds.g_bound;
  }
  return report;
}

inline NilpotencyReport nilpotency_report(const Subspace& s) { return nilpotency_report(SubsetH::span_of(s)); }

// Experiments ----------------------------------------------------------------

/// Records, for a subspace V, its Lie-nilpotency index and that of the
/// associative subalgebra it generates. No relation between them is assumed.
struct HullProbe {
  std::size_t n = 0;
  std::size_t dim_v = 0;
  std::optional<std::size_t> index_v;
  std::size_t ambient_dim = 0;
  std::size_t dim_hull = 0;
  std::optional<std::size_t> index_hull;
};

inline HullProbe probe_associative_hull(const Subspace& v) {
  HullProbe probe;
  probe.n = v.rows();
  probe.dim_v = v.dim();
  probe.ambient_dim = v.ambient_dim();
  probe.index_v = nilpotency_report(v).index;
  if (v.is_zero()) return probe;
  const auto hull = closure(v.basis(), ProductKind::Associative).subspace;
  probe.dim_hull = hull.dim();
  probe.index_hull = nilpotency_report(hull).index;
  return probe;
}

/// One data point against the conjectured dimension bound for
/// omega-Lie-nilpotent Lie subalgebras.
struct ConjectureEvidence {
  std::size_t n = 0;
  std::size_t dim = 0;
  bool omega_lie_nilpotent = false;
  std::uint64_t bound = 0;
  bool within_bound = false;
};

inline ConjectureEvidence conjecture_evidence(std::span<const Matrix> generators) {
  const auto lie = closure(generators, ProductKind::Lie).subspace;
  const auto report = nilpotency_report(lie);
  ConjectureEvidence e;
  e.n = lie.rows();
  e.dim = lie.dim();
  e.omega_lie_nilpotent = report.is_omega_lie_nilpotent;
  e.bound = conjecture_bound(e.n);
  e.within_bound = e.dim <= e.bound;
  return e;
}

}  // namespace matlie
