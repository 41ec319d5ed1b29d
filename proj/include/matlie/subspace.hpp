#pragma once

// Linear subspaces of M_{r x c}(K), stored as the reduced row-echelon form of
// the row-major vectorizations of a spanning set. RREF is unique, so equality
// is a structural comparison of bases.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "matlie/error.hpp"
#include "matlie/field.hpp"
#include "matlie/matrix.hpp"

namespace matlie {

/// Incrementally maintained RREF of a set of vectors of fixed length.
class EchelonBasis {
 public:
  EchelonBasis(Field field, std::size_t length) : field_(std::move(field)), length_(length) {}

  const Field& field() const { return field_; }
  std::size_t length() const { return length_; }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<std::vector<Elem>>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Residue of v modulo the span: zero exactly at pivot columns, and the
  /// zero vector iff v lies in the span. Linear in v.
  std::vector<Elem> reduce(std::vector<Elem> v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const std::size_t p = pivots_[r];
      if (field_.is_zero(v[p])) continue;
      const Elem factor = v[p];
      const auto& row = rows_[r];
      for (std::size_t j = p; j < length_; ++j)
        if (!field_.is_zero(row[j])) v[j] = field_.sub(v[j], field_.mul(factor, row[j]));
    }
    return v;
  }

  bool contains(std::vector<Elem> v) const {
    const auto r = reduce(std::move(v));
    return std::all_of(r.begin(), r.end(), [&](const Elem& e) { return field_.is_zero(e); });
  }

  /// Adds v to the span; returns whether the dimension grew.
  bool insert(std::vector<Elem> v) {
    if (v.size() != length_) throw Error(Errc::MixedShapes, "vector length differs from ambient length");
    v = reduce(std::move(v));
    std::size_t lead = 0;
    while (lead < length_ && field_.is_zero(v[lead])) ++lead;
    if (lead == length_) return false;
    const Elem scale = field_.inv(v[lead]);
    for (std::size_t j = lead; j < length_; ++j) v[j] = field_.mul(scale, v[j]);
    for (auto& row : rows_) {
      if (field_.is_zero(row[lead])) continue;
      const Elem factor = row[lead];
      for (std::size_t j = lead; j < length_; ++j)
        if (!field_.is_zero(v[j])) row[j] = field_.sub(row[j], field_.mul(factor, v[j]));
    }
    const auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), lead) - pivots_.begin();
    pivots_.insert(pivots_.begin() + pos, lead);
    rows_.insert(rows_.begin() + pos, std::move(v));
    return true;
  }

  /// Basis of {c : sum c_j col_j = 0} when the stored rows are read as the
  /// rows of a constraint matrix (free variables set to 1 one at a time).
  std::vector<std::vector<Elem>> null_space() const {
    std::vector<bool> is_pivot(length_, false);
    for (auto p : pivots_) is_pivot[p] = true;
    std::vector<std::vector<Elem>> out;
    for (std::size_t free = 0; free < length_; ++free) {
      if (is_pivot[free]) continue;
      std::vector<Elem> v(length_, field_.zero());
      v[free] = field_.one();
      for (std::size_t r = 0; r < rows_.size(); ++r) v[pivots_[r]] = field_.neg(rows_[r][free]);
      out.push_back(std::move(v));
    }
    return out;
  }

  bool operator==(const EchelonBasis& o) const {
    if (!(field_ == o.field_) || length_ != o.length_ || pivots_ != o.pivots_) return false;
    for (std::size_t r = 0; r < rows_.size(); ++r)
      for (std::size_t j = 0; j < length_; ++j)
        if (!field_.equal(rows_[r][j], o.rows_[r][j])) return false;
    return true;
  }

 private:
  Field field_;
  std::size_t length_;
  std::vector<std::vector<Elem>> rows_;
  std::vector<std::size_t> pivots_;
};

inline std::vector<Elem> vectorize(const Matrix& x) { return {x.data().begin(), x.data().end()}; }

class Subspace {
 public:
  /// The zero subspace of M_{rows x cols}(field).
  Subspace(Field field, std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), echelon_(std::move(field), rows * cols) {}

  static Subspace full(const Field& field, std::size_t rows, std::size_t cols) {
    Subspace s(field, rows, cols);
    for (std::size_t k = 0; k < rows * cols; ++k) {
      std::vector<Elem> v(rows * cols, field.zero());
      v[k] = field.one();
      s.echelon_.insert(std::move(v));
    }
    return s;
  }

  static Subspace span(const Field& field, std::size_t rows, std::size_t cols, std::span<const Matrix> gens) {
    Subspace s(field, rows, cols);
    for (const auto& g : gens) s.absorb(g);
    return s;
  }

  /// Span of a nonempty generator list (the ambient is taken from it).
  static Subspace span(std::span<const Matrix> gens) {
    if (gens.empty()) throw Error(Errc::EmptySequence, "span of an empty list needs an explicit ambient");
    return span(gens.front().field(), gens.front().rows(), gens.front().cols(), gens);
  }

  static Subspace scalars(const Field& field, std::size_t n) {
    const Matrix id = Matrix::identity(field, n);
    return span(field, n, n, std::span<const Matrix>(&id, 1));
  }

  const Field& field() const { return echelon_.field(); }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t ambient_dim() const { return rows_ * cols_; }
  std::size_t dim() const { return echelon_.dim(); }
  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == ambient_dim(); }
  const EchelonBasis& echelon() const { return echelon_; }

  /// Canonical basis as matrices.
  std::vector<Matrix> basis() const {
    std::vector<Matrix> out;
    out.reserve(dim());
    for (const auto& row : echelon_.rows()) out.emplace_back(field(), rows_, cols_, row);
    return out;
  }

  bool contains(const Matrix& x) const {
    check_ambient(x);
    return echelon_.contains(vectorize(x));
  }

  /// Residue of x modulo this subspace (zero iff x is contained).
  Matrix reduce(const Matrix& x) const {
    check_ambient(x);
    return Matrix(field(), rows_, cols_, echelon_.reduce(vectorize(x)));
  }

  bool is_subspace_of(const Subspace& other) const {
    check_ambient(other);
    for (const auto& row : echelon_.rows())
      if (!other.echelon_.contains(row)) return false;
    return true;
  }

  bool operator==(const Subspace& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && echelon_ == o.echelon_;
  }

  friend Subspace sum(const Subspace& a, const Subspace& b) {
    a.check_ambient(b);
    Subspace s = a;
    for (const auto& row : b.echelon_.rows()) s.echelon_.insert(row);
    return s;
  }

  /// Computed from the kernel of [basis(a) | -basis(b)]; checks the dimension
  /// identity dim a + dim b = dim(a+b) + dim(a /\ b).
  friend Subspace intersect(const Subspace& a, const Subspace& b) {
    a.check_ambient(b);
    const Field& f = a.field();
    const std::size_t p = a.dim(), q = b.dim(), len = a.ambient_dim();
    EchelonBasis constraints(f, p + q);
    for (std::size_t k = 0; k < len; ++k) {
      std::vector<Elem> row(p + q);
      for (std::size_t i = 0; i < p; ++i) row[i] = a.echelon_.rows()[i][k];
      for (std::size_t j = 0; j < q; ++j) row[p + j] = f.neg(b.echelon_.rows()[j][k]);
      constraints.insert(std::move(row));
    }
    Subspace out(f, a.rows_, a.cols_);
    for (const auto& c : constraints.null_space()) {
      std::vector<Elem> v(len, f.zero());
      for (std::size_t i = 0; i < p; ++i) {
        if (f.is_zero(c[i])) continue;
        for (std::size_t k = 0; k < len; ++k) v[k] = f.add(v[k], f.mul(c[i], a.echelon_.rows()[i][k]));
      }
      out.echelon_.insert(std::move(v));
    }
    if (a.dim() + b.dim() != sum(a, b).dim() + out.dim())
      throw Error(Errc::PreconditionViolated, "modular dimension identity failed");
    return out;
  }

 private:
  void absorb(const Matrix& g) {
    check_ambient(g);
    echelon_.insert(vectorize(g));
  }
  void check_ambient(const Matrix& x) const {
    if (!(x.field() == field()) || x.rows() != rows_ || x.cols() != cols_)
      throw Error(Errc::MixedShapes, "matrix does not live in this subspace's ambient space");
  }
  void check_ambient(const Subspace& s) const {
    if (!(s.field() == field()) || s.rows_ != rows_ || s.cols_ != cols_)
      throw Error(Errc::MixedShapes, "subspaces live in different ambient spaces");
  }

  std::size_t rows_;
  std::size_t cols_;
  EchelonBasis echelon_;
};

/// {v : Xv = 0} as a subspace of column vectors.
inline Subspace kernel(const Matrix& x) {
  const auto vs = null_space_basis(x);
  return Subspace::span(x.field(), x.cols(), 1, vs);
}

/// A linear map given by the images of the canonical basis of its domain.
struct LinearMap {
  Subspace domain;
  std::vector<Matrix> images;

  static LinearMap from_function(const Subspace& domain, const std::function<Matrix(const Matrix&)>& fn) {
    LinearMap m{domain, {}};
    for (const auto& b : domain.basis()) m.images.push_back(fn(b));
    return m;
  }
};

/// {v in D : L(v) in T for every map L}, for maps sharing the domain D.
/// One null-space computation on the stacked residues of the images modulo T.
inline Subspace preimage(std::span<const LinearMap> maps, const Subspace& target) {
  if (maps.empty()) throw Error(Errc::EmptySequence, "preimage needs at least one map");
  const Subspace& domain = maps.front().domain;
  const Field& f = domain.field();
  const std::size_t p = domain.dim();
  EchelonBasis constraints(f, p);
  for (const auto& map : maps) {
    if (!(map.domain == domain)) throw Error(Errc::MixedShapes, "maps have different domains");
    if (map.images.size() != p) throw Error(Errc::MixedShapes, "image count differs from domain dimension");
    std::vector<std::vector<Elem>> residues;
    residues.reserve(p);
    for (const auto& img : map.images) residues.push_back(vectorize(target.reduce(img)));
    for (std::size_t k = 0; k < target.ambient_dim(); ++k) {
      std::vector<Elem> row(p);
      bool nonzero = false;
      for (std::size_t i = 0; i < p; ++i) {
        row[i] = residues[i][k];
        nonzero = nonzero || !f.is_zero(row[i]);
      }
      if (nonzero) constraints.insert(std::move(row));
    }
  }
  const auto basis = domain.basis();
  std::vector<Matrix> gens;
  for (const auto& c : constraints.null_space()) {
    Matrix v(f, domain.rows(), domain.cols());
    for (std::size_t i = 0; i < p; ++i)
      if (!f.is_zero(c[i])) v += Scalar(f, c[i]) * basis[i];
    gens.push_back(std::move(v));
  }
  return Subspace::span(f, domain.rows(), domain.cols(), gens);
}

inline Subspace preimage(const LinearMap& map, const Subspace& target) {
  return preimage(std::span<const LinearMap>(&map, 1), target);
}

}  // namespace matlie
