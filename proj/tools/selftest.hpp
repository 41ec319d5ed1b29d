#pragma once

// Quick invariant sweep over every module, run by the `selftest` subcommand.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "matlie/matlie.hpp"

namespace matlie::cli {

struct SelftestOutcome {
  std::string name;
  bool passed = false;
  std::string detail;
};

namespace selftest_detail {

inline std::vector<Field> small_fields() {
  return {Field::rationals(), Field::prime(5), Field::prime(7), Field::extension(2, 2), Field::extension(3, 2)};
}

inline std::uint64_t composition_max(std::uint64_t n, std::uint64_t parts) {
  // max over compositions of n into `parts` positive parts of (n^2 - sum n_i^2)/2 + 1
  std::uint64_t best = 0;
  std::function<void(std::uint64_t, std::uint64_t, std::uint64_t)> rec = [&](std::uint64_t left, std::uint64_t k,
                                                                            std::uint64_t squares) {
    if (k == 0) {
      if (left == 0) best = std::max(best, (n * n - squares) / 2 + 1);
      return;
    }
    for (std::uint64_t part = 1; part + (k - 1) <= left; ++part) rec(left - part, k - 1, squares + part * part);
  };
  rec(n, parts, 0);
  return best;
}

}  // namespace selftest_detail

inline std::vector<SelftestOutcome> run_selftest(std::uint64_t seed) {
  using namespace selftest_detail;
  std::vector<SelftestOutcome> out;
  auto record = [&](std::string name, const std::function<bool()>& body) {
    SelftestOutcome o{std::move(name), false, {}};
    try {
      o.passed = body();
    } catch (const std::exception& e) {
      o.detail = e.what();
    }
    out.push_back(std::move(o));
  };
  Rng rng(seed);

  record("field axioms", [&] {
    for (const auto& f : small_fields())
      for (int s = 0; s < 200; ++s) {
        const Scalar a(f, random_elem(f, rng)), b(f, random_elem(f, rng)), c(f, random_elem(f, rng));
        if (!(a + b == b + a) || !(a * (b + c) == a * b + a * c)) return false;
        if (!a.is_zero() && !(a * a.inv() == Scalar::from_int(f, 1))) return false;
      }
    return true;
  });

  record("frobenius is a field automorphism", [&] {
    for (const auto& f : {Field::extension(2, 2), Field::extension(2, 3), Field::extension(3, 2), Field::extension(3, 4)})
      for (unsigned e = 1; e < f.degree(); ++e) {
        const auto fr = FieldAutomorphism::frobenius(e);
        std::vector<bool> hit(*f.order(), false);
        for (std::uint64_t x = 0; x < *f.order(); ++x) {
          const Elem y = fr.apply(f, f.element(x));
          hit[std::get<std::uint64_t>(y)] = true;
          const Elem z = f.element((x * 7 + 3) % *f.order());
          if (!f.equal(fr.apply(f, f.mul(f.element(x), z)), f.mul(y, fr.apply(f, z)))) return false;
          if (!f.equal(fr.apply(f, f.add(f.element(x), z)), f.add(y, fr.apply(f, z)))) return false;
        }
        if (std::find(hit.begin(), hit.end(), false) != hit.end()) return false;
      }
    return true;
  });

  record("rref idempotent; singular iff nonzero kernel iff rank < n", [&] {
    for (const auto& f : small_fields())
      for (int s = 0; s < 20; ++s) {
        const std::size_t n = static_cast<std::size_t>(rng.between(1, 5));
        const Matrix x = random_matrix(f, n, n, rng, 0.5);
        const auto r = rref(x);
        if (!(rref(r.reduced).reduced == r.reduced)) return false;
        bool invertible = true;
        try {
          (void)inverse(x);
        } catch (const Error&) {
          invertible = false;
        }
        if (invertible == !kernel(x).is_zero() || invertible != (r.rank == n)) return false;
      }
    return true;
  });

  record("symplectic involution is an involutive anti-automorphism", [&] {
    for (const auto& f : {Field::rationals(), Field::prime(7)})
      for (int s = 0; s < 20; ++s) {
        const Matrix x = random_matrix(f, 8, 8, rng), y = random_matrix(f, 8, 8, rng);
        if (!(symplectic_involution(symplectic_involution(x)) == x)) return false;
        if (!(symplectic_involution(x * y) == symplectic_involution(y) * symplectic_involution(x))) return false;
      }
    return true;
  });

  record("subspace canonicality and modular law", [&] {
    for (const auto& f : small_fields())
      for (int s = 0; s < 10; ++s) {
        std::vector<Matrix> a, b;
        for (int i = 0; i < 3; ++i) a.push_back(random_matrix(f, 3, 3, rng, 0.4));
        for (int i = 0; i < 3; ++i) b.push_back(random_matrix(f, 3, 3, rng, 0.4));
        const auto sa = Subspace::span(f, 3, 3, a), sb = Subspace::span(f, 3, 3, b);
        std::vector<Matrix> rev(a.rbegin(), a.rend());
        if (!(Subspace::span(f, 3, 3, rev) == sa)) return false;
        if (sa.dim() + sb.dim() != sum(sa, sb).dim() + intersect(sa, sb).dim()) return false;
      }
    return true;
  });

  record("P and E11 Lie-generate M_n (n <= 5)", [&] {
    for (const auto& f : {Field::rationals(), Field::prime(5), Field::prime(7)})
      for (std::size_t n = 2; n <= 5; ++n) {
        const std::vector<Matrix> g{cyclic_permutation(f, n), matrix_unit(f, n, 1, 1)};
        if (closure(g, ProductKind::Lie).subspace.dim() != n * n) return false;
      }
    return true;
  });

  record("S and E(n,1) generate M_n; Lie closure of S and E21 is traceless", [&] {
    const Field f = Field::rationals();
    for (std::size_t n = 2; n <= 5; ++n) {
      const std::vector<Matrix> gen{shift_matrix(f, n), matrix_unit(f, n, n, 1)};
      if (!closure(gen, ProductKind::Associative).subspace.is_full()) return false;
      const std::vector<Matrix> g{shift_matrix(f, n), matrix_unit(f, n, 2, 1)};
      for (const auto& b : closure(g, ProductKind::Lie).subspace.basis())
        if (!trace(b).is_zero()) return false;
    }
    return true;
  });

  record("Jacobi and Leibniz expansion", [&] {
    for (const auto& f : {Field::rationals(), Field::prime(5)})
      for (int s = 0; s < 30; ++s) {
        const std::size_t n = static_cast<std::size_t>(rng.between(1, 4));
        const Matrix x = random_matrix(f, n, n, rng), y = random_matrix(f, n, n, rng), z = random_matrix(f, n, n, rng);
        if (!(bracket(bracket(x, y), z) + bracket(bracket(y, z), x) + bracket(bracket(z, x), y)).is_zero())
          return false;
        std::vector<Matrix> xs;
        for (auto k = rng.between(1, 4); k > 0; --k) xs.push_back(random_matrix(f, n, n, rng));
        if (!leibniz_expansion_check(x, y, xs)) return false;
      }
    return true;
  });

  record("centralizer chain laws and product theorem", [&] {
    for (const auto& f : {Field::rationals(), Field::prime(5)})
      for (int s = 0; s < 10; ++s) {
        const std::size_t n = static_cast<std::size_t>(rng.between(2, 3));
        std::vector<Matrix> elems;
        for (auto c = rng.between(1, 3); c > 0; --c) elems.push_back(random_matrix(f, n, n, rng, 0.4));
        const auto h = SubsetH::finite(f, n, elems);
        const auto chain = centralizer_chain(h, std::nullopt, 3);
        if (!chain.stabilized() || chain.stabilization_index > n * n) return false;
        if (!chain.levels.front().contains(Matrix::identity(f, n))) return false;
        for (std::size_t k = 0; k + 1 < chain.levels.size(); ++k)
          if (!chain.levels[k].is_subspace_of(chain.levels[k + 1])) return false;
        for (std::size_t k = chain.stabilization_index; k < chain.levels.size(); ++k)
          if (!(chain.levels[k] == chain.omega)) return false;
        if (!product_theorem_check(h, 2, 2)) return false;
      }
    return true;
  });

  record("bound closed form matches composition search (n <= 12)", [&] {
    for (std::uint64_t n = 1; n <= 12; ++n)
      for (std::uint64_t k = 1; k <= n; ++k)
        if (dim_bound_g(n, k) != composition_max(n, std::min(n, k + 1))) return false;
    return true;
  });

  record("conjugator recovery roundtrips", [&] {
    for (const auto& f : {Field::rationals(), Field::prime(5), Field::extension(2, 2)})
      for (int s = 0; s < 10; ++s) {
        const std::size_t n = static_cast<std::size_t>(rng.between(2, 4));
        const Matrix b = random_invertible(f, n, rng);
        const Matrix b_inv = inverse(b);
        if (!scalar_value(b_inv * recover_automorphism(AlgebraMap::conjugation(b)).conjugator)) return false;
        if (!scalar_value(b_inv * recover_antiautomorphism(AlgebraMap::anti_conjugation(b)).conjugator)) return false;
        if (f.kind() == FieldKind::Extension) {
          const auto fr = FieldAutomorphism::frobenius(1);
          if (!scalar_value(b_inv * recover_twisted_automorphism(AlgebraMap::conjugation(b, fr)).conjugator))
            return false;
        }
      }
    return true;
  });

  record("symplectic example", [&] {
    for (const auto& f : {Field::rationals(), Field::prime(7)}) {
      const auto ex = reproduce_symplectic_example(f);
      if (!ex.recovery.verified || !(ex.recovery.conjugator == symplectic_form(f, 8))) return false;
    }
    return true;
  });

  record("Lie automorphism decomposition", [&] {
    const Field f = Field::rationals();
    for (std::size_t n = 2; n <= 3; ++n) {
      const auto id = Matrix::identity(f, n);
      const auto shift = AlgebraMap::from_function(f, n, [&](const Matrix& x) { return x + trace(x) * id; });
      const auto d1 = decompose_lie_automorphism(shift);
      if (d1.sigma_kind != SigmaKind::Automorphism || !(d1.tau_coefficient == Scalar::from_int(f, 1))) return false;
      if (!d1.residual_zero || !tau_trace_property_check(shift, d1)) return false;
    }
    for (std::size_t n = 3; n <= 4; ++n) {
      const auto neg = AlgebraMap::from_function(f, n, [](const Matrix& x) { return -transpose(x); });
      const auto d2 = decompose_lie_automorphism(neg);
      if (d2.sigma_kind != SigmaKind::NegativeAntiAutomorphism || !d2.tau_coefficient.is_zero()) return false;
      if (!d2.residual_zero || !tau_trace_property_check(neg, d2)) return false;
    }
    return true;
  });

  return out;
}

}  // namespace matlie::cli
