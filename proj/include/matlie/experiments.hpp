#pragma once

// Evidence runs for the open dimension bound on omega-Lie-nilpotent Lie
// subalgebras and for the Lie-nilpotency of associative hulls. They record
// observations; nothing here asserts either statement.

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "matlie/centralizer.hpp"
#include "matlie/lie.hpp"
#include "matlie/random.hpp"

namespace matlie {

struct EvidenceRow {
  std::string source;  // "random", "upper", "extremal"
  std::string field;
  std::size_t n = 0;
  std::size_t generators = 0;
  std::size_t dim = 0;
  bool omega_lie_nilpotent = false;
  std::optional<std::size_t> index;
  std::uint64_t conjecture_bound = 0;
  bool within_bound = false;
  std::size_t hull_dim = 0;
  std::optional<std::size_t> hull_index;
};

namespace detail {

inline EvidenceRow evidence_for(const std::string& source, const Subspace& lie, std::size_t generators) {
  EvidenceRow row;
  row.source = source;
  row.field = lie.field().describe();
  row.n = lie.rows();
  row.generators = generators;
  row.dim = lie.dim();
  const auto report = nilpotency_report(lie);
  row.omega_lie_nilpotent = report.is_omega_lie_nilpotent;
  row.index = report.index;
  row.conjecture_bound = conjecture_bound(row.n);
  row.within_bound = row.dim <= row.conjecture_bound;
  const auto probe = probe_associative_hull(lie);
  row.hull_dim = probe.dim_hull;
  row.hull_index = probe.index_hull;
  return row;
}

}  // namespace detail

/// Lie closures of random sparse generator sets, of random strictly upper
/// triangular generators shifted by scalars, and the extremal block algebras,
/// for n in [2, max_n] over Q and GF(5).
inline std::vector<EvidenceRow> run_evidence_experiment(std::uint64_t seed, std::size_t samples_per_n = 6,
                                                        std::size_t max_n = 4) {
  Rng rng(seed);
  std::vector<EvidenceRow> rows;
  for (const Field& f : {Field::rationals(), Field::prime(5)})
    for (std::size_t n = 2; n <= max_n; ++n) {
      for (std::size_t s = 0; s < samples_per_n; ++s) {
        const auto count = static_cast<std::size_t>(rng.between(1, 3));
        std::vector<Matrix> gens;
        for (std::size_t g = 0; g < count; ++g) gens.push_back(random_matrix(f, n, n, rng, 0.3));
        rows.push_back(detail::evidence_for("random", closure(gens, ProductKind::Lie).subspace, count));

        std::vector<Matrix> upper;
        for (std::size_t g = 0; g < count; ++g) {
          Matrix m = random_matrix(f, n, n, rng, 0.6);
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j <= i; ++j) m(i, j) = f.zero();
          const Elem c = random_elem(f, rng);
          for (std::size_t i = 0; i < n; ++i) m(i, i) = c;
          upper.push_back(std::move(m));
        }
        rows.push_back(detail::evidence_for("upper", closure(upper, ProductKind::Lie).subspace, count));
      }
      for (std::size_t k = 1; k < n; ++k) {
        const auto parts = balanced_composition(n, k);
        const auto v = extremal_block_algebra(f, n, parts);
        rows.push_back(detail::evidence_for("extremal", v, v.dim()));
      }
    }
  return rows;
}

inline std::string evidence_csv(const std::vector<EvidenceRow>& rows) {
  std::ostringstream os;
  auto opt = [](const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : std::string("none"); };
  os << "source,field,n,generators,dim,omega_lie_nilpotent,index,conjecture_bound,within_bound,hull_dim,hull_index\n";
  for (const auto& r : rows)
    os << r.source << ",\"" << r.field << "\"," << r.n << ',' << r.generators << ',' << r.dim << ','
       << r.omega_lie_nilpotent << ',' << opt(r.index) << ',' << r.conjecture_bound << ',' << r.within_bound << ','
       << r.hull_dim << ',' << opt(r.hull_index) << '\n';
  return os.str();
}

/// Columns n, k, g, conjecture_bound for 1 <= k <= n <= max_n.
inline std::string bounds_csv(std::size_t max_n) {
  std::ostringstream os;
  os << "n,k,g,conjecture_bound\n";
  for (std::size_t n = 1; n <= max_n; ++n)
    for (std::size_t k = 1; k <= n; ++k) os << n << ',' << k << ',' << dim_bound_g(n, k) << ',' << conjecture_bound(n) << '\n';
  return os.str();
}

}  // namespace matlie
