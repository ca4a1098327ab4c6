#pragma once

// Invariant-factor bases for subgroups of Z/d_1 + ... + Z/d_k.
//
// A subgroup S generated by g_1..g_m is L / D where L is the row lattice of
// {g_s} together with diag(d) and D = row lattice of diag(d). Writing the rows
// of diag(d) in an HNF basis B of L gives a relation matrix C with
// S = Z^k / rowspan(C) in B-coordinates, and the Smith form of C supplies the
// invariant factors.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ringsieve/error.hpp"
#include "ringsieve/int_matrix.hpp"

namespace ringsieve {

class SubgroupBasis {
 public:
  SubgroupBasis(std::span<const std::int64_t> moduli,
                const std::vector<std::vector<std::int64_t>>& generators)
      : moduli_(moduli.begin(), moduli.end()) {
    const std::size_t k = moduli_.size();
    std::vector<IntVector> rows;
    for (const auto& g : generators) {
      if (g.size() != k) throw Error(ErrorKind::InvalidInput, "generator length mismatch");
      IntVector r(k);
      for (std::size_t i = 0; i < k; ++i) r[i] = static_cast<long>(g[i]);
      rows.push_back(std::move(r));
    }
    for (std::size_t i = 0; i < k; ++i) {
      IntVector r(k);
      r[i] = static_cast<long>(moduli_[i]);
      rows.push_back(std::move(r));
    }
    lattice_ = hnf(IntMatrix::from_rows(rows, k));
    IntMatrix relations(k, k);
    for (std::size_t i = 0; i < k; ++i) {
      IntVector r(k);
      r[i] = static_cast<long>(moduli_[i]);
      auto z = solve_upper(lattice_, r);
      for (std::size_t j = 0; j < k; ++j) relations(i, j) = (*z)[j];
    }
    basis_ = quotient_basis(hnf(relations));
  }

  std::vector<std::int64_t> invariant_factors() const {
    std::vector<std::int64_t> out;
    for (const auto& f : basis_.factors) out.push_back(f.get_si());
    return out;
  }

  std::size_t rank() const noexcept { return basis_.rank(); }

  /// Ambient coordinates (reduced) of the j-th invariant basis element.
  std::vector<std::int64_t> generator(std::size_t j) const {
    IntVector z = basis_.generators.row(j);
    return reduce(row_times(z, lattice_));
  }

  /// Invariant coordinates of an ambient element, or nullopt if outside S.
  std::optional<std::vector<std::int64_t>> coordinates(std::span<const std::int64_t> x) const {
    IntVector v(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) v[i] = static_cast<long>(x[i]);
    auto z = solve_upper(lattice_, v);
    if (!z) return std::nullopt;
    IntVector y = basis_.coordinates(*z);
    std::vector<std::int64_t> out;
    for (const auto& c : y) out.push_back(c.get_si());
    return out;
  }

 private:
  std::vector<std::int64_t> reduce(const IntVector& v) const {
    std::vector<std::int64_t> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      out[i] = mod_nonneg(v[i], Integer(static_cast<long>(moduli_[i]))).get_si();
    return out;
  }

  std::vector<std::int64_t> moduli_;
  IntMatrix lattice_;
  InvariantBasis basis_;
};

}  // namespace ringsieve
