#pragma once

// Orders given by an integral multiplication table on a basis b_1 = 1, ..., b_n;
// ideals as full-rank sublattices in canonical HNF; finite quotients O / L
// realized as FiniteRings through the Smith form of L.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ringsieve/construct.hpp"
#include "ringsieve/error.hpp"
#include "ringsieve/ideal.hpp"
#include "ringsieve/int_matrix.hpp"
#include "ringsieve/local.hpp"
#include "ringsieve/ring.hpp"
#include "ringsieve/rogers.hpp"

namespace ringsieve {

struct OrderPresentation {
  std::size_t rank = 0;
  /// table[i][j] = coordinates of b_i * b_j (0-based, b_0 = 1).
  std::vector<std::vector<IntVector>> table;
};

struct OrderConfig {
  std::size_t max_rank = 8;
};

class Order {
 public:
  static Order validate(const OrderPresentation& p, const OrderConfig& config = {}) {
    const std::size_t n = p.rank;
    if (n < 1) throw Error(ErrorKind::InvalidInput, "order rank must be positive");
    if (n > config.max_rank)
      throw Error(ErrorKind::InvalidInput, "order rank " + std::to_string(n) + " exceeds configured maximum");
    if (p.table.size() != n) throw Error(ErrorKind::InvalidInput, "multiplication table must be n x n");
    for (const auto& row : p.table) {
      if (row.size() != n) throw Error(ErrorKind::InvalidInput, "multiplication table must be n x n");
      for (const auto& v : row)
        if (v.size() != n) throw Error(ErrorKind::InvalidInput, "table entries must have length n");
    }
    Order o;
    o.p_ = p;
    for (std::size_t j = 0; j < n; ++j) {
      IntVector e(n);
      e[j] = 1;
      if (p.table[0][j] != e || p.table[j][0] != e)
        throw Error(ErrorKind::BadUnit, "b1 does not act as the identity on b" + std::to_string(j + 1));
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (p.table[i][j] != p.table[j][i])
          throw Error(ErrorKind::NotCommutative,
                      "b" + std::to_string(i + 1) + "*b" + std::to_string(j + 1) + " is not symmetric");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l) {
          if (o.multiply(p.table[i][j], o.unit(l)) != o.multiply(o.unit(i), p.table[j][l]))
            throw Error(ErrorKind::NotAssociative, "fails on basis triple " + detail::triple_name(i, j, l));
        }
    return o;
  }

  std::size_t rank() const noexcept { return p_.rank; }
  const OrderPresentation& presentation() const noexcept { return p_; }

  IntVector unit(std::size_t i) const {
    IntVector e(rank());
    e[i] = 1;
    return e;
  }
  IntVector one() const { return unit(0); }

  IntVector multiply(const IntVector& x, const IntVector& y) const {
    const std::size_t n = rank();
    IntVector out(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (y[j] == 0) continue;
        const Integer f = x[i] * y[j];
        const auto& s = p_.table[i][j];
        for (std::size_t l = 0; l < n; ++l) out[l] += f * s[l];
      }
    }
    return out;
  }

 private:
  OrderPresentation p_;
};

/// Full-rank sublattice of Z^n kept in canonical row HNF.
class IntegerLattice {
 public:
  static IntegerLattice from_generators(const std::vector<IntVector>& rows, std::size_t n) {
    if (rows.empty()) throw Error(ErrorKind::RankDeficient, "no generators");
    IntMatrix h = hnf(IntMatrix::from_rows(rows, n));
    if (h.rows() != n)
      throw Error(ErrorKind::RankDeficient,
                  "generators span rank " + std::to_string(h.rows()) + " < " + std::to_string(n));
    IntegerLattice l;
    l.basis_ = std::move(h);
    return l;
  }

  const IntMatrix& basis() const noexcept { return basis_; }
  std::size_t dimension() const noexcept { return basis_.cols(); }
  Integer index() const { return triangular_det(basis_); }

  bool contains(const IntVector& x) const { return solve_upper(basis_, x).has_value(); }

  /// Canonical representative of x modulo the lattice: coordinate i in [0, pivot_i).
  IntVector reduce(IntVector x) const {
    for (std::size_t i = 0; i < basis_.rows(); ++i) {
      const Integer q = floor_div(x[i], basis_(i, i));
      if (q == 0) continue;
      for (std::size_t j = i; j < x.size(); ++j) x[j] -= q * basis_(i, j);
    }
    return x;
  }

  friend bool operator==(const IntegerLattice& a, const IntegerLattice& b) { return a.basis_ == b.basis_; }

 private:
  IntMatrix basis_;
};

/// The O-module spanned by {g * b_i}, i.e. the ideal generated by gens.
inline IntegerLattice order_ideal(const Order& o, const std::vector<IntVector>& gens) {
  if (gens.empty()) throw Error(ErrorKind::InvalidInput, "an ideal needs at least one generator");
  std::vector<IntVector> rows;
  for (const auto& g : gens) {
    if (g.size() != o.rank()) throw Error(ErrorKind::InvalidInput, "generator length differs from order rank");
    for (std::size_t i = 0; i < o.rank(); ++i) rows.push_back(o.multiply(g, o.unit(i)));
  }
  return IntegerLattice::from_generators(rows, o.rank());
}

/// L1 n L2: the rows of HNF [[B1, B1], [B2, 0]] with vanishing left block
/// span {(0, u B1) : u B1 = -v B2}.
inline IntegerLattice lattice_intersect(const IntegerLattice& a, const IntegerLattice& b) {
  const std::size_t n = a.dimension();
  if (b.dimension() != n) throw Error(ErrorKind::InvalidInput, "lattice dimensions differ");
  IntMatrix m(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) = a.basis()(i, j);
      m(i, n + j) = a.basis()(i, j);
      m(n + i, j) = b.basis()(i, j);
    }
  const IntMatrix h = hnf(m);
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    bool left_zero = true;
    for (std::size_t j = 0; j < n; ++j)
      if (h(i, j) != 0) left_zero = false;
    if (!left_zero) continue;
    IntVector r(n);
    for (std::size_t j = 0; j < n; ++j) r[j] = h(i, n + j);
    rows.push_back(std::move(r));
  }
  return IntegerLattice::from_generators(rows, n);
}

/// True when every basis row times every order basis vector stays in L.
inline bool is_ideal_lattice(const Order& o, const IntegerLattice& l) {
  for (std::size_t r = 0; r < l.basis().rows(); ++r) {
    const IntVector row = l.basis().row(r);
    for (std::size_t i = 0; i < o.rank(); ++i)
      if (!l.contains(o.multiply(row, o.unit(i)))) return false;
  }
  return true;
}

/// O / L as a FiniteRing with the coordinate projection from Z^n.
struct OrderQuotient {
  RingPtr ring;
  IntegerLattice lattice;
  InvariantBasis basis;

  ElementId project(const IntVector& x) const {
    std::vector<std::int64_t> c;
    for (const auto& v : basis.coordinates(x)) c.push_back(v.get_si());
    return ring->index_of(c);
  }

  /// Canonical representative in Z^n of a quotient element.
  IntVector lift(ElementId y) const {
    const Element e = ring->element(y);
    IntVector c;
    for (auto v : e.coords) c.emplace_back(static_cast<long>(v));
    return lattice.reduce(basis.representative(c));
  }
};

inline OrderQuotient order_quotient(const Order& o, const IntegerLattice& l,
                                    const RingConfig& config = {}) {
  if (l.dimension() != o.rank()) throw Error(ErrorKind::InvalidInput, "lattice dimension differs from order rank");
  if (!is_ideal_lattice(o, l)) throw Error(ErrorKind::NotAnIdeal, "lattice is not closed under the order");
  if (l.index() > Integer(static_cast<unsigned long>(config.carrier_bound)))
    throw Error(ErrorKind::CarrierTooLarge, "quotient of order " + l.index().get_str() + " exceeds carrier bound");
  OrderQuotient q{nullptr, l, quotient_basis(l.basis())};
  const std::size_t k = q.basis.rank();
  auto coords = [&](const IntVector& x) {
    std::vector<std::int64_t> c;
    for (const auto& v : q.basis.coordinates(x)) c.push_back(v.get_si());
    return c;
  };
  RingPresentation p;
  for (const auto& f : q.basis.factors) p.invariant_factors.push_back(f.get_si());
  p.structure_constants.assign(k, std::vector<std::vector<std::int64_t>>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      p.structure_constants[i][j] =
          coords(o.multiply(q.basis.generators.row(i), q.basis.generators.row(j)));
  p.unit = coords(o.one());
  q.ring = detail::build_ring(p, config, true);
  return q;
}

struct OrderRogersReport {
  std::vector<IntegerLattice> ideals;
  IntegerLattice meet;
  OrderQuotient quotient;
  RogersReport report;
  /// Witness shifts as canonical order vectors.
  std::vector<IntVector> shifts;
};

struct OrderCheckOptions {
  RogersOptions rogers;
  RingConfig ring;
};

/// Condition (R) for nonzero order ideals, decided in O / (I_1 n ... n I_r).
inline OrderRogersReport rogers_check_order(const Order& o, const std::vector<std::vector<IntVector>>& gen_lists,
                                            const OrderCheckOptions& opt = {},
                                            const std::optional<std::vector<IntVector>>& shifts = std::nullopt) {
  if (gen_lists.empty()) throw Error(ErrorKind::InvalidInput, "need at least one ideal");
  std::vector<IntegerLattice> lattices;
  for (const auto& g : gen_lists) lattices.push_back(order_ideal(o, g));
  IntegerLattice meet = lattices.front();
  for (std::size_t i = 1; i < lattices.size(); ++i) meet = lattice_intersect(meet, lattices[i]);
  OrderQuotient q = order_quotient(o, meet, opt.ring);

  std::vector<Ideal> ideals;
  for (const auto& l : lattices) {
    std::vector<ElementId> gens;
    for (std::size_t r = 0; r < l.basis().rows(); ++r) gens.push_back(q.project(l.basis().row(r)));
    ideals.push_back(ideal_generated(q.ring, gens));
  }

  RogersReport rep;
  if (q.ring->is_zero_ring()) {
    // Every ideal is the whole order; all images collapse to one point.
    rep.ideals = ideals;
    rep.baseline = rep.minimum = 1;
    rep.witness_shifts.assign(ideals.size(), q.ring->zero());
    rep.tuples_examined = 1;
  } else if (shifts) {
    if (shifts->size() != ideals.size()) throw Error(ErrorKind::InvalidInput, "need exactly one shift per ideal");
    std::vector<ElementId> s;
    for (const auto& x : *shifts) {
      if (x.size() != o.rank()) throw Error(ErrorKind::InvalidInput, "shift length differs from order rank");
      s.push_back(q.project(x));
    }
    rep = rogers_verify(q.ring, ideals, s);
  } else {
    rep = rogers_check(q.ring, ideals, opt.rogers);
  }
  std::vector<IntVector> lifted;
  for (ElementId s : rep.witness_shifts) lifted.push_back(q.lift(s));
  return {std::move(lattices), std::move(meet), std::move(q), std::move(rep), std::move(lifted)};
}

/// A violating ideal triple of the order found through a quotient O / (n).
struct OrderWitness {
  std::int64_t conductor = 0;
  std::vector<std::vector<IntVector>> generators;
  std::vector<IntegerLattice> ideals;
  std::vector<IntVector> shifts;
  std::size_t union_shifted = 0;
  std::size_t union_baseline = 0;
  /// Cardinalities of the witness inside O / (n).
  std::size_t quotient_shifted = 0;
  std::size_t quotient_baseline = 0;
};

/// Scans O / (n) for n = 2..bound and returns the first violation, lifted to
/// order ideals and re-verified, or nothing when every quotient is a product
/// of local chain rings.
inline std::optional<OrderWitness> nonmaximality_probe(const Order& o, std::int64_t bound,
                                                       const OrderCheckOptions& opt = {}) {
  if (bound < 2) throw Error(ErrorKind::InvalidInput, "probe bound must be at least 2");
  for (std::int64_t n = 2; n <= bound; ++n) {
    IntVector g(o.rank());
    g[0] = static_cast<long>(n);
    const OrderQuotient q = order_quotient(o, order_ideal(o, {g}), opt.ring);
    if (classify(q.ring).is_chain_local_product) continue;

    const Witness w = counterexample(q.ring);
    OrderWitness out;
    out.conductor = n;
    out.quotient_shifted = w.union_shifted;
    out.quotient_baseline = w.union_baseline;
    for (std::size_t j = 0; j < w.ideals.size(); ++j) {
      std::vector<IntVector> gens;
      for (ElementId x : w.ideals[j].generators()) gens.push_back(q.lift(x));
      for (std::size_t i = 0; i < o.rank(); ++i) {
        IntVector e(o.rank());
        e[i] = static_cast<long>(n);
        gens.push_back(std::move(e));
      }
      out.generators.push_back(std::move(gens));
      out.shifts.push_back(q.lift(w.shifts[j]));
    }
    const OrderRogersReport check = rogers_check_order(o, out.generators, opt, out.shifts);
    if (check.report.satisfied) throw std::logic_error("lifted probe witness failed verification");
    out.ideals = check.ideals;
    out.union_shifted = check.report.minimum;
    out.union_baseline = check.report.baseline;
    return out;
  }
  return std::nullopt;
}

}  // namespace ringsieve
