#pragma once

// Ring constructions: Z/n, direct products, quotients by ideals, and
// materialization of an additive subgroup closed under multiplication (such
// as e*R for an idempotent e) as a standalone ring.

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "ringsieve/abelian.hpp"
#include "ringsieve/error.hpp"
#include "ringsieve/ideal.hpp"
#include "ringsieve/int_matrix.hpp"
#include "ringsieve/ring.hpp"

namespace ringsieve {

using Coords = std::vector<std::int64_t>;

/// A ring rebuilt on an invariant-factor basis of a subgroup of some ambient
/// group Z/m_1 + ... + Z/m_n.
struct Materialized {
  RingPtr ring;
  std::shared_ptr<const SubgroupBasis> basis;
  /// Ambient coordinates of each ring basis vector.
  std::vector<Coords> sections;

  /// Ring element for an ambient vector inside the subgroup.
  ElementId from_ambient(const Coords& x) const {
    auto c = basis->coordinates(x);
    if (!c) throw Error(ErrorKind::InvalidInput, "ambient vector lies outside the subgroup");
    return ring->index_of(*c);
  }
};

using AmbientMul = std::function<Coords(const Coords&, const Coords&)>;

inline Materialized materialize(const Coords& ambient_moduli, const std::vector<Coords>& generators,
                                const AmbientMul& mul, const Coords& unit, const RingConfig& config,
                                bool allow_zero) {
  auto basis = std::make_shared<const SubgroupBasis>(ambient_moduli, generators);
  RingPresentation p;
  p.invariant_factors = basis->invariant_factors();
  const std::size_t k = basis->rank();
  std::vector<Coords> sections;
  for (std::size_t i = 0; i < k; ++i) sections.push_back(basis->generator(i));
  p.structure_constants.assign(k, std::vector<Coords>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      auto c = basis->coordinates(mul(sections[i], sections[j]));
      if (!c) throw Error(ErrorKind::InvalidInput, "subgroup is not closed under multiplication");
      p.structure_constants[i][j] = *c;
    }
  auto u = basis->coordinates(unit);
  if (!u) throw Error(ErrorKind::NoUnit, "unit lies outside the subgroup");
  p.unit = *u;
  return {detail::build_ring(p, config, allow_zero), std::move(basis), std::move(sections)};
}

/// The ring Z/n. n = 1 yields the zero ring, the only way to construct it.
inline RingPtr make_cyclic(std::int64_t n, const RingConfig& config = {}) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "modulus must be positive");
  if (static_cast<std::uint64_t>(n) > config.carrier_bound)
    throw Error(ErrorKind::CarrierTooLarge, "Z/" + std::to_string(n) + " exceeds carrier bound");
  RingPresentation p{{n}, {{{1 % n}}}, {1 % n}};
  return detail::build_ring(p, config, n == 1);
}

struct ProductRing {
  RingPtr ring;
  std::vector<RingHom> projections;
  /// Element of the product with the given component indices.
  std::function<ElementId(const std::vector<ElementId>&)> combine;
};

inline ProductRing make_product(const std::vector<RingPtr>& factors, const RingConfig& config = {}) {
  if (factors.empty()) throw Error(ErrorKind::InvalidInput, "product needs at least one factor");
  std::uint64_t total = 1;
  Coords moduli;
  std::vector<std::size_t> offset;
  for (const auto& f : factors) {
    require_nonzero(*f);
    total *= f->size();
    if (total > config.carrier_bound)
      throw Error(ErrorKind::CarrierTooLarge, "product exceeds carrier bound " + std::to_string(config.carrier_bound));
    offset.push_back(moduli.size());
    for (auto d : f->invariant_factors()) moduli.push_back(d);
  }
  const std::size_t n = moduli.size();
  auto slice = [&, factors, offset](const Coords& x, std::size_t i) {
    return Coords(x.begin() + static_cast<std::ptrdiff_t>(offset[i]),
                  x.begin() + static_cast<std::ptrdiff_t>(offset[i] + factors[i]->rank()));
  };
  AmbientMul mul = [&, factors, offset](const Coords& a, const Coords& b) {
    Coords out(n, 0);
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const auto& F = *factors[i];
      const Element c = F.element(F.mul(F.index_of(slice(a, i)), F.index_of(slice(b, i))));
      std::copy(c.coords.begin(), c.coords.end(), out.begin() + static_cast<std::ptrdiff_t>(offset[i]));
    }
    return out;
  };
  std::vector<Coords> gens;
  for (std::size_t i = 0; i < n; ++i) {
    Coords e(n, 0);
    e[i] = 1;
    gens.push_back(e);
  }
  Coords unit(n, 0);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const Element one = factors[i]->element(factors[i]->one());
    std::copy(one.coords.begin(), one.coords.end(), unit.begin() + static_cast<std::ptrdiff_t>(offset[i]));
  }
  Materialized m = materialize(moduli, gens, mul, unit, config, false);

  ProductRing out;
  out.ring = m.ring;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    std::vector<ElementId> images;
    for (const auto& s : m.sections) images.push_back(factors[i]->index_of(slice(s, i)));
    out.projections.emplace_back(m.ring, factors[i], std::move(images));
  }
  out.combine = [m, factors, offset, n](const std::vector<ElementId>& parts) {
    Coords x(n, 0);
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const Element c = factors[i]->element(parts.at(i));
      std::copy(c.coords.begin(), c.coords.end(), x.begin() + static_cast<std::ptrdiff_t>(offset[i]));
    }
    return m.from_ambient(x);
  };
  return out;
}

struct QuotientRing {
  RingPtr ring;
  RingHom projection;
  /// Smallest preimage (carrier order) of each quotient element.
  std::vector<ElementId> smallest_preimage;
};

/// R / I with its canonical surjection.
inline QuotientRing make_quotient(const Ideal& ideal) {
  const RingPtr& R = ideal.ring_ptr();
  const std::size_t k = R->rank();
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < k; ++i) {
    IntVector r(k);
    r[i] = static_cast<long>(R->invariant_factors()[i]);
    rows.push_back(std::move(r));
  }
  for (ElementId g : ideal.generators())
    for (std::size_t i = 0; i < k; ++i) {
      const Element e = R->element(R->mul(R->basis(i), g));
      IntVector r(k);
      for (std::size_t j = 0; j < k; ++j) r[j] = static_cast<long>(e.coords[j]);
      rows.push_back(std::move(r));
    }
  const InvariantBasis qb = quotient_basis(hnf(IntMatrix::from_rows(rows, k)));
  auto project = [&](const Coords& x) {
    IntVector v(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) v[i] = static_cast<long>(x[i]);
    Coords out;
    for (const auto& c : qb.coordinates(v)) out.push_back(c.get_si());
    return out;
  };
  auto lift = [&](std::size_t j) {
    IntVector g = qb.generators.row(j);
    Coords out;
    for (std::size_t i = 0; i < k; ++i)
      out.push_back(mod_nonneg(g[i], Integer(static_cast<long>(R->invariant_factors()[i]))).get_si());
    return R->index_of(out);
  };
  const std::size_t q = qb.rank();
  RingPresentation p;
  for (const auto& f : qb.factors) p.invariant_factors.push_back(f.get_si());
  p.structure_constants.assign(q, std::vector<Coords>(q));
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j)
      p.structure_constants[i][j] = project(R->element(R->mul(lift(i), lift(j))).coords);
  p.unit = project(R->element(R->one()).coords);
  RingPtr Q = detail::build_ring(p, R->config(), true);

  std::vector<ElementId> images;
  for (std::size_t i = 0; i < k; ++i) images.push_back(Q->index_of(project(R->element(R->basis(i)).coords)));
  RingHom pi(R, Q, std::move(images));
  std::vector<ElementId> pre(Q->size(), static_cast<ElementId>(R->size()));
  for (ElementId x = 0; x < R->size(); ++x) {
    ElementId y = pi(x);
    if (pre[y] == R->size()) pre[y] = x;
  }
  return {Q, std::move(pi), std::move(pre)};
}

/// Preimage of an ideal of the target under a surjective homomorphism.
inline Ideal preimage(const RingHom& h, const Ideal& target_ideal) {
  const auto t = h.table();
  Mask m(h.source()->size());
  for (ElementId x = 0; x < t.size(); ++x)
    if (target_ideal.contains(t[x])) m.set(x);
  return Ideal::from_mask(h.source(), std::move(m));
}

/// Image of an ideal under a surjective homomorphism.
inline Ideal image(const RingHom& h, const Ideal& source_ideal) {
  Mask m(h.target()->size());
  for (ElementId x : source_ideal.members()) m.set(h(x));
  return Ideal::from_mask(h.target(), std::move(m));
}

}  // namespace ringsieve
