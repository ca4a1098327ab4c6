#pragma once

// Idempotents, decomposition into local factors, and the chain-local-product
// classification.

#include <optional>
#include <string>
#include <vector>

#include "ringsieve/construct.hpp"
#include "ringsieve/error.hpp"
#include "ringsieve/ideal.hpp"
#include "ringsieve/ring.hpp"

namespace ringsieve {

/// All e with e*e = e, in carrier order.
inline std::vector<ElementId> idempotents(const FiniteRing& r) {
  std::vector<ElementId> out;
  for (ElementId x = 0; x < r.size(); ++x)
    if (r.mul(x, x) == x) out.push_back(x);
  return out;
}

/// Units by exhaustive invertibility scan, as a carrier mask.
inline Mask units(const FiniteRing& r) {
  Mask out(r.size());
  for (ElementId x = 0; x < r.size(); ++x) {
    if (out.test(x)) continue;
    for (ElementId y = 0; y < r.size(); ++y)
      if (r.mul(x, y) == r.one()) {
        out.set(x);
        out.set(y);
        break;
      }
  }
  return out;
}

struct LocalityResult {
  bool local = false;
  std::optional<Ideal> maximal_ideal;
};

/// Local iff the non-units form an ideal (then it is the maximal ideal).
inline LocalityResult is_local(const RingPtr& r) {
  require_nonzero(*r);
  const Mask u = units(*r);
  Mask non_units(r->size());
  for (ElementId x = 0; x < r->size(); ++x)
    if (!u.test(x)) non_units.set(x);
  if (!is_ideal_mask(*r, non_units)) return {false, std::nullopt};
  return {true, Ideal::from_mask(r, std::move(non_units))};
}

struct LocalFactor {
  RingPtr ring;
  ElementId idempotent = 0;
  /// R -> e R, x -> e x.
  RingHom projection;
  /// Factor element -> the same element inside R (non-unital inclusion).
  std::vector<ElementId> inclusion;
};

struct LocalDecomposition {
  std::vector<ElementId> idempotents;
  std::vector<LocalFactor> factors;
};

/// Primitive idempotents are the minimal nonzero ones under e <= f iff e f = e.
inline std::vector<ElementId> primitive_idempotents(const FiniteRing& r) {
  const auto all = idempotents(r);
  std::vector<ElementId> out;
  for (ElementId e : all) {
    if (e == r.zero()) continue;
    bool primitive = true;
    for (ElementId f : all)
      if (f != r.zero() && f != e && r.mul(e, f) == f) {
        primitive = false;
        break;
      }
    if (primitive) out.push_back(e);
  }
  return out;
}

inline LocalDecomposition local_decomposition(const RingPtr& R) {
  require_nonzero(*R);
  LocalDecomposition out;
  out.idempotents = primitive_idempotents(*R);
  const Coords moduli = R->invariant_factors();

  AmbientMul mul = [&R](const Coords& a, const Coords& b) {
    return R->element(R->mul(R->index_of(a), R->index_of(b))).coords;
  };
  std::size_t product_size = 1;
  ElementId idempotent_sum = R->zero();
  for (ElementId e : out.idempotents) {
    std::vector<Coords> gens;
    for (std::size_t i = 0; i < R->rank(); ++i) gens.push_back(R->element(R->mul(e, R->basis(i))).coords);
    Materialized m = materialize(moduli, gens, mul, R->element(e).coords, R->config(), false);

    std::vector<ElementId> images;
    for (std::size_t i = 0; i < R->rank(); ++i) images.push_back(m.from_ambient(gens[i]));
    RingHom proj(R, m.ring, std::move(images));

    std::vector<ElementId> inclusion(m.ring->size());
    for (ElementId y = 0; y < m.ring->size(); ++y) {
      const Element c = m.ring->element(y);
      ElementId x = R->zero();
      for (std::size_t j = 0; j < c.coords.size(); ++j)
        x = R->add(x, R->scale(c.coords[j], R->index_of(m.sections[j])));
      inclusion[y] = x;
    }
    product_size *= m.ring->size();
    idempotent_sum = R->add(idempotent_sum, e);
    out.factors.push_back({m.ring, e, std::move(proj), std::move(inclusion)});
  }

  // Check R -> prod e_i R is a bijective homomorphism.
  if (product_size != R->size() || idempotent_sum != R->one())
    throw Error(ErrorKind::InvalidInput, "primitive idempotents do not decompose the ring");
  for (std::size_t i = 0; i < out.idempotents.size(); ++i)
    for (std::size_t j = i + 1; j < out.idempotents.size(); ++j)
      if (R->mul(out.idempotents[i], out.idempotents[j]) != R->zero())
        throw Error(ErrorKind::InvalidInput, "primitive idempotents are not orthogonal");
  std::vector<std::vector<ElementId>> tables;
  for (const auto& f : out.factors) tables.push_back(f.projection.table());
  std::vector<bool> hit(R->size(), false);
  for (ElementId x = 0; x < R->size(); ++x) {
    std::size_t code = 0;
    for (std::size_t i = 0; i < out.factors.size(); ++i) code = code * out.factors[i].ring->size() + tables[i][x];
    if (hit[code]) throw Error(ErrorKind::InvalidInput, "decomposition map is not injective");
    hit[code] = true;
  }
  for (const auto& f : out.factors)
    for (std::size_t a = 0; a < R->rank(); ++a)
      for (std::size_t b = 0; b < R->rank(); ++b) {
        const ElementId x = R->basis(a), y = R->basis(b);
        if (f.projection(R->mul(x, y)) != f.ring->mul(f.projection(x), f.projection(y)))
          throw Error(ErrorKind::InvalidInput, "decomposition map is not multiplicative");
      }
  return out;
}

struct FactorVerdict {
  std::size_t index = 0;
  std::size_t order = 0;
  bool is_local = true;
  bool is_chain = false;
  std::size_t ideal_count = 0;
};

struct ClassificationVerdict {
  bool is_chain_local_product = false;
  std::vector<FactorVerdict> per_factor;
  std::optional<std::size_t> offending_factor;
};

inline ClassificationVerdict classify(const LocalDecomposition& d) {
  ClassificationVerdict v;
  v.is_chain_local_product = true;
  for (std::size_t i = 0; i < d.factors.size(); ++i) {
    const auto ideals = all_ideals(d.factors[i].ring);
    FactorVerdict f;
    f.index = i;
    f.order = d.factors[i].ring->size();
    f.is_local = is_local(d.factors[i].ring).local;
    f.is_chain = is_chain(ideals);
    f.ideal_count = ideals.size();
    if (!f.is_chain && !v.offending_factor) v.offending_factor = i;
    v.is_chain_local_product = v.is_chain_local_product && f.is_chain;
    v.per_factor.push_back(f);
  }
  return v;
}

inline ClassificationVerdict classify(const RingPtr& R) { return classify(local_decomposition(R)); }

}  // namespace ringsieve
