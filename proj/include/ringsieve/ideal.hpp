#pragma once

// Ideals of a FiniteRing as membership masks over the carrier, plus
// enumeration of the full ideal lattice and the lattice operations.

#include <algorithm>
#include <cstddef>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ringsieve/error.hpp"
#include "ringsieve/mask.hpp"
#include "ringsieve/ring.hpp"

namespace ringsieve {

class Ideal {
 public:
  const RingPtr& ring_ptr() const noexcept { return ring_; }
  const FiniteRing& ring() const noexcept { return *ring_; }
  const Mask& mask() const noexcept { return mask_; }
  const std::vector<ElementId>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool contains(ElementId x) const noexcept { return mask_.test(x); }
  bool is_zero() const noexcept { return members_.size() == 1; }
  bool is_whole() const noexcept { return members_.size() == ring_->size(); }

  /// Canonical generators: greedily the smallest element not yet generated.
  const std::vector<ElementId>& generators() const noexcept { return generators_; }

  bool subset_of(const Ideal& other) const noexcept { return mask_.subset_of(other.mask_); }

  friend bool operator==(const Ideal& a, const Ideal& b) noexcept {
    return a.ring_.get() == b.ring_.get() && a.mask_ == b.mask_;
  }

  /// Total order used for enumeration: cardinality, then member lists.
  friend bool canonical_less(const Ideal& a, const Ideal& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.members_ < b.members_;
  }

  /// Wraps a mask already known to be an ideal of `ring`.
  static Ideal from_mask(RingPtr ring, Mask mask);

 private:
  Ideal(RingPtr ring, Mask mask) : ring_(std::move(ring)), mask_(std::move(mask)) {
    members_ = mask_.indices();
  }

  RingPtr ring_;
  Mask mask_;
  std::vector<ElementId> members_;
  std::vector<ElementId> generators_;
};

namespace detail {

/// H + <g> as an additive subgroup; `mask` holds H on entry.
inline void adjoin_cyclic(const FiniteRing& r, Mask& mask, std::vector<ElementId>& members, ElementId g) {
  if (mask.test(g)) return;
  const std::vector<ElementId> base = members;
  ElementId c = g;
  while (!mask.test(c)) {
    for (ElementId h : base) {
      const ElementId x = r.add(c, h);
      if (!mask.test(x)) {
        mask.set(x);
        members.push_back(x);
      }
    }
    c = r.add(c, g);
  }
}

/// Additive closure of `mask` together with every ring multiple of `gens`.
/// R*g is spanned additively by b_i * g, so adjoining those suffices.
inline Mask close_ideal(const FiniteRing& r, Mask mask, std::span<const ElementId> gens) {
  std::vector<ElementId> members = mask.indices();
  for (ElementId g : gens)
    for (std::size_t i = 0; i < r.rank(); ++i) adjoin_cyclic(r, mask, members, r.mul(r.basis(i), g));
  return mask;
}

inline Mask zero_mask(const FiniteRing& r) {
  Mask m(r.size());
  m.set(r.zero());
  return m;
}

inline std::vector<ElementId> greedy_generators(const FiniteRing& r, const Mask& target) {
  std::vector<ElementId> gens;
  Mask current = zero_mask(r);
  for (ElementId x : target.indices()) {
    if (current.test(x)) continue;
    gens.push_back(x);
    const ElementId g[] = {x};
    current = close_ideal(r, std::move(current), g);
  }
  return gens;
}

}  // namespace detail

inline Ideal Ideal::from_mask(RingPtr ring, Mask mask) {
  Ideal out(std::move(ring), std::move(mask));
  out.generators_ = detail::greedy_generators(*out.ring_, out.mask_);
  return out;
}

/// Smallest ideal containing `gens`.
inline Ideal ideal_generated(const RingPtr& r, std::span<const ElementId> gens) {
  for (ElementId g : gens)
    if (g >= r->size()) throw Error(ErrorKind::InvalidInput, "generator outside the carrier");
  return Ideal::from_mask(r, detail::close_ideal(*r, detail::zero_mask(*r), gens));
}

inline Ideal ideal_generated(const RingPtr& r, std::initializer_list<ElementId> gens) {
  return ideal_generated(r, std::span<const ElementId>(gens.begin(), gens.size()));
}

inline Ideal zero_ideal(const RingPtr& r) { return Ideal::from_mask(r, detail::zero_mask(*r)); }

inline Ideal whole_ideal(const RingPtr& r) {
  const ElementId one[] = {r->one()};
  return ideal_generated(r, one);
}

/// True when `mask` is closed under addition and ring multiplication and
/// contains zero (checked exhaustively).
inline bool is_ideal_mask(const FiniteRing& r, const Mask& mask) {
  if (!mask.test(r.zero())) return false;
  const auto members = mask.indices();
  for (ElementId a : members) {
    for (ElementId b : members)
      if (!mask.test(r.add(a, b))) return false;
    for (ElementId x = 0; x < r.size(); ++x)
      if (!mask.test(r.mul(x, a))) return false;
  }
  return true;
}

namespace detail {

inline Mask sum_mask(const FiniteRing& r, const Ideal& a, const Ideal& b) {
  Mask out = a.mask();
  for (ElementId y : b.members()) {
    if (out.test(y)) continue;
    for (ElementId x : a.members()) out.set(r.add(x, y));
  }
  return out;
}

inline void require_same_ring(const Ideal& a, const Ideal& b) {
  if (a.ring_ptr().get() != b.ring_ptr().get())
    throw Error(ErrorKind::InvalidInput, "ideals belong to different rings");
}

}  // namespace detail

enum class LatticeOp { Sum, Intersect, Product, Annihilator };

inline Ideal ideal_sum(const Ideal& a, const Ideal& b) {
  detail::require_same_ring(a, b);
  return Ideal::from_mask(a.ring_ptr(), detail::sum_mask(a.ring(), a, b));
}

inline Ideal ideal_intersect(const Ideal& a, const Ideal& b) {
  detail::require_same_ring(a, b);
  return Ideal::from_mask(a.ring_ptr(), a.mask() & b.mask());
}

inline Ideal ideal_product(const Ideal& a, const Ideal& b) {
  detail::require_same_ring(a, b);
  const auto& r = a.ring();
  std::vector<ElementId> gens;
  for (ElementId g : a.generators())
    for (ElementId h : b.generators()) gens.push_back(r.mul(g, h));
  return ideal_generated(a.ring_ptr(), gens);
}

/// {x : x * a = 0 for all a in I}.
inline Ideal annihilator(const Ideal& a) {
  const auto& r = a.ring();
  Mask out(r.size());
  for (ElementId x = 0; x < r.size(); ++x) {
    bool kills = true;
    for (ElementId g : a.generators())
      if (r.mul(x, g) != r.zero()) {
        kills = false;
        break;
      }
    if (kills) out.set(x);
  }
  return Ideal::from_mask(a.ring_ptr(), std::move(out));
}

inline Ideal lattice_op(LatticeOp kind, const Ideal& a, const Ideal* b = nullptr) {
  if (kind == LatticeOp::Annihilator) {
    if (b) throw Error(ErrorKind::InvalidInput, "annihilator is unary");
    return annihilator(a);
  }
  if (!b) throw Error(ErrorKind::InvalidInput, "binary lattice operation needs two ideals");
  switch (kind) {
    case LatticeOp::Sum: return ideal_sum(a, *b);
    case LatticeOp::Intersect: return ideal_intersect(a, *b);
    case LatticeOp::Product: return ideal_product(a, *b);
    case LatticeOp::Annihilator: break;
  }
  return annihilator(a);
}

/// The ideal lattice of a ring: every ideal once, in canonical order, with
/// sum and intersection tables indexed by position.
class IdealLattice {
 public:
  explicit IdealLattice(RingPtr ring) : ring_(std::move(ring)) {
    const FiniteRing& r = *ring_;
    std::vector<Mask> masks;
    std::unordered_map<Mask, std::size_t, MaskHash> seen;
    auto insert = [&](Mask m) {
      auto [it, fresh] = seen.emplace(m, masks.size());
      if (fresh) masks.push_back(std::move(m));
      return it->second;
    };
    for (ElementId a = 0; a < r.size(); ++a) {
      const ElementId g[] = {a};
      insert(detail::close_ideal(r, detail::zero_mask(r), g));
    }
    // Close under pairwise sums; every ideal is a finite sum of principal ideals.
    std::vector<Ideal> work;
    for (const auto& m : masks) work.push_back(Ideal::from_mask(ring_, m));
    for (std::size_t i = 0; i < work.size(); ++i)
      for (std::size_t j = 0; j < i; ++j) {
        Mask s = detail::sum_mask(r, work[i], work[j]);
        if (seen.contains(s)) continue;
        insert(s);
        work.push_back(Ideal::from_mask(ring_, std::move(s)));
      }
    std::sort(work.begin(), work.end(), [](const Ideal& x, const Ideal& y) { return canonical_less(x, y); });
    ideals_ = std::move(work);
    for (std::size_t i = 0; i < ideals_.size(); ++i) index_[ideals_[i].mask()] = i;
  }

  const RingPtr& ring_ptr() const noexcept { return ring_; }
  const std::vector<Ideal>& ideals() const noexcept { return ideals_; }
  std::size_t size() const noexcept { return ideals_.size(); }
  const Ideal& operator[](std::size_t i) const { return ideals_[i]; }

  std::size_t index_of(const Mask& m) const {
    auto it = index_.find(m);
    if (it == index_.end()) throw Error(ErrorKind::InvalidInput, "mask is not an enumerated ideal");
    return it->second;
  }

  /// Fills the sum and intersection tables.
  void build_tables() {
    if (!sum_.empty()) return;
    const std::size_t n = ideals_.size();
    sum_.assign(n * n, 0);
    meet_.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j <= i; ++j) {
        const std::size_t m = index_of(ideals_[i].mask() & ideals_[j].mask());
        meet_[i * n + j] = meet_[j * n + i] = m;
        // |I + J| = |I| |J| / |I ∩ J| pins the sum among the supersets of both.
        const std::size_t target = ideals_[i].size() * ideals_[j].size() / ideals_[m].size();
        std::size_t s = n;
        for (std::size_t c = 0; c < n; ++c)
          if (ideals_[c].size() == target && ideals_[i].subset_of(ideals_[c]) &&
              ideals_[j].subset_of(ideals_[c])) {
            s = c;
            break;
          }
        if (s == n) throw Error(ErrorKind::InvalidInput, "ideal set is not closed under sums");
        sum_[i * n + j] = sum_[j * n + i] = s;
      }
  }

  std::size_t sum(std::size_t i, std::size_t j) const { return sum_[i * ideals_.size() + j]; }
  std::size_t meet(std::size_t i, std::size_t j) const { return meet_[i * ideals_.size() + j]; }

 private:
  RingPtr ring_;
  std::vector<Ideal> ideals_;
  std::unordered_map<Mask, std::size_t, MaskHash> index_;
  std::vector<std::size_t> sum_;
  std::vector<std::size_t> meet_;
};

/// Every ideal exactly once, sorted by (cardinality, member list).
inline std::vector<Ideal> all_ideals(const RingPtr& r) { return IdealLattice(r).ideals(); }

/// True iff the ideals are linearly ordered by inclusion.
inline bool is_chain(const std::vector<Ideal>& sorted_ideals) {
  for (std::size_t i = 0; i + 1 < sorted_ideals.size(); ++i)
    if (!sorted_ideals[i].subset_of(sorted_ideals[i + 1])) return false;
  return true;
}

inline bool is_chain(const RingPtr& r) { return is_chain(all_ideals(r)); }

/// Nonzero ideals containing no other nonzero ideal.
inline std::vector<Ideal> minimal_ideals(const std::vector<Ideal>& sorted_ideals) {
  std::vector<Ideal> out;
  for (const auto& I : sorted_ideals) {
    if (I.is_zero()) continue;
    bool minimal = true;
    for (const auto& J : out)
      if (J.subset_of(I)) {
        minimal = false;
        break;
      }
    if (minimal) out.push_back(I);
  }
  return out;
}

}  // namespace ringsieve
