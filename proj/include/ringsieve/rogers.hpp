#pragma once

// Condition (R) for finite sets of ideals: exhaustive shift minimization,
// witness construction, and the triple-wise verification of the
// chain-local-product classification.
//
// For ideals I_1..I_r of R the condition reads
//     |(a_1 + I_1) u ... u (a_r + I_r)| >= |I_1 u ... u I_r|   for all a_j.
// The left side is invariant under a common translation and under replacing
// a_j by anything in a_j + I_j, so the search fixes a_1 = 0 and lets a_j range
// over coset representatives of I_j for j >= 2.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "ringsieve/construct.hpp"
#include "ringsieve/error.hpp"
#include "ringsieve/ideal.hpp"
#include "ringsieve/local.hpp"
#include "ringsieve/ring.hpp"

namespace ringsieve {

struct RogersOptions {
  std::uint64_t tuple_cap = 10'000'000;
  unsigned workers = 1;
  /// Stop at the first tuple below the baseline. The reported minimum is then
  /// only an upper bound; used where only the verdict matters.
  bool stop_at_violation = false;
};

struct RogersReport {
  std::vector<Ideal> ideals;
  std::size_t baseline = 0;
  std::size_t minimum = 0;
  std::vector<ElementId> witness_shifts;
  bool satisfied = true;
  std::uint64_t tuples_examined = 0;
};

/// Coset representatives of an ideal: the smallest element of each coset,
/// in increasing order.
struct Transversal {
  std::vector<ElementId> reps;
  std::vector<std::uint32_t> coset_of;  // carrier index -> position in reps
};

inline Transversal transversal(const Ideal& ideal) {
  const FiniteRing& r = ideal.ring();
  Transversal t;
  constexpr auto unset = std::numeric_limits<std::uint32_t>::max();
  t.coset_of.assign(r.size(), unset);
  for (ElementId x = 0; x < r.size(); ++x) {
    if (t.coset_of[x] != unset) continue;
    const auto pos = static_cast<std::uint32_t>(t.reps.size());
    t.reps.push_back(x);
    for (ElementId i : ideal.members()) t.coset_of[r.add(x, i)] = pos;
  }
  return t;
}

/// |u_j (a_j + I_j)| by direct marking of every coset element.
inline std::size_t shifted_union_size(const std::vector<Ideal>& ideals, const std::vector<ElementId>& shifts) {
  if (ideals.empty()) return 0;
  if (shifts.size() != ideals.size())
    throw Error(ErrorKind::InvalidInput, "need exactly one shift per ideal");
  const FiniteRing& r = ideals.front().ring();
  Mask seen(r.size());
  for (std::size_t j = 0; j < ideals.size(); ++j)
    for (ElementId i : ideals[j].members()) seen.set(r.add(shifts[j], i));
  return seen.count();
}

inline std::size_t union_size(const std::vector<Ideal>& ideals) {
  if (ideals.empty()) return 0;
  Mask m = ideals.front().mask();
  for (const auto& I : ideals) m |= I.mask();
  return m.count();
}

namespace detail {

/// Shifted-union cardinality with a_1 = 0. Up to three ideals this is O(1)
/// per tuple via inclusion-exclusion: two cosets meet iff their difference lies
/// in the sum of the ideals, and then meet in a coset of the intersection.
class UnionEvaluator {
 public:
  explicit UnionEvaluator(const std::vector<Ideal>& ideals) : ideals_(ideals), ring_(ideals.front().ring()) {
    const std::size_t r = ideals.size();
    for (const auto& I : ideals) sizes_.push_back(I.size());
    if (r == 2) {
      p12_ = detail::sum_mask(ring_, ideals[0], ideals[1]);
      s12_ = (ideals[0].mask() & ideals[1].mask()).count();
    } else if (r == 3) {
      const Ideal& a = ideals[0];
      const Ideal& b = ideals[1];
      const Ideal& c = ideals[2];
      p12_ = detail::sum_mask(ring_, a, b);
      p13_ = detail::sum_mask(ring_, a, c);
      p23_ = detail::sum_mask(ring_, b, c);
      const Mask ab = a.mask() & b.mask();
      s12_ = ab.count();
      s13_ = (a.mask() & c.mask()).count();
      s23_ = (b.mask() & c.mask()).count();
      s123_ = (ab & c.mask()).count();
      // For s in I_1 + I_2, split_[s] is some x in I_1 with s - x in I_2.
      split_.assign(ring_.size(), 0);
      Mask covered(ring_.size());
      for (ElementId x : a.members()) {
        if (covered.test(x)) continue;
        for (ElementId y : b.members()) {
          const ElementId s = ring_.add(x, y);
          covered.set(s);
          split_[s] = x;
        }
      }
      const Ideal meet = Ideal::from_mask(a.ring_ptr(), ab);
      q_ = detail::sum_mask(ring_, meet, c);
    }
  }

  std::size_t operator()(const ElementId* shifts, std::vector<std::uint32_t>& stamp, std::uint32_t& epoch) const {
    switch (ideals_.size()) {
      case 1: return sizes_[0];
      case 2: return sizes_[0] + sizes_[1] - (p12_.test(shifts[1]) ? s12_ : 0);
      case 3: {
        const ElementId a2 = shifts[1], a3 = shifts[2];
        const bool m12 = p12_.test(a2);
        const bool m13 = p13_.test(a3);
        const bool m23 = p23_.test(ring_.sub(a2, a3));
        std::size_t total = sizes_[0] + sizes_[1] + sizes_[2];
        if (m12) total -= s12_;
        if (m13) total -= s13_;
        if (m23) total -= s23_;
        if (m12 && m13 && m23 && q_.test(ring_.sub(split_[a2], a3))) total += s123_;
        return total;
      }
      default: break;
    }
    if (++epoch == 0) {
      std::fill(stamp.begin(), stamp.end(), 0);
      epoch = 1;
    }
    std::size_t count = 0;
    for (std::size_t j = 0; j < ideals_.size(); ++j)
      for (ElementId i : ideals_[j].members()) {
        const ElementId x = ring_.add(shifts[j], i);
        if (stamp[x] != epoch) {
          stamp[x] = epoch;
          ++count;
        }
      }
    return count;
  }

 private:
  const std::vector<Ideal>& ideals_;
  const FiniteRing& ring_;
  std::vector<std::size_t> sizes_;
  Mask p12_, p13_, p23_, q_;
  std::size_t s12_ = 0, s13_ = 0, s23_ = 0, s123_ = 0;
  std::vector<ElementId> split_;
};

inline void check_ideals(const RingPtr& R, const std::vector<Ideal>& ideals) {
  require_nonzero(*R);
  if (ideals.empty()) throw Error(ErrorKind::InvalidInput, "need at least one ideal");
  for (const auto& I : ideals)
    if (I.ring_ptr().get() != R.get()) throw Error(ErrorKind::InvalidInput, "ideal belongs to a different ring");
}

}  // namespace detail

/// Evaluates exactly the supplied shift tuple.
inline RogersReport rogers_verify(const RingPtr& R, const std::vector<Ideal>& ideals,
                                  const std::vector<ElementId>& shifts) {
  detail::check_ideals(R, ideals);
  for (ElementId s : shifts)
    if (s >= R->size()) throw Error(ErrorKind::InvalidInput, "shift outside the carrier");
  RogersReport rep;
  rep.ideals = ideals;
  rep.baseline = union_size(ideals);
  rep.minimum = shifted_union_size(ideals, shifts);
  rep.witness_shifts = shifts;
  rep.satisfied = rep.minimum >= rep.baseline;
  rep.tuples_examined = 1;
  return rep;
}

/// Exact minimum over all shift tuples (a_1 = 0, a_j over transversals).
/// Ties go to the first tuple in mixed-radix order over transversal
/// positions with a_2 varying fastest.
inline RogersReport rogers_check(const RingPtr& R, const std::vector<Ideal>& ideals, const RogersOptions& opt = {}) {
  detail::check_ideals(R, ideals);
  const std::size_t r = ideals.size();
  std::vector<Transversal> trans;
  std::uint64_t total = 1;
  for (std::size_t j = 1; j < r; ++j) {
    trans.push_back(transversal(ideals[j]));
    total *= trans.back().reps.size();
    if (total > opt.tuple_cap)
      throw Error(ErrorKind::SearchSpaceTooLarge,
                  "shift search needs more than " + std::to_string(opt.tuple_cap) + " tuples");
  }

  RogersReport rep;
  rep.ideals = ideals;
  rep.baseline = union_size(ideals);
  const detail::UnionEvaluator eval(ideals);

  if (r == 1) {
    std::vector<std::uint32_t> stamp(R->size(), 0);
    std::uint32_t epoch = 0;
    const ElementId zero[] = {R->zero()};
    rep.minimum = eval(zero, stamp, epoch);
    rep.witness_shifts = {R->zero()};
    rep.satisfied = rep.minimum >= rep.baseline;
    rep.tuples_examined = 1;
    return rep;
  }

  struct Partial {
    std::size_t best = std::numeric_limits<std::size_t>::max();
    std::vector<std::uint32_t> position;
    std::uint64_t examined = 0;
    bool stopped = false;
  };
  const std::size_t outer = trans.back().reps.size();
  const unsigned workers = std::max(1u, std::min<unsigned>(opt.workers, static_cast<unsigned>(outer)));

  auto scan = [&](std::size_t lo, std::size_t hi, Partial& out) {
    std::vector<std::uint32_t> pos(r - 1, 0);
    std::vector<ElementId> shifts(r, R->zero());
    std::vector<std::uint32_t> stamp(r > 3 ? R->size() : 0, 0);
    std::uint32_t epoch = 0;
    for (std::size_t top = lo; top < hi; ++top) {
      std::fill(pos.begin(), pos.end(), 0);
      pos.back() = static_cast<std::uint32_t>(top);
      for (std::size_t j = 0; j + 1 < r; ++j) shifts[j + 1] = trans[j].reps[pos[j]];
      while (true) {
        const std::size_t v = eval(shifts.data(), stamp, epoch);
        ++out.examined;
        if (v < out.best) {
          out.best = v;
          out.position = pos;
          if (opt.stop_at_violation && v < rep.baseline) {
            out.stopped = true;
            return;
          }
        }
        // Advance the mixed-radix counter over all but the outermost index.
        std::size_t j = 0;
        while (j + 1 < r - 1) {
          if (++pos[j] < trans[j].reps.size()) break;
          pos[j] = 0;
          shifts[j + 1] = trans[j].reps[0];
          ++j;
        }
        if (j + 1 >= r - 1) break;
        shifts[j + 1] = trans[j].reps[pos[j]];
      }
    }
  };

  std::vector<Partial> parts(workers);
  if (workers == 1) {
    scan(0, outer, parts[0]);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t lo = outer * w / workers, hi = outer * (w + 1) / workers;
      pool.emplace_back([&, lo, hi, w] { scan(lo, hi, parts[w]); });
    }
    for (auto& t : pool) t.join();
  }

  const Partial* winner = nullptr;
  for (const auto& p : parts) {
    rep.tuples_examined += p.examined;
    if (!p.position.empty() && (!winner || p.best < winner->best)) winner = &p;
    if (opt.stop_at_violation && p.stopped) break;
  }
  rep.minimum = winner->best;
  rep.witness_shifts.assign(1, R->zero());
  for (std::size_t j = 0; j + 1 < r; ++j) rep.witness_shifts.push_back(trans[j].reps[winner->position[j]]);
  rep.satisfied = rep.minimum >= rep.baseline;
  return rep;
}

/// A triple of ideals with shifts certifying that condition (R) fails.
struct Witness {
  RingPtr ring;
  std::vector<Ideal> ideals;
  std::vector<ElementId> shifts;
  std::size_t union_shifted = 0;
  std::size_t union_baseline = 0;
};

namespace detail {

inline Witness finish_witness(const RingPtr& R, std::vector<Ideal> ideals, std::vector<ElementId> shifts,
                              const char* where) {
  const RogersReport check = rogers_verify(R, ideals, shifts);
  if (check.satisfied)
    throw std::logic_error(std::string("constructed witness failed verification in ") + where);
  return {R, std::move(ideals), std::move(shifts), check.minimum, check.baseline};
}

}  // namespace detail

/// Three lines in a two-dimensional subspace of the socle Ann(m) of a local
/// ring with at least two minimal ideals, shifted as (0, v, 0).
inline Witness socle_witness(const RingPtr& R) {
  const LocalityResult loc = is_local(R);
  if (!loc.local) throw Error(ErrorKind::NotLocal, "socle witness needs a local ring");
  const auto minimal = minimal_ideals(all_ideals(R));
  if (minimal.size() < 2)
    throw Error(ErrorKind::UniqueMinimalIdeal, "ring has a unique minimal ideal; use the lifting path");

  const Ideal socle = annihilator(*loc.maximal_ideal);
  const ElementId s1 = socle.members().at(1);
  const Ideal first_line = ideal_generated(R, {s1});
  ElementId s2 = s1;
  for (ElementId x : socle.members())
    if (!first_line.contains(x)) {
      s2 = x;
      break;
    }
  const Ideal plane = ideal_generated(R, {s1, s2});

  std::vector<Ideal> lines;
  for (ElementId h : plane.members()) {
    if (h == R->zero()) continue;
    Ideal line = ideal_generated(R, {h});
    if (std::find(lines.begin(), lines.end(), line) == lines.end()) lines.push_back(std::move(line));
  }
  std::sort(lines.begin(), lines.end(), [](const Ideal& a, const Ideal& b) { return canonical_less(a, b); });
  lines.erase(lines.begin() + 3, lines.end());

  ElementId v = R->zero();
  for (ElementId x : plane.members())
    if (!lines[1].contains(x)) {
      v = x;
      break;
    }
  return detail::finish_witness(R, lines, {R->zero(), v, R->zero()}, "socle_witness");
}

inline Witness counterexample(const RingPtr& R);

namespace detail {

/// Witness inside a local ring whose ideals are not linearly ordered.
inline Witness local_counterexample(const RingPtr& F) {
  const auto ideals = all_ideals(F);
  const auto minimal = minimal_ideals(ideals);
  if (minimal.size() >= 2) return socle_witness(F);

  // Unique minimal ideal J0: every nonzero ideal contains it, so F/J0 is
  // again not a chain ring; pull its witness back through the projection.
  const QuotientRing q = make_quotient(minimal.front());
  const Witness inner = counterexample(q.ring);
  std::vector<Ideal> lifted;
  std::vector<ElementId> shifts;
  for (std::size_t j = 0; j < inner.ideals.size(); ++j) {
    lifted.push_back(preimage(q.projection, inner.ideals[j]));
    shifts.push_back(q.smallest_preimage[inner.shifts[j]]);
  }
  return finish_witness(F, std::move(lifted), std::move(shifts), "unique-minimal-ideal lifting");
}

}  // namespace detail

/// Constructive witness for a ring that is not a product of chain rings:
/// pick the first non-chain local factor, build a witness there, and extend
/// it by the remaining factors.
inline Witness counterexample(const RingPtr& R) {
  require_nonzero(*R);
  const LocalDecomposition d = local_decomposition(R);
  const ClassificationVerdict v = classify(d);
  if (v.is_chain_local_product)
    throw Error(ErrorKind::AlreadyChainLocalProduct, "ring is a product of local chain rings");
  const LocalFactor& f = d.factors[*v.offending_factor];
  const Witness inner = detail::local_counterexample(f.ring);
  std::vector<Ideal> ideals;
  std::vector<ElementId> shifts;
  for (std::size_t j = 0; j < inner.ideals.size(); ++j) {
    ideals.push_back(preimage(f.projection, inner.ideals[j]));
    shifts.push_back(f.inclusion[inner.shifts[j]]);
  }
  return detail::finish_witness(R, std::move(ideals), std::move(shifts), "counterexample");
}

struct TripleBounds {
  std::size_t baseline = 0;
  std::size_t minimum = 0;
};

/// Exact minimum of the shifted union for a triple, from lattice cardinalities
/// alone. Cosets a_j + I_j with a_1 = 0 meet pairwise on the subgroup
///   G = {(a_2, a_3) : a_2 in I1+I2, a_3 in I1+I3, a_2-a_3 in I2+I3}
/// (classes mod I2 x I3) and have a common point exactly on the image of I1,
/// of size |I1|/|H|, H = I1 n I2 n I3. On G minus that image the union is
/// baseline - |H|; everywhere else it is at least the baseline. Counting G:
///   |G| = |I1+I2| |I1+I3| |I2+I3| / (|I1+I2+I3| |I2| |I3|).
inline TripleBounds triple_minimum(std::size_t i1, std::size_t i2, std::size_t i3, std::size_t i12,
                                   std::size_t i13, std::size_t i23, std::size_t h, std::size_t s12,
                                   std::size_t s13, std::size_t s23, std::size_t s123) {
  TripleBounds b;
  b.baseline = i1 + i2 + i3 - i12 - i13 - i23 + h;
  const unsigned __int128 lhs = static_cast<unsigned __int128>(s12) * s13 * s23 * h;
  const unsigned __int128 rhs = static_cast<unsigned __int128>(s123) * i1 * i2 * i3;
  b.minimum = lhs > rhs ? b.baseline - h : b.baseline;
  return b;
}

inline TripleBounds triple_minimum(IdealLattice& L, std::size_t a, std::size_t b, std::size_t c) {
  L.build_tables();
  auto sz = [&](std::size_t i) { return L[i].size(); };
  const std::size_t ab = L.meet(a, b), ac = L.meet(a, c), bc = L.meet(b, c);
  const std::size_t h = L.meet(ab, c);
  const std::size_t s12 = L.sum(a, b), s13 = L.sum(a, c), s23 = L.sum(b, c);
  return triple_minimum(sz(a), sz(b), sz(c), sz(ab), sz(ac), sz(bc), sz(h), sz(s12), sz(s13), sz(s23),
                        sz(L.sum(s12, c)));
}

struct Theorem2Options {
  /// Size of the ideal multisets examined; 3 suffices for the equivalence.
  std::size_t arity = 3;
  /// Use the shift search for every multiset instead of the lattice count.
  bool exhaustive = false;
  unsigned workers = 1;
  std::uint64_t tuple_cap = 10'000'000;
};

struct Theorem2Result {
  bool holds = true;
  std::size_t ideal_count = 0;
  std::uint64_t sets_examined = 0;
  /// Positions (in all_ideals order) of the first violating multiset.
  std::optional<std::vector<std::size_t>> first_violation;
};

/// Checks condition (R) on every multiset of `arity` ideals (with
/// repetition, so all smaller sets are covered). Multisets are visited in
/// lexicographic order of their sorted positions.
inline Theorem2Result theorem2_verify(const RingPtr& R, const Theorem2Options& opt = {}) {
  require_nonzero(*R);
  if (opt.arity < 1) throw Error(ErrorKind::InvalidInput, "arity must be positive");
  IdealLattice L(R);
  const bool use_lattice = !opt.exhaustive && opt.arity == 3;
  if (use_lattice) L.build_tables();
  const std::size_t n = L.size();

  std::vector<std::vector<std::size_t>> sets;
  std::vector<std::size_t> cur(opt.arity, 0);
  while (true) {
    sets.push_back(cur);
    std::size_t j = opt.arity;
    while (j > 0 && cur[j - 1] == n - 1) --j;
    if (j == 0) break;
    ++cur[j - 1];
    for (std::size_t t = j; t < opt.arity; ++t) cur[t] = cur[j - 1];
  }

  auto violates = [&](const std::vector<std::size_t>& s) {
    if (use_lattice) {
      const TripleBounds b = triple_minimum(L, s[0], s[1], s[2]);
      return b.minimum < b.baseline;
    }
    std::vector<Ideal> ideals;
    for (std::size_t i : s) ideals.push_back(L[i]);
    RogersOptions ro;
    ro.tuple_cap = opt.tuple_cap;
    ro.stop_at_violation = true;
    return !rogers_check(R, ideals, ro).satisfied;
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(opt.workers, static_cast<unsigned>(sets.size())));
  std::vector<std::optional<std::size_t>> first(workers);
  std::vector<std::exception_ptr> errors(workers);
  auto run = [&](unsigned w) {
    const std::size_t lo = sets.size() * w / workers, hi = sets.size() * (w + 1) / workers;
    try {
      for (std::size_t i = lo; i < hi; ++i)
        if (violates(sets[i])) {
          first[w] = i;
          return;
        }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  Theorem2Result res;
  res.ideal_count = n;
  res.sets_examined = sets.size();
  for (unsigned w = 0; w < workers; ++w) {
    if (errors[w]) std::rethrow_exception(errors[w]);
    if (first[w]) {
      res.holds = false;
      res.sets_examined = *first[w] + 1;
      res.first_violation = sets[*first[w]];
      break;
    }
  }
  return res;
}

}  // namespace ringsieve
