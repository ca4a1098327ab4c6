#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ringsieve/catalog.hpp"
#include "ringsieve/rogers.hpp"

using namespace ringsieve;

namespace {

ElementId el(const RingPtr& r, std::vector<std::int64_t> c) { return r->index_of(c); }

std::vector<oracle::Subset> as_subsets(const std::vector<Ideal>& ideals) {
  std::vector<oracle::Subset> out;
  for (const auto& I : ideals) {
    oracle::Subset s(I.ring().size(), false);
    for (ElementId x : I.members()) s[x] = true;
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Ideal> lines(const RingPtr& r) {
  return {ideal_generated(r, {el(r, {0, 1, 0})}), ideal_generated(r, {el(r, {0, 0, 1})}),
          ideal_generated(r, {el(r, {0, 1, 1})})};
}

/// Every multiset of `arity` ideals, as position lists.
std::vector<std::vector<std::size_t>> multisets(std::size_t n, std::size_t arity) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur(arity, 0);
  while (true) {
    out.push_back(cur);
    std::size_t j = arity;
    while (j > 0 && cur[j - 1] == n - 1) --j;
    if (j == 0) break;
    ++cur[j - 1];
    for (std::size_t t = j; t < arity; ++t) cur[t] = cur[j - 1];
  }
  return out;
}

}  // namespace

TEST(RogersCheck, SquareZeroPlaneLines) {
  const RingPtr r = catalog::ring("F2xy");
  const RogersReport rep = rogers_check(r, lines(r));
  EXPECT_EQ(rep.baseline, 4u);
  EXPECT_EQ(rep.minimum, 3u);
  EXPECT_FALSE(rep.satisfied);
  EXPECT_EQ(rep.witness_shifts, (std::vector<ElementId>{0, el(r, {0, 1, 0}), 0}));
  EXPECT_EQ(rep.tuples_examined, 16u);
}

TEST(RogersCheck, SingleIdealIsTight) {
  const RingPtr r = make_cyclic(12);
  for (const auto& I : all_ideals(r)) {
    const RogersReport rep = rogers_check(r, {I});
    EXPECT_EQ(rep.minimum, I.size());
    EXPECT_EQ(rep.baseline, I.size());
    EXPECT_TRUE(rep.satisfied);
  }
}

TEST(RogersCheck, PairsInCyclicTwelveSatisfy) {
  const RingPtr r = make_cyclic(12);
  const auto ideals = all_ideals(r);
  for (const auto& a : ideals)
    for (const auto& b : ideals) {
      const RogersReport rep = rogers_check(r, {a, b});
      EXPECT_TRUE(rep.satisfied);
      EXPECT_EQ(rep.minimum, oracle::min_shifted_union(*r, as_subsets({a, b})));
    }
}

TEST(RogersCheck, MinimumMatchesBruteForceOnAllTriples) {
  for (const auto& name : {"Z4", "Z6", "Z8", "Z12", "Fqt:2", "F2xy", "Z2*Z2", "Z2*Z4", "Fqt:3"}) {
    const RingPtr r = catalog::ring(name);
    const auto ideals = all_ideals(r);
    for (const auto& s : multisets(ideals.size(), 3)) {
      const std::vector<Ideal> tri{ideals[s[0]], ideals[s[1]], ideals[s[2]]};
      const RogersReport rep = rogers_check(r, tri);
      ASSERT_EQ(rep.minimum, oracle::min_shifted_union(*r, as_subsets(tri))) << name;
      ASSERT_EQ(rep.baseline, oracle::shifted_union(*r, as_subsets(tri), {0, 0, 0})) << name;
      ASSERT_EQ(oracle::shifted_union(*r, as_subsets(tri), rep.witness_shifts), rep.minimum) << name;
    }
  }
}

TEST(RogersCheck, GenericEvaluatorForFourIdeals) {
  const RingPtr r = catalog::ring("Z2*F2xy");
  const auto ideals = all_ideals(r);
  std::size_t checked = 0;
  for (const auto& s : multisets(ideals.size(), 4)) {
    if ((s[0] + 2 * s[1] + 3 * s[2] + 5 * s[3]) % 37 != 0) continue;
    std::vector<Ideal> quad;
    for (auto i : s) quad.push_back(ideals[i]);
    const RogersReport rep = rogers_check(r, quad);
    ASSERT_EQ(rep.minimum, oracle::min_shifted_union(*r, as_subsets(quad), true));
    ++checked;
  }
  EXPECT_GT(checked, 20u);
}

TEST(RogersCheck, TranslationAndCosetInvariance) {
  const RingPtr r = catalog::ring("Z4*F2xy");
  const auto ideals = all_ideals(r);
  const std::vector<Ideal> tri{ideals[3], ideals[5], ideals[8]};
  const std::vector<ElementId> shifts{0, 7, 19};
  const std::size_t base = shifted_union_size(tri, shifts);
  for (ElementId c = 0; c < r->size(); ++c) {
    std::vector<ElementId> moved;
    for (ElementId s : shifts) moved.push_back(r->add(s, c));
    ASSERT_EQ(shifted_union_size(tri, moved), base);
  }
  for (std::size_t j = 0; j < tri.size(); ++j)
    for (ElementId i : tri[j].members()) {
      auto moved = shifts;
      moved[j] = r->add(moved[j], i);
      ASSERT_EQ(shifted_union_size(tri, moved), base);
    }
}

TEST(RogersCheck, WorkerCountDoesNotChangeReport) {
  const RingPtr r = catalog::ring("Z4*F2xy");
  const auto ideals = all_ideals(r);
  for (const auto& s : multisets(ideals.size(), 3)) {
    if ((s[0] * 7 + s[1] * 3 + s[2]) % 11 != 0) continue;
    const std::vector<Ideal> tri{ideals[s[0]], ideals[s[1]], ideals[s[2]]};
    RogersOptions one, four;
    four.workers = 4;
    const RogersReport a = rogers_check(r, tri, one), b = rogers_check(r, tri, four);
    ASSERT_EQ(a.minimum, b.minimum);
    ASSERT_EQ(a.witness_shifts, b.witness_shifts);
    ASSERT_EQ(a.tuples_examined, b.tuples_examined);
  }
}

TEST(RogersCheck, TupleCapIsEnforced) {
  const RingPtr r = catalog::ring("F2xy");
  RogersOptions o;
  o.tuple_cap = 10;
  EXPECT_THROW(rogers_check(r, lines(r), o), Error);
}

TEST(RogersVerify, EvaluatesSuppliedShiftsOnly) {
  const RingPtr r = catalog::ring("F2xy");
  const RogersReport rep = rogers_verify(r, lines(r), {0, 0, 0});
  EXPECT_EQ(rep.minimum, 4u);
  EXPECT_TRUE(rep.satisfied);
}

TEST(TripleMinimum, MatchesShiftSearchOnEveryTriple) {
  for (const auto& name : {"Z12", "Z36", "F2xy", "Fqxy:3", "C1", "Z4*F2xy", "Z2*C1", "Fqt:2*Fqt:2", "Z8*Z4", "Fqxy:4"}) {
    const RingPtr r = catalog::ring(name);
    IdealLattice L(r);
    L.build_tables();
    for (const auto& s : multisets(L.size(), 3)) {
      const TripleBounds b = triple_minimum(L, s[0], s[1], s[2]);
      const RogersReport rep = rogers_check(r, {L[s[0]], L[s[1]], L[s[2]]});
      ASSERT_EQ(b.baseline, rep.baseline) << name;
      ASSERT_EQ(b.minimum, rep.minimum) << name << " " << s[0] << "," << s[1] << "," << s[2];
    }
  }
}

TEST(SocleWitness, SquareZeroPlanes) {
  for (std::int64_t q : {2, 3, 4, 5}) {
    const RingPtr r = catalog::square_zero_extension(q, 2);
    const Witness w = socle_witness(r);
    EXPECT_EQ(w.union_baseline, static_cast<std::size_t>(3 * q - 2));
    EXPECT_EQ(w.union_shifted, static_cast<std::size_t>(3 * q - 3));
    EXPECT_EQ(w.shifts.front(), r->zero());
    EXPECT_EQ(w.shifts.back(), r->zero());
  }
}

TEST(SocleWitness, ChainRingHasUniqueMinimalIdeal) {
  try {
    socle_witness(make_cyclic(8));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UniqueMinimalIdeal);
  }
  EXPECT_THROW(socle_witness(make_cyclic(6)), Error);
}

TEST(Counterexample, ProductWithCyclicFour) {
  const RingPtr r = catalog::ring("Z4*F2xy");
  const Witness w = counterexample(r);
  EXPECT_EQ(w.union_baseline, 16u);
  EXPECT_EQ(w.union_shifted, 12u);
  EXPECT_EQ(oracle::shifted_union(*r, as_subsets(w.ideals), w.shifts), 12u);
}

TEST(Counterexample, LiftsThroughUniqueMinimalIdeal) {
  const RingPtr r = catalog::ring("C1");
  const Witness w = counterexample(r);
  EXPECT_EQ(w.union_baseline, 8u);
  EXPECT_EQ(w.union_shifted, 6u);
  for (const auto& I : w.ideals) EXPECT_EQ(I.size(), 4u);
}

TEST(Counterexample, ChainProductIsRejected) {
  try {
    counterexample(make_cyclic(12));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::AlreadyChainLocalProduct);
  }
}

TEST(Counterexample, EveryNonChainSmallRingIsReevaluated) {
  for (const auto& name : {"F2xy", "C1", "Fqxy:3", "Z2*F2xy", "C1*Z3", "Fqt:2*Fqxy:2", "Fqxy:4*Z5"}) {
    const RingPtr r = catalog::ring(name);
    const Witness w = counterexample(r);
    ASSERT_EQ(w.ideals.size(), 3u);
    EXPECT_LT(shifted_union_size(w.ideals, w.shifts), union_size(w.ideals)) << name;
    if (r->size() <= 64) EXPECT_LT(oracle::shifted_union(*r, as_subsets(w.ideals), w.shifts), union_size(w.ideals));
  }
}

TEST(Theorem2, Examples) {
  EXPECT_TRUE(theorem2_verify(make_cyclic(12)).holds);
  const Theorem2Result t = theorem2_verify(catalog::ring("F2xy"));
  EXPECT_FALSE(t.holds);
  ASSERT_TRUE(t.first_violation.has_value());
  EXPECT_TRUE(theorem2_verify(catalog::field(5)).holds);
}

TEST(Theorem2, LatticeRouteMatchesExhaustiveRoute) {
  for (const auto& name : {"Z12", "Z16", "F2xy", "C1", "Fqt:3", "Z2*Fqt:2", "Z2*Z2*Z2", "Fqxy:3", "Z4*Z6"}) {
    const RingPtr r = catalog::ring(name);
    Theorem2Options lattice, exhaustive;
    exhaustive.exhaustive = true;
    const Theorem2Result a = theorem2_verify(r, lattice), b = theorem2_verify(r, exhaustive);
    EXPECT_EQ(a.holds, b.holds) << name;
    EXPECT_EQ(a.first_violation, b.first_violation) << name;
    EXPECT_EQ(a.holds, classify(r).is_chain_local_product) << name;
  }
}

TEST(Theorem2, HigherArityAndWorkers) {
  Theorem2Options o;
  o.arity = 4;
  EXPECT_FALSE(theorem2_verify(catalog::ring("F2xy"), o).holds);
  EXPECT_TRUE(theorem2_verify(make_cyclic(12), o).holds);
  Theorem2Options w;
  w.workers = 4;
  const RingPtr r = catalog::ring("Z4*C1");
  EXPECT_EQ(theorem2_verify(r, w).first_violation, theorem2_verify(r).first_violation);
}
