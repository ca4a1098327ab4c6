#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ringsieve/catalog.hpp"
#include "ringsieve/order.hpp"

using namespace ringsieve;

namespace {

IntVector v(long a, long b) { return {Integer(a), Integer(b)}; }

IntMatrix rows2(std::vector<std::pair<long, long>> r) {
  IntMatrix m(r.size(), 2);
  for (std::size_t i = 0; i < r.size(); ++i) {
    m(i, 0) = r[i].first;
    m(i, 1) = r[i].second;
  }
  return m;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::InvalidInput;
}

const Order& z2i() {
  static const Order o = catalog::order("Z2i");
  return o;
}

ElementId q_sub(const OrderQuotient& q, const IntVector& a, const IntVector& b) {
  return q.ring->sub(q.project(a), q.project(b));
}

// I_1 = (2), I_2 = (2i), I_3 = (2 + 2i, 4) on the basis (1, t), t = 2i.
const std::vector<std::vector<IntVector>> kPaperIdeals{{v(2, 0)}, {v(0, 1)}, {v(2, 1), v(4, 0)}};

}  // namespace

TEST(OrderValidate, Examples) {
  EXPECT_EQ(z2i().rank(), 2u);
  EXPECT_EQ(z2i().multiply(v(0, 1), v(0, 1)), v(-4, 0));
  OrderPresentation idem;
  idem.rank = 2;
  idem.table = {{v(1, 0), v(0, 1)}, {v(0, 1), v(0, 1)}};
  EXPECT_NO_THROW(Order::validate(idem));
  OrderPresentation bad = idem;
  bad.table[0][1] = v(1, 1);
  EXPECT_EQ(kind_of([&] { Order::validate(bad); }), ErrorKind::BadUnit);
}

TEST(OrderValidate, RejectsAsymmetricTable) {
  OrderPresentation p;
  p.rank = 3;
  auto e = [](long a, long b, long c) { return IntVector{Integer(a), Integer(b), Integer(c)}; };
  p.table = {{e(1, 0, 0), e(0, 1, 0), e(0, 0, 1)},
             {e(0, 1, 0), e(0, 0, 1), e(1, 0, 0)},
             {e(0, 0, 1), e(0, 1, 0), e(0, 0, 0)}};
  EXPECT_EQ(kind_of([&] { Order::validate(p); }), ErrorKind::NotCommutative);
}

TEST(Lattice, PrincipalIdealOfTwo) {
  const IntegerLattice l = order_ideal(z2i(), {v(2, 0)});
  EXPECT_EQ(l.basis(), rows2({{2, 0}, {0, 2}}));
  EXPECT_EQ(l.index(), 4);
}

TEST(Lattice, TwoGeneratorIdeal) {
  const IntegerLattice l = order_ideal(z2i(), {v(2, 1), v(4, 0)});
  EXPECT_EQ(l.basis(), rows2({{2, 1}, {0, 2}}));
  EXPECT_EQ(l.index(), 4);
}

TEST(Lattice, ZeroGeneratorIsRankDeficient) {
  EXPECT_EQ(kind_of([] { order_ideal(z2i(), {v(0, 0)}); }), ErrorKind::RankDeficient);
}

TEST(Lattice, Intersections) {
  const IntegerLattice i1 = order_ideal(z2i(), kPaperIdeals[0]);
  const IntegerLattice i2 = order_ideal(z2i(), kPaperIdeals[1]);
  const IntegerLattice i3 = order_ideal(z2i(), kPaperIdeals[2]);
  EXPECT_EQ(i2.basis(), rows2({{4, 0}, {0, 1}}));
  const IntegerLattice m12 = lattice_intersect(i1, i2);
  EXPECT_EQ(m12.basis(), rows2({{4, 0}, {0, 2}}));
  EXPECT_EQ(m12.index(), 8);
  EXPECT_EQ(lattice_intersect(i1, i1), i1);
  // The triple meet is generated by (4,2) and (0,2), whose canonical HNF is
  // ((4,0),(0,2)).
  const IntegerLattice h = lattice_intersect(m12, i3);
  EXPECT_EQ(h, IntegerLattice::from_generators({v(4, 2), v(0, 2)}, 2));
  EXPECT_EQ(h.index(), 8);
}

TEST(Lattice, IntersectionMatchesMembership) {
  const IntegerLattice a = order_ideal(z2i(), {v(6, 0)});
  const IntegerLattice b = order_ideal(z2i(), {v(2, 1), v(10, 0)});
  const IntegerLattice m = lattice_intersect(a, b);
  for (long x = -30; x <= 30; ++x)
    for (long y = -30; y <= 30; ++y) {
      const IntVector p = v(x, y);
      ASSERT_EQ(m.contains(p), a.contains(p) && b.contains(p)) << x << "," << y;
    }
}

TEST(Quotient, ByTwoIsDualNumbers) {
  const OrderQuotient q = order_quotient(z2i(), order_ideal(z2i(), {v(2, 0)}));
  EXPECT_EQ(q.ring->size(), 4u);
  EXPECT_TRUE(oracle::isomorphic(*q.ring, *catalog::ring("Fqt:2")));
  EXPECT_TRUE(classify(q.ring).is_chain_local_product);
}

TEST(Quotient, ByTripleMeetHasOrderEight) {
  const IntegerLattice h = IntegerLattice::from_generators({v(4, 2), v(0, 2)}, 2);
  EXPECT_EQ(order_quotient(z2i(), h).ring->size(), 8u);
}

TEST(Quotient, ByUnitLatticeIsZeroRing) {
  const OrderQuotient q = order_quotient(z2i(), order_ideal(z2i(), {v(1, 0)}));
  EXPECT_TRUE(q.ring->is_zero_ring());
}

TEST(Quotient, ProjectionIsHomomorphismAndLiftIsSection) {
  const Order o = catalog::order("Zsqrt-3");
  const IntegerLattice l = order_ideal(o, {v(6, 0), v(2, 2)});
  const OrderQuotient q = order_quotient(o, l);
  for (long a = -7; a <= 7; ++a)
    for (long b = -7; b <= 7; ++b)
      for (long c = -3; c <= 3; ++c)
        for (long d = -3; d <= 3; ++d) {
          const IntVector x = v(a, b), y = v(c, d);
          IntVector s(2);
          for (int i = 0; i < 2; ++i) s[i] = x[i] + y[i];
          ASSERT_EQ(q.project(s), q.ring->add(q.project(x), q.project(y)));
          ASSERT_EQ(q.project(o.multiply(x, y)), q.ring->mul(q.project(x), q.project(y)));
        }
  for (ElementId y = 0; y < q.ring->size(); ++y) EXPECT_EQ(q.project(q.lift(y)), y);
}

TEST(Quotient, NonIdealLatticeRejected) {
  const IntegerLattice l = IntegerLattice::from_generators({v(1, 0), v(0, 2)}, 2);
  const Order o = catalog::order("Zi");
  EXPECT_EQ(kind_of([&] { order_quotient(o, l); }), ErrorKind::NotAnIdeal);
}

TEST(OrderCheck, NonMaximalQuadraticExample) {
  const OrderRogersReport r = rogers_check_order(z2i(), kPaperIdeals);
  EXPECT_EQ(r.quotient.ring->size(), 8u);
  EXPECT_EQ(r.report.baseline, 4u);
  EXPECT_EQ(r.report.minimum, 3u);
  EXPECT_FALSE(r.report.satisfied);
  for (const auto& I : r.report.ideals) EXPECT_EQ(I.size(), 2u);
  // The witness moves I_2 to the coset 2 + I_2.
  EXPECT_TRUE(r.report.ideals[1].contains(q_sub(r.quotient, r.shifts[1], v(2, 0))));
  const ElementId two = r.quotient.project(v(2, 0));
  for (ElementId x : r.report.ideals[1].members()) {
    const ElementId y = r.quotient.ring->add(two, x);
    EXPECT_TRUE(r.report.ideals[0].contains(y) || r.report.ideals[2].contains(y));
  }
}

TEST(OrderCheck, SuppliedShiftsAndSingleIdeal) {
  const OrderRogersReport r = rogers_check_order(z2i(), kPaperIdeals, {}, std::vector<IntVector>{v(0, 0), v(2, 0), v(0, 0)});
  EXPECT_EQ(r.report.minimum, 3u);
  const OrderRogersReport one = rogers_check_order(z2i(), {kPaperIdeals[2]});
  EXPECT_TRUE(one.report.satisfied);
  EXPECT_TRUE(one.quotient.ring->size() == 4u);
}

TEST(OrderCheck, GaussianIntegersSatisfyEveryTriple) {
  const Order o = catalog::order("Zi");
  const std::vector<std::vector<IntVector>> gens{{v(2, 0)}, {v(1, 1)}, {v(3, 0)}, {v(2, 1)}, {v(1, 2)}, {v(4, 0)}, {v(0, 1)}};
  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t b = a; b < gens.size(); ++b)
      for (std::size_t c = b; c < gens.size(); ++c) {
        const OrderRogersReport r = rogers_check_order(o, {gens[a], gens[b], gens[c]});
        ASSERT_TRUE(r.report.satisfied) << a << b << c;
      }
}

TEST(Probe, FindsWitnessForNonMaximalOrder) {
  const auto w = nonmaximality_probe(z2i(), 4);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->conductor, 4);
  EXPECT_LT(w->union_shifted, w->union_baseline);
  EXPECT_LT(w->quotient_shifted, w->quotient_baseline);
  EXPECT_FALSE(nonmaximality_probe(z2i(), 3).has_value());
}

TEST(Probe, SeparatesMaximalFromNonMaximalQuadraticOrders) {
  EXPECT_FALSE(nonmaximality_probe(catalog::order("Zi"), 20).has_value());
  EXPECT_FALSE(nonmaximality_probe(catalog::order("Zsqrt2"), 20).has_value());
  EXPECT_TRUE(nonmaximality_probe(catalog::order("Zsqrt-3"), 20).has_value());
  EXPECT_TRUE(nonmaximality_probe(catalog::order("Zsqrt5"), 20).has_value());
}

TEST(Probe, RejectsTinyBound) {
  EXPECT_EQ(kind_of([] { nonmaximality_probe(z2i(), 1); }), ErrorKind::InvalidInput);
}
