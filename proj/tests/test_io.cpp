#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ringsieve/catalog.hpp"
#include "ringsieve/io.hpp"

using namespace ringsieve;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::InvalidInput;
}

}  // namespace

TEST(RingFile, SquareZeroPlane) {
  const io::RingFile f = io::parse_ring(R"(# F_2[x,y]/(x,y)^2
ring 3 2 2 2
mul 1 1 1 0 0
mul 1 2 0 1 0
mul 1 3 0 0 1
one 1 0 0
ideal 0 1 0
ideal 0,0,1 ; 0,1,1
)");
  const RingPtr r = validate_ring(f.presentation);
  EXPECT_TRUE(oracle::isomorphic(*r, *catalog::ring("F2xy")));
  ASSERT_EQ(f.ideals.size(), 2u);
  EXPECT_EQ(io::parse_int_generators(f.ideals[1], 3), (std::vector<std::vector<std::int64_t>>{{0, 0, 1}, {0, 1, 1}}));
}

TEST(RingFile, Errors) {
  EXPECT_EQ(kind_of([] { io::parse_ring("mul 1 1 1\n"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { io::parse_ring("ring 1 6\nmul 1 1 1\n"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { io::parse_ring("ring 2 2 2\nmul 2 1 0 1\none 1 0\n"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { io::parse_ring("ring 1 6\nmul 1 1 x\none 1\n"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { io::parse_ring("ring 1 6\nfoo\none 1\n"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { io::read_ring_file("/nonexistent/ring.txt"); }), ErrorKind::InvalidInput);
}

TEST(OrderFile, NonMaximalGaussianOrder) {
  const io::OrderFile f = io::parse_order("order 2\nmul 2 2 -4 0\nideal 2 0\n");
  const Order o = Order::validate(f.presentation);
  EXPECT_EQ(o.presentation().table, catalog::order("Z2i").presentation().table);
  EXPECT_EQ(f.ideals.size(), 1u);
}

TEST(OrderFile, BigCoefficients) {
  const io::OrderFile f = io::parse_order("order 2\nmul 2 2 -123456789012345678901234567890 0\n");
  EXPECT_EQ(f.presentation.table[1][1][0], Integer("-123456789012345678901234567890"));
}

TEST(OrderFile, Errors) {
  EXPECT_EQ(kind_of([] { io::parse_order("order 2\nmul 1 2 0 1\n"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { io::parse_order("mul 2 2 1 0\n"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { io::parse_order("order 2\nmul 2 2 1.5 0\n"); }), ErrorKind::ParseError);
}

TEST(Generators, SeparatorsAndKeyword) {
  EXPECT_EQ(io::parse_int_generators("ideal 1 2; 3,4", 2), (std::vector<std::vector<std::int64_t>>{{1, 2}, {3, 4}}));
  EXPECT_EQ(kind_of([] { io::parse_int_generators("1 2 3", 2); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { io::parse_int_generators(" ; ", 2); }), ErrorKind::ParseError);
}
