#pragma once

// Named ring and order constructions used by the CLI and the test suites.
//
//   Z<n>        Z/n
//   Fq:<q>      the field with q elements (q a prime power)
//   Fqt:<q>     F_q[t]/(t^2)
//   Fqxy:<q>    F_q[x,y]/(x,y)^2, a local ring with two-dimensional socle
//   F2xy, F3xy  aliases for Fqxy:2 and Fqxy:3
//   C1          F_2[x,y]/(x^2,y^2): local of order 16, unique minimal ideal
//               (xy), quotient by it isomorphic to F_2[x,y]/(x,y)^2
//   A*B*...     direct product of catalog rings
//
// Orders: Zi (Gaussian integers), Z2i (Z[2i]), Zsqrt<d> (Z[sqrt d]).

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ringsieve/construct.hpp"
#include "ringsieve/error.hpp"
#include "ringsieve/order.hpp"
#include "ringsieve/ring.hpp"

namespace ringsieve::catalog {

namespace detail {

using Poly = std::vector<std::int64_t>;  // coefficients, low degree first

inline bool prime_power(std::int64_t q, std::int64_t& p, int& e) {
  if (q < 2) return false;
  p = 0;
  for (std::int64_t d = 2; d * d <= q; ++d)
    if (q % d == 0) {
      p = d;
      break;
    }
  if (p == 0) p = q;
  e = 0;
  while (q % p == 0) {
    q /= p;
    ++e;
  }
  return q == 1;
}

inline std::int64_t inverse_mod(std::int64_t a, std::int64_t p) {
  for (std::int64_t x = 1; x < p; ++x)
    if (a * x % p == 1) return x;
  return 0;
}

/// Remainder of a modulo monic-or-not b over F_p.
inline Poly poly_mod(Poly a, const Poly& b, std::int64_t p) {
  const std::size_t db = b.size() - 1;
  const std::int64_t lead_inv = inverse_mod(b.back(), p);
  while (a.size() > db) {
    const std::int64_t c = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) a[shift + i] = ((a[shift + i] - c * b[i]) % p + p) % p;
    a.pop_back();
    while (!a.empty() && a.back() == 0 && a.size() > db) a.pop_back();
  }
  return a;
}

inline bool irreducible(const Poly& f, std::int64_t p) {
  const std::size_t deg = f.size() - 1;
  for (std::size_t d = 1; d * 2 <= deg; ++d) {
    // Every monic g of degree d.
    Poly g(d + 1, 0);
    g[d] = 1;
    while (true) {
      Poly r = poly_mod(f, g, p);
      bool zero = true;
      for (auto c : r)
        if (c) zero = false;
      if (zero) return false;
      std::size_t i = 0;
      while (i < d && ++g[i] == p) g[i++] = 0;
      if (i == d) break;
    }
  }
  return true;
}

/// First monic irreducible polynomial of degree e over F_p (coefficients
/// enumerated with the constant term fastest).
inline Poly irreducible_poly(std::int64_t p, int e) {
  Poly f(static_cast<std::size_t>(e) + 1, 0);
  f[static_cast<std::size_t>(e)] = 1;
  while (true) {
    if (irreducible(f, p)) return f;
    std::size_t i = 0;
    while (i < static_cast<std::size_t>(e) && ++f[i] == p) f[i++] = 0;
    if (i == static_cast<std::size_t>(e)) throw Error(ErrorKind::InvalidInput, "no irreducible polynomial");
  }
}

}  // namespace detail

/// F_q[x_1..x_m]/(x_1..x_m)^2 on the basis w^a, w^a x_i (w generating F_q).
/// m = 0 gives the field itself.
inline RingPtr square_zero_extension(std::int64_t q, int m, const RingConfig& config = {}) {
  std::int64_t p = 0;
  int e = 0;
  if (!detail::prime_power(q, p, e)) throw Error(ErrorKind::InvalidInput, std::to_string(q) + " is not a prime power");
  const detail::Poly f = detail::irreducible_poly(p, e);
  const std::size_t E = static_cast<std::size_t>(e);
  const std::size_t k = E * static_cast<std::size_t>(m + 1);
  auto power = [&](std::size_t n) {
    detail::Poly x(n + 1, 0);
    x[n] = 1;
    detail::Poly r = detail::poly_mod(x, f, p);
    r.resize(E, 0);
    return r;
  };
  RingPresentation pres;
  pres.invariant_factors.assign(k, p);
  pres.structure_constants.assign(k, std::vector<std::vector<std::int64_t>>(k, std::vector<std::int64_t>(k, 0)));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t bi = i / E, bj = j / E;
      if (bi > 0 && bj > 0) continue;
      const std::size_t block = bi + bj;
      const auto r = power(i % E + j % E);
      for (std::size_t a = 0; a < E; ++a) pres.structure_constants[i][j][block * E + a] = r[a];
    }
  pres.unit.assign(k, 0);
  pres.unit[0] = 1;
  return validate_ring(pres, config);
}

inline RingPtr field(std::int64_t q, const RingConfig& config = {}) { return square_zero_extension(q, 0, config); }

inline RingPtr c1(const RingConfig& config = {}) {
  // Basis 1, x, y, xy.
  RingPresentation p;
  p.invariant_factors = {2, 2, 2, 2};
  auto v = [](int a, int b, int c, int d) { return std::vector<std::int64_t>{a, b, c, d}; };
  const auto zero = v(0, 0, 0, 0);
  p.structure_constants = {
      {v(1, 0, 0, 0), v(0, 1, 0, 0), v(0, 0, 1, 0), v(0, 0, 0, 1)},
      {v(0, 1, 0, 0), zero, v(0, 0, 0, 1), zero},
      {v(0, 0, 1, 0), v(0, 0, 0, 1), zero, zero},
      {v(0, 0, 0, 1), zero, zero, zero},
  };
  p.unit = v(1, 0, 0, 0);
  return validate_ring(p, config);
}

/// Z[sqrt d] on the basis (1, t), t^2 = d.
inline Order quadratic_order(std::int64_t d) {
  OrderPresentation p;
  p.rank = 2;
  p.table = {{{1, 0}, {0, 1}}, {{0, 1}, {Integer(static_cast<long>(d)), 0}}};
  return Order::validate(p);
}

inline std::optional<std::int64_t> parse_int(const std::string& s) {
  if (s.empty()) return std::nullopt;
  std::size_t pos = 0;
  try {
    const long long v = std::stoll(s, &pos);
    if (pos != s.size()) return std::nullopt;
    return v;
  } catch (...) {
    return std::nullopt;
  }
}

inline RingPtr ring(const std::string& name, const RingConfig& config = {}) {
  if (const auto star = name.find('*'); star != std::string::npos) {
    std::vector<RingPtr> factors;
    std::size_t start = 0;
    while (true) {
      const auto next = name.find('*', start);
      factors.push_back(ring(name.substr(start, next - start), config));
      if (next == std::string::npos) break;
      start = next + 1;
    }
    return make_product(factors, config).ring;
  }
  auto suffix = [&](const std::string& prefix) -> std::optional<std::int64_t> {
    if (name.rfind(prefix, 0) != 0) return std::nullopt;
    return parse_int(name.substr(prefix.size()));
  };
  if (name == "F2xy") return square_zero_extension(2, 2, config);
  if (name == "F3xy") return square_zero_extension(3, 2, config);
  if (name == "C1") return c1(config);
  if (auto q = suffix("Fqxy:")) return square_zero_extension(*q, 2, config);
  if (auto q = suffix("Fqt:")) return square_zero_extension(*q, 1, config);
  if (auto q = suffix("Fq:")) return field(*q, config);
  if (auto n = suffix("Z")) {
    if (*n < 2) throw Error(ErrorKind::ZeroRing, "catalog rings must be nonzero");
    return make_cyclic(*n, config);
  }
  throw Error(ErrorKind::InvalidInput, "unknown catalog ring '" + name + "'");
}

inline Order order(const std::string& name) {
  if (name == "Zi") return quadratic_order(-1);
  if (name == "Z2i") return quadratic_order(-4);
  if (name.rfind("Zsqrt", 0) == 0)
    if (auto d = parse_int(name.substr(5))) return quadratic_order(*d);
  throw Error(ErrorKind::InvalidInput, "unknown catalog order '" + name + "'");
}

using Entry = std::pair<std::string, RingPtr>;

/// Z/n (2 <= n <= 64), the fields of order 2,3,4,5,7,8,9, F_p[t]/(t^2) and
/// F_p[x,y]/(x,y)^2 for p = 2, 3, and C1.
inline std::vector<Entry> base_catalog(const RingConfig& config = {}) {
  std::vector<Entry> out;
  for (int n = 2; n <= 64; ++n) out.emplace_back("Z" + std::to_string(n), make_cyclic(n, config));
  for (int q : {2, 3, 4, 5, 7, 8, 9}) out.emplace_back("Fq:" + std::to_string(q), field(q, config));
  for (int p : {2, 3}) out.emplace_back("Fqt:" + std::to_string(p), square_zero_extension(p, 1, config));
  for (int p : {2, 3}) out.emplace_back("Fqxy:" + std::to_string(p), square_zero_extension(p, 2, config));
  out.emplace_back("C1", c1(config));
  return out;
}

/// All unordered pairs (with repetition) of base entries whose product fits
/// within the carrier bound.
inline std::vector<Entry> product_catalog(const std::vector<Entry>& base, const RingConfig& config = {}) {
  std::vector<Entry> out;
  for (std::size_t i = 0; i < base.size(); ++i)
    for (std::size_t j = i; j < base.size(); ++j) {
      if (base[i].second->size() * base[j].second->size() > config.carrier_bound) continue;
      out.emplace_back(base[i].first + "*" + base[j].first,
                       make_product({base[i].second, base[j].second}, config).ring);
    }
  return out;
}

}  // namespace ringsieve::catalog
