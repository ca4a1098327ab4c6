#pragma once

// Text formats for rings, orders and generator lists.
//
// Ring file:
//   ring k d_1 ... d_k
//   mul i j c_1 ... c_k      (1-based, i <= j; omitted products are zero)
//   one c_1 ... c_k
//   ideal g; g; ...          (optional, any number)
//
// Order file:
//   order n
//   mul i j c_1 ... c_n      (2 <= i <= j; products with b_1 are implied)
//   ideal g; g; ...          (optional)
//
// '#' starts a comment. Coordinates inside a generator are separated by
// commas or blanks; generators are separated by ';'.

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ringsieve/error.hpp"
#include "ringsieve/int_matrix.hpp"
#include "ringsieve/order.hpp"
#include "ringsieve/ring.hpp"

namespace ringsieve::io {

namespace detail {

inline std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

inline std::vector<std::string> tokens(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

inline std::string where(std::size_t line_no) { return "line " + std::to_string(line_no) + ": "; }

inline std::int64_t to_int64(const std::string& tok, const std::string& ctx) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(tok, &pos);
  } catch (...) {
    pos = 0;
  }
  if (pos != tok.size() || tok.empty()) throw Error(ErrorKind::ParseError, ctx + "expected an integer, got '" + tok + "'");
  return v;
}

inline Integer to_integer(const std::string& tok, const std::string& ctx) {
  Integer v;
  const std::string t = (!tok.empty() && tok[0] == '+') ? tok.substr(1) : tok;
  if (t.empty() || v.set_str(t, 10) != 0)
    throw Error(ErrorKind::ParseError, ctx + "expected an integer, got '" + tok + "'");
  return v;
}

inline std::size_t to_index(const std::string& tok, std::size_t lo, std::size_t hi, const std::string& ctx) {
  const std::int64_t v = to_int64(tok, ctx);
  if (v < static_cast<std::int64_t>(lo) || v > static_cast<std::int64_t>(hi))
    throw Error(ErrorKind::ParseError, ctx + "index " + tok + " out of range");
  return static_cast<std::size_t>(v);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace detail

/// A generator list: "g; g; ..." with an optional leading keyword "ideal".
inline std::vector<std::vector<std::string>> split_generators(const std::string& text) {
  std::vector<std::vector<std::string>> out;
  std::string body = text;
  {
    auto t = detail::tokens(body);
    if (!t.empty() && t.front() == "ideal") body = body.substr(body.find("ideal") + 5);
  }
  std::stringstream ss(body);
  std::string part;
  while (std::getline(ss, part, ';')) {
    auto t = detail::tokens(part);
    if (!t.empty()) out.push_back(std::move(t));
  }
  if (out.empty()) throw Error(ErrorKind::ParseError, "empty generator list");
  return out;
}

inline std::vector<std::vector<std::int64_t>> parse_int_generators(const std::string& text, std::size_t k) {
  std::vector<std::vector<std::int64_t>> out;
  for (const auto& g : split_generators(text)) {
    if (g.size() != k)
      throw Error(ErrorKind::ParseError, "generator needs " + std::to_string(k) + " coordinates, got " +
                                             std::to_string(g.size()));
    std::vector<std::int64_t> v;
    for (const auto& t : g) v.push_back(detail::to_int64(t, ""));
    out.push_back(std::move(v));
  }
  return out;
}

inline std::vector<IntVector> parse_order_generators(const std::string& text, std::size_t n) {
  std::vector<IntVector> out;
  for (const auto& g : split_generators(text)) {
    if (g.size() != n)
      throw Error(ErrorKind::ParseError, "generator needs " + std::to_string(n) + " coordinates, got " +
                                             std::to_string(g.size()));
    IntVector v;
    for (const auto& t : g) v.push_back(detail::to_integer(t, ""));
    out.push_back(std::move(v));
  }
  return out;
}

/// Reduces coordinates into the carrier.
inline std::vector<ElementId> to_elements(const FiniteRing& r, const std::vector<std::vector<std::int64_t>>& gens) {
  std::vector<ElementId> out;
  for (const auto& g : gens) out.push_back(r.index_of(g));
  return out;
}

struct RingFile {
  RingPresentation presentation;
  std::vector<std::string> ideals;
};

inline RingFile parse_ring(const std::string& text) {
  RingFile out;
  auto& p = out.presentation;
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0, k = 0;
  bool header = false, unit = false;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = detail::strip_comment(raw);
    const auto t = detail::tokens(line);
    if (t.empty()) continue;
    const std::string ctx = detail::where(line_no);
    if (t[0] == "ring") {
      if (header) throw Error(ErrorKind::ParseError, ctx + "duplicate 'ring' line");
      k = detail::to_index(t.size() > 1 ? t[1] : "", 1, FiniteRing::kMaxRank, ctx);
      if (t.size() != k + 2) throw Error(ErrorKind::ParseError, ctx + "expected " + std::to_string(k) + " moduli");
      for (std::size_t i = 0; i < k; ++i) p.invariant_factors.push_back(detail::to_int64(t[i + 2], ctx));
      p.structure_constants.assign(k, std::vector<std::vector<std::int64_t>>(k, std::vector<std::int64_t>(k, 0)));
      header = true;
      continue;
    }
    if (!header) throw Error(ErrorKind::ParseError, ctx + "expected 'ring k d_1 ... d_k' first");
    if (t[0] == "mul") {
      if (t.size() != k + 3) throw Error(ErrorKind::ParseError, ctx + "expected 'mul i j' and " + std::to_string(k) + " coefficients");
      const std::size_t i = detail::to_index(t[1], 1, k, ctx), j = detail::to_index(t[2], 1, k, ctx);
      if (i > j) throw Error(ErrorKind::ParseError, ctx + "mul lines need i <= j");
      std::vector<std::int64_t> c;
      for (std::size_t l = 0; l < k; ++l) c.push_back(detail::to_int64(t[l + 3], ctx));
      p.structure_constants[i - 1][j - 1] = c;
      p.structure_constants[j - 1][i - 1] = c;
    } else if (t[0] == "one") {
      if (unit) throw Error(ErrorKind::ParseError, ctx + "duplicate 'one' line");
      if (t.size() != k + 1) throw Error(ErrorKind::ParseError, ctx + "expected " + std::to_string(k) + " unit coordinates");
      for (std::size_t l = 0; l < k; ++l) p.unit.push_back(detail::to_int64(t[l + 1], ctx));
      unit = true;
    } else if (t[0] == "ideal") {
      out.ideals.push_back(line.substr(line.find("ideal") + 5));
    } else {
      throw Error(ErrorKind::ParseError, ctx + "unknown keyword '" + t[0] + "'");
    }
  }
  if (!header) throw Error(ErrorKind::ParseError, "missing 'ring' line");
  if (!unit) throw Error(ErrorKind::ParseError, "missing 'one' line");
  return out;
}

struct OrderFile {
  OrderPresentation presentation;
  std::vector<std::string> ideals;
};

inline OrderFile parse_order(const std::string& text) {
  OrderFile out;
  auto& p = out.presentation;
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0, n = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = detail::strip_comment(raw);
    const auto t = detail::tokens(line);
    if (t.empty()) continue;
    const std::string ctx = detail::where(line_no);
    if (t[0] == "order") {
      if (n) throw Error(ErrorKind::ParseError, ctx + "duplicate 'order' line");
      if (t.size() != 2) throw Error(ErrorKind::ParseError, ctx + "expected 'order n'");
      n = detail::to_index(t[1], 1, 64, ctx);
      p.rank = n;
      p.table.assign(n, std::vector<IntVector>(n, IntVector(n)));
      for (std::size_t j = 0; j < n; ++j) {
        p.table[0][j][j] = 1;
        p.table[j][0][j] = 1;
      }
      continue;
    }
    if (!n) throw Error(ErrorKind::ParseError, ctx + "expected 'order n' first");
    if (t[0] == "mul") {
      if (t.size() != n + 3) throw Error(ErrorKind::ParseError, ctx + "expected 'mul i j' and " + std::to_string(n) + " coefficients");
      const std::size_t i = detail::to_index(t[1], 2, n, ctx), j = detail::to_index(t[2], 2, n, ctx);
      if (i > j) throw Error(ErrorKind::ParseError, ctx + "mul lines need i <= j");
      IntVector c;
      for (std::size_t l = 0; l < n; ++l) c.push_back(detail::to_integer(t[l + 3], ctx));
      p.table[i - 1][j - 1] = c;
      p.table[j - 1][i - 1] = c;
    } else if (t[0] == "ideal") {
      out.ideals.push_back(line.substr(line.find("ideal") + 5));
    } else {
      throw Error(ErrorKind::ParseError, ctx + "unknown keyword '" + t[0] + "'");
    }
  }
  if (!n) throw Error(ErrorKind::ParseError, "missing 'order' line");
  return out;
}

inline RingFile read_ring_file(const std::string& path) { return parse_ring(detail::read_file(path)); }
inline OrderFile read_order_file(const std::string& path) { return parse_order(detail::read_file(path)); }

inline std::string format_vector(const IntVector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s;
}

inline std::string format_lattice(const IntegerLattice& l) {
  std::string s;
  for (std::size_t r = 0; r < l.basis().rows(); ++r) s += (r ? ";" : "") + format_vector(l.basis().row(r));
  return s;
}

inline std::string format_elements(const FiniteRing& r, const std::vector<ElementId>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ";" : "") + r.format(xs[i]);
  return s;
}

}  // namespace ringsieve::io
