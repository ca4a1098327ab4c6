#pragma once

// Exact densities of unions of arithmetic progressions a + qZ.

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "ringsieve/error.hpp"

namespace ringsieve {

/// Exact non-negative rational kept in lowest terms.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Fraction make(std::int64_t p, std::int64_t q) {
    const std::int64_t g = std::gcd(p, q);
    return {p / g, q / g};
  }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

  friend bool operator==(const Fraction&, const Fraction&) = default;
  friend bool operator<(const Fraction& a, const Fraction& b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
  }
  friend bool operator<=(const Fraction& a, const Fraction& b) { return !(b < a); }
};

struct Progression {
  std::int64_t shift = 0;
  std::int64_t modulus = 1;

  static Progression make(std::int64_t a, std::int64_t q) {
    if (q < 1) throw Error(ErrorKind::InvalidInput, "progression modulus must be positive");
    return {((a % q) + q) % q, q};
  }
};

struct SieveConfig {
  std::int64_t period_cap = 1'000'000;
  std::uint64_t tuple_cap = 10'000'000;
};

struct DensityReport {
  Fraction density;
  std::int64_t period = 1;
  std::int64_t residues = 0;
  /// Filled by rogers_min_density.
  Fraction min_density;
  std::vector<std::int64_t> witness_shifts;
  std::uint64_t tuples_examined = 0;
};

namespace detail {

inline std::int64_t period_of(const std::vector<std::int64_t>& moduli, const SieveConfig& cfg) {
  std::int64_t l = 1;
  for (auto q : moduli) {
    if (q < 1) throw Error(ErrorKind::InvalidInput, "moduli must be positive");
    l = std::lcm(l, q);
    if (l > cfg.period_cap)
      throw Error(ErrorKind::PeriodTooLarge, "lcm of moduli exceeds " + std::to_string(cfg.period_cap));
  }
  return l;
}

inline std::int64_t covered_residues(const std::vector<Progression>& ps, std::int64_t period,
                                     std::vector<std::uint32_t>& stamp, std::uint32_t epoch) {
  std::int64_t count = 0;
  for (const auto& p : ps)
    for (std::int64_t x = p.shift; x < period; x += p.modulus)
      if (stamp[static_cast<std::size_t>(x)] != epoch) {
        stamp[static_cast<std::size_t>(x)] = epoch;
        ++count;
      }
  return count;
}

}  // namespace detail

/// Density of the union, by marking residues modulo the lcm of the moduli.
inline DensityReport union_density(const std::vector<Progression>& ps, const SieveConfig& cfg = {}) {
  if (ps.empty()) throw Error(ErrorKind::InvalidInput, "need at least one progression");
  std::vector<std::int64_t> moduli;
  for (const auto& p : ps) moduli.push_back(p.modulus);
  DensityReport rep;
  rep.period = detail::period_of(moduli, cfg);
  std::vector<std::uint32_t> stamp(static_cast<std::size_t>(rep.period), 0);
  std::vector<Progression> norm;
  for (const auto& p : ps) norm.push_back(Progression::make(p.shift, p.modulus));
  rep.residues = detail::covered_residues(norm, rep.period, stamp, 1);
  rep.density = Fraction::make(rep.residues, rep.period);
  rep.min_density = rep.density;
  return rep;
}

/// Minimum density of u (a_j + q_j Z) over all shifts, with a_1 = 0 and
/// a_j in [0, q_j). `density` holds the zero-shift value. Ties go to the
/// first tuple with a_2 varying fastest.
inline DensityReport rogers_min_density(const std::vector<std::int64_t>& moduli, const SieveConfig& cfg = {}) {
  if (moduli.empty()) throw Error(ErrorKind::InvalidInput, "need at least one modulus");
  const std::int64_t period = detail::period_of(moduli, cfg);
  std::uint64_t total = 1;
  for (std::size_t j = 1; j < moduli.size(); ++j) {
    total *= static_cast<std::uint64_t>(moduli[j]);
    if (total > cfg.tuple_cap)
      throw Error(ErrorKind::SearchSpaceTooLarge, "shift search exceeds " + std::to_string(cfg.tuple_cap));
  }
  std::vector<Progression> ps;
  for (auto q : moduli) ps.push_back({0, q});
  std::vector<std::uint32_t> stamp(static_cast<std::size_t>(period), 0);
  std::uint32_t epoch = 0;

  DensityReport rep;
  rep.period = period;
  rep.residues = detail::covered_residues(ps, period, stamp, ++epoch);
  rep.density = Fraction::make(rep.residues, period);

  std::int64_t best = rep.residues + 1;
  std::vector<std::int64_t> best_shifts;
  while (true) {
    const std::int64_t c = detail::covered_residues(ps, period, stamp, ++epoch);
    ++rep.tuples_examined;
    if (c < best) {
      best = c;
      best_shifts.clear();
      for (const auto& p : ps) best_shifts.push_back(p.shift);
    }
    std::size_t j = 1;
    while (j < ps.size()) {
      if (++ps[j].shift < ps[j].modulus) break;
      ps[j].shift = 0;
      ++j;
    }
    if (j >= ps.size()) break;
  }
  rep.min_density = Fraction::make(best, period);
  rep.witness_shifts = best_shifts;
  return rep;
}

}  // namespace ringsieve
