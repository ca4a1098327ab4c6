#pragma once

// Finite commutative unital rings presented by an invariant-factor additive
// group Z/d_1 + ... + Z/d_k and structure constants b_i * b_j.
//
// Elements are addressed by their mixed-radix carrier index (coordinate 1
// fastest); every "first" or "smallest" element in the library refers to this
// order.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "ringsieve/error.hpp"

namespace ringsieve {

using ElementId = std::uint32_t;

/// Coordinate vector of an element; coordinate i lies in [0, d_i).
struct Element {
  std::vector<std::int64_t> coords;

  friend bool operator==(const Element&, const Element&) = default;
};

struct RingPresentation {
  std::vector<std::int64_t> invariant_factors;
  /// structure_constants[i][j] = coordinates of b_i * b_j.
  std::vector<std::vector<std::vector<std::int64_t>>> structure_constants;
  std::vector<std::int64_t> unit;
};

struct RingConfig {
  std::size_t carrier_bound = 4096;
  /// Full multiplication table is cached up to this carrier size.
  std::size_t cache_threshold = 1024;
  /// Carrier-level axiom checks (all pairs/triples) run up to this size;
  /// above it the basis-level checks are used, which imply the carrier-level
  /// ones by multilinearity.
  std::size_t exhaustive_axiom_limit = 32;
};

inline std::string format_coords(std::span<const std::int64_t> c) {
  std::ostringstream os;
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  return os.str();
}

class FiniteRing;
using RingPtr = std::shared_ptr<const FiniteRing>;

RingPtr validate_ring(const RingPresentation& p, const RingConfig& config = {});

namespace detail {
RingPtr build_ring(const RingPresentation& p, const RingConfig& config, bool allow_zero);
}

class FiniteRing {
 public:
  std::size_t size() const noexcept { return size_; }
  std::size_t rank() const noexcept { return moduli_.size(); }
  bool is_zero_ring() const noexcept { return size_ == 1; }
  const RingPresentation& presentation() const noexcept { return presentation_; }
  const std::vector<std::int64_t>& invariant_factors() const noexcept { return moduli_; }
  const RingConfig& config() const noexcept { return config_; }

  ElementId zero() const noexcept { return 0; }
  ElementId one() const noexcept { return one_; }

  /// Index of the i-th basis vector b_i.
  ElementId basis(std::size_t i) const noexcept { return basis_ids_[i]; }

  Element element(ElementId x) const {
    Element e;
    e.coords.resize(rank());
    decode(x, e.coords.data());
    return e;
  }

  /// Index of an arbitrary coordinate vector; coordinates are reduced.
  ElementId index_of(std::span<const std::int64_t> coords) const {
    if (coords.size() != rank())
      throw Error(ErrorKind::InvalidInput, "element has " + std::to_string(coords.size()) +
                                               " coordinates, ring rank is " + std::to_string(rank()));
    std::uint64_t idx = 0;
    for (std::size_t i = rank(); i-- > 0;) {
      std::int64_t c = coords[i] % moduli_[i];
      if (c < 0) c += moduli_[i];
      idx = idx * static_cast<std::uint64_t>(moduli_[i]) + static_cast<std::uint64_t>(c);
    }
    return static_cast<ElementId>(idx);
  }
  ElementId index_of(const Element& e) const { return index_of(e.coords); }

  std::string format(ElementId x) const { return format_coords(element(x).coords); }

  ElementId add(ElementId a, ElementId b) const {
    std::int64_t ca[kMaxRank], cb[kMaxRank];
    decode(a, ca);
    decode(b, cb);
    for (std::size_t i = 0; i < rank(); ++i) {
      ca[i] += cb[i];
      if (ca[i] >= moduli_[i]) ca[i] -= moduli_[i];
    }
    return encode(ca);
  }

  ElementId neg(ElementId a) const {
    std::int64_t ca[kMaxRank];
    decode(a, ca);
    for (std::size_t i = 0; i < rank(); ++i) ca[i] = ca[i] ? moduli_[i] - ca[i] : 0;
    return encode(ca);
  }

  ElementId sub(ElementId a, ElementId b) const { return add(a, neg(b)); }

  /// n * a for an integer n.
  ElementId scale(std::int64_t n, ElementId a) const {
    std::int64_t ca[kMaxRank];
    decode(a, ca);
    for (std::size_t i = 0; i < rank(); ++i) {
      __int128 v = static_cast<__int128>(ca[i]) * n % moduli_[i];
      if (v < 0) v += moduli_[i];
      ca[i] = static_cast<std::int64_t>(v);
    }
    return encode(ca);
  }

  ElementId mul(ElementId a, ElementId b) const {
    if (!mul_table_.empty()) return mul_table_[static_cast<std::size_t>(a) * size_ + b];
    return mul_uncached(a, b);
  }

  ElementId mul_uncached(ElementId a, ElementId b) const {
    std::int64_t ca[kMaxRank], cb[kMaxRank], out[kMaxRank] = {};
    decode(a, ca);
    decode(b, cb);
    const std::size_t k = rank();
    for (std::size_t i = 0; i < k; ++i) {
      if (!ca[i]) continue;
      for (std::size_t j = 0; j < k; ++j) {
        if (!cb[j]) continue;
        const std::int64_t f = ca[i] * cb[j];
        const auto& s = presentation_.structure_constants[i][j];
        for (std::size_t l = 0; l < k; ++l) out[l] = (out[l] + f % moduli_[l] * s[l]) % moduli_[l];
      }
    }
    return encode(out);
  }

  bool has_cached_table() const noexcept { return !mul_table_.empty(); }

  /// Maximum supported number of basis coordinates.
  static constexpr std::size_t kMaxRank = 32;

 private:
  friend RingPtr detail::build_ring(const RingPresentation&, const RingConfig&, bool);

  FiniteRing() = default;

  void decode(ElementId x, std::int64_t* out) const {
    std::uint64_t v = x;
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
      out[i] = static_cast<std::int64_t>(v % static_cast<std::uint64_t>(moduli_[i]));
      v /= static_cast<std::uint64_t>(moduli_[i]);
    }
  }
  ElementId encode(const std::int64_t* c) const {
    std::uint64_t idx = 0;
    for (std::size_t i = moduli_.size(); i-- > 0;)
      idx = idx * static_cast<std::uint64_t>(moduli_[i]) + static_cast<std::uint64_t>(c[i]);
    return static_cast<ElementId>(idx);
  }

  RingPresentation presentation_;
  RingConfig config_;
  std::vector<std::int64_t> moduli_;
  std::vector<ElementId> basis_ids_;
  std::size_t size_ = 1;
  ElementId one_ = 0;
  std::vector<ElementId> mul_table_;
};

namespace detail {

inline std::string triple_name(std::size_t i, std::size_t j, std::size_t l) {
  return "(b" + std::to_string(i + 1) + ", b" + std::to_string(j + 1) + ", b" + std::to_string(l + 1) + ")";
}

inline RingPtr build_ring(const RingPresentation& p, const RingConfig& config, bool allow_zero) {
  const std::size_t k = p.invariant_factors.size();
  if (k > FiniteRing::kMaxRank)
    throw Error(ErrorKind::InvalidInput, "rank " + std::to_string(k) + " exceeds supported maximum");
  std::uint64_t size = 1;
  for (std::size_t i = 0; i < k; ++i) {
    const auto d = p.invariant_factors[i];
    if (d < 1) throw Error(ErrorKind::InvalidInput, "invariant factors must be positive");
    if (i + 1 < k && p.invariant_factors[i + 1] % d != 0)
      throw Error(ErrorKind::InvalidInput, "invariant factors must form a divisibility chain");
    size *= static_cast<std::uint64_t>(d);
    if (size > config.carrier_bound)
      throw Error(ErrorKind::CarrierTooLarge,
                  "carrier exceeds bound " + std::to_string(config.carrier_bound));
  }
  if (size == 1 && !allow_zero)
    throw Error(ErrorKind::ZeroRing, "the zero ring is only available through make_cyclic(1)");

  if (p.structure_constants.size() != k || p.unit.size() != k)
    throw Error(ErrorKind::IllFormedConstants, "structure constants must be a k x k table of length-k vectors");
  for (const auto& row : p.structure_constants) {
    if (row.size() != k) throw Error(ErrorKind::IllFormedConstants, "structure constant table is not k x k");
    for (const auto& v : row)
      if (v.size() != k) throw Error(ErrorKind::IllFormedConstants, "structure constant vector has wrong length");
  }

  auto ring = std::shared_ptr<FiniteRing>(new FiniteRing());
  FiniteRing& r = *ring;
  r.config_ = config;
  r.moduli_ = p.invariant_factors;
  r.size_ = static_cast<std::size_t>(size);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<std::int64_t> e(k, 0);
    e[i] = 1;
    r.basis_ids_.push_back(r.index_of(e));
  }

  // Reduce the table into canonical coordinates.
  r.presentation_ = p;
  auto reduce = [&](std::vector<std::int64_t>& v) {
    for (std::size_t l = 0; l < k; ++l) {
      v[l] %= r.moduli_[l];
      if (v[l] < 0) v[l] += r.moduli_[l];
    }
  };
  for (auto& row : r.presentation_.structure_constants)
    for (auto& v : row) reduce(v);
  reduce(r.presentation_.unit);
  const auto& s = r.presentation_.structure_constants;

  // Well-definedness: d_i * (b_i b_j) = 0 and d_j * (b_i b_j) = 0.
  auto killed_by = [&](const std::vector<std::int64_t>& v, std::int64_t n) {
    for (std::size_t l = 0; l < k; ++l)
      if ((static_cast<__int128>(v[l]) * n) % r.moduli_[l] != 0) return false;
    return true;
  };
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (!killed_by(s[i][j], r.moduli_[i]) || !killed_by(s[i][j], r.moduli_[j]))
        throw Error(ErrorKind::IllFormedConstants,
                    "b" + std::to_string(i + 1) + "*b" + std::to_string(j + 1) + " = (" +
                        format_coords(s[i][j]) + ") is not annihilated by the orders of its factors");
    }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (s[i][j] != s[j][i])
        throw Error(ErrorKind::NotCommutative,
                    "b" + std::to_string(i + 1) + "*b" + std::to_string(j + 1) + " != b" +
                        std::to_string(j + 1) + "*b" + std::to_string(i + 1));

  auto basis_id = [&](std::size_t i) { return r.basis_ids_[i]; };

  // Associativity on basis triples; trilinearity extends it to the carrier.
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t l = 0; l < k; ++l) {
        const ElementId bi = basis_id(i), bj = basis_id(j), bl = basis_id(l);
        if (r.mul_uncached(r.mul_uncached(bi, bj), bl) != r.mul_uncached(bi, r.mul_uncached(bj, bl)))
          throw Error(ErrorKind::NotAssociative, "fails on basis triple " + triple_name(i, j, l));
      }

  r.one_ = r.index_of(r.presentation_.unit);
  for (ElementId x = 0; x < r.size_; ++x)
    if (r.mul_uncached(r.one_, x) != x)
      throw Error(ErrorKind::NoUnit, "declared unit (" + format_coords(r.presentation_.unit) +
                                         ") fails on element (" + r.format(x) + ")");

  if (r.size_ <= config.exhaustive_axiom_limit) {
    for (ElementId a = 0; a < r.size_; ++a)
      for (ElementId b = 0; b < r.size_; ++b) {
        const ElementId ab = r.mul_uncached(a, b);
        if (ab != r.mul_uncached(b, a))
          throw Error(ErrorKind::NotCommutative, "fails on (" + r.format(a) + "), (" + r.format(b) + ")");
        for (ElementId c = 0; c < r.size_; ++c) {
          if (r.mul_uncached(ab, c) != r.mul_uncached(a, r.mul_uncached(b, c)))
            throw Error(ErrorKind::NotAssociative,
                        "fails on (" + r.format(a) + "), (" + r.format(b) + "), (" + r.format(c) + ")");
          if (r.mul_uncached(a, r.add(b, c)) != r.add(ab, r.mul_uncached(a, c)))
            throw Error(ErrorKind::IllFormedConstants, "distributivity fails");
        }
      }
  }

  if (r.size_ <= config.cache_threshold) {
    r.mul_table_.resize(r.size_ * r.size_);
    for (ElementId a = 0; a < r.size_; ++a)
      for (ElementId b = 0; b <= a; ++b) {
        const ElementId ab = r.mul_uncached(a, b);
        r.mul_table_[static_cast<std::size_t>(a) * r.size_ + b] = ab;
        r.mul_table_[static_cast<std::size_t>(b) * r.size_ + a] = ab;
      }
  }
  return ring;
}

}  // namespace detail

/// Validates a presentation and materializes the ring. Rejects the zero ring.
inline RingPtr validate_ring(const RingPresentation& p, const RingConfig& config) {
  return detail::build_ring(p, config, false);
}

inline void require_nonzero(const FiniteRing& r) {
  if (r.is_zero_ring()) throw Error(ErrorKind::ZeroRing, "operation is undefined on the zero ring");
}

/// A ring homomorphism given by the images of the source basis vectors.
class RingHom {
 public:
  RingHom(RingPtr source, RingPtr target, std::vector<ElementId> image_of_basis)
      : source_(std::move(source)), target_(std::move(target)), images_(std::move(image_of_basis)) {
    if (images_.size() != source_->rank())
      throw Error(ErrorKind::InvalidInput, "homomorphism needs one image per source basis vector");
  }

  const RingPtr& source() const noexcept { return source_; }
  const RingPtr& target() const noexcept { return target_; }
  const std::vector<ElementId>& image_of_basis() const noexcept { return images_; }

  ElementId operator()(ElementId x) const {
    const Element e = source_->element(x);
    ElementId out = target_->zero();
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (e.coords[i]) out = target_->add(out, target_->scale(e.coords[i], images_[i]));
    return out;
  }

  /// Images of every source element, indexed by source carrier index.
  std::vector<ElementId> table() const {
    std::vector<ElementId> t(source_->size());
    for (ElementId x = 0; x < source_->size(); ++x) t[x] = (*this)(x);
    return t;
  }

  /// Exhaustive check over all carrier pairs; returns a description of the
  /// first failure or an empty string.
  std::string verify() const {
    const auto t = table();
    const auto& S = *source_;
    const auto& T = *target_;
    if (t[S.one()] != T.one()) return "unit not preserved";
    for (ElementId a = 0; a < S.size(); ++a)
      for (ElementId b = 0; b < S.size(); ++b) {
        if (t[S.add(a, b)] != T.add(t[a], t[b]))
          return "addition fails on (" + S.format(a) + "), (" + S.format(b) + ")";
        if (t[S.mul(a, b)] != T.mul(t[a], t[b]))
          return "multiplication fails on (" + S.format(a) + "), (" + S.format(b) + ")";
      }
    return {};
  }

 private:
  RingPtr source_;
  RingPtr target_;
  std::vector<ElementId> images_;
};

}  // namespace ringsieve
