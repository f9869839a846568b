#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "hocomb/lattice.hpp"

namespace hocomb {

/// A set of arrows of a finite lattice, stored as a dense bit-vector over the
/// lattice's canonical enumeration of comparable pairs.
class ArrowSet {
 public:
  ArrowSet() = default;
  explicit ArrowSet(FiniteLattice l)
      : lat_(std::move(l)), words_((static_cast<std::size_t>(lat_.arrow_count()) + 63) / 64, 0) {}

  ArrowSet(FiniteLattice l, std::initializer_list<Arrow> arrows) : ArrowSet(std::move(l)) {
    for (const auto& a : arrows) insert(a);
  }
  ArrowSet(FiniteLattice l, const std::vector<Arrow>& arrows) : ArrowSet(std::move(l)) {
    for (const auto& a : arrows) insert(a);
  }

  static ArrowSet empty(const FiniteLattice& l) { return ArrowSet(l); }
  static ArrowSet identities(const FiniteLattice& l) {
    ArrowSet s(l);
    for (int i : l.identity_indices()) s.set_index(i);
    return s;
  }
  static ArrowSet all(const FiniteLattice& l) {
    ArrowSet s(l);
    for (int i = 0; i < l.arrow_count(); ++i) s.set_index(i);
    return s;
  }
  /// Bit i of `mask` selects canonical arrow i (lattices with at most 64 arrows).
  static ArrowSet from_mask(const FiniteLattice& l, std::uint64_t mask) {
    ArrowSet s(l);
    if (!s.words_.empty()) s.words_[0] = mask & s.tail_mask(0);
    return s;
  }

  const FiniteLattice& lattice() const { return lat_; }

  bool contains_index(int i) const { return (words_[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1u; }
  bool contains(int x, int y) const {
    const int i = lat_.index_of(x, y);
    return i >= 0 && contains_index(i);
  }
  bool contains(const Arrow& a) const { return contains(a.src, a.dst); }

  void set_index(int i, bool v = true) {
    auto& w = words_[static_cast<std::size_t>(i) >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    w = v ? (w | bit) : (w & ~bit);
  }
  void insert(int x, int y) {
    const int i = lat_.index_of(x, y);
    if (i < 0)
      throw std::invalid_argument("arrow " + to_string(Arrow{x, y}) + " is not comparable in " + lat_.label());
    set_index(i);
  }
  void insert(const Arrow& a) { insert(a.src, a.dst); }
  void erase(const Arrow& a) {
    const int i = lat_.index_of(a.src, a.dst);
    if (i >= 0) set_index(i, false);
  }

  int count() const {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }
  bool none() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  template <class F>
  void for_each_index(F&& f) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi)
      for (std::uint64_t w = words_[wi]; w; w &= w - 1) f(static_cast<int>(wi * 64 + std::countr_zero(w)));
  }
  template <class F>
  void for_each(F&& f) const {
    for_each_index([&](int i) { f(lat_.arrow(i)); });
  }

  std::vector<Arrow> arrows() const {
    std::vector<Arrow> out;
    for_each([&](const Arrow& a) { out.push_back(a); });
    return out;
  }
  std::vector<Arrow> non_identity_arrows() const {
    std::vector<Arrow> out;
    for_each([&](const Arrow& a) {
      if (!a.is_identity()) out.push_back(a);
    });
    return out;
  }

  bool subset_of(const ArrowSet& o) const {
    require_same(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  ArrowSet& operator|=(const ArrowSet& o) {
    require_same(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  ArrowSet& operator&=(const ArrowSet& o) {
    require_same(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  ArrowSet& operator-=(const ArrowSet& o) {
    require_same(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend ArrowSet operator|(ArrowSet a, const ArrowSet& b) { return a |= b; }
  friend ArrowSet operator&(ArrowSet a, const ArrowSet& b) { return a &= b; }
  friend ArrowSet operator-(ArrowSet a, const ArrowSet& b) { return a -= b; }

  /// Complement within the comparable pairs.
  ArrowSet complement() const {
    ArrowSet c(lat_);
    for (std::size_t i = 0; i < words_.size(); ++i) c.words_[i] = ~words_[i] & tail_mask(i);
    return c;
  }

  const std::vector<std::uint64_t>& words() const { return words_; }

  friend bool operator==(const ArrowSet& a, const ArrowSet& b) {
    return a.words_ == b.words_ && a.lat_ == b.lat_;
  }

  /// Lexicographic order on the bit-vector read from index 0 upward, with an
  /// absent arrow ordered before a present one.
  friend bool operator<(const ArrowSet& a, const ArrowSet& b) {
    for (std::size_t i = 0; i < a.words_.size() && i < b.words_.size(); ++i) {
      const std::uint64_t diff = a.words_[i] ^ b.words_[i];
      if (diff) return (b.words_[i] >> std::countr_zero(diff)) & 1u;
    }
    return a.words_.size() < b.words_.size();
  }

  std::size_t hash() const {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (auto w : words_) h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  }

 private:
  std::uint64_t tail_mask(std::size_t word) const {
    const std::size_t n = static_cast<std::size_t>(lat_.arrow_count());
    const std::size_t lo = word * 64;
    if (lo + 64 <= n) return ~std::uint64_t{0};
    return (std::uint64_t{1} << (n - lo)) - 1;
  }
  void require_same(const ArrowSet& o) const {
    if (!(lat_ == o.lat_)) throw std::invalid_argument("arrow sets over different lattices");
  }

  FiniteLattice lat_;
  std::vector<std::uint64_t> words_;
};

inline std::string to_string(const ArrowSet& s) {
  std::string out = "{";
  bool first = true;
  s.for_each([&](const Arrow& a) {
    if (a.is_identity()) return;
    out += (first ? "" : ",") + to_string(a);
    first = false;
  });
  return out + "}";
}

// ---- lifting in a poset -------------------------------------------------

/// f lifts against g: every square a->x, b->y (a<=x, b<=y) admits b->x.
inline bool lifts(const FiniteLattice& l, const Arrow& f, const Arrow& g) {
  return !(l.leq(f.src, g.src) && l.leq(f.dst, g.dst) && !l.leq(f.dst, g.src));
}

/// ^[]S: arrows with the left lifting property against every arrow of S.
inline ArrowSet left_lifting_class(const ArrowSet& s) {
  const auto& l = s.lattice();
  const auto right = s.arrows();
  ArrowSet out(l);
  for (int i = 0; i < l.arrow_count(); ++i) {
    const Arrow& f = l.arrow(i);
    bool ok = true;
    for (const auto& g : right)
      if (!lifts(l, f, g)) {
        ok = false;
        break;
      }
    if (ok) out.set_index(i);
  }
  return out;
}

/// S^[]: arrows with the right lifting property against every arrow of S.
inline ArrowSet right_lifting_class(const ArrowSet& s) {
  const auto& l = s.lattice();
  const auto left = s.arrows();
  ArrowSet out(l);
  for (int i = 0; i < l.arrow_count(); ++i) {
    const Arrow& g = l.arrow(i);
    bool ok = true;
    for (const auto& f : left)
      if (!lifts(l, f, g)) {
        ok = false;
        break;
      }
    if (ok) out.set_index(i);
  }
  return out;
}

/// First pair (f, g) with f in `left`, g in `right` and no lift, if any.
inline std::optional<std::pair<Arrow, Arrow>> lifting_failure(const ArrowSet& left, const ArrowSet& right) {
  const auto& l = left.lattice();
  const auto rs = right.arrows();
  std::optional<std::pair<Arrow, Arrow>> out;
  left.for_each([&](const Arrow& f) {
    if (out) return;
    for (const auto& g : rs)
      if (!lifts(l, f, g)) {
        out = std::pair{f, g};
        return;
      }
  });
  return out;
}

/// Arrows a->b that factor as a->m in `first` followed by m->b in `second`.
inline ArrowSet composite(const ArrowSet& first, const ArrowSet& second) {
  const auto& l = first.lattice();
  ArrowSet out(l);
  for (int i = 0; i < l.arrow_count(); ++i) {
    const Arrow& a = l.arrow(i);
    for (int m = 0; m < l.size(); ++m)
      if (first.contains(a.src, m) && second.contains(m, a.dst)) {
        out.set_index(i);
        break;
      }
  }
  return out;
}

/// A middle object m with a->m in `first` and m->b in `second`.
inline std::optional<int> factorization_point(const ArrowSet& first, const ArrowSet& second, const Arrow& a) {
  const auto& l = first.lattice();
  for (int m = 0; m < l.size(); ++m)
    if (first.contains(a.src, m) && second.contains(m, a.dst)) return m;
  return std::nullopt;
}

inline const std::vector<ComposableTriple>& composable_triples(const FiniteLattice& l) {
  return l.composable_triples();
}

inline bool contains_identities(const ArrowSet& s) {
  for (int i : s.lattice().identity_indices())
    if (!s.contains_index(i)) return false;
  return true;
}

inline std::optional<ComposableTriple> composition_failure(const ArrowSet& s) {
  for (const auto& t : composable_triples(s.lattice()))
    if (s.contains_index(t.xy) && s.contains_index(t.yz) && !s.contains_index(t.xz)) return t;
  return std::nullopt;
}

/// Any two of (x,y), (y,z), (x,z) in s force the third.
inline std::optional<ComposableTriple> two_out_of_three_failure(const ArrowSet& s) {
  for (const auto& t : composable_triples(s.lattice())) {
    const int k = s.contains_index(t.xy) + s.contains_index(t.yz) + s.contains_index(t.xz);
    if (k == 2) return t;
  }
  return std::nullopt;
}

/// (x,z) in s forces (x,y) and (y,z) for every x <= y <= z.
inline std::optional<ComposableTriple> decomposition_failure(const ArrowSet& s) {
  for (const auto& t : composable_triples(s.lattice()))
    if (s.contains_index(t.xz) && !(s.contains_index(t.xy) && s.contains_index(t.yz))) return t;
  return std::nullopt;
}

}  // namespace hocomb

template <>
struct std::hash<hocomb::ArrowSet> {
  std::size_t operator()(const hocomb::ArrowSet& s) const { return s.hash(); }
};
