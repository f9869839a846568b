#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hocomb/arrow_set.hpp"
#include "hocomb/lattice.hpp"

namespace hocomb {

struct TransferCheck {
  enum class Rule { None, Reflexivity, Transitivity, Restriction };
  Rule rule = Rule::None;
  /// Arrows of the relation that trigger the violation.
  std::vector<Arrow> premises;
  /// Element used for restriction (z <= y).
  int restrict_to = -1;
  /// Arrow the axiom demands but the relation lacks.
  std::optional<Arrow> missing;

  bool ok() const { return rule == Rule::None; }
  explicit operator bool() const { return ok(); }

  std::string describe() const {
    switch (rule) {
      case Rule::None: return "transfer system";
      case Rule::Reflexivity: return "missing identity " + to_string(*missing);
      case Rule::Transitivity:
        return "transitivity: " + to_string(premises[0]) + " and " + to_string(premises[1]) + " but not " +
               to_string(*missing);
      case Rule::Restriction:
        return "restriction of " + to_string(premises[0]) + " to " + std::to_string(restrict_to) + " needs " +
               to_string(*missing);
    }
    return {};
  }
};

/// Checks reflexivity, transitivity and closure under restriction
/// ((x,y) in R and z <= y imply (x meet z, z) in R). Reports the first
/// violation in canonical arrow order.
inline TransferCheck is_transfer_system(const FiniteLattice& l, const ArrowSet& r) {
  if (!(r.lattice() == l)) throw std::invalid_argument("transfer relation is carried by a different lattice");
  using R = TransferCheck::Rule;
  TransferCheck out;
  for (int i : l.identity_indices())
    if (!r.contains_index(i)) {
      out.rule = R::Reflexivity;
      out.missing = l.arrow(i);
      return out;
    }
  const int n = l.size();
  const auto arrows = r.non_identity_arrows();
  for (const auto& a : arrows) {
    for (int z = 0; z < n; ++z)
      if (a.dst != z && r.contains(a.dst, z) && !r.contains(a.src, z)) {
        out.rule = R::Transitivity;
        out.premises = {a, Arrow{a.dst, z}};
        out.missing = Arrow{a.src, z};
        return out;
      }
    for (int z = 0; z < n; ++z)
      if (l.leq(z, a.dst) && !r.contains(l.meet(a.src, z), z)) {
        out.rule = R::Restriction;
        out.premises = {a};
        out.restrict_to = z;
        out.missing = Arrow{l.meet(a.src, z), z};
        return out;
      }
  }
  return out;
}

/// A transfer system: a reflexive, transitive, restriction-closed refinement
/// of the order. The full reflexive relation is stored.
class TransferSystem {
 public:
  /// Validating constructor; throws std::invalid_argument on a violation.
  explicit TransferSystem(ArrowSet rel) : rel_(std::move(rel)) {
    if (auto chk = is_transfer_system(rel_.lattice(), rel_); !chk)
      throw std::invalid_argument("not a transfer system: " + chk.describe());
  }

  /// Skips validation; for relations already known to be closed.
  static TransferSystem trusted(ArrowSet rel) { return TransferSystem(std::move(rel), Trusted{}); }

  static TransferSystem trivial(const FiniteLattice& l) { return trusted(ArrowSet::identities(l)); }
  static TransferSystem complete(const FiniteLattice& l) { return trusted(ArrowSet::all(l)); }

  const ArrowSet& rel() const { return rel_; }
  const FiniteLattice& lattice() const { return rel_.lattice(); }
  bool contains(int x, int y) const { return rel_.contains(x, y); }

  friend bool operator==(const TransferSystem& a, const TransferSystem& b) { return a.rel_ == b.rel_; }
  friend bool operator<(const TransferSystem& a, const TransferSystem& b) { return a.rel_ < b.rel_; }

 private:
  struct Trusted {};
  TransferSystem(ArrowSet rel, Trusted) : rel_(std::move(rel)) {}
  ArrowSet rel_;
};

inline std::string to_string(const TransferSystem& t) { return to_string(t.rel()); }

/// Weak factorization system (left, right).
struct Wfs {
  ArrowSet left;
  ArrowSet right;

  friend bool operator==(const Wfs&, const Wfs&) = default;
};

/// The least transfer system containing `seed` (closure of the axioms).
inline TransferSystem transfer_closure(const FiniteLattice& l, const ArrowSet& seed) {
  ArrowSet r = seed | ArrowSet::identities(l);
  const int n = l.size();
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& a : r.non_identity_arrows()) {
      for (int z = 0; z < n; ++z) {
        if (r.contains(a.dst, z) && !r.contains(a.src, z)) {
          r.insert(a.src, z);
          changed = true;
        }
        if (l.leq(z, a.dst) && !r.contains(l.meet(a.src, z), z)) {
          r.insert(l.meet(a.src, z), z);
          changed = true;
        }
      }
    }
  }
  return TransferSystem::trusted(std::move(r));
}

namespace detail {

inline ArrowSet shift_into(const FiniteLattice& target, const ArrowSet& s, int offset) {
  ArrowSet out(target);
  s.for_each([&](const Arrow& a) { out.insert(a.src + offset, a.dst + offset); });
  return out;
}

/// Transfer systems on [n] by pivot decomposition: the pivot p sends an arrow
/// to every element above it, [0,p-1] and [p+1,n] carry independent systems
/// and nothing crosses p from below.
inline std::vector<ArrowSet> chain_systems_by_pivot(int n) {
  static std::mutex mu;
  static std::map<int, std::vector<ArrowSet>> cache;
  {
    std::lock_guard lk(mu);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  const FiniteLattice chain = make_chain(n);
  std::vector<ArrowSet> out;
  for (int p = 0; p <= n; ++p) {
    const int below = p - 1;      // [0, p-1] as a chain of length p-1 (empty if p = 0)
    const int above = n - p - 1;  // [p+1, n] shifted down (empty if p = n)
    std::vector<ArrowSet> lows = below >= 0 ? chain_systems_by_pivot(below) : std::vector<ArrowSet>{};
    std::vector<ArrowSet> highs = above >= 0 ? chain_systems_by_pivot(above) : std::vector<ArrowSet>{};
    ArrowSet base = ArrowSet::identities(chain);
    for (int w = p + 1; w <= n; ++w) base.insert(p, w);
    const std::size_t nl = std::max<std::size_t>(lows.size(), 1), nh = std::max<std::size_t>(highs.size(), 1);
    for (std::size_t i = 0; i < nl; ++i)
      for (std::size_t j = 0; j < nh; ++j) {
        ArrowSet s = base;
        if (!lows.empty()) s |= shift_into(chain, lows[i], 0);
        if (!highs.empty()) s |= shift_into(chain, highs[j], p + 1);
        out.push_back(std::move(s));
      }
  }
  std::sort(out.begin(), out.end());
  std::lock_guard lk(mu);
  cache.emplace(n, out);
  return out;
}

/// Ganter's NextClosure over the non-identity arrows: yields every set closed
/// under `transfer_closure` exactly once.
inline std::vector<ArrowSet> closed_sets_next_closure(const FiniteLattice& l) {
  std::vector<int> ground;
  for (int i = 0; i < l.arrow_count(); ++i)
    if (!l.arrow(i).is_identity()) ground.push_back(i);
  const int k = static_cast<int>(ground.size());
  auto prefix_equal = [&](const ArrowSet& a, const ArrowSet& b, int upto) {
    for (int t = 0; t < upto; ++t)
      if (a.contains_index(ground[static_cast<std::size_t>(t)]) != b.contains_index(ground[static_cast<std::size_t>(t)]))
        return false;
    return true;
  };
  std::vector<ArrowSet> out;
  ArrowSet current = transfer_closure(l, ArrowSet::identities(l)).rel();
  out.push_back(current);
  for (;;) {
    bool advanced = false;
    for (int t = k - 1; t >= 0; --t) {
      const int gi = ground[static_cast<std::size_t>(t)];
      if (current.contains_index(gi)) continue;
      ArrowSet seed = ArrowSet::identities(l);
      for (int u = 0; u < t; ++u)
        if (current.contains_index(ground[static_cast<std::size_t>(u)])) seed.set_index(ground[static_cast<std::size_t>(u)]);
      seed.set_index(gi);
      ArrowSet next = transfer_closure(l, seed).rel();
      if (prefix_equal(next, current, t)) {
        current = std::move(next);
        out.push_back(current);
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }
  return out;
}

}  // namespace detail

/// Every transfer system on `l`, each once, sorted by the canonical bit-vector
/// order. Chains use the pivot recursion; other lattices use NextClosure.
inline std::vector<TransferSystem> enumerate_transfer_systems(const FiniteLattice& l) {
  std::vector<ArrowSet> sets;
  if (auto n = l.chain_length()) {
    for (const auto& s : detail::chain_systems_by_pivot(*n)) sets.push_back(detail::shift_into(l, s, 0));
  } else {
    sets = detail::closed_sets_next_closure(l);
  }
  std::sort(sets.begin(), sets.end());
  std::vector<TransferSystem> out;
  out.reserve(sets.size());
  for (auto& s : sets) out.push_back(TransferSystem::trusted(std::move(s)));
  return out;
}

/// E(R) = { z -> y : z <= x < y for some (x,y) in R }.
inline ArrowSet downward_extension(const FiniteLattice& l, const TransferSystem& r) {
  ArrowSet out(l);
  for (const auto& a : r.rel().non_identity_arrows())
    for (int z = 0; z < l.size(); ++z)
      if (l.leq(z, a.src)) out.insert(z, a.dst);
  return out;
}

/// The left class ^[]R, computed by lifting and cross-checked against E(R)^c.
/// Throws std::logic_error if the two routes disagree.
inline ArrowSet left_class(const FiniteLattice& l, const TransferSystem& r) {
  ArrowSet by_lifting = left_lifting_class(r.rel());
  ArrowSet by_extension = downward_extension(l, r).complement();
  if (!(by_lifting == by_extension))
    throw std::logic_error("left class mismatch: lifting " + to_string(by_lifting) + " vs E(R)^c " +
                           to_string(by_extension));
  return by_lifting;
}

inline Wfs wfs_from_transfer(const FiniteLattice& l, const TransferSystem& r) {
  return Wfs{left_class(l, r), r.rel()};
}

struct WfsCheck {
  enum class Failure { None, Factorization, Lifting };
  Failure failure = Failure::None;
  std::vector<Arrow> witness;
  /// Posets have no non-trivial retracts.
  bool retracts_vacuous = true;

  bool ok() const { return failure == Failure::None; }
  explicit operator bool() const { return ok(); }
};

/// Factorization of every arrow and the lifting condition left [] right.
inline WfsCheck verify_wfs(const FiniteLattice& l, const Wfs& w) {
  WfsCheck out;
  for (const auto& a : l.arrows())
    if (!factorization_point(w.left, w.right, a)) {
      out.failure = WfsCheck::Failure::Factorization;
      out.witness = {a};
      return out;
    }
  if (auto bad = lifting_failure(w.left, w.right)) {
    out.failure = WfsCheck::Failure::Lifting;
    out.witness = {bad->first, bad->second};
  }
  return out;
}

/// Two-out-of-three on the relation: for x <= y <= z, any two of (x,y), (y,z),
/// (x,z) force the third.
inline bool is_saturated(const FiniteLattice& l, const TransferSystem& r) {
  (void)l;
  return !two_out_of_three_failure(r.rel());
}

/// All weak factorization systems on a lattice ordered by right-class inclusion.
struct WfsPoset {
  std::vector<TransferSystem> elements;
  /// Cover relations (i, j): elements[i] < elements[j] with nothing between.
  std::vector<std::pair<int, int>> hasse;
  bool is_lattice = false;

  bool leq(int i, int j) const {
    return elements[static_cast<std::size_t>(i)].rel().subset_of(elements[static_cast<std::size_t>(j)].rel());
  }
};

inline WfsPoset wfs_poset(const FiniteLattice& l) {
  WfsPoset p;
  p.elements = enumerate_transfer_systems(l);
  const int n = static_cast<int>(p.elements.size());
  std::vector<std::uint8_t> le(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) le[static_cast<std::size_t>(i) * n + j] = p.leq(i, j);
  auto L = [&](int i, int j) { return le[static_cast<std::size_t>(i) * n + j] != 0; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j || !L(i, j)) continue;
      bool cover = true;
      for (int k = 0; k < n && cover; ++k)
        if (k != i && k != j && L(i, k) && L(k, j)) cover = false;
      if (cover) p.hasse.emplace_back(i, j);
    }
  p.is_lattice = true;
  for (int i = 0; i < n && p.is_lattice; ++i)
    for (int j = i + 1; j < n && p.is_lattice; ++j) {
      std::optional<int> join, meet;
      for (int k = 0; k < n; ++k) {
        if (L(i, k) && L(j, k) && (!join || L(k, *join))) join = k;
        if (L(k, i) && L(k, j) && (!meet || L(*meet, k))) meet = k;
      }
      bool ok = join && meet;
      for (int k = 0; k < n && ok; ++k) {
        if (L(i, k) && L(j, k) && !L(*join, k)) ok = false;
        if (L(k, i) && L(k, j) && !L(k, *meet)) ok = false;
      }
      p.is_lattice = ok;
    }
  return p;
}

inline WfsPoset wfs_poset(int n) { return wfs_poset(make_chain(n)); }

}  // namespace hocomb
