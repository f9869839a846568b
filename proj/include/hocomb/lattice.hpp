#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hocomb {

/// The unique morphism src -> dst of a poset category (requires src <= dst).
struct Arrow {
  int src = 0;
  int dst = 0;

  constexpr bool is_identity() const { return src == dst; }
  friend constexpr auto operator<=>(const Arrow&, const Arrow&) = default;
};

inline std::string to_string(const Arrow& a) {
  return "(" + std::to_string(a.src) + "," + std::to_string(a.dst) + ")";
}

/// Composable triple x < y < z, as canonical arrow indices of (x,y), (y,z), (x,z).
struct ComposableTriple {
  int xy, yz, xz;
};

class LatticeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A raw order relation on {0..size-1}, not yet known to be a lattice.
struct Relation {
  int size = 0;
  std::vector<std::uint8_t> leq;  // row-major size x size

  explicit Relation(int n = 0) : size(n), leq(static_cast<std::size_t>(n) * n, 0) {}

  bool operator()(int x, int y) const { return leq[static_cast<std::size_t>(x) * size + y] != 0; }
  void set(int x, int y, bool v = true) { leq[static_cast<std::size_t>(x) * size + y] = v ? 1 : 0; }
};

struct LatticeDiagnostic {
  enum class Kind {
    Empty,
    NotReflexive,
    NotAntisymmetric,
    NotTransitive,
    NoMeet,
    NoJoin,
    WrongMeet,
    WrongJoin,
  };
  Kind kind;
  std::vector<int> elements;

  std::string describe() const {
    std::ostringstream os;
    auto list = [&] {
      os << "(";
      for (std::size_t i = 0; i < elements.size(); ++i) os << (i ? "," : "") << elements[i];
      os << ")";
    };
    switch (kind) {
      case Kind::Empty: os << "empty carrier"; return os.str();
      case Kind::NotReflexive: os << "not reflexive at "; break;
      case Kind::NotAntisymmetric: os << "not antisymmetric on "; break;
      case Kind::NotTransitive: os << "not transitive, witness "; break;
      case Kind::NoMeet: os << "no greatest lower bound for "; break;
      case Kind::NoJoin: os << "no least upper bound for "; break;
      case Kind::WrongMeet: os << "meet table wrong at "; break;
      case Kind::WrongJoin: os << "join table wrong at "; break;
    }
    list();
    return os.str();
  }
};

struct LatticeReport {
  std::vector<LatticeDiagnostic> problems;

  bool valid() const { return problems.empty(); }
  std::string describe() const {
    if (valid()) return "valid";
    std::string out;
    for (const auto& p : problems) out += (out.empty() ? "" : "; ") + p.describe();
    return out;
  }
};

namespace detail {

inline std::optional<int> greatest_lower_bound(const Relation& r, int x, int y) {
  std::optional<int> best;
  for (int z = 0; z < r.size; ++z) {
    if (!r(z, x) || !r(z, y)) continue;
    if (!best || r(*best, z)) best = z;
  }
  if (!best) return std::nullopt;
  for (int z = 0; z < r.size; ++z)
    if (r(z, x) && r(z, y) && !r(z, *best)) return std::nullopt;
  return best;
}

inline std::optional<int> least_upper_bound(const Relation& r, int x, int y) {
  std::optional<int> best;
  for (int z = 0; z < r.size; ++z) {
    if (!r(x, z) || !r(y, z)) continue;
    if (!best || r(z, *best)) best = z;
  }
  if (!best) return std::nullopt;
  for (int z = 0; z < r.size; ++z)
    if (r(x, z) && r(y, z) && !r(*best, z)) return std::nullopt;
  return best;
}

}  // namespace detail

/// Checks the partial-order and lattice axioms of a raw relation. Never throws;
/// every violated invariant is reported with a witness.
inline LatticeReport verify_lattice(const Relation& r) {
  using K = LatticeDiagnostic::Kind;
  LatticeReport rep;
  if (r.size <= 0) {
    rep.problems.push_back({K::Empty, {}});
    return rep;
  }
  const int n = r.size;
  for (int x = 0; x < n; ++x)
    if (!r(x, x)) rep.problems.push_back({K::NotReflexive, {x}});
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (r(x, y) && r(y, x)) rep.problems.push_back({K::NotAntisymmetric, {x, y}});
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (x == y || !r(x, y)) continue;
      for (int z = 0; z < n; ++z)
        if (z != y && r(y, z) && !r(x, z)) rep.problems.push_back({K::NotTransitive, {x, y, z}});
    }
  if (!rep.valid()) return rep;
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      if (!detail::greatest_lower_bound(r, x, y)) rep.problems.push_back({K::NoMeet, {x, y}});
      if (!detail::least_upper_bound(r, x, y)) rep.problems.push_back({K::NoJoin, {x, y}});
    }
  return rep;
}

class FiniteLattice;
FiniteLattice make_chain(int n);

/// A finite lattice on elements 0..size-1 with precomputed meet/join tables
/// and the canonical (lexicographic) enumeration of its comparable pairs.
///
/// Instances are immutable handles onto shared data, so copies are cheap and
/// may be shared freely between threads.
class FiniteLattice {
 public:
  enum class Kind { Chain, Product, Explicit };

  FiniteLattice() : FiniteLattice(make_chain(0)) {}

  int size() const { return d_->size; }
  bool leq(int x, int y) const { return d_->leq[idx(x, y)] != 0; }
  bool lt(int x, int y) const { return x != y && leq(x, y); }
  int meet(int x, int y) const { return d_->meet[idx(x, y)]; }
  int join(int x, int y) const { return d_->join[idx(x, y)]; }
  int bottom() const { return d_->bottom; }
  int top() const { return d_->top; }
  const std::string& label() const { return d_->label; }

  Kind kind() const { return d_->kind; }
  bool is_chain() const { return d_->chain_length.has_value(); }
  /// n for a lattice order-isomorphic to [n] with the natural labelling.
  std::optional<int> chain_length() const { return d_->chain_length; }
  const std::vector<FiniteLattice>& factors() const { return d_->factors; }
  const std::vector<Arrow>& generators() const { return d_->generators; }

  const std::vector<Arrow>& arrows() const { return d_->arrows; }
  int arrow_count() const { return static_cast<int>(d_->arrows.size()); }
  const Arrow& arrow(int i) const { return d_->arrows[static_cast<std::size_t>(i)]; }
  /// Canonical index of (x, y), or -1 when x is not below y.
  int index_of(int x, int y) const { return d_->arrow_index[idx(x, y)]; }
  const std::vector<int>& identity_indices() const { return d_->identity_indices; }
  const std::vector<ComposableTriple>& composable_triples() const { return d_->triples; }

  Relation relation() const {
    Relation r(size());
    r.leq = d_->leq;
    return r;
  }

  bool same_as(const FiniteLattice& o) const { return d_ == o.d_; }
  friend bool operator==(const FiniteLattice& a, const FiniteLattice& b) {
    return a.d_ == b.d_ || (a.d_->size == b.d_->size && a.d_->leq == b.d_->leq);
  }

 private:
  struct Data {
    int size = 0;
    std::vector<std::uint8_t> leq;
    std::vector<int> meet, join;
    int bottom = 0, top = 0;
    std::string label;
    Kind kind = Kind::Explicit;
    std::optional<int> chain_length;
    std::vector<FiniteLattice> factors;
    std::vector<Arrow> generators;
    std::vector<Arrow> arrows;
    std::vector<int> arrow_index;
    std::vector<int> identity_indices;
    std::vector<ComposableTriple> triples;
  };

  explicit FiniteLattice(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

  std::size_t idx(int x, int y) const {
    return static_cast<std::size_t>(x) * static_cast<std::size_t>(d_->size) + static_cast<std::size_t>(y);
  }

  static FiniteLattice build(const Relation& r, std::string label, Kind kind,
                             std::vector<FiniteLattice> factors = {}, std::vector<Arrow> gens = {}) {
    if (auto rep = verify_lattice(r); !rep.valid())
      throw LatticeError("not a lattice: " + rep.describe());
    auto d = std::make_shared<Data>();
    const int n = r.size;
    d->size = n;
    d->leq = r.leq;
    d->meet.resize(static_cast<std::size_t>(n) * n);
    d->join.resize(static_cast<std::size_t>(n) * n);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        d->meet[static_cast<std::size_t>(x) * n + y] = *detail::greatest_lower_bound(r, x, y);
        d->join[static_cast<std::size_t>(x) * n + y] = *detail::least_upper_bound(r, x, y);
      }
    for (int x = 0; x < n; ++x) {
      bool is_bottom = true, is_top = true;
      for (int y = 0; y < n; ++y) {
        is_bottom = is_bottom && r(x, y);
        is_top = is_top && r(y, x);
      }
      if (is_bottom) d->bottom = x;
      if (is_top) d->top = x;
    }
    d->arrow_index.assign(static_cast<std::size_t>(n) * n, -1);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (r(x, y)) {
          d->arrow_index[static_cast<std::size_t>(x) * n + y] = static_cast<int>(d->arrows.size());
          if (x == y) d->identity_indices.push_back(static_cast<int>(d->arrows.size()));
          d->arrows.push_back({x, y});
        }
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        if (x == y || !r(x, y)) continue;
        for (int z = 0; z < n; ++z)
          if (z != y && r(y, z))
            d->triples.push_back({d->arrow_index[static_cast<std::size_t>(x) * n + y],
                                  d->arrow_index[static_cast<std::size_t>(y) * n + z],
                                  d->arrow_index[static_cast<std::size_t>(x) * n + z]});
      }
    bool natural_chain = true;
    for (int x = 0; x < n && natural_chain; ++x)
      for (int y = 0; y < n; ++y)
        if (r(x, y) != (x <= y)) {
          natural_chain = false;
          break;
        }
    if (natural_chain) d->chain_length = n - 1;
    d->label = std::move(label);
    d->kind = kind;
    d->factors = std::move(factors);
    d->generators = std::move(gens);
    return FiniteLattice(std::move(d));
  }

  friend FiniteLattice make_chain(int n);
  friend FiniteLattice make_product(const FiniteLattice& a, const FiniteLattice& b);
  friend FiniteLattice make_explicit(int size, const std::vector<Arrow>& generators);
  friend FiniteLattice make_from_relation(const Relation& r, std::string label);

  std::shared_ptr<const Data> d_;
};

/// The chain [n] = {0 < 1 < ... < n}; meet = min, join = max.
inline FiniteLattice make_chain(int n) {
  if (n < 0) throw LatticeError("chain length must be nonnegative");
  // Chains are shared so that arrow sets over the same [n] compare by pointer.
  static std::mutex mu;
  static std::map<int, FiniteLattice> cache;
  std::lock_guard lk(mu);
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  Relation r(n + 1);
  for (int x = 0; x <= n; ++x)
    for (int y = x; y <= n; ++y) r.set(x, y);
  auto l = FiniteLattice::build(r, "chain[" + std::to_string(n) + "]", FiniteLattice::Kind::Chain);
  cache.emplace(n, l);
  return l;
}

/// Cartesian product with the componentwise order. Element (i, j) has index
/// i * b.size() + j.
inline FiniteLattice make_product(const FiniteLattice& a, const FiniteLattice& b) {
  const int na = a.size(), nb = b.size();
  Relation r(na * nb);
  for (int x = 0; x < na * nb; ++x)
    for (int y = 0; y < na * nb; ++y) r.set(x, y, a.leq(x / nb, y / nb) && b.leq(x % nb, y % nb));
  std::string label = a.label() + "x" + b.label();
  if (a.kind() == FiniteLattice::Kind::Chain && b.kind() == FiniteLattice::Kind::Chain)
    label = "grid[" + std::to_string(*a.chain_length()) + "]x[" + std::to_string(*b.chain_length()) + "]";
  return FiniteLattice::build(r, label, FiniteLattice::Kind::Product, {a, b});
}

inline FiniteLattice make_grid(int m, int n) { return make_product(make_chain(m), make_chain(n)); }

/// A lattice given by generating pairs; the order is their reflexive-transitive
/// closure. Throws LatticeError if the closure is not antisymmetric or lacks
/// meets/joins.
inline FiniteLattice make_explicit(int size, const std::vector<Arrow>& generators) {
  if (size <= 0) throw LatticeError("explicit lattice needs at least one element");
  Relation r(size);
  for (int x = 0; x < size; ++x) r.set(x, x);
  for (const auto& g : generators) {
    if (g.src < 0 || g.dst < 0 || g.src >= size || g.dst >= size)
      throw LatticeError("generator " + to_string(g) + " out of range");
    r.set(g.src, g.dst);
  }
  for (int k = 0; k < size; ++k)
    for (int i = 0; i < size; ++i)
      if (r(i, k))
        for (int j = 0; j < size; ++j)
          if (r(k, j)) r.set(i, j);
  auto gens = generators;
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return FiniteLattice::build(r, "explicit[" + std::to_string(size) + "]", FiniteLattice::Kind::Explicit, {},
                              std::move(gens));
}

/// A lattice from a complete order relation; rejected unless it already is a
/// partial order with all binary meets and joins.
inline FiniteLattice make_from_relation(const Relation& r, std::string label = {}) {
  std::vector<Arrow> gens;
  for (int x = 0; x < r.size; ++x)
    for (int y = 0; y < r.size; ++y)
      if (x != y && r(x, y)) gens.push_back({x, y});
  if (label.empty()) label = "explicit[" + std::to_string(r.size) + "]";
  return FiniteLattice::build(r, std::move(label), FiniteLattice::Kind::Explicit, {}, std::move(gens));
}

/// Re-checks a constructed lattice, including its meet and join tables.
inline LatticeReport verify_lattice(const FiniteLattice& l) {
  using K = LatticeDiagnostic::Kind;
  auto rep = verify_lattice(l.relation());
  if (!rep.valid()) return rep;
  const int n = l.size();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const int m = l.meet(x, y), j = l.join(x, y);
      bool meet_ok = l.leq(m, x) && l.leq(m, y);
      bool join_ok = l.leq(x, j) && l.leq(y, j);
      for (int z = 0; z < n; ++z) {
        if (l.leq(z, x) && l.leq(z, y) && !l.leq(z, m)) meet_ok = false;
        if (l.leq(x, z) && l.leq(y, z) && !l.leq(j, z)) join_ok = false;
      }
      if (!meet_ok) rep.problems.push_back({K::WrongMeet, {x, y}});
      if (!join_ok) rep.problems.push_back({K::WrongJoin, {x, y}});
    }
  return rep;
}

/// The canonical lexicographic enumeration of comparable pairs.
inline const std::vector<Arrow>& comparable_arrows(const FiniteLattice& l) { return l.arrows(); }

}  // namespace hocomb
