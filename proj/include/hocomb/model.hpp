#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hocomb/arrow_set.hpp"
#include "hocomb/lattice.hpp"
#include "hocomb/transfer.hpp"

namespace hocomb {

/// A partition of [n] into consecutive blocks [0,a_1], [a_1+1,a_2], ..., [a_k+1,n].
struct IntervalPartition {
  int n = 0;
  /// Strictly increasing block ends a_1 < ... < a_k < n.
  std::vector<int> cuts;

  IntervalPartition() = default;
  IntervalPartition(int n_, std::vector<int> cuts_) : n(n_), cuts(std::move(cuts_)) {
    if (n < 0) throw std::invalid_argument("interval partition of a negative chain");
    for (std::size_t i = 0; i < cuts.size(); ++i)
      if (cuts[i] < 0 || cuts[i] >= n || (i && cuts[i] <= cuts[i - 1]))
        throw std::invalid_argument("interval partition cuts must be strictly increasing in [0,n)");
  }

  static IntervalPartition singletons(int n) {
    std::vector<int> c;
    for (int i = 0; i < n; ++i) c.push_back(i);
    return {n, c};
  }
  static IntervalPartition from_blocks(const std::vector<std::pair<int, int>>& blocks) {
    if (blocks.empty() || blocks.front().first != 0) throw std::invalid_argument("blocks must start at 0");
    std::vector<int> c;
    for (std::size_t i = 0; i + 1 < blocks.size(); ++i) {
      if (blocks[i + 1].first != blocks[i].second + 1 || blocks[i].second < blocks[i].first)
        throw std::invalid_argument("blocks must tile the chain");
      c.push_back(blocks[i].second);
    }
    return {blocks.back().second, c};
  }

  /// All 2^n partitions of [n], ordered lexicographically by their cut lists.
  static std::vector<IntervalPartition> all(int n) {
    std::vector<IntervalPartition> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      std::vector<int> c;
      for (int i = 0; i < n; ++i)
        if ((mask >> i) & 1) c.push_back(i);
      out.emplace_back(n, std::move(c));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.cuts < b.cuts; });
    return out;
  }

  int block_count() const { return static_cast<int>(cuts.size()) + 1; }
  std::vector<std::pair<int, int>> blocks() const {
    std::vector<std::pair<int, int>> out;
    int lo = 0;
    for (int c : cuts) {
      out.emplace_back(lo, c);
      lo = c + 1;
    }
    out.emplace_back(lo, n);
    return out;
  }
  int block_of(int x) const {
    return static_cast<int>(std::lower_bound(cuts.begin(), cuts.end(), x) - cuts.begin());
  }

  friend bool operator==(const IntervalPartition&, const IntervalPartition&) = default;
};

inline std::string to_string(const IntervalPartition& p) {
  std::string out;
  for (const auto& [a, b] : p.blocks()) out += "[" + std::to_string(a) + "," + std::to_string(b) + "]";
  return out;
}

/// Model structure given by weak equivalences, cofibrations and fibrations.
/// Construction does not validate; use verify_model.
class ModelStructure {
 public:
  ModelStructure(ArrowSet w, ArrowSet c, ArrowSet f) : w_(std::move(w)), c_(std::move(c)), f_(std::move(f)) {}

  const FiniteLattice& lattice() const { return w_.lattice(); }
  const ArrowSet& w() const { return w_; }
  const ArrowSet& c() const { return c_; }
  const ArrowSet& f() const { return f_; }
  ArrowSet ac() const { return w_ & c_; }
  ArrowSet af() const { return w_ & f_; }

  bool is_trivial() const { return w_ == ArrowSet::identities(lattice()); }
  bool is_contractible() const { return w_ == ArrowSet::all(lattice()); }
  bool is_cofibrant(int x) const { return c_.contains(lattice().bottom(), x); }
  bool is_fibrant(int x) const { return f_.contains(x, lattice().top()); }
  bool is_bifibrant(int x) const { return is_cofibrant(x) && is_fibrant(x); }

  friend bool operator==(const ModelStructure& a, const ModelStructure& b) {
    return a.w_ == b.w_ && a.c_ == b.c_ && a.f_ == b.f_;
  }
  friend bool operator<(const ModelStructure& a, const ModelStructure& b) {
    if (!(a.w_ == b.w_)) return a.w_ < b.w_;
    if (!(a.c_ == b.c_)) return a.c_ < b.c_;
    return a.f_ < b.f_;
  }

 private:
  ArrowSet w_, c_, f_;
};

/// Four classes (C, AC, F, AF) with (C, AF) and (AC, F) weak factorization systems.
struct PremodelStructure {
  ArrowSet c, ac, f, af;

  const FiniteLattice& lattice() const { return c.lattice(); }
  friend bool operator==(const PremodelStructure&, const PremodelStructure&) = default;
};

/// One transfer system per block of an interval partition, each carried by the
/// chain [b - a] for block [a, b].
struct ContractibleSelection {
  IntervalPartition partition;
  std::vector<TransferSystem> block_systems;
};

// ---- verification --------------------------------------------------------

enum class Axiom {
  None,
  Identities,
  CompositionW,
  CompositionC,
  CompositionF,
  TwoOutOfThree,
  FactorizationCofibration,  // C then AF
  FactorizationFibration,    // AC then F
  LiftingCofibration,        // C against AF
  LiftingFibration,          // AC against F
};

inline std::string to_string(Axiom a) {
  switch (a) {
    case Axiom::None: return "none";
    case Axiom::Identities: return "identities";
    case Axiom::CompositionW: return "composition(W)";
    case Axiom::CompositionC: return "composition(C)";
    case Axiom::CompositionF: return "composition(F)";
    case Axiom::TwoOutOfThree: return "2-out-of-3";
    case Axiom::FactorizationCofibration: return "MC5(C,AF)";
    case Axiom::FactorizationFibration: return "MC5(AC,F)";
    case Axiom::LiftingCofibration: return "MC4(C,AF)";
    case Axiom::LiftingFibration: return "MC4(AC,F)";
  }
  return "?";
}

struct ModelDiagnosis {
  Axiom axiom = Axiom::None;
  /// Arrows exhibiting the failure: a missing identity, a composable pair
  /// plus composite, an unfactorizable arrow, or a non-lifting pair.
  std::vector<Arrow> witness;
  /// Decomposability of W, reported separately from the model axioms.
  bool decomposable = true;
  std::vector<Arrow> decomposition_witness;
  bool retracts_vacuous = true;

  bool ok() const { return axiom == Axiom::None; }
  explicit operator bool() const { return ok(); }

  std::string describe() const {
    if (ok()) return "valid";
    std::string out = to_string(axiom) + " fails at";
    for (const auto& a : witness) out += " " + to_string(a);
    return out;
  }
};

namespace detail {

inline std::vector<Arrow> triple_arrows(const FiniteLattice& l, const ComposableTriple& t) {
  return {l.arrow(t.xy), l.arrow(t.yz), l.arrow(t.xz)};
}

}  // namespace detail

/// Checks identities, composition closure, 2-out-of-3, both factorizations and
/// both lifting conditions in that order and reports the first failure.
inline ModelDiagnosis verify_model(const FiniteLattice& l, const ArrowSet& w, const ArrowSet& c, const ArrowSet& f) {
  ModelDiagnosis d;
  for (const ArrowSet* s : {&w, &c, &f})
    if (!(s->lattice() == l)) throw std::invalid_argument("model classes are carried by a different lattice");
  if (auto t = decomposition_failure(w)) {
    d.decomposable = false;
    d.decomposition_witness = detail::triple_arrows(l, *t);
  }
  for (int i : l.identity_indices())
    if (!w.contains_index(i) || !c.contains_index(i) || !f.contains_index(i)) {
      d.axiom = Axiom::Identities;
      d.witness = {l.arrow(i)};
      return d;
    }
  const std::pair<const ArrowSet*, Axiom> comp[] = {
      {&w, Axiom::CompositionW}, {&c, Axiom::CompositionC}, {&f, Axiom::CompositionF}};
  for (const auto& [s, ax] : comp)
    if (auto t = composition_failure(*s)) {
      d.axiom = ax;
      d.witness = detail::triple_arrows(l, *t);
      return d;
    }
  if (auto t = two_out_of_three_failure(w)) {
    d.axiom = Axiom::TwoOutOfThree;
    d.witness = detail::triple_arrows(l, *t);
    return d;
  }
  const ArrowSet ac = w & c, af = w & f;
  for (const auto& a : l.arrows())
    if (!factorization_point(c, af, a)) {
      d.axiom = Axiom::FactorizationCofibration;
      d.witness = {a};
      return d;
    }
  for (const auto& a : l.arrows())
    if (!factorization_point(ac, f, a)) {
      d.axiom = Axiom::FactorizationFibration;
      d.witness = {a};
      return d;
    }
  if (auto bad = lifting_failure(c, af)) {
    d.axiom = Axiom::LiftingCofibration;
    d.witness = {bad->first, bad->second};
    return d;
  }
  if (auto bad = lifting_failure(ac, f)) {
    d.axiom = Axiom::LiftingFibration;
    d.witness = {bad->first, bad->second};
  }
  return d;
}

inline ModelDiagnosis verify_model(const ModelStructure& m) { return verify_model(m.lattice(), m.w(), m.c(), m.f()); }

// ---- construction from contractible submodels ----------------------------

/// Shifts `s` (over the chain [b - a]) into the block [a, b] of `target`.
inline ArrowSet embed_block(const FiniteLattice& target, const ArrowSet& s, int offset) {
  return detail::shift_into(target, s, offset);
}

/// Arrows with both ends in one block.
inline ArrowSet within_blocks(const FiniteLattice& chain, const IntervalPartition& p) {
  ArrowSet w(chain);
  for (const auto& [a, b] : p.blocks())
    for (int x = a; x <= b; ++x)
      for (int y = x; y <= b; ++y) w.insert(x, y);
  return w;
}

/// Assembles the model structure from block-local acyclic fibrations and
/// acyclic cofibrations: C = ^[]AF, F = AC^[].
inline ModelStructure assemble_model(const ArrowSet& w, const ArrowSet& af, const ArrowSet& ac) {
  return ModelStructure(w, left_lifting_class(af), right_lifting_class(ac));
}

/// The model structure on [n] extending a choice of contractible submodels.
inline ModelStructure from_selection(const ContractibleSelection& sel) {
  const auto& p = sel.partition;
  const auto blocks = p.blocks();
  if (sel.block_systems.size() != blocks.size())
    throw std::invalid_argument("one transfer system per block is required");
  const FiniteLattice l = make_chain(p.n);
  ArrowSet af = ArrowSet::identities(l), ac = ArrowSet::identities(l);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto& [a, b] = blocks[i];
    const auto& r = sel.block_systems[i];
    if (r.lattice().chain_length() != b - a)
      throw std::invalid_argument("block system on the wrong chain for block " + std::to_string(i));
    af |= embed_block(l, r.rel(), a);
    ac |= embed_block(l, left_lifting_class(r.rel()), a);
  }
  return assemble_model(within_blocks(l, p), af, ac);
}

inline IntervalPartition interval_partition_of(const ModelStructure& m) {
  auto len = m.lattice().chain_length();
  if (!len) throw std::invalid_argument("interval partitions need a chain carrier");
  std::vector<int> cuts;
  for (int i = 0; i < *len; ++i)
    if (!m.w().contains(i, i + 1)) cuts.push_back(i);
  return {*len, cuts};
}

/// The maximal y with x -> y an acyclic cofibration.
inline int r_max(const ModelStructure& m, int x) {
  const auto& l = m.lattice();
  const ArrowSet ac = m.ac();
  std::optional<int> best;
  for (int y = 0; y < l.size(); ++y)
    if (ac.contains(x, y) && (!best || l.leq(*best, y))) best = y;
  for (int y = 0; y < l.size(); ++y)
    if (ac.contains(x, y) && !l.leq(y, *best)) throw std::logic_error("no greatest acyclic cofibration out of an object");
  return *best;
}

/// The minimal y with y -> x an acyclic fibration.
inline int q_min(const ModelStructure& m, int x) {
  const auto& l = m.lattice();
  const ArrowSet af = m.af();
  std::optional<int> best;
  for (int y = 0; y < l.size(); ++y)
    if (af.contains(y, x) && (!best || l.leq(y, *best))) best = y;
  for (int y = 0; y < l.size(); ++y)
    if (af.contains(y, x) && !l.leq(*best, y)) throw std::logic_error("no least acyclic fibration into an object");
  return *best;
}

inline int bifibrant_replacement(const ModelStructure& m, int x) { return r_max(m, q_min(m, x)); }

struct HomotopyCategory {
  /// Ho is the chain [k].
  int k = 0;
  /// The bifibrant object of each weak-equivalence class, ascending.
  std::vector<int> objects;
};

inline HomotopyCategory homotopy_category(const ModelStructure& m) {
  const auto p = interval_partition_of(m);
  HomotopyCategory h;
  h.k = p.block_count() - 1;
  for (const auto& [a, b] : p.blocks()) {
    std::vector<int> found;
    for (int x = a; x <= b; ++x)
      if (m.is_bifibrant(x)) found.push_back(x);
    if (found.size() != 1) throw std::logic_error("weak-equivalence class without a unique bifibrant object");
    h.objects.push_back(found.front());
  }
  return h;
}

/// The contractible model structure induced on the block [a, b], re-indexed
/// to the chain [b - a].
inline ModelStructure restrict_to_block(const ModelStructure& m, std::pair<int, int> block) {
  const auto p = interval_partition_of(m);
  const auto bs = p.blocks();
  if (std::find(bs.begin(), bs.end(), block) == bs.end())
    throw std::invalid_argument("[" + std::to_string(block.first) + "," + std::to_string(block.second) +
                                "] is not a weak-equivalence class");
  const auto [a, b] = block;
  const FiniteLattice sub = make_chain(b - a);
  ArrowSet c(sub), f(sub);
  for (int x = a; x <= b; ++x)
    for (int y = x; y <= b; ++y) {
      if (m.c().contains(x, y)) c.insert(x - a, y - a);
      if (m.f().contains(x, y)) f.insert(x - a, y - a);
    }
  return ModelStructure(ArrowSet::all(sub), std::move(c), std::move(f));
}

/// The contractible submodels of a model structure on a chain.
inline ContractibleSelection selection_of(const ModelStructure& m) {
  ContractibleSelection sel;
  sel.partition = interval_partition_of(m);
  for (const auto& blk : sel.partition.blocks())
    sel.block_systems.push_back(TransferSystem(restrict_to_block(m, blk).f()));
  return sel;
}

// ---- premodel structures -------------------------------------------------

/// (C, AF) = w1 and (AC, F) = w2; requires right(w1) within right(w2).
inline PremodelStructure premodel_from_wfs_pair(const Wfs& w1, const Wfs& w2) {
  if (!w1.right.subset_of(w2.right))
    throw std::invalid_argument("premodel pair needs AF = " + to_string(w1.right) + " inside F = " + to_string(w2.right));
  return PremodelStructure{w1.left, w2.left, w2.right, w1.right};
}

/// W := AF . AC, the arrows factoring as an acyclic cofibration then an acyclic fibration.
inline ArrowSet premodel_weak_equivalences(const PremodelStructure& p) { return composite(p.ac, p.af); }

inline bool satisfies_2of3(const PremodelStructure& p) {
  return !two_out_of_three_failure(premodel_weak_equivalences(p));
}

inline std::optional<ModelStructure> model_from_premodel(const PremodelStructure& p) {
  if (!satisfies_2of3(p)) return std::nullopt;
  return ModelStructure(premodel_weak_equivalences(p), p.c, p.f);
}

// ---- structural checks ---------------------------------------------------

/// Weak equivalences stable under pushout (join) and pullback (meet) along any arrow.
inline bool check_properness(const ModelStructure& m) {
  const auto& l = m.lattice();
  bool ok = true;
  m.w().for_each([&](const Arrow& e) {
    for (int z = 0; z < l.size() && ok; ++z) {
      if (l.leq(e.src, z) && !m.w().contains(z, l.join(e.dst, z))) ok = false;
      if (l.leq(z, e.dst) && !m.w().contains(l.meet(e.src, z), z)) ok = false;
    }
  });
  return ok;
}

enum class Monoidal { Cartesian, Cocartesian };

/// Pushout-product and unit axioms for the product (meet) or coproduct (join).
inline bool check_monoidal(const ModelStructure& m, Monoidal flavor) {
  const auto& l = m.lattice();
  auto tensor = [&](int x, int y) { return flavor == Monoidal::Cartesian ? l.meet(x, y) : l.join(x, y); };
  const int unit = flavor == Monoidal::Cartesian ? l.top() : l.bottom();
  const auto cofs = m.c().arrows();
  for (const auto& g : cofs)
    for (const auto& h : cofs) {
      const int src = l.join(tensor(g.src, h.dst), tensor(g.dst, h.src));
      const int dst = tensor(g.dst, h.dst);
      if (!m.c().contains(src, dst)) return false;
      const bool acyclic = m.w().contains(g) || m.w().contains(h);
      if (acyclic && !m.w().contains(src, dst)) return false;
    }
  // Every cofibrant resolution q -> unit (an acyclic fibration from a
  // cofibrant object) must stay a weak equivalence after tensoring with any
  // cofibrant object.
  const ArrowSet af = m.af();
  for (int q = 0; q < l.size(); ++q) {
    if (!m.is_cofibrant(q) || !af.contains(q, unit)) continue;
    for (int x = 0; x < l.size(); ++x)
      if (m.is_cofibrant(x) && !m.w().contains(tensor(q, x), tensor(unit, x))) return false;
  }
  return true;
}

// ---- general lattices ----------------------------------------------------

struct ExtensionResult {
  std::optional<ModelStructure> model;
  ModelDiagnosis diagnosis;
  /// The candidate classes built from the selection, returned even on failure.
  ArrowSet w, c, f;
};

/// Weak-equivalence classes of a reflexive, composition-closed, decomposable
/// arrow set: connected components of its underlying graph.
inline std::vector<std::vector<int>> weak_equivalence_classes(const ArrowSet& w) {
  const auto& l = w.lattice();
  std::vector<int> comp(static_cast<std::size_t>(l.size()), -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < l.size(); ++s) {
    if (comp[static_cast<std::size_t>(s)] >= 0) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    std::vector<int> stack{s};
    comp[static_cast<std::size_t>(s)] = id;
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      out.back().push_back(x);
      for (int y = 0; y < l.size(); ++y)
        if (comp[static_cast<std::size_t>(y)] < 0 && (w.contains(x, y) || w.contains(y, x))) {
          comp[static_cast<std::size_t>(y)] = id;
          stack.push_back(y);
        }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

/// Tries to extend a choice of contractible submodels on a general lattice.
/// `class_systems[i]` holds the acyclic fibrations chosen on the i-th weak
/// equivalence class (as arrows of `l`); the acyclic cofibrations there are
/// the arrows of that class lifting against them.
inline ExtensionResult extend_selection_general(const FiniteLattice& l, const ArrowSet& w,
                                                const std::vector<ArrowSet>& class_systems) {
  const auto classes = weak_equivalence_classes(w);
  if (class_systems.size() != classes.size())
    throw std::invalid_argument("one system per weak-equivalence class is required");
  ArrowSet af = ArrowSet::identities(l), ac = ArrowSet::identities(l);
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const auto& cls = classes[i];
    ArrowSet inside(l);
    for (int x : cls)
      for (int y : cls)
        if (w.contains(x, y)) inside.insert(x, y);
    if (!class_systems[i].subset_of(inside))
      throw std::invalid_argument("class system leaves its weak-equivalence class");
    af |= class_systems[i];
    inside.for_each([&](const Arrow& f) {
      bool ok = true;
      class_systems[i].for_each([&](const Arrow& g) { ok = ok && lifts(l, f, g); });
      if (ok) ac.insert(f);
    });
  }
  ExtensionResult r{std::nullopt, {}, w, left_lifting_class(af), right_lifting_class(ac)};
  r.diagnosis = verify_model(l, r.w, r.c, r.f);
  if (r.diagnosis) r.model = ModelStructure(r.w, r.c, r.f);
  return r;
}

}  // namespace hocomb
