#pragma once

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hocomb/arrow_set.hpp"
#include "hocomb/enumerate.hpp"
#include "hocomb/model.hpp"

namespace hocomb {

enum class MapSpace { Empty, Point };

/// Homotopy mapping space from x to y: a point exactly when the bifibrant
/// replacement of x maps to that of y.
inline MapSpace mapping_space(const ModelStructure& m, int x, int y) {
  const auto& l = m.lattice();
  return l.leq(bifibrant_replacement(m, x), bifibrant_replacement(m, y)) ? MapSpace::Point : MapSpace::Empty;
}

/// Least set containing W and `extra` closed under composition and decomposition.
inline ArrowSet w_closure(const ModelStructure& m, const ArrowSet& extra) {
  ArrowSet w = m.w() | extra;
  const auto& triples = m.lattice().composable_triples();
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& t : triples) {
      const bool xy = w.contains_index(t.xy), yz = w.contains_index(t.yz), xz = w.contains_index(t.xz);
      if (xy && yz && !xz) {
        w.set_index(t.xz);
        changed = true;
      }
      if (xz && !(xy && yz)) {
        w.set_index(t.xy);
        w.set_index(t.yz);
        changed = true;
      }
    }
  }
  return w;
}

/// Fibrant z such that every a -> b in `wset` induces an equivalence Map(b,z) -> Map(a,z).
inline std::vector<int> w_local_objects(const ModelStructure& m, const ArrowSet& wset) {
  std::vector<int> out;
  const auto arrows = wset.arrows();
  for (int z = 0; z < m.lattice().size(); ++z) {
    if (!m.is_fibrant(z)) continue;
    bool ok = true;
    for (const auto& f : arrows) ok = ok && mapping_space(m, f.dst, z) == mapping_space(m, f.src, z);
    if (ok) out.push_back(z);
  }
  return out;
}

/// Cofibrant z such that every a -> b in `wset` induces an equivalence Map(z,a) -> Map(z,b).
inline std::vector<int> w_colocal_objects(const ModelStructure& m, const ArrowSet& wset) {
  std::vector<int> out;
  const auto arrows = wset.arrows();
  for (int z = 0; z < m.lattice().size(); ++z) {
    if (!m.is_cofibrant(z)) continue;
    bool ok = true;
    for (const auto& f : arrows) ok = ok && mapping_space(m, z, f.src) == mapping_space(m, z, f.dst);
    if (ok) out.push_back(z);
  }
  return out;
}

/// Arrows a -> b with Map(b,z) -> Map(a,z) an equivalence for every local z.
inline ArrowSet w_equivalences(const ModelStructure& m, const ArrowSet& wset) {
  const auto local = w_local_objects(m, wset);
  ArrowSet out(m.lattice());
  for (const auto& f : m.lattice().arrows()) {
    bool ok = true;
    for (int z : local) ok = ok && mapping_space(m, f.dst, z) == mapping_space(m, f.src, z);
    if (ok) out.insert(f);
  }
  return out;
}

/// Arrows a -> b with Map(z,a) -> Map(z,b) an equivalence for every colocal z.
inline ArrowSet w_coequivalences(const ModelStructure& m, const ArrowSet& wset) {
  const auto colocal = w_colocal_objects(m, wset);
  ArrowSet out(m.lattice());
  for (const auto& f : m.lattice().arrows()) {
    bool ok = true;
    for (int z : colocal) ok = ok && mapping_space(m, z, f.src) == mapping_space(m, z, f.dst);
    if (ok) out.insert(f);
  }
  return out;
}

namespace detail {

inline void require_step(const ModelStructure& m, int i) {
  const auto len = m.lattice().chain_length();
  if (!len) throw std::invalid_argument("localization needs a chain carrier");
  if (i < 0 || i >= *len) throw std::out_of_range("localization index " + std::to_string(i) + " outside [0, n)");
}

/// Rebuilds a model structure on a chain from its new acyclic fibrations and
/// interval partition, and checks the weak equivalences against the closure.
inline ModelStructure rebuild(const ModelStructure& m, const IntervalPartition& p, const ArrowSet& af, int i) {
  ContractibleSelection sel{p, {}};
  for (const auto& blk : p.blocks()) {
    const auto sub = make_chain(blk.second - blk.first);
    ArrowSet r(sub);
    for (int x = blk.first; x <= blk.second; ++x)
      for (int y = x; y <= blk.second; ++y)
        if (af.contains(x, y)) r.insert(x - blk.first, y - blk.first);
    sel.block_systems.push_back(TransferSystem(std::move(r)));
  }
  auto out = from_selection(sel);
  if (!(out.w() == w_closure(m, ArrowSet(m.lattice(), {{i, i + 1}}))))
    throw std::logic_error("localized weak equivalences differ from the decomposition closure");
  return out;
}

inline IntervalPartition merge_at(const IntervalPartition& p, int i) {
  std::vector<int> cuts;
  for (int c : p.cuts)
    if (c != i) cuts.push_back(c);
  return {p.n, cuts};
}

}  // namespace detail

/// Left Bousfield localization at i -> i+1: the blocks containing i and i+1
/// merge, cofibrations and acyclic fibrations stay.
inline ModelStructure left_localize(const ModelStructure& m, int i) {
  detail::require_step(m, i);
  if (m.w().contains(i, i + 1)) return m;
  const auto p = interval_partition_of(m);
  return detail::rebuild(m, detail::merge_at(p, i), m.af(), i);
}

/// Right Bousfield localization at i -> i+1: for old blocks [a, i], [i+1, b]
/// the acyclic fibrations gain every (x, y) with i < y <= b and (x, i) acyclic.
inline ModelStructure right_localize(const ModelStructure& m, int i) {
  detail::require_step(m, i);
  if (m.w().contains(i, i + 1)) return m;
  const auto p = interval_partition_of(m);
  const int b = p.blocks()[static_cast<std::size_t>(p.block_of(i + 1))].second;
  ArrowSet af = m.af();
  for (int x = 0; x <= i; ++x)
    if (af.contains(x, i))
      for (int y = i + 1; y <= b; ++y) af.insert(x, y);
  return detail::rebuild(m, detail::merge_at(p, i), af, i);
}

// ---- words and the localization graph ------------------------------------

struct LocalizationStep {
  enum class Side { Left, Right };
  Side side = Side::Left;
  int index = 0;
  friend bool operator==(const LocalizationStep&, const LocalizationStep&) = default;
};

/// Steps in application order.
using LocalizationWord = std::vector<LocalizationStep>;

inline std::string to_string(const LocalizationStep& s) {
  return std::string(s.side == LocalizationStep::Side::Left ? "L_" : "R_") + std::to_string(s.index);
}

/// Composite notation: the last step applied is written first ("L_2 R_0 L_1").
inline std::string to_string(const LocalizationWord& w) {
  std::string out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out += (out.empty() ? "" : " ") + to_string(*it);
  return out;
}

/// Parses composite notation such as "L_2 R_0 L_1" (or "L2R0L1").
inline LocalizationWord parse_word(const std::string& s) {
  LocalizationWord w;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (c == ' ' || c == ',') {
      ++i;
      continue;
    }
    if (c != 'L' && c != 'R') throw std::invalid_argument("bad localization word '" + s + "'");
    ++i;
    if (i < s.size() && s[i] == '_') ++i;
    std::size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j == i) throw std::invalid_argument("missing index in localization word '" + s + "'");
    w.push_back({c == 'L' ? LocalizationStep::Side::Left : LocalizationStep::Side::Right, std::stoi(s.substr(i, j - i))});
    i = j;
  }
  std::reverse(w.begin(), w.end());
  return w;
}

inline ModelStructure apply_step(const ModelStructure& m, const LocalizationStep& s) {
  return s.side == LocalizationStep::Side::Left ? left_localize(m, s.index) : right_localize(m, s.index);
}

inline ModelStructure apply_word(ModelStructure m, const LocalizationWord& w) {
  for (const auto& s : w) m = apply_step(m, s);
  return m;
}

inline ModelStructure trivial_model(int n) {
  const auto l = make_chain(n);
  return ModelStructure(ArrowSet::identities(l), ArrowSet::all(l), ArrowSet::all(l));
}

/// Neighbour order used by every search: L_0, R_0, L_1, R_1, ...
inline std::vector<LocalizationStep> step_order(int n) {
  std::vector<LocalizationStep> out;
  for (int i = 0; i < n; ++i) {
    out.push_back({LocalizationStep::Side::Left, i});
    out.push_back({LocalizationStep::Side::Right, i});
  }
  return out;
}

struct LocalizationGraph {
  struct Edge {
    int from = 0, to = 0;
    LocalizationStep step;
  };
  int n = 0;
  std::vector<ModelStructure> nodes;
  /// One edge per node and step, self-loops included.
  std::vector<Edge> edges;
  std::vector<bool> reachable;
  int trivial = 0;

  int index_of(const ModelStructure& m) const {
    auto it = index.find(m);
    return it == index.end() ? -1 : it->second;
  }
  std::map<ModelStructure, int> index;
};

inline LocalizationGraph localization_graph(int n) {
  LocalizationGraph g;
  g.n = n;
  g.nodes = enumerate_models(n);
  for (std::size_t i = 0; i < g.nodes.size(); ++i) g.index.emplace(g.nodes[i], static_cast<int>(i));
  const auto steps = step_order(n);
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    for (const auto& s : steps) {
      const int to = g.index_of(apply_step(g.nodes[i], s));
      if (to < 0) throw std::logic_error("localization left the enumerated model structures");
      g.edges.push_back({static_cast<int>(i), to, s});
    }
  g.trivial = g.index_of(trivial_model(n));
  g.reachable.assign(g.nodes.size(), false);
  std::deque<int> queue{g.trivial};
  g.reachable[static_cast<std::size_t>(g.trivial)] = true;
  const std::size_t out_degree = steps.size();
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (std::size_t k = 0; k < out_degree; ++k) {
      const int v = g.edges[static_cast<std::size_t>(u) * out_degree + k].to;
      if (!g.reachable[static_cast<std::size_t>(v)]) {
        g.reachable[static_cast<std::size_t>(v)] = true;
        queue.push_back(v);
      }
    }
  }
  return g;
}

/// Pairs (a, b), a != b, for which the identity from structure a to structure b
/// is left Quillen: C_a within C_b and F_b within F_a.
inline std::vector<std::pair<int, int>> quillen_edges(const std::vector<ModelStructure>& nodes) {
  std::vector<std::pair<int, int>> out;
  for (std::size_t a = 0; a < nodes.size(); ++a)
    for (std::size_t b = 0; b < nodes.size(); ++b)
      if (a != b && nodes[a].c().subset_of(nodes[b].c()) && nodes[b].f().subset_of(nodes[a].f()))
        out.emplace_back(static_cast<int>(a), static_cast<int>(b));
  return out;
}

/// Shortest words from the trivial structure to every reachable structure on
/// [n], found breadth-first with neighbours in step_order.
inline std::map<ModelStructure, LocalizationWord> shortest_words(int n) {
  std::map<ModelStructure, LocalizationWord> seen;
  const auto start = trivial_model(n);
  seen.emplace(start, LocalizationWord{});
  std::deque<ModelStructure> queue{start};
  const auto steps = step_order(n);
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop_front();
    const auto word = seen.at(u);
    for (const auto& s : steps) {
      auto v = apply_step(u, s);
      if (seen.count(v)) continue;
      auto next = word;
      next.push_back(s);
      seen.emplace(v, std::move(next));
      queue.push_back(std::move(v));
    }
  }
  return seen;
}

/// A shortest word taking the trivial structure to m.
inline LocalizationWord zigzag_from_trivial(const ModelStructure& m) {
  const auto len = m.lattice().chain_length();
  if (!len) throw std::invalid_argument("zig-zags need a chain carrier");
  const auto start = trivial_model(*len);
  if (m == start) return {};
  std::map<ModelStructure, LocalizationWord> seen{{start, {}}};
  std::deque<ModelStructure> queue{start};
  const auto steps = step_order(*len);
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop_front();
    const auto word = seen.at(u);
    for (const auto& s : steps) {
      auto v = apply_step(u, s);
      if (seen.count(v)) continue;
      auto next = word;
      next.push_back(s);
      if (v == m) return next;
      seen.emplace(v, std::move(next));
      queue.push_back(std::move(v));
    }
  }
  throw std::logic_error("model structure not reachable from the trivial structure");
}

}  // namespace hocomb
