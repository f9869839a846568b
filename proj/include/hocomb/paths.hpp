#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hocomb/arrow_set.hpp"
#include "hocomb/model.hpp"
#include "hocomb/transfer.hpp"

namespace hocomb {

/// A transfer system on [i], or nothing for the empty chain (i = -1).
using MaybeSystem = std::optional<TransferSystem>;

inline int chain_index(const MaybeSystem& s) { return s ? *s->lattice().chain_length() : -1; }

/// Glues x on [i] and y on [j] at the pivot i + 1: x, then the pivot with an
/// arrow to everything above it, then y shifted past the pivot.
inline TransferSystem odot(const MaybeSystem& x, const MaybeSystem& y) {
  if ((x && !x->lattice().is_chain()) || (y && !y->lattice().is_chain()))
    throw std::invalid_argument("odot needs transfer systems on chains");
  const int i = chain_index(x), j = chain_index(y);
  const int n = i + j + 2;
  const auto l = make_chain(n);
  ArrowSet r = ArrowSet::identities(l);
  if (x) r |= detail::shift_into(l, x->rel(), 0);
  if (y) r |= detail::shift_into(l, y->rel(), i + 2);
  for (int w = i + 2; w <= n; ++w) r.insert(i + 1, w);
  return TransferSystem::trusted(std::move(r));
}

struct PivotDecomposition {
  int pivot = 0;
  MaybeSystem below, above;
};

/// Restriction of z to [a, b], re-indexed to [b - a].
inline TransferSystem restrict_system(const TransferSystem& z, int a, int b) {
  const auto sub = make_chain(b - a);
  ArrowSet r(sub);
  for (int x = a; x <= b; ++x)
    for (int y = x; y <= b; ++y)
      if (z.contains(x, y)) r.insert(x - a, y - a);
  return TransferSystem::trusted(std::move(r));
}

/// The unique p with (p, w) in z for every w > p and no arrow (a, b) with
/// a < p <= b, together with the systems below and above p.
inline PivotDecomposition pivot_decompose(const TransferSystem& z) {
  const auto len = z.lattice().chain_length();
  if (!len) throw std::invalid_argument("pivot decomposition needs a chain");
  const int n = *len;
  std::vector<int> found;
  for (int p = 0; p <= n; ++p) {
    bool ok = true;
    for (int w = p + 1; w <= n && ok; ++w) ok = z.contains(p, w);
    z.rel().for_each([&](const Arrow& e) { ok = ok && !(e.src < p && p <= e.dst); });
    if (ok) found.push_back(p);
  }
  if (found.size() != 1)
    throw std::logic_error("transfer system " + to_string(z) + " has " + std::to_string(found.size()) + " pivots");
  PivotDecomposition d;
  d.pivot = found.front();
  if (d.pivot > 0) d.below = restrict_system(z, 0, d.pivot - 1);
  if (d.pivot < n) d.above = restrict_system(z, d.pivot + 1, n);
  return d;
}

// ---- paths ---------------------------------------------------------------

/// A balanced N/E word whose prefixes never have more E than N.
struct DyckPath {
  std::string steps;
  friend bool operator==(const DyckPath&, const DyckPath&) = default;
  friend auto operator<=>(const DyckPath&, const DyckPath&) = default;
};

/// An N/E word from (0,0) to (n+1, n+1).
struct LatticePath {
  std::string steps;
  friend bool operator==(const LatticePath&, const LatticePath&) = default;
  friend auto operator<=>(const LatticePath&, const LatticePath&) = default;
};

/// A weakly monotone map [n] -> [n], stored as its values.
struct Endo {
  std::vector<int> values;
  friend bool operator==(const Endo&, const Endo&) = default;
  friend auto operator<=>(const Endo&, const Endo&) = default;
};

inline std::string to_string(const Endo& e) {
  std::string out;
  for (std::size_t i = 0; i < e.values.size(); ++i) out += (i ? "," : "") + std::to_string(e.values[i]);
  return out;
}

inline bool is_dyck(const std::string& s) {
  int h = 0;
  for (char c : s) {
    if (c == 'N') ++h;
    else if (c == 'E') --h;
    else return false;
    if (h < 0) return false;
  }
  return h == 0;
}

inline bool is_lattice_path(const std::string& s) {
  int north = 0, east = 0;
  for (char c : s) {
    if (c == 'N') ++north;
    else if (c == 'E') ++east;
    else return false;
  }
  return north == east && !s.empty() && s.front() == 'N';
}

namespace detail {

inline std::string dyck_word(const MaybeSystem& z) {
  if (!z) return {};
  const auto d = pivot_decompose(*z);
  return "N" + dyck_word(d.above) + "E" + dyck_word(d.below);
}

inline MaybeSystem system_of_word(const std::string& s) {
  if (s.empty()) return std::nullopt;
  int h = 0;
  std::size_t ret = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    h += s[i] == 'N' ? 1 : -1;
    if (h == 0) {
      ret = i;
      break;
    }
  }
  const auto above = system_of_word(s.substr(1, ret - 1));
  const auto below = system_of_word(s.substr(ret + 1));
  return odot(below, above);
}

inline std::string reflect(std::string s) {
  for (char& c : s) c = c == 'N' ? 'E' : 'N';
  return s;
}

}  // namespace detail

/// First-return encoding: D(z) = N D(above) E D(below) around the pivot.
inline DyckPath transfer_to_dyck(const TransferSystem& z) { return {detail::dyck_word(z)}; }

inline TransferSystem dyck_to_transfer(const DyckPath& d) {
  if (d.steps.empty() || !is_dyck(d.steps)) throw std::invalid_argument("malformed Dyck path '" + d.steps + "'");
  return *detail::system_of_word(d.steps);
}

/// Interior diagonal points entered and left by the same kind of step.
inline int crossings(const LatticePath& p) {
  int x = 0, y = 0, count = 0;
  for (std::size_t i = 0; i + 1 < p.steps.size(); ++i) {
    (p.steps[i] == 'N' ? y : x) += 1;
    if (x == y && p.steps[i] == p.steps[i + 1]) ++count;
  }
  return count;
}

/// Concatenates the block Dyck paths, alternating unreflected and reflected so
/// that the path starts with a North step and crosses the diagonal exactly
/// between blocks.
inline LatticePath model_to_path(const ModelStructure& m) {
  const auto sel = selection_of(m);
  LatticePath p;
  for (std::size_t k = 0; k < sel.block_systems.size(); ++k) {
    const auto word = transfer_to_dyck(sel.block_systems[k]).steps;
    p.steps += k % 2 == 0 ? word : detail::reflect(word);
  }
  return p;
}

/// One less than the highest point of each column 0..n.
inline Endo path_to_endo(const LatticePath& p) {
  if (!is_lattice_path(p.steps)) throw std::invalid_argument("malformed lattice path '" + p.steps + "'");
  const int n = static_cast<int>(p.steps.size()) / 2 - 1;
  std::vector<int> top(static_cast<std::size_t>(n) + 1, 0);
  int x = 0, y = 0;
  for (char c : p.steps) {
    (c == 'N' ? y : x) += 1;
    if (x <= n) top[static_cast<std::size_t>(x)] = std::max(top[static_cast<std::size_t>(x)], y);
  }
  Endo e;
  for (int v : top) e.values.push_back(v - 1);
  return e;
}

inline bool is_monotone_endo(const Endo& e) {
  const int n = static_cast<int>(e.values.size()) - 1;
  if (n < 0) return false;
  for (std::size_t i = 0; i < e.values.size(); ++i) {
    if (e.values[i] < 0 || e.values[i] > n) return false;
    if (i && e.values[i] < e.values[i - 1]) return false;
  }
  return true;
}

/// The path whose column maxima are e + 1.
inline LatticePath endo_to_path(const Endo& e) {
  if (!is_monotone_endo(e)) throw std::invalid_argument("not a monotone map [n] -> [n]: " + to_string(e));
  const int n = static_cast<int>(e.values.size()) - 1;
  LatticePath p;
  int h = 0;
  for (int i = 0; i <= n; ++i) {
    const int f = e.values[static_cast<std::size_t>(i)] + 1;
    p.steps.append(static_cast<std::size_t>(f - h), 'N');
    p.steps += 'E';
    h = f;
  }
  p.steps.append(static_cast<std::size_t>(n + 1 - h), 'N');
  return p;
}

/// Splits a path at its diagonal crossings and decodes each block.
inline ModelStructure path_to_model(const LatticePath& p) {
  if (!is_lattice_path(p.steps)) throw std::invalid_argument("malformed lattice path '" + p.steps + "'");
  std::vector<std::pair<int, int>> blocks;
  std::vector<TransferSystem> systems;
  int x = 0, y = 0, start = 0, first = 0;
  auto close = [&](std::size_t end) {
    std::string word = p.steps.substr(static_cast<std::size_t>(start), end - static_cast<std::size_t>(start));
    if (blocks.size() % 2 == 1) word = detail::reflect(word);
    const int size = static_cast<int>(word.size()) / 2;
    blocks.emplace_back(first, first + size - 1);
    systems.push_back(dyck_to_transfer(DyckPath{word}));
    first += size;
    start = static_cast<int>(end);
  };
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    (p.steps[i] == 'N' ? y : x) += 1;
    if (x == y && i + 1 < p.steps.size() && p.steps[i] == p.steps[i + 1]) close(i + 1);
  }
  close(p.steps.size());
  return from_selection({IntervalPartition::from_blocks(blocks), std::move(systems)});
}

inline Endo phi(const ModelStructure& m) { return path_to_endo(model_to_path(m)); }

inline ModelStructure phi_inverse(const Endo& e) { return path_to_model(endo_to_path(e)); }

/// Every monotone map [n] -> [n] in lexicographic order.
inline std::vector<Endo> monotone_endos(int n) {
  std::vector<Endo> out;
  Endo cur;
  cur.values.assign(static_cast<std::size_t>(n) + 1, 0);
  auto rec = [&](auto& self, int i, int lo) -> void {
    if (i > n) {
      out.push_back(cur);
      return;
    }
    for (int v = lo; v <= n; ++v) {
      cur.values[static_cast<std::size_t>(i)] = v;
      self(self, i + 1, v);
    }
  };
  rec(rec, 0, 0);
  return out;
}

/// A path on [6] with blocks of sizes 3, 2, 2.
inline LatticePath sample_path_322() { return {"NNENEEENENNNEE"}; }

}  // namespace hocomb
