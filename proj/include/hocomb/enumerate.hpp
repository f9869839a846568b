#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hocomb/arrow_set.hpp"
#include "hocomb/model.hpp"
#include "hocomb/transfer.hpp"

namespace hocomb {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// ---- exact counts --------------------------------------------------------

inline BigInt binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline BigInt catalan(long k) {
  if (k < 0) throw std::invalid_argument("catalan index must be nonnegative");
  return binomial(2 * k, k) / (k + 1);
}

/// Model structures on [n].
inline BigInt count_models(long n) { return binomial(2 * n + 1, n); }

/// Model structures on [n] whose homotopy category is [k].
inline BigInt shapiro(long n, long k) {
  if (n < 0 || k < 0 || k > n) throw std::out_of_range("shapiro(n,k) needs 0 <= k <= n");
  BigInt num = 2 * (k + 1) * binomial(2 * n + 1, n - k);
  return num / (n + k + 2);
}

struct CountTable {
  /// rows[n][k] for 0 <= k <= n.
  std::vector<std::vector<BigInt>> rows;

  BigInt row_sum(std::size_t n) const {
    BigInt s = 0;
    for (const auto& v : rows.at(n)) s += v;
    return s;
  }
  friend bool operator==(const CountTable&, const CountTable&) = default;
};

inline CountTable shapiro_table(long n_max) {
  CountTable t;
  for (long n = 0; n <= n_max; ++n) {
    t.rows.emplace_back();
    for (long k = 0; k <= n; ++k) t.rows.back().push_back(shapiro(n, k));
  }
  return t;
}

/// Q(n,k) = Q(n-1,k-1) + 2 Q(n-1,k) + Q(n-1,k+1) from Q(0,0) = 1.
inline CountTable shapiro_recurrence(long n_max) {
  CountTable t;
  t.rows.push_back({1});
  for (long n = 1; n <= n_max; ++n) {
    const auto& prev = t.rows.back();
    auto at = [&](long k) -> BigInt { return k < 0 || k >= static_cast<long>(prev.size()) ? BigInt(0) : prev[static_cast<std::size_t>(k)]; };
    std::vector<BigInt> row;
    for (long k = 0; k <= n; ++k) row.push_back(at(k - 1) + 2 * at(k) + at(k + 1));
    t.rows.push_back(std::move(row));
  }
  return t;
}

/// Premodel structures on [n]: intervals of the Tamari lattice of size n+1.
inline BigInt count_premodels(long n) {
  const BigInt num = 2 * binomial(4 * n + 5, n);
  return num / ((n + 1) * (n + 2));
}

inline BigInt stirling2(long n, long k) {
  if (n < 0 || k < 0) return 0;
  std::vector<std::vector<BigInt>> s(static_cast<std::size_t>(n) + 1, std::vector<BigInt>(static_cast<std::size_t>(n) + 2, 0));
  s[0][0] = 1;
  for (long i = 1; i <= n; ++i)
    for (long j = 1; j <= i; ++j)
      s[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          j * s[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)] + s[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
  return k > n ? BigInt(0) : s[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

inline BigInt factorial(long n) {
  BigInt r = 1;
  for (long i = 2; i <= n; ++i) r *= i;
  return r;
}

/// Saturated transfer systems (model structures with every map a fibration) on [n].
inline BigInt count_saturated_chain(long n) { return BigInt(1) << static_cast<unsigned>(n); }

/// Saturated transfer systems on [m] x [n] by the Stirling-number sum.
inline BigInt count_saturated_grid(long m, long n) {
  BigInt total = 0;
  for (long j = 2; j <= m + 2; ++j) {
    BigInt term = stirling2(m + 1, j - 1) * (factorial(j) / 2) * boost::multiprecision::pow(BigInt(j), static_cast<unsigned>(n));
    if ((m - j) % 2 != 0) term = -term;
    total += term;
  }
  return total;
}

inline Rational q_over_p_ratio(long n) { return Rational(count_models(n), count_premodels(n)); }

// ---- model enumeration ---------------------------------------------------

namespace detail {

/// Transfer systems and their left classes on each block [a, b] of [n],
/// already embedded in the chain [n].
class BlockCatalogue {
 public:
  explicit BlockCatalogue(int n) : n_(n), chain_(make_chain(n)) {}

  const FiniteLattice& chain() const { return chain_; }

  struct Entry {
    ArrowSet af, ac;
  };

  const std::vector<Entry>& block(int a, int b) {
    const auto key = std::pair{a, b};
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    std::vector<Entry> out;
    const auto sub = make_chain(b - a);
    for (const auto& r : enumerate_transfer_systems(sub))
      out.push_back({shift_into(chain_, r.rel(), a), shift_into(chain_, left_lifting_class(r.rel()), a)});
    return cache_.emplace(key, std::move(out)).first->second;
  }

 private:
  int n_;
  FiniteLattice chain_;
  std::map<std::pair<int, int>, std::vector<Entry>> cache_;
};

/// Runs `f` on every model structure with partition `p`, block systems in
/// lexicographic order with the last block varying fastest.
template <class F>
void for_each_model_in_partition(BlockCatalogue& cat, const IntervalPartition& p, F&& f) {
  const auto blocks = p.blocks();
  const auto& l = cat.chain();
  const ArrowSet w = within_blocks(l, p);
  std::vector<const std::vector<BlockCatalogue::Entry>*> lists;
  for (const auto& [a, b] : blocks) lists.push_back(&cat.block(a, b));
  std::vector<std::size_t> idx(blocks.size(), 0);
  for (;;) {
    ArrowSet af = ArrowSet::identities(l), ac = ArrowSet::identities(l);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      af |= (*lists[i])[idx[i]].af;
      ac |= (*lists[i])[idx[i]].ac;
    }
    f(assemble_model(w, af, ac));
    std::size_t pos = blocks.size();
    while (pos > 0) {
      --pos;
      if (++idx[pos] < lists[pos]->size()) break;
      idx[pos] = 0;
      if (pos == 0) return;
    }
  }
}

}  // namespace detail

/// Visits every model structure on [n] once: interval partitions in cut-list
/// order, then block systems in lexicographic order.
template <class F>
void for_each_model(int n, F&& f) {
  detail::BlockCatalogue cat(n);
  for (const auto& p : IntervalPartition::all(n)) detail::for_each_model_in_partition(cat, p, f);
}

inline std::vector<ModelStructure> enumerate_models(int n) {
  std::vector<ModelStructure> out;
  for_each_model(n, [&](const ModelStructure& m) { out.push_back(m); });
  return out;
}

/// Summary of a full enumeration on [n].
struct ModelSurvey {
  std::uint64_t count = 0;
  std::uint64_t verified = 0;
  /// histogram[k]: structures with homotopy category [k].
  std::vector<std::uint64_t> histogram;
  std::vector<std::string> failures;
};

/// Enumerates, verifies every structure and tallies homotopy categories.
/// Work is split over interval partitions across `jobs` threads; results do
/// not depend on `jobs`.
inline ModelSurvey survey_models(int n, unsigned jobs = 1) {
  const auto parts = IntervalPartition::all(n);
  std::vector<ModelSurvey> per(parts.size());
  auto work = [&](std::size_t begin, std::size_t step) {
    detail::BlockCatalogue cat(n);
    for (std::size_t i = begin; i < parts.size(); i += step) {
      auto& s = per[i];
      s.histogram.assign(static_cast<std::size_t>(n) + 1, 0);
      detail::for_each_model_in_partition(cat, parts[i], [&](const ModelStructure& m) {
        ++s.count;
        if (auto d = verify_model(m))
          ++s.verified;
        else if (s.failures.size() < 8)
          s.failures.push_back(to_string(m.w()) + ": " + d.describe());
        ++s.histogram[static_cast<std::size_t>(homotopy_category(m).k)];
      });
    }
  };
  jobs = std::max(1u, jobs);
  if (jobs == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(work, t, jobs);
    for (auto& t : pool) t.join();
  }
  ModelSurvey total;
  total.histogram.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& s : per) {
    total.count += s.count;
    total.verified += s.verified;
    for (std::size_t k = 0; k < s.histogram.size(); ++k) total.histogram[k] += s.histogram[k];
    total.failures.insert(total.failures.end(), s.failures.begin(), s.failures.end());
  }
  return total;
}

// ---- premodel enumeration ------------------------------------------------

struct PremodelEntry {
  /// Indices into enumerate_transfer_systems(chain[n]) for AF and F.
  int af_index = 0, f_index = 0;
  PremodelStructure structure;
};

/// Ordered pairs of weak factorization systems with right(first) inside right(second).
inline std::vector<PremodelEntry> enumerate_premodels(int n) {
  const auto l = make_chain(n);
  const auto systems = enumerate_transfer_systems(l);
  std::vector<Wfs> wfs;
  for (const auto& r : systems) wfs.push_back(wfs_from_transfer(l, r));
  std::vector<PremodelEntry> out;
  for (std::size_t i = 0; i < wfs.size(); ++i)
    for (std::size_t j = 0; j < wfs.size(); ++j)
      if (wfs[i].right.subset_of(wfs[j].right))
        out.push_back({static_cast<int>(i), static_cast<int>(j), premodel_from_wfs_pair(wfs[i], wfs[j])});
  return out;
}

// ---- brute-force oracles -------------------------------------------------

class CapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

namespace detail {

inline std::vector<int> non_identity_indices(const FiniteLattice& l) {
  std::vector<int> out;
  for (int i = 0; i < l.arrow_count(); ++i)
    if (!l.arrow(i).is_identity()) out.push_back(i);
  return out;
}

inline void check_cap(const FiniteLattice& l, int cap, const char* what) {
  const int k = static_cast<int>(non_identity_indices(l).size());
  if (k > cap)
    throw CapExceeded(std::string(what) + ": " + l.label() + " has " + std::to_string(k) +
                      " non-identity arrows, cap is " + std::to_string(cap));
}

/// Every identity-containing arrow set, in mask order over the non-identity arrows.
template <class F>
void for_each_reflexive_set(const FiniteLattice& l, F&& f) {
  const auto ni = non_identity_indices(l);
  const ArrowSet ids = ArrowSet::identities(l);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ni.size()); ++mask) {
    ArrowSet s = ids;
    for (std::size_t i = 0; i < ni.size(); ++i)
      if ((mask >> i) & 1) s.set_index(ni[i]);
    f(s);
  }
}

}  // namespace detail

inline constexpr int kDefaultWfsCap = 20;
inline constexpr int kDefaultModelCap = 10;

/// Weak factorization systems found by scanning every reflexive arrow set.
inline std::vector<Wfs> oracle_wfs(const FiniteLattice& l, int cap = kDefaultWfsCap) {
  detail::check_cap(l, cap, "oracle_wfs");
  std::vector<Wfs> out;
  detail::for_each_reflexive_set(l, [&](const ArrowSet& r) {
    if (is_transfer_system(l, r)) out.push_back({left_lifting_class(r), r});
  });
  std::sort(out.begin(), out.end(), [](const Wfs& a, const Wfs& b) { return a.right < b.right; });
  return out;
}

/// Model structures found by scanning (W, C, F) triples of reflexive arrow
/// sets. Candidates that fail a necessary condition (closure of a class under
/// composition, 2-out-of-3, or F outside (W and C)^[]) are skipped before the
/// full verify_model call.
inline std::vector<ModelStructure> oracle_models(const FiniteLattice& l, int cap = kDefaultModelCap) {
  detail::check_cap(l, cap, "oracle_models");
  std::vector<ArrowSet> closed, weqs;
  detail::for_each_reflexive_set(l, [&](const ArrowSet& s) {
    if (composition_failure(s)) return;
    closed.push_back(s);
    if (!two_out_of_three_failure(s)) weqs.push_back(s);
  });
  std::vector<ModelStructure> out;
  for (const auto& w : weqs)
    for (const auto& c : closed) {
      const ArrowSet f_bound = right_lifting_class(w & c);
      for (const auto& f : closed)
        if (f.subset_of(f_bound) && verify_model(l, w, c, f)) out.emplace_back(w, c, f);
    }
  std::sort(out.begin(), out.end());
  return out;
}

/// Saturated transfer systems on `l` by a backtracking scan over the
/// non-identity arrows, pruning as soon as a transitivity, restriction or
/// 2-out-of-3 clause has all its arrows decided.
inline std::vector<ArrowSet> oracle_saturated(const FiniteLattice& l) {
  const int k = l.arrow_count();
  // Clause: all premises present implies conclusion present.
  struct Clause {
    std::vector<int> premises;
    int conclusion;
  };
  std::vector<std::vector<Clause>> at(static_cast<std::size_t>(k));
  auto add = [&](std::vector<int> prem, int concl) {
    int hi = concl;
    for (int p : prem) hi = std::max(hi, p);
    at[static_cast<std::size_t>(hi)].push_back({std::move(prem), concl});
  };
  for (const auto& t : l.composable_triples()) {
    add({t.xy, t.yz}, t.xz);
    add({t.xy, t.xz}, t.yz);
    add({t.yz, t.xz}, t.xy);
  }
  for (int i = 0; i < k; ++i) {
    const Arrow a = l.arrow(i);
    if (a.is_identity()) continue;
    for (int z = 0; z < l.size(); ++z)
      if (l.leq(z, a.dst)) add({i}, l.index_of(l.meet(a.src, z), z));
  }
  std::vector<std::vector<Clause>> clauses = std::move(at);
  ArrowSet cur(l);
  std::vector<ArrowSet> out;
  std::function<void(int)> go = [&](int i) {
    if (i == k) {
      out.push_back(cur);
      return;
    }
    const bool forced = l.arrow(i).is_identity();
    for (int v = forced ? 1 : 0; v <= 1; ++v) {
      cur.set_index(i, v == 1);
      bool ok = true;
      for (const auto& c : clauses[static_cast<std::size_t>(i)]) {
        bool all = true;
        for (int p : c.premises) all = all && cur.contains_index(p);
        if (all && !cur.contains_index(c.conclusion)) {
          ok = false;
          break;
        }
      }
      if (ok) go(i + 1);
    }
    cur.set_index(i, false);
  };
  go(0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace hocomb
