#include <gtest/gtest.h>

#include <set>

#include "hocomb/transfer.hpp"

using namespace hocomb;

namespace {

std::uint64_t catalan_dp(int k) {
  std::vector<std::uint64_t> c(static_cast<std::size_t>(k) + 1, 0);
  c[0] = 1;
  for (int i = 1; i <= k; ++i)
    for (int j = 0; j < i; ++j) c[static_cast<std::size_t>(i)] += c[static_cast<std::size_t>(j)] * c[static_cast<std::size_t>(i - 1 - j)];
  return c[static_cast<std::size_t>(k)];
}

// Axioms checked straight from the definition on an n x n boolean matrix.
bool naive_transfer(const FiniteLattice& l, const std::vector<std::vector<bool>>& r) {
  const int n = l.size();
  for (int x = 0; x < n; ++x)
    if (!r[x][x]) return false;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (!r[x][y]) continue;
      if (!l.leq(x, y)) return false;
      for (int z = 0; z < n; ++z) {
        if (r[y][z] && !r[x][z]) return false;
        if (l.leq(z, y) && !r[l.meet(x, z)][z]) return false;
      }
    }
  return true;
}

std::set<ArrowSet> scan_transfer_systems(const FiniteLattice& l) {
  std::vector<Arrow> non_id;
  for (const auto& a : l.arrows())
    if (!a.is_identity()) non_id.push_back(a);
  std::set<ArrowSet> out;
  const int n = l.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << non_id.size()); ++mask) {
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    for (int x = 0; x < n; ++x) r[x][x] = true;
    for (std::size_t i = 0; i < non_id.size(); ++i)
      if ((mask >> i) & 1) r[non_id[i].src][non_id[i].dst] = true;
    if (!naive_transfer(l, r)) continue;
    ArrowSet s(l);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (r[x][y]) s.insert(x, y);
    out.insert(s);
  }
  return out;
}

ArrowSet rel(const FiniteLattice& l, std::initializer_list<Arrow> extra) {
  return ArrowSet::identities(l) | ArrowSet(l, extra);
}

}  // namespace

TEST(Transfer, Recognition) {
  auto l = make_chain(2);
  EXPECT_TRUE(is_transfer_system(l, ArrowSet::identities(l)));
  auto bad = is_transfer_system(l, rel(l, {{0, 2}}));
  ASSERT_FALSE(bad);
  EXPECT_EQ(bad.rule, TransferCheck::Rule::Restriction);
  EXPECT_EQ(*bad.missing, (Arrow{0, 1}));
  EXPECT_TRUE(is_transfer_system(l, ArrowSet::all(l)));
  auto no_id = is_transfer_system(l, ArrowSet(l, {{0, 1}}));
  EXPECT_EQ(no_id.rule, TransferCheck::Rule::Reflexivity);
  EXPECT_THROW(is_transfer_system(make_chain(3), ArrowSet::identities(l)), std::invalid_argument);
  EXPECT_THROW(TransferSystem(rel(l, {{0, 2}})), std::invalid_argument);
}

TEST(Transfer, Closure) {
  auto l = make_chain(2);
  EXPECT_EQ(transfer_closure(l, ArrowSet(l, {{0, 2}})).rel(), rel(l, {{0, 1}, {0, 2}}));
  auto c3 = make_chain(3);
  EXPECT_EQ(transfer_closure(c3, ArrowSet(c3)).rel(), ArrowSet::identities(c3));
  auto sq = make_grid(1, 1);
  auto t = transfer_closure(sq, ArrowSet(sq, {{0, 3}})).rel();
  EXPECT_TRUE(t.contains(0, 1));
  EXPECT_TRUE(t.contains(0, 2));
  EXPECT_TRUE(is_transfer_system(sq, t));
}

TEST(Transfer, ClosureOperatorLaws) {
  for (int n = 0; n <= 4; ++n) {
    auto l = make_chain(n);
    std::vector<int> non_id;
    for (int i = 0; i < l.arrow_count(); ++i)
      if (!l.arrow(i).is_identity()) non_id.push_back(i);
    const std::uint64_t lim = std::uint64_t{1} << non_id.size();
    std::vector<ArrowSet> closures;
    for (std::uint64_t mask = 0; mask < lim; ++mask) {
      ArrowSet seed(l);
      for (std::size_t i = 0; i < non_id.size(); ++i)
        if ((mask >> i) & 1) seed.set_index(non_id[i]);
      auto c = transfer_closure(l, seed).rel();
      ASSERT_TRUE(seed.subset_of(c));
      ASSERT_EQ(transfer_closure(l, c).rel(), c);
      ASSERT_TRUE(is_transfer_system(l, c));
      closures.push_back(c);
    }
    // Monotone: a subset seed closes inside the superset's closure.
    for (std::uint64_t a = 0; a < lim; a += 3)
      for (std::uint64_t b = 0; b < lim; b += 5)
        if ((a & b) == a) ASSERT_TRUE(closures[a].subset_of(closures[b]));
  }
}

TEST(Transfer, EnumerationMatchesSubsetScan) {
  std::vector<FiniteLattice> ls;
  for (int n = 0; n <= 5; ++n) ls.push_back(make_chain(n));
  ls.push_back(make_grid(1, 1));
  ls.push_back(make_grid(1, 2));
  ls.push_back(make_explicit(5, {{0, 1}, {1, 2}, {2, 4}, {0, 3}, {3, 4}}));
  for (const auto& l : ls) {
    auto oracle = scan_transfer_systems(l);
    auto got = enumerate_transfer_systems(l);
    std::set<ArrowSet> seen;
    for (std::size_t i = 0; i < got.size(); ++i) {
      seen.insert(got[i].rel());
      if (i) ASSERT_TRUE(got[i - 1] < got[i]);
    }
    EXPECT_EQ(seen.size(), got.size()) << l.label();
    EXPECT_EQ(seen, oracle) << l.label();
  }
}

TEST(Transfer, CatalanCounts) {
  for (int n = 0; n <= 9; ++n)
    EXPECT_EQ(enumerate_transfer_systems(make_chain(n)).size(), catalan_dp(n + 1)) << n;
  EXPECT_EQ(enumerate_transfer_systems(make_chain(4)).size(), 42u);
}

TEST(Transfer, GridEnumeratesByNextClosure) {
  auto l = make_grid(1, 2);
  EXPECT_FALSE(l.is_chain());
  EXPECT_EQ(enumerate_transfer_systems(l).size(), scan_transfer_systems(l).size());
}

TEST(Transfer, DownwardExtension) {
  auto l = make_chain(2);
  auto e = downward_extension(l, TransferSystem(rel(l, {{1, 2}})));
  EXPECT_EQ(e, ArrowSet(l, {{1, 2}, {0, 2}}));
  EXPECT_TRUE(downward_extension(l, TransferSystem::trivial(l)).none());
  EXPECT_EQ(downward_extension(l, TransferSystem::complete(l)), ArrowSet(l, {{0, 1}, {0, 2}, {1, 2}}));
}

TEST(Transfer, TableOneLeftClasses) {
  auto l = make_chain(2);
  EXPECT_EQ(left_class(l, TransferSystem::trivial(l)), ArrowSet::all(l));
  EXPECT_EQ(left_class(l, TransferSystem::complete(l)), ArrowSet::identities(l));
  EXPECT_EQ(left_class(l, TransferSystem(rel(l, {{0, 1}}))), rel(l, {{0, 2}, {1, 2}}));
  EXPECT_EQ(left_class(l, TransferSystem(rel(l, {{1, 2}}))), rel(l, {{0, 1}}));
  EXPECT_EQ(left_class(l, TransferSystem(rel(l, {{0, 1}, {0, 2}}))), rel(l, {{1, 2}}));
}

TEST(Transfer, LeftClassDualityOnChains) {
  for (int n = 0; n <= 5; ++n) {
    auto l = make_chain(n);
    for (const auto& r : enumerate_transfer_systems(l)) {
      auto w = wfs_from_transfer(l, r);
      EXPECT_TRUE(verify_wfs(l, w));
      EXPECT_EQ(w.left, downward_extension(l, r).complement());
    }
  }
}

TEST(Transfer, VerifyWfsWitness) {
  auto l = make_chain(1);
  auto ids = ArrowSet::identities(l);
  auto chk = verify_wfs(l, Wfs{ids, ids});
  ASSERT_FALSE(chk);
  EXPECT_EQ(chk.failure, WfsCheck::Failure::Factorization);
  EXPECT_EQ(chk.witness.front(), (Arrow{0, 1}));
  auto all = ArrowSet::all(l);
  auto lift = verify_wfs(l, Wfs{all, all});
  EXPECT_EQ(lift.failure, WfsCheck::Failure::Lifting);
  EXPECT_TRUE(lift.retracts_vacuous);
}

TEST(Transfer, Saturation) {
  auto l = make_chain(2);
  EXPECT_TRUE(is_saturated(l, TransferSystem::complete(l)));
  EXPECT_FALSE(is_saturated(l, TransferSystem(rel(l, {{0, 1}, {0, 2}}))));
  for (int n = 0; n <= 6; ++n) {
    auto c = make_chain(n);
    // Closures of subsets of the covering relations.
    std::set<ArrowSet> generated;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      ArrowSet seed(c);
      for (int i = 0; i < n; ++i)
        if ((mask >> i) & 1) seed.insert(i, i + 1);
      generated.insert(transfer_closure(c, seed).rel());
    }
    std::set<ArrowSet> saturated;
    for (const auto& r : enumerate_transfer_systems(c))
      if (is_saturated(c, r)) saturated.insert(r.rel());
    EXPECT_EQ(saturated.size(), std::size_t{1} << n);
    EXPECT_EQ(saturated, generated);
  }
}

TEST(Transfer, WfsPosetIsTamari) {
  auto p2 = wfs_poset(2);
  ASSERT_EQ(p2.elements.size(), 5u);
  EXPECT_EQ(p2.hasse.size(), 5u);
  EXPECT_TRUE(p2.is_lattice);
  EXPECT_EQ(wfs_poset(0).elements.size(), 1u);
  auto p3 = wfs_poset(3);
  EXPECT_EQ(p3.elements.size(), 14u);
  EXPECT_TRUE(p3.is_lattice);
  for (int n = 4; n <= 5; ++n) EXPECT_TRUE(wfs_poset(n).is_lattice);
  // The pentagon: trivial < {01} < {01,02} < complete and trivial < {12} < complete.
  auto l = make_chain(2);
  auto find = [&](const ArrowSet& s) {
    for (std::size_t i = 0; i < p2.elements.size(); ++i)
      if (p2.elements[i].rel() == s) return static_cast<int>(i);
    return -1;
  };
  const int t1 = find(ArrowSet::identities(l)), t2 = find(rel(l, {{0, 1}})), t3 = find(rel(l, {{1, 2}})),
            t4 = find(rel(l, {{0, 1}, {0, 2}})), t5 = find(ArrowSet::all(l));
  std::set<std::pair<int, int>> edges(p2.hasse.begin(), p2.hasse.end());
  EXPECT_EQ(edges, (std::set<std::pair<int, int>>{{t1, t2}, {t2, t4}, {t4, t5}, {t1, t3}, {t3, t5}}));
}
