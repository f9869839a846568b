#include <gtest/gtest.h>

#include <functional>
#include <set>

#include "golden.hpp"
#include "hocomb/enumerate.hpp"
#include "table_fixtures.hpp"

using namespace hocomb;

namespace {

// Pascal's triangle in unsigned 128-bit arithmetic, independent of the
// library's binomial.
unsigned __int128 pascal(int n, int k) {
  std::vector<std::vector<unsigned __int128>> t(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    t[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(i) + 1, 1);
    for (int j = 1; j < i; ++j)
      t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          t[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] + t[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)];
  }
  return k < 0 || k > n ? 0 : t[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

BigInt big(unsigned __int128 v) {
  BigInt r = static_cast<std::uint64_t>(v >> 64);
  r <<= 64;
  r += static_cast<std::uint64_t>(v);
  return r;
}

// Sum over compositions of n of the product of Catalan numbers of the parts.
BigInt composition_catalan_sum(int n) {
  BigInt total = 0;
  std::function<void(int, BigInt)> rec = [&](int left, BigInt prod) {
    if (left == 0) {
      total += prod;
      return;
    }
    for (int part = 1; part <= left; ++part) rec(left - part, prod * catalan(part));
  };
  rec(n, 1);
  return total;
}

}  // namespace

TEST(Counts, Catalan) {
  EXPECT_EQ(catalan(0), 1);
  EXPECT_EQ(catalan(3), 5);
  EXPECT_EQ(catalan(5), 42);
  for (int k = 1; k <= 30; ++k) {
    BigInt rec = 0;
    for (int i = 0; i < k; ++i) rec += catalan(i) * catalan(k - 1 - i);
    EXPECT_EQ(catalan(k), rec);
  }
}

TEST(Counts, ModelsMatchBinomial) {
  EXPECT_EQ(count_models(0), 1);
  EXPECT_EQ(count_models(2), 10);
  EXPECT_EQ(count_models(4), 126);
  for (int n = 0; n <= 40; ++n) EXPECT_EQ(count_models(n), big(pascal(2 * n + 1, n)));
}

TEST(Counts, ShapiroTriangle) {
  for (std::size_t n = 0; n < golden::kTriangle.size(); ++n)
    for (std::size_t k = 0; k <= n; ++k) EXPECT_EQ(shapiro(static_cast<long>(n), static_cast<long>(k)), golden::kTriangle[n][k]);
  EXPECT_EQ(shapiro(4, 1), 48);
  EXPECT_EQ(shapiro(5, 2), 110);
  EXPECT_THROW(shapiro(3, 4), std::out_of_range);
  auto table = shapiro_table(20);
  EXPECT_EQ(table, shapiro_recurrence(20));
  for (std::size_t n = 0; n <= 20; ++n) {
    EXPECT_EQ(table.row_sum(n), count_models(static_cast<long>(n)));
    EXPECT_EQ(table.rows[n][n], 1);
  }
}

TEST(Counts, CatalanProductsOverCompositions) {
  for (int n = 1; n <= 12; ++n) EXPECT_EQ(composition_catalan_sum(n), big(pascal(2 * n - 1, n))) << n;
}

TEST(Counts, Premodels) {
  EXPECT_EQ(count_premodels(0), 1);
  EXPECT_EQ(count_premodels(1), 3);
  EXPECT_EQ(count_premodels(2), 13);
  EXPECT_EQ(count_premodels(3), 68);
  for (int n = 0; n <= 6; ++n) {
    const auto l = make_chain(n);
    const auto ts = enumerate_transfer_systems(l);
    std::uint64_t pairs = 0;
    for (const auto& a : ts)
      for (const auto& b : ts) pairs += a.rel().subset_of(b.rel());
    EXPECT_EQ(count_premodels(n), pairs) << n;
    EXPECT_EQ(enumerate_premodels(n).size(), pairs);
  }
}

TEST(Counts, RatioDecreases) {
  EXPECT_EQ(q_over_p_ratio(0), 1);
  EXPECT_EQ(q_over_p_ratio(2), Rational(10, 13));
  EXPECT_EQ(q_over_p_ratio(3), Rational(35, 68));
  // Equal at n = 0 and n = 1 (1/1 and 3/3), strictly decreasing afterwards.
  EXPECT_EQ(q_over_p_ratio(1), q_over_p_ratio(0));
  for (int n = 2; n <= 12; ++n) EXPECT_LT(q_over_p_ratio(n), q_over_p_ratio(n - 1));
  for (int n = 6; n <= 20; ++n) EXPECT_LT(2 * boost::multiprecision::pow(BigInt(3), static_cast<unsigned>(n)), count_models(n));
  EXPECT_GE(2 * boost::multiprecision::pow(BigInt(3), 5u), count_models(5));
}

TEST(Counts, Saturated) {
  EXPECT_EQ(count_saturated_chain(0), 1);
  EXPECT_EQ(count_saturated_chain(3), 8);
  EXPECT_EQ(stirling2(3, 2), 3);
  EXPECT_EQ(stirling2(5, 3), 25);
  for (int n = 0; n <= 6; ++n) {
    std::uint64_t sat = 0;
    const auto l = make_chain(n);
    for (const auto& r : enumerate_transfer_systems(l)) sat += is_saturated(l, r);
    EXPECT_EQ(count_saturated_chain(n), sat);
    EXPECT_EQ(oracle_saturated(l).size(), sat);
  }
  for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 1}, {2, 2}}) {
    const auto l = make_grid(m, n);
    EXPECT_EQ(count_saturated_grid(m, n), oracle_saturated(l).size()) << m << "x" << n;
  }
  EXPECT_EQ(count_saturated_grid(1, 1), 7);
}

TEST(Counts, SaturatedScanAgreesWithFilteredEnumeration) {
  const auto l = make_grid(1, 2);
  std::set<ArrowSet> filtered;
  for (const auto& r : enumerate_transfer_systems(l))
    if (is_saturated(l, r)) filtered.insert(r.rel());
  auto scan = oracle_saturated(l);
  EXPECT_EQ(std::set<ArrowSet>(scan.begin(), scan.end()), filtered);
}

TEST(Enumerate, CountsAndOrder) {
  for (int n = 0; n <= 6; ++n) {
    auto ms = enumerate_models(n);
    EXPECT_EQ(ms.size(), count_models(n));
    std::set<ModelStructure> uniq(ms.begin(), ms.end());
    EXPECT_EQ(uniq.size(), ms.size());
  }
  auto first = enumerate_models(3).front();
  EXPECT_TRUE(first.is_contractible());
  EXPECT_EQ(interval_partition_of(enumerate_models(3).back()).cuts, (std::vector<int>{2}));
  EXPECT_EQ(enumerate_models(0).size(), 1u);
}

TEST(Enumerate, SurveyHistogram) {
  for (int n = 0; n <= 5; ++n) {
    auto s = survey_models(n, 1);
    EXPECT_EQ(s.count, golden::kTriangleTotals[static_cast<std::size_t>(n)]);
    EXPECT_EQ(s.verified, s.count);
    for (int k = 0; k <= n; ++k) EXPECT_EQ(s.histogram[static_cast<std::size_t>(k)], golden::kTriangle[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)]);
    auto p = survey_models(n, 3);
    EXPECT_EQ(p.histogram, s.histogram);
  }
}

TEST(Oracle, WfsScan) {
  const auto l2 = make_chain(2);
  auto ws = oracle_wfs(l2);
  ASSERT_EQ(ws.size(), 5u);
  std::set<ArrowSet> rights;
  for (const auto& w : ws) {
    rights.insert(w.right);
    EXPECT_EQ(w, fixtures::wfs2([&] {
      for (int k = 1; k <= 5; ++k)
        if (fixtures::system2(k) == w.right) return k;
      return 0;
    }()));
  }
  for (int n = 0; n <= 5; ++n) EXPECT_EQ(oracle_wfs(make_chain(n)).size(), catalan(n + 1));
  EXPECT_EQ(oracle_wfs(make_grid(1, 1)).size(), enumerate_transfer_systems(make_grid(1, 1)).size());
  EXPECT_THROW(oracle_wfs(make_chain(6), 20), CapExceeded);
}

TEST(Oracle, ModelScan) {
  for (int n = 0; n <= 3; ++n) {
    auto oracle = oracle_models(make_chain(n));
    auto ms = enumerate_models(n);
    std::sort(ms.begin(), ms.end());
    EXPECT_EQ(oracle, ms) << n;
  }
  EXPECT_EQ(oracle_models(make_chain(1)).size(), 3u);
  EXPECT_THROW(oracle_models(make_chain(4), 6), CapExceeded);
  auto grid = oracle_models(make_grid(1, 1));
  for (const auto& m : grid) EXPECT_TRUE(verify_model(m));
  EXPECT_GT(grid.size(), 0u);
}
