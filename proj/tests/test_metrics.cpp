#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "rankrobust/error.hpp"
#include "rankrobust/metrics.hpp"
#include "support.hpp"

using namespace rankrobust;
using namespace rankrobust::metrics;
using testing_support::L;

namespace {
constexpr double kTol = 1e-9;
}

// Values below were evaluated independently with a short Python script
// (math.log2) and scipy.stats.pearsonr.

TEST(Rds, GoldenValues) {
    EXPECT_DOUBLE_EQ(rds_raw(L("1 2 3 4"), L("1 2 3 4")), 0.0);
    EXPECT_NEAR(rds_raw(L("1 2 3 4"), L("1 2 4 3")), 0.1386468838532139, kTol);
    EXPECT_NEAR(rds_raw(L("1 2 3 4"), L("1 2 5 6")), 4.138646883853214, kTol);
    EXPECT_NEAR(rds_raw(L("1 2 3 4"), L("2 1 3 4")), 0.7381404928570849, kTol);
}

TEST(Rds, MaxGoldenValues) {
    EXPECT_NEAR(rds_max(1, 1), 2.0, kTol);
    EXPECT_NEAR(rds_max(4, 4), 9.677800158702556, kTol);
    EXPECT_NEAR(rds_max(20, 20), 44.97372681596891, kTol);
    EXPECT_NEAR(rds_max(3, 5), 9.645124836278143, kTol);
    EXPECT_THROW((void)rds_max(0, 3), InvalidInput);
}

TEST(Rds, NormalizedAndSimilarity) {
    const auto same = rds(L("1 2 3 4"), L("1 2 3 4"));
    EXPECT_EQ(same.similarity, 1.0);
    EXPECT_EQ(same.normalized, 0.0);

    const auto swap = rds(L("1 2 3 4"), L("1 2 4 3"));
    const auto tail = rds(L("1 2 3 4"), L("1 2 5 6"));
    EXPECT_NEAR(tail.normalized, 0.4276433503466822, kTol);
    EXPECT_NEAR(swap.normalized, 0.01432628092950841, kTol);
    EXPECT_GT(swap.similarity, tail.similarity);
    EXPECT_EQ(tail.similarity + tail.normalized, 1.0);
    EXPECT_NEAR(tail.max_possible, 9.677800158702556, kTol);
}

TEST(Rds, FullyDisjointIsWorstCase) {
    std::vector<ItemId> a, b;
    for (int i = 0; i < 20; ++i) {
        a.push_back("a" + std::to_string(i));
        b.push_back("b" + std::to_string(i));
    }
    const auto r = rds(RankedList(a), RankedList(b));
    EXPECT_NEAR(r.normalized, 1.0, kTol);
    EXPECT_NEAR(r.similarity, 0.0, kTol);
}

TEST(Rds, PositionWeight) {
    EXPECT_DOUBLE_EQ(position_weight(1), 1.0);
    EXPECT_NEAR(position_weight(3), 0.5, kTol);
}

TEST(Rds, PositionDecayForAdjacentSwaps) {
    for (std::size_t n = 3; n <= 8; ++n) {
        std::vector<ItemId> base(n);
        for (std::size_t i = 0; i < n; ++i) base[i] = std::to_string(i + 1);
        auto swapped_at = [&](std::size_t j) {
            auto v = base;
            std::swap(v[j - 1], v[j]);
            return rds_raw(RankedList(base), RankedList(v));
        };
        for (std::size_t j = 2; j + 1 <= n; ++j) {
            EXPECT_LT(swapped_at(j), swapped_at(j - 1)) << "n=" << n << " j=" << j;
        }
    }
}

TEST(Rds, MissingItemsWeighMoreThanSwaps) {
    const auto a = L("1 2 3 4");
    const auto swap = L("1 2 4 3");
    const auto tail = L("1 2 5 6");
    EXPECT_GT(rds_raw(a, tail), rds_raw(a, swap));
    EXPECT_GE(*kendall_tau(a, tail).value, *kendall_tau(a, swap).value);
    EXPECT_GE(*tau_ap(a, tail).value, *tau_ap(a, swap).value);
}

TEST(Kendall, GoldenValues) {
    EXPECT_NEAR(*kendall_tau(L("1 2 3 4"), L("1 2 4 3")).value, 2.0 / 3.0, kTol);
    EXPECT_NEAR(*kendall_tau(L("1 2 3 4"), L("2 1 3 4")).value, 2.0 / 3.0, kTol);
    EXPECT_NEAR(*kendall_tau(L("1 2 3"), L("3 2 1")).value, -1.0, kTol);
    EXPECT_NEAR(*kendall_tau(L("1 2 3 4"), L("1 2 5 6")).value, 1.0, kTol);
    EXPECT_EQ(kendall_tau(L("1 2 3 4"), L("1 2 5 6")).support, 2u);
}

TEST(Kendall, PositionBlindWhileRdsIsNot) {
    const auto a = L("1 2 3 4");
    EXPECT_EQ(*kendall_tau(a, L("1 2 4 3")).value, *kendall_tau(a, L("2 1 3 4")).value);
    EXPECT_NE(rds_raw(a, L("1 2 4 3")), rds_raw(a, L("2 1 3 4")));
}

TEST(Kendall, UndefinedBelowTwoCommonItems) {
    const auto r = kendall_tau(L("1 2"), L("1 3"));
    EXPECT_FALSE(r.defined());
    EXPECT_EQ(r.support, 1u);
    EXPECT_FALSE(kendall_tau(L("1"), L("2")).defined());
}

TEST(TauAp, GoldenValues) {
    EXPECT_NEAR(*tau_ap(L("1 2 3 4"), L("1 2 3 4")).value, 1.0, kTol);
    EXPECT_NEAR(*tau_ap(L("1 2 3 4"), L("1 2 5 6")).value, 1.0, kTol);
    EXPECT_NEAR(*tau_ap(L("1 2 3"), L("3 2 1")).value, -1.0, kTol);
    // Standard AP correlation; see the README note on the quoted 0.33.
    EXPECT_NEAR(*tau_ap(L("1 2 3 4"), L("1 2 4 3")).value, 7.0 / 9.0, kTol);
}

TEST(TauAp, AppendingStrategy) {
    const auto [a, b] = with_appended_missing(L("1 2 3 4"), L("1 2 5 6"));
    EXPECT_NEAR(*tau_ap(a, b).value, 0.64, kTol);
}

TEST(TauAp, AsymmetricAndSymmetricMean) {
    const auto a = L("1 2 3 4 5");
    const auto b = L("2 3 1 5 4");
    const double ab = *tau_ap(a, b).value;
    const double ba = *tau_ap(b, a).value;
    EXPECT_NE(ab, ba);
    EXPECT_NEAR(*tau_ap_symmetric(a, b).value, (ab + ba) / 2.0, kTol);
}

TEST(Spearman, GoldenValues) {
    EXPECT_NEAR(*spearman_rho(L("1 2 3 4"), L("1 2 3 4")).value, 1.0, kTol);
    EXPECT_NEAR(*spearman_rho(L("1 2 3 4"), L("4 3 2 1")).value, -1.0, kTol);
    EXPECT_NEAR(*spearman_rho(L("1 2 3 4"), L("1 2 4 3")).value, 0.8, kTol);
    EXPECT_FALSE(spearman_rho(L("1"), L("1")).defined());
}

TEST(Appending, Examples) {
    auto [a, b] = with_appended_missing(L("1 2 3 4"), L("1 2 5 6"));
    EXPECT_EQ(a, L("1 2 3 4 5 6"));
    EXPECT_EQ(b, L("1 2 5 6 3 4"));

    std::tie(a, b) = with_appended_missing(L("1 2"), L("3 4"));
    EXPECT_EQ(a, L("1 2 3 4"));
    EXPECT_EQ(b, L("3 4 1 2"));

    std::tie(a, b) = with_appended_missing(L("7 8 9"), L("7 8 9"));
    EXPECT_EQ(a, L("7 8 9"));
    EXPECT_EQ(b, L("7 8 9"));
}

TEST(Pearson, GoldenValues) {
    const std::vector<double> x{1, 2, 3, 4, 5}, y{2, 1, 4, 3, 6};
    const auto r = pearson(x, y);
    EXPECT_NEAR(r.coefficient, 0.8219949365267865, kTol);
    EXPECT_NEAR(r.p_value, 0.08770664700806553, 1e-9);
    EXPECT_NEAR(r.coefficient, testing_support::oracle_pearson(x, y), kTol);

    const std::vector<double> x7{1, 2, 3, 4, 5, 6, 7}, y7{2, 1, 4, 3, 6, 9, 2};
    const auto r7 = pearson(x7, y7);
    EXPECT_NEAR(r7.coefficient, 0.49694186733680934, kTol);
    EXPECT_NEAR(r7.p_value, 0.25655236710412366, 1e-9);
}

TEST(Pearson, PerfectAndAffine) {
    const std::vector<double> x{0.1, 0.5, 0.2, 0.9, 0.4};
    std::vector<double> neg(x.size()), affine(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        neg[i] = -x[i];
        affine[i] = 3.0 * x[i] + 7.0;
    }
    EXPECT_NEAR(pearson(x, x).coefficient, 1.0, kTol);
    EXPECT_NEAR(pearson(x, neg).coefficient, -1.0, kTol);
    const std::vector<double> y{2, 1, 4, 3, 6};
    EXPECT_NEAR(pearson(affine, y).coefficient, pearson(x, y).coefficient, kTol);
}

TEST(Pearson, RejectsDegenerateInput) {
    const std::vector<double> x{1, 2, 3}, c{5, 5, 5}, shorter{1, 2};
    EXPECT_THROW((void)pearson(x, c), InvalidInput);
    EXPECT_THROW((void)pearson(x, shorter), InvalidInput);
    EXPECT_THROW((void)pearson(shorter, shorter), InvalidInput);
}

// Exhaustive: every pair of partial permutations of <= 4 items over a
// 6-item universe.
class ExhaustiveMetrics : public ::testing::Test {
protected:
    static void SetUpTestSuite() { lists_ = testing_support::all_partial_permutations(6, 4); }
    static inline std::vector<RankedList> lists_;
};

TEST_F(ExhaustiveMetrics, DomainSize) { EXPECT_EQ(lists_.size(), 6u + 30u + 120u + 360u); }

TEST_F(ExhaustiveMetrics, RdsProperties) {
    std::size_t failures = 0;
    for (const auto& a : lists_) {
        for (const auto& b : lists_) {
            const auto r = rds(a, b);
            const double back = rds_raw(b, a);
            const bool identical = a == b;
            bool ok = r.raw == back && (r.raw == 0.0) == identical && r.normalized >= 0.0 && r.normalized <= 1.0 &&
                      (r.normalized == 0.0) == identical && rds_max(a.size(), b.size()) >= r.raw &&
                      std::fabs(r.raw - testing_support::oracle_rds_raw(a, b)) < kTol;
            if (!ok && ++failures < 5) ADD_FAILURE() << "rds property broken";
        }
    }
    EXPECT_EQ(failures, 0u);
}

TEST_F(ExhaustiveMetrics, BaselinesMatchBruteForce) {
    std::size_t failures = 0;
    auto same = [](const MetricOutcome& m, double oracle) {
        return std::isnan(oracle) ? !m.defined() : m.defined() && std::fabs(*m.value - oracle) < kTol;
    };
    for (const auto& a : lists_) {
        for (const auto& b : lists_) {
            const bool ok = same(kendall_tau(a, b), testing_support::oracle_kendall(a, b)) &&
                            same(tau_ap(a, b), testing_support::oracle_tau_ap(a, b)) &&
                            same(spearman_rho(a, b), testing_support::oracle_spearman(a, b));
            if (!ok && ++failures < 5) ADD_FAILURE() << "baseline mismatch";
        }
    }
    EXPECT_EQ(failures, 0u);
}

TEST(RdsMax, MatchesDisjointOracle) {
    for (std::size_t n = 1; n <= 25; ++n) {
        for (std::size_t m = 1; m <= 25; m += 3) {
            EXPECT_NEAR(rds_max(n, m), testing_support::oracle_rds_max(n, m), 1e-9);
        }
    }
}

TEST(Baselines, FullPermutationsOfFive) {
    // Brute-force equivalence on all permutation pairs of 5 items.
    std::vector<std::string> base{"1", "2", "3", "4", "5"};
    std::vector<RankedList> perms;
    do {
        perms.emplace_back(base);
    } while (std::next_permutation(base.begin(), base.end()));
    for (const auto& a : perms) {
        for (const auto& b : perms) {
            ASSERT_NEAR(*kendall_tau(a, b).value, testing_support::oracle_kendall(a, b), kTol);
            ASSERT_NEAR(*tau_ap(a, b).value, testing_support::oracle_tau_ap(a, b), kTol);
        }
    }
}
