#include <gtest/gtest.h>

#include <map>
#include <numeric>
#include <sstream>

#include "rankrobust/ensemble.hpp"
#include "rankrobust/error.hpp"
#include "rankrobust/rng.hpp"
#include "support.hpp"

using namespace rankrobust;
using namespace rankrobust::ensemble;
using testing_support::L;

namespace {

RankedList ens(std::vector<RankedList> lists) { return ensemble_lists(lists); }

SnapshotSeries series(const std::string& q, std::vector<RankedList> lists) {
    SnapshotSeries s{q, {}};
    for (std::size_t i = 0; i < lists.size(); ++i) s.snapshots.push_back({"2023-0" + std::to_string(i + 1) + "-01", lists[i]});
    return s;
}

/// Mean rank over presence, ties by id, truncated to the most common length
/// (longest on a tie).
RankedList oracle(const std::vector<RankedList>& lists) {
    std::map<ItemId, std::pair<double, int>> acc;
    std::map<std::size_t, int> lengths;
    for (const auto& l : lists) {
        ++lengths[l.size()];
        for (std::size_t i = 0; i < l.size(); ++i) {
            acc[l.items()[i]].first += double(i + 1);
            acc[l.items()[i]].second += 1;
        }
    }
    std::size_t modal = 0;
    int best = 0;
    for (const auto& [len, c] : lengths) {
        if (c >= best) {
            best = c;
            modal = len;
        }
    }
    std::vector<std::pair<double, ItemId>> v;
    for (const auto& [id, a] : acc) v.emplace_back(a.first / a.second, id);
    std::sort(v.begin(), v.end());
    std::vector<ItemId> out;
    for (std::size_t i = 0; i < std::min(modal, v.size()); ++i) out.push_back(v[i].second);
    return RankedList(out);
}

}  // namespace

TEST(Ensemble, IdenticalSnapshots) { EXPECT_EQ(ens({L("a b c"), L("a b c"), L("a b c")}), L("a b c")); }

TEST(Ensemble, TiedMeansBreakById) { EXPECT_EQ(ens({L("A B C"), L("B A C")}), L("A B C")); }

TEST(Ensemble, PresenceOnlyMeans) {
    // Each singleton has mean 1 and outranks y, which sits at 2 in every snapshot.
    EXPECT_EQ(ens({L("x y z"), L("w y z"), L("v y z")}), L("v w x"));
    EXPECT_EQ(ens({L("x y"), L("y z"), L("y z")}), L("x y"));
}

TEST(Ensemble, SingleSnapshotIsIdentity) { EXPECT_EQ(ens({L("3 1 2")}), L("3 1 2")); }

TEST(Ensemble, TruncatesToModalLength) {
    EXPECT_EQ(ens({L("a b c"), L("b c d"), L("a b")}).size(), 3u);
    EXPECT_EQ(ens({L("a b c"), L("a b")}).size(), 3u);
}

TEST(Ensemble, MatchesOracleAndIgnoresSnapshotOrder) {
    Rng rng(17);
    std::vector<ItemId> pool;
    for (int i = 0; i < 12; ++i) pool.push_back("i" + std::to_string(i));
    for (int round = 0; round < 200; ++round) {
        std::vector<RankedList> lists;
        const auto k = 1 + rng.below(5);
        for (std::uint64_t s = 0; s < k; ++s) {
            rng.shuffle(pool);
            lists.emplace_back(std::vector<ItemId>(pool.begin(), pool.begin() + 3 + static_cast<long>(rng.below(5))));
        }
        const auto expected = oracle(lists);
        ASSERT_EQ(ens(lists), expected);
        rng.shuffle(lists);
        ASSERT_EQ(ens(lists), expected);
    }
}

TEST(Ensemble, EmptyInputRejected) {
    EXPECT_THROW((void)ens({}), InvalidInput);
    EXPECT_THROW((void)ensemble_list(SnapshotSeries{"q", {}}), InvalidInput);
}

TEST(Series, WeeksMustIncrease) {
    SnapshotSeries s{"q", {{"2023-02-01", L("a")}, {"2023-01-01", L("a")}}};
    EXPECT_THROW(s.validate(), InvalidInput);
    EXPECT_THROW((void)ensemble_list(s), InvalidInput);
}

TEST(Series, BuiltFromStore) {
    ingest::DatasetStore store;
    for (const char* week : {"2023-04-22", "2023-04-15"}) {
        ingest::WeeklyDataset ds;
        ds.week = week;
        ds.lists.emplace("q", L(std::string(week) == "2023-04-15" ? "a b" : "b a"));
        store.emplace(week, ds);
    }
    const auto s = build_series(store);
    ASSERT_EQ(s.at("q").snapshots.size(), 2u);
    EXPECT_EQ(s.at("q").snapshots[0].week, "2023-04-15");
    EXPECT_EQ(*s.at("q").at_week("2023-04-22"), L("b a"));
    EXPECT_EQ(s.at("q").at_week("2023-05-01"), nullptr);
}

namespace {

pairs::QueryPair pair_of(const std::string& a, const std::string& b, const std::string& week = "2023-01-01") {
    return pairs::QueryPair::make(a, b, pairs::Source::Tps, std::nullopt, week);
}

}  // namespace

TEST(Comparison, IdenticalSnapshotsGiveEqualRows) {
    SeriesByQuery by;
    by["a"] = series("a", {L("1 2 3"), L("1 2 3")});
    by["b"] = series("b", {L("1 3 2"), L("1 3 2")});
    by["c"] = series("c", {L("7 8 9"), L("7 8 9")});
    std::vector<pairs::QueryPair> ps = {pair_of("a", "b"), pair_of("a", "c"), pair_of("b", "c")};
    const auto c = smoothed_vs_single(ps, by, "2023-01-01");
    EXPECT_EQ(c.evaluated, 3u);
    ASSERT_EQ(c.no_ensemble.bins.size(), 5u);
    for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(c.no_ensemble.bins[i].rate, c.ensemble.bins[i].rate);
}

TEST(Comparison, LayoutAndCoverage) {
    SeriesByQuery by;
    by["a"] = series("a", {L("1 2 3"), L("2 1 3")});
    by["b"] = series("b", {L("2 1 3"), L("1 2 3")});
    by["late"] = SnapshotSeries{"late", {{"2023-02-01", L("1 2 3")}}};
    std::vector<pairs::QueryPair> ps = {pair_of("a", "b"), pair_of("a", "late"), pair_of("a", "nobody"),
                                        pair_of("a", "b", "2023-02-01")};
    const auto c = smoothed_vs_single(ps, by, "2023-01-01");
    EXPECT_EQ(c.evaluated, 1u);
    EXPECT_EQ(c.skipped, 2u);
    double single = 0, smoothed = 0;
    for (const auto& b : c.no_ensemble.bins) single += b.rate;
    for (const auto& b : c.ensemble.bins) smoothed += b.rate;
    EXPECT_NEAR(single, 1.0, 1e-12);
    EXPECT_NEAR(smoothed, 1.0, 1e-12);
    EXPECT_EQ(c.ensemble.bins[0].count, 1u);  // both ensembles are <1,2,3>

    std::ostringstream csv;
    write_csv(csv, c);
    const auto text = csv.str();
    EXPECT_EQ(text.substr(0, text.find('\n')), "variant,bin_lo,bin_hi,rate");
    EXPECT_NE(text.find("\nno_ensemble,0,0.2,"), std::string::npos);
    EXPECT_NE(text.find("\nensemble,0.8,1,"), std::string::npos);
    EXPECT_EQ(to_json(c)["schema_version"], 1);
}
