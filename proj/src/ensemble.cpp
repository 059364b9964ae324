#include "rankrobust/ensemble.hpp"

#include <algorithm>
#include <optional>
#include <unordered_map>

#include <fmt/format.h>

#include "rankrobust/error.hpp"
#include "rankrobust/metrics.hpp"
#include "rankrobust/tsv.hpp"

namespace rankrobust::ensemble {

void SnapshotSeries::validate() const {
    if (snapshots.empty()) throw InvalidInput(fmt::format("series for '{}' has no snapshots", query));
    for (std::size_t i = 1; i < snapshots.size(); ++i) {
        if (!(snapshots[i - 1].week < snapshots[i].week)) {
            throw InvalidInput(fmt::format("series for '{}': weeks not strictly increasing", query));
        }
    }
}

const RankedList* SnapshotSeries::at_week(const std::string& week) const {
    for (const auto& s : snapshots) {
        if (s.week == week) return &s.list;
    }
    return nullptr;
}

RankedList ensemble_lists(std::span<const RankedList> lists) {
    if (lists.empty()) throw InvalidInput("ensemble needs at least one ranked list");

    struct Acc {
        std::uint64_t rank_sum = 0;
        std::uint64_t seen = 0;
    };
    std::unordered_map<ItemId, Acc> acc;
    std::map<std::size_t, std::size_t> length_freq;
    for (const auto& list : lists) {
        ++length_freq[list.size()];
        for (std::size_t i = 0; i < list.size(); ++i) {
            auto& a = acc[list.items()[i]];
            a.rank_sum += i + 1;
            ++a.seen;
        }
    }

    std::size_t modal_len = 0;
    std::size_t modal_count = 0;
    for (const auto& [len, count] : length_freq) {
        if (count >= modal_count) {
            modal_len = len;
            modal_count = count;
        }
    }

    struct Ranked {
        const ItemId* item;
        Acc acc;
    };
    std::vector<Ranked> ranked;
    ranked.reserve(acc.size());
    for (const auto& [item, a] : acc) ranked.push_back({&item, a});
    // Compare means as exact fractions: sum_a / seen_a < sum_b / seen_b.
    std::sort(ranked.begin(), ranked.end(), [](const Ranked& x, const Ranked& y) {
        const auto lhs = x.acc.rank_sum * y.acc.seen;
        const auto rhs = y.acc.rank_sum * x.acc.seen;
        return lhs != rhs ? lhs < rhs : *x.item < *y.item;
    });

    std::vector<ItemId> items;
    const std::size_t n = std::min(modal_len, ranked.size());
    items.reserve(n);
    for (std::size_t i = 0; i < n; ++i) items.push_back(*ranked[i].item);
    return RankedList(std::move(items));
}

RankedList ensemble_list(const SnapshotSeries& series) {
    series.validate();
    std::vector<RankedList> lists;
    lists.reserve(series.snapshots.size());
    for (const auto& s : series.snapshots) lists.push_back(s.list);
    return ensemble_lists(lists);
}

SeriesByQuery build_series(const ingest::DatasetStore& store) {
    SeriesByQuery out;
    // DatasetStore iterates weeks in ascending order.
    for (const auto& [week, ds] : store) {
        for (const auto& [query, list] : ds.lists) {
            auto& series = out[query];
            series.query = query;
            series.snapshots.push_back({week, list});
        }
    }
    return out;
}

EnsembleComparison smoothed_vs_single(std::span<const pairs::QueryPair> pairs, const SeriesByQuery& series,
                                      const std::string& single_week, std::size_t jobs) {
    struct Outcome {
        double single;
        double smoothed;
    };
    // A pair listed for several weeks is compared once.
    std::vector<std::pair<std::string, std::string>> unique;
    unique.reserve(pairs.size());
    for (const auto& p : pairs) unique.emplace_back(p.q1, p.q2);
    std::sort(unique.begin(), unique.end());
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
    std::vector<std::optional<Outcome>> outcomes(unique.size());

    pairs::parallel_for(unique.size(), jobs, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const auto s1 = series.find(unique[i].first);
            const auto s2 = series.find(unique[i].second);
            if (s1 == series.end() || s2 == series.end()) continue;
            const auto* w1 = s1->second.at_week(single_week);
            const auto* w2 = s2->second.at_week(single_week);
            if (!w1 || !w2) continue;
            const double single = metrics::rds(*w1, *w2).normalized;
            const double smoothed =
                metrics::rds(ensemble_list(s1->second), ensemble_list(s2->second)).normalized;
            outcomes[i] = Outcome{single, smoothed};
        }
    });

    report::HistogramBuilder single(kComparisonBinWidth);
    report::HistogramBuilder smoothed(kComparisonBinWidth);
    EnsembleComparison c;
    for (const auto& o : outcomes) {
        if (!o) {
            ++c.skipped;
            continue;
        }
        single.add(o->single);
        smoothed.add(o->smoothed);
        ++c.evaluated;
    }
    c.no_ensemble = single.finish();
    c.ensemble = smoothed.finish();
    c.no_ensemble.week = single_week;
    return c;
}

void write_csv(std::ostream& out, const EnsembleComparison& c) {
    out << "variant,bin_lo,bin_hi,rate\n";
    auto rows = [&](std::string_view variant, const report::HistogramReport& h) {
        for (const auto& b : h.bins) {
            out << variant << ',' << tsv::format_double(b.lo) << ',' << tsv::format_double(b.hi) << ','
                << tsv::format_double(b.rate) << '\n';
        }
    };
    rows("no_ensemble", c.no_ensemble);
    rows("ensemble", c.ensemble);
}

nlohmann::ordered_json to_json(const EnsembleComparison& c) {
    nlohmann::ordered_json j;
    j["schema_version"] = report::kSchemaVersion;
    j["kind"] = "ensemble_comparison";
    j["evaluated"] = c.evaluated;
    j["skipped"] = c.skipped;
    j["no_ensemble"] = report::to_json(c.no_ensemble);
    j["ensemble"] = report::to_json(c.ensemble);
    return j;
}

}  // namespace rankrobust::ensemble
