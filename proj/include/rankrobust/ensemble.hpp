#pragma once

#include <cstddef>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "rankrobust/ingest.hpp"
#include "rankrobust/pairs.hpp"
#include "rankrobust/ranked_list.hpp"
#include "rankrobust/report.hpp"

namespace rankrobust::ensemble {

struct Snapshot {
    std::string week;
    RankedList list;
};

/// The ranked lists one query received over several weeks.
struct SnapshotSeries {
    std::string query;
    std::vector<Snapshot> snapshots;  // weeks strictly increasing

    void validate() const;
    [[nodiscard]] const RankedList* at_week(const std::string& week) const;
};

/// Position averaging: each item's mean rank over the lists it appears in,
/// ascending (ties by item id), cut to the most common list length (the
/// longest such length on a tie). Independent of the order of `lists`.
/// Throws InvalidInput when `lists` is empty.
[[nodiscard]] RankedList ensemble_lists(std::span<const RankedList> lists);

[[nodiscard]] RankedList ensemble_list(const SnapshotSeries& series);

using SeriesByQuery = std::map<std::string, SnapshotSeries>;

/// Series for every query found in any week of `store`.
[[nodiscard]] SeriesByQuery build_series(const ingest::DatasetStore& store);

inline constexpr double kComparisonBinWidth = 0.2;

struct EnsembleComparison {
    report::HistogramReport no_ensemble;  // single week
    report::HistogramReport ensemble;     // position-averaged over all weeks
    std::size_t evaluated = 0;
    std::size_t skipped = 0;              // a side lacks a series or the single week
};

/// RDS histograms, five 0.2-wide bins, of every pair scored on the
/// single-week lists and on the ensembled lists.
[[nodiscard]] EnsembleComparison smoothed_vs_single(std::span<const pairs::QueryPair> pairs,
                                                    const SeriesByQuery& series, const std::string& single_week,
                                                    std::size_t jobs = 1);

/// `variant,bin_lo,bin_hi,rate` with variants `no_ensemble` and `ensemble`.
void write_csv(std::ostream& out, const EnsembleComparison& c);
[[nodiscard]] nlohmann::ordered_json to_json(const EnsembleComparison& c);

}  // namespace rankrobust::ensemble
