#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rankrobust/normalize.hpp"
#include "rankrobust/ranked_list.hpp"

namespace rankrobust::ingest {

/// One row of a weekly search log.
struct QueryRecord {
    std::string week;  // ISO date of the week start
    std::string locale;
    std::string query;
    ItemId item;
    double avg_position = 1.0;
    std::uint64_t frequency = 0;

    friend bool operator==(const QueryRecord&, const QueryRecord&) = default;
};

struct ParseResult {
    std::vector<QueryRecord> records;
    std::size_t malformed = 0;
    std::vector<std::size_t> malformed_lines;  // 1-based; first 20 only
};

/// Parses `week<TAB>locale<TAB>query<TAB>item_id<TAB>avg_position<TAB>frequency`
/// lines; '#' lines and blank lines are skipped. In strict mode the first
/// malformed line throws InvalidInput naming its line number.
[[nodiscard]] ParseResult parse_log(std::istream& in, bool strict = false);
[[nodiscard]] ParseResult parse_log(const std::filesystem::path& path, bool strict = false);

/// Parses one data line; returns false when it is malformed.
bool parse_record(std::string_view line, QueryRecord& out);

[[nodiscard]] bool is_iso_date(std::string_view text);

struct FilterParams {
    std::set<std::string> locale_allow = {"en-US"};
    double bottom_cut = 0.20;
    std::size_t min_len = 20;
    std::size_t top_k_queries_per_tps = 3;

    void validate() const;
};

struct FilterStats {
    std::size_t input_records = 0;
    std::size_t duplicate_records = 0;
    std::size_t after_locale = 0;
    std::size_t after_frequency_cut = 0;
    std::size_t queries_built = 0;
    std::size_t queries_after_length = 0;
    std::size_t queries_empty_key = 0;
    std::size_t queries_retained = 0;
};

/// Per-query ranked lists for one week.
struct WeeklyDataset {
    std::string week;
    std::map<std::string, RankedList> lists;
    std::map<std::string, std::uint64_t> frequency;
    FilterStats stats;

    [[nodiscard]] bool empty() const noexcept { return lists.empty(); }
    [[nodiscard]] const RankedList* find(const std::string& query) const;
};

/// Applies, in order: locale allow-list; drop the lowest-frequency
/// `bottom_cut` fraction of (query, item) records, keeping ties at the
/// cut; rank each query's items by average position (ties by item id),
/// dropping queries with fewer than `min_len` items and truncating the
/// rest; keep the `top_k_queries_per_tps` most searched queries per TPS key.
/// All records must share one week. Queries with an empty TPS key are dropped.
[[nodiscard]] WeeklyDataset apply_filters(std::vector<QueryRecord> records, const FilterParams& params,
                                          const normalize::NormalizationConfig& cfg);

/// Buckets records by week, preserving input order within each week.
[[nodiscard]] std::map<std::string, std::vector<QueryRecord>> split_by_week(std::vector<QueryRecord> records);

/// Datasets keyed by week.
using DatasetStore = std::map<std::string, WeeklyDataset>;

/// Writes `<week>.tsv` (query, item_id, rank, frequency) per week plus a
/// `manifest.json` with record counts and the filter parameters.
void save_dataset_dir(const std::filesystem::path& dir, const DatasetStore& store, const FilterParams& params);
[[nodiscard]] DatasetStore load_dataset_dir(const std::filesystem::path& dir);

}  // namespace rankrobust::ingest
