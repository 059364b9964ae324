#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rankrobust/ingest.hpp"
#include "rankrobust/metrics.hpp"
#include "rankrobust/normalize.hpp"

namespace rankrobust::pairs {

enum class Source { Tps, Sim };

[[nodiscard]] std::string_view to_string(Source s);
[[nodiscard]] std::optional<Source> parse_source(std::string_view text);

/// Two queries asserted to mean the same thing. `q1 < q2` always holds.
struct QueryPair {
    std::string q1;
    std::string q2;
    Source source = Source::Tps;
    std::optional<double> sim_score;  // present iff source == Sim
    std::string week;                 // may be empty for SIM pairs without a week

    /// Orders the two queries and validates the pair invariants.
    static QueryPair make(std::string a, std::string b, Source source, std::optional<double> score,
                          std::string week);

    friend auto operator<=>(const QueryPair&, const QueryPair&) = default;
};

struct SimRecord {
    std::string query_a;
    std::string query_b;
    double score = 0.0;
};

/// Externally supplied query-to-query similarity scores.
struct SimScoreTable {
    std::vector<SimRecord> records;

    /// Validates and appends. Throws InvalidInput on a self pair or a score outside [0, 1].
    void add(std::string a, std::string b, double score);

    /// TSV `query_a<TAB>query_b<TAB>score`; '#' lines skipped.
    static SimScoreTable parse(std::istream& in);
    static SimScoreTable load(const std::filesystem::path& path);
};

/// Every unordered pair of distinct queries sharing a TPS key, sorted.
[[nodiscard]] std::vector<QueryPair> tps_pairs(const ingest::WeeklyDataset& ds,
                                               const normalize::NormalizationConfig& cfg);

/// For each query_a, its `k` best partners with score >= min_score (score
/// descending, then partner ascending). Reciprocal rows collapse to one
/// canonical pair carrying the higher score. Output sorted.
[[nodiscard]] std::vector<QueryPair> topk_pairs(const SimScoreTable& table, std::size_t k, double min_score,
                                                const std::string& week = {});

struct PairEvaluation {
    QueryPair pair;
    metrics::RdsResult rds;
};

struct EvaluationBatch {
    std::vector<PairEvaluation> results;
    std::size_t skipped = 0;  // pairs with a query missing from the dataset
};

/// RDS for every pair whose queries both have lists in `ds`, in canonical
/// pair order. `jobs` worker threads; the result does not depend on it.
[[nodiscard]] EvaluationBatch evaluate_pairs(std::span<const QueryPair> pairs, const ingest::WeeklyDataset& ds,
                                             std::size_t jobs = 1);

/// TSV pair file: `q1<TAB>q2<TAB>source<TAB>score<TAB>week`, score and
/// week written as "NA" when absent.
void write_pair(std::ostream& out, const QueryPair& pair);
[[nodiscard]] std::optional<QueryPair> parse_pair(std::string_view line);
[[nodiscard]] std::vector<QueryPair> read_pairs(std::istream& in);

/// Pair columns followed by `raw<TAB>normalized<TAB>similarity`.
void write_evaluation(std::ostream& out, const PairEvaluation& eval);

struct ScoredRow {
    QueryPair pair;
    metrics::RdsResult rds;
};
[[nodiscard]] std::optional<ScoredRow> parse_evaluation(std::string_view line);

/// Splits `n` indices into contiguous chunks and runs `fn(begin, end)` on
/// up to `jobs` threads.
void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace rankrobust::pairs
