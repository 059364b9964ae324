#include "rankrobust/pairs.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <thread>

#include <fmt/format.h>

#include "rankrobust/error.hpp"
#include "rankrobust/tsv.hpp"

namespace rankrobust::pairs {

namespace {

constexpr std::string_view kNa = "NA";

}  // namespace

std::string_view to_string(Source s) { return s == Source::Tps ? "TPS" : "SIM"; }

std::optional<Source> parse_source(std::string_view text) {
    if (text == "TPS") return Source::Tps;
    if (text == "SIM") return Source::Sim;
    return std::nullopt;
}

QueryPair QueryPair::make(std::string a, std::string b, Source source, std::optional<double> score,
                          std::string week) {
    if (a == b) throw InvalidInput(fmt::format("query pair has identical sides '{}'", a));
    if ((source == Source::Sim) != score.has_value()) {
        throw InvalidInput("a similarity score is required for SIM pairs and forbidden for TPS pairs");
    }
    if (score && !(*score >= 0.0 && *score <= 1.0)) {
        throw InvalidInput(fmt::format("similarity score {} outside [0, 1]", *score));
    }
    if (b < a) std::swap(a, b);
    return QueryPair{std::move(a), std::move(b), source, score, std::move(week)};
}

void SimScoreTable::add(std::string a, std::string b, double score) {
    if (a == b) throw InvalidInput(fmt::format("self pair '{}' in similarity table", a));
    if (!(score >= 0.0 && score <= 1.0)) {
        throw InvalidInput(fmt::format("similarity score {} outside [0, 1]", score));
    }
    records.push_back({std::move(a), std::move(b), score});
}

SimScoreTable SimScoreTable::parse(std::istream& in) {
    SimScoreTable table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto body = tsv::chomp(line);
        if (body.empty() || body.front() == '#') continue;
        const auto f = tsv::split(body);
        if (table.records.empty() && f.size() == 3 && f[2] == "score") continue;  // header row
        const auto score = f.size() == 3 ? tsv::parse_double(f[2]) : std::nullopt;
        if (!score || f[0].empty() || f[1].empty()) {
            throw InvalidInput(fmt::format("similarity table line {} is malformed", line_no));
        }
        table.add(std::string(f[0]), std::string(f[1]), *score);
    }
    return table;
}

SimScoreTable SimScoreTable::load(const std::filesystem::path& path) {
    auto in = tsv::open_input(path);
    return parse(in);
}

std::vector<QueryPair> tps_pairs(const ingest::WeeklyDataset& ds, const normalize::NormalizationConfig& cfg) {
    std::map<std::string, std::vector<std::string>> groups;
    for (const auto& [query, list] : ds.lists) {
        auto key = normalize::normalize_query(query, cfg);
        if (!key.empty()) groups[key.key].push_back(query);
    }
    std::set<QueryPair> out;
    for (const auto& [key, queries] : groups) {
        for (std::size_t i = 0; i < queries.size(); ++i) {
            for (std::size_t j = i + 1; j < queries.size(); ++j) {
                out.insert(QueryPair::make(queries[i], queries[j], Source::Tps, std::nullopt, ds.week));
            }
        }
    }
    return {out.begin(), out.end()};
}

std::vector<QueryPair> topk_pairs(const SimScoreTable& table, std::size_t k, double min_score,
                                  const std::string& week) {
    if (k < 1) throw InvalidInput("topk_pairs: k must be at least 1");

    // Best score per directed (query_a, query_b).
    std::map<std::string, std::map<std::string, double>> partners;
    for (const auto& r : table.records) {
        auto& best = partners[r.query_a].try_emplace(r.query_b, r.score).first->second;
        best = std::max(best, r.score);
    }

    std::map<std::pair<std::string, std::string>, double> chosen;
    for (const auto& [query, candidates] : partners) {
        std::vector<std::pair<double, std::string>> ranked;
        for (const auto& [partner, score] : candidates) {
            if (score >= min_score) ranked.emplace_back(score, partner);
        }
        std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
            return a.first != b.first ? a.first > b.first : a.second < b.second;
        });
        ranked.resize(std::min(ranked.size(), k));
        for (const auto& [score, partner] : ranked) {
            auto canon = query < partner ? std::pair(query, partner) : std::pair(partner, query);
            auto& best = chosen.try_emplace(std::move(canon), score).first->second;
            best = std::max(best, score);
        }
    }

    std::vector<QueryPair> out;
    out.reserve(chosen.size());
    for (const auto& [qs, score] : chosen) {
        out.push_back(QueryPair::make(qs.first, qs.second, Source::Sim, score, week));
    }
    return out;
}

void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t, std::size_t)>& fn) {
    jobs = std::max<std::size_t>(1, std::min(jobs, n));
    if (jobs <= 1) {
        if (n > 0) fn(0, n);
        return;
    }
    std::vector<std::jthread> workers;
    workers.reserve(jobs);
    const std::size_t chunk = (n + jobs - 1) / jobs;
    for (std::size_t begin = 0; begin < n; begin += chunk) {
        workers.emplace_back([&fn, begin, end = std::min(n, begin + chunk)] { fn(begin, end); });
    }
}

EvaluationBatch evaluate_pairs(std::span<const QueryPair> pairs, const ingest::WeeklyDataset& ds, std::size_t jobs) {
    std::vector<QueryPair> ordered(pairs.begin(), pairs.end());
    std::sort(ordered.begin(), ordered.end());

    std::vector<std::optional<metrics::RdsResult>> slots(ordered.size());
    parallel_for(ordered.size(), jobs, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const auto* a = ds.find(ordered[i].q1);
            const auto* b = ds.find(ordered[i].q2);
            if (a && b) slots[i] = metrics::rds(*a, *b);
        }
    });

    EvaluationBatch batch;
    for (std::size_t i = 0; i < ordered.size(); ++i) {
        if (slots[i]) {
            batch.results.push_back({std::move(ordered[i]), *slots[i]});
        } else {
            ++batch.skipped;
        }
    }
    return batch;
}

void write_pair(std::ostream& out, const QueryPair& pair) {
    out << pair.q1 << '\t' << pair.q2 << '\t' << to_string(pair.source) << '\t'
        << (pair.sim_score ? tsv::format_double(*pair.sim_score) : std::string(kNa)) << '\t'
        << (pair.week.empty() ? std::string(kNa) : pair.week);
}

namespace {

std::optional<QueryPair> pair_from_fields(std::span<const std::string_view> f) {
    if (f.size() < 5 || f[0].empty() || f[1].empty() || f[0] == f[1]) return std::nullopt;
    const auto source = parse_source(f[2]);
    if (!source) return std::nullopt;
    std::optional<double> score;
    if (f[3] != kNa) {
        score = tsv::parse_double(f[3]);
        if (!score) return std::nullopt;
    }
    if ((*source == Source::Sim) != score.has_value()) return std::nullopt;
    if (score && !(*score >= 0.0 && *score <= 1.0)) return std::nullopt;
    std::string week = f[4] == kNa ? std::string() : std::string(f[4]);
    return QueryPair::make(std::string(f[0]), std::string(f[1]), *source, score, std::move(week));
}

}  // namespace

std::optional<QueryPair> parse_pair(std::string_view line) {
    const auto f = tsv::split(line);
    if (f.size() != 5) return std::nullopt;
    return pair_from_fields(f);
}

std::vector<QueryPair> read_pairs(std::istream& in) {
    std::vector<QueryPair> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto body = tsv::chomp(line);
        if (body.empty() || body.front() == '#') continue;
        auto pair = parse_pair(body);
        if (!pair) throw InvalidInput(fmt::format("pair file line {} is malformed", line_no));
        out.push_back(std::move(*pair));
    }
    return out;
}

void write_evaluation(std::ostream& out, const PairEvaluation& eval) {
    write_pair(out, eval.pair);
    out << '\t' << tsv::format_double(eval.rds.raw) << '\t' << tsv::format_double(eval.rds.normalized) << '\t'
        << tsv::format_double(eval.rds.similarity);
}

std::optional<ScoredRow> parse_evaluation(std::string_view line) {
    const auto f = tsv::split(line);
    if (f.size() != 8) return std::nullopt;
    auto pair = pair_from_fields(std::span(f).first(5));
    const auto raw = tsv::parse_double(f[5]);
    const auto norm = tsv::parse_double(f[6]);
    const auto sim = tsv::parse_double(f[7]);
    if (!pair || !raw || !norm || !sim || *norm < 0.0 || *norm > 1.0) return std::nullopt;
    metrics::RdsResult rds{.raw = *raw, .max_possible = 0.0, .normalized = *norm, .similarity = *sim};
    return ScoredRow{std::move(*pair), rds};
}

}  // namespace rankrobust::pairs
