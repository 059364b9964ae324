#include "rankrobust/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "rankrobust/ensemble.hpp"
#include "rankrobust/error.hpp"
#include "rankrobust/ingest.hpp"
#include "rankrobust/normalize.hpp"
#include "rankrobust/pairs.hpp"
#include "rankrobust/report.hpp"
#include "rankrobust/synth.hpp"
#include "rankrobust/taxonomy.hpp"
#include "rankrobust/text.hpp"
#include "rankrobust/tsv.hpp"

namespace rankrobust::cli {

namespace {

constexpr std::size_t kChunkSize = 1 << 16;
constexpr const char* kConfigEnv = "RANKROBUST_NORM_CONFIG";
constexpr const char* kPairHeader = "#q1\tq2\tsource\tsim_score\tweek";

bool g_quiet = false;

template <typename... Args>
void note(fmt::format_string<Args...> f, Args&&... args) {
    if (!g_quiet) fmt::print(stderr, "rankrobust: {}\n", fmt::format(f, std::forward<Args>(args)...));
}

/// `-` or empty means standard output.
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty() && path != "-") file_ = std::make_unique<std::ofstream>(tsv::open_output(path));
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }
    void close() {
        stream().flush();
        if (!stream()) throw IoError("write failed");
    }

private:
    std::unique_ptr<std::ofstream> file_;
};

void write_json(const std::string& path, const nlohmann::ordered_json& j) {
    if (path.empty()) return;
    Output out(path);
    out.stream() << j.dump(2) << '\n';
    out.close();
}

std::string default_config_path() {
    const char* env = std::getenv(kConfigEnv);
    return env ? env : "";
}

normalize::NormalizationConfig load_config(const std::string& path) {
    if (path.empty()) return normalize::NormalizationConfig::defaults();
    return normalize::NormalizationConfig::load(path);
}

void add_config_option(CLI::App* sub, std::string& path) {
    path = default_config_path();
    sub->add_option("--config", path,
                    fmt::format("Normalization config file extending the built-in lists (default ${})", kConfigEnv));
}

template <typename LineFn>
void for_each_data_line(std::istream& in, LineFn&& fn) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto body = tsv::chomp(line);
        if (body.empty() || body.front() == '#') continue;
        fn(body, line_no);
    }
}

std::vector<pairs::QueryPair> load_pairs(const std::string& path) {
    auto in = tsv::open_input(path);
    return pairs::read_pairs(in);
}

template <typename RowFn>
void for_each_scored_row(const std::string& path, RowFn&& fn) {
    auto in = tsv::open_input(path);
    for_each_data_line(in, [&](std::string_view body, std::size_t line_no) {
        auto row = pairs::parse_evaluation(body);
        if (!row) throw InvalidInput(fmt::format("{}:{}: malformed score row", path, line_no));
        fn(*row);
    });
}

// ---------------------------------------------------------------- normalize

struct NormalizeArgs {
    std::vector<std::string> queries;
    std::string in, log, out, config;
    std::vector<std::string> locales{"en-US"};
    ingest::FilterParams filters;
    bool strict = false;
};

void run_normalize(const NormalizeArgs& a) {
    const auto cfg = load_config(a.config);
    if (!a.log.empty()) {
        if (a.out.empty() || a.out == "-") throw InvalidInput("normalize --log needs --out DIR");
        auto params = a.filters;
        params.locale_allow = {a.locales.begin(), a.locales.end()};
        params.validate();
        auto parsed = ingest::parse_log(a.log, a.strict);
        if (parsed.malformed) note("{} malformed log lines skipped", parsed.malformed);
        ingest::DatasetStore store;
        for (auto& [week, records] : ingest::split_by_week(std::move(parsed.records))) {
            auto ds = ingest::apply_filters(std::move(records), params, cfg);
            note("week {}: {} records in, {} queries retained", week, ds.stats.input_records, ds.stats.queries_retained);
            store.emplace(week, std::move(ds));
        }
        ingest::save_dataset_dir(a.out, store, params);
        return;
    }
    Output out(a.out);
    auto emit = [&](const std::string& q) { out.stream() << q << '\t' << normalize::normalize_query(q, cfg).key << '\n'; };
    for (const auto& q : a.queries) emit(q);
    if (!a.in.empty()) {
        auto in = tsv::open_input(a.in);
        for_each_data_line(in, [&](std::string_view body, std::size_t) { emit(std::string(body)); });
    }
    if (a.queries.empty() && a.in.empty()) throw InvalidInput("normalize needs --query, --in or --log");
    out.close();
}

// -------------------------------------------------------------------- pairs

struct PairsArgs {
    std::string dataset, sim, week, out, config;
    std::size_t k = 3;
    double min_score = 0.0;
};

void run_pairs(const PairsArgs& a) {
    if (a.dataset.empty() && a.sim.empty()) throw InvalidInput("pairs needs --dataset and/or --sim");
    std::vector<pairs::QueryPair> all;
    if (!a.dataset.empty()) {
        const auto cfg = load_config(a.config);
        const auto store = ingest::load_dataset_dir(a.dataset);
        for (const auto& [week, ds] : store) {
            if (!a.week.empty() && week != a.week) continue;
            auto found = pairs::tps_pairs(ds, cfg);
            note("week {}: {} TPS pairs", week, found.size());
            all.insert(all.end(), found.begin(), found.end());
        }
    }
    if (!a.sim.empty()) {
        auto found = pairs::topk_pairs(pairs::SimScoreTable::load(a.sim), a.k, a.min_score, a.week);
        note("{} similarity pairs", found.size());
        all.insert(all.end(), found.begin(), found.end());
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    Output out(a.out);
    out.stream() << kPairHeader << '\n';
    for (const auto& p : all) {
        pairs::write_pair(out.stream(), p);
        out.stream() << '\n';
    }
    out.close();
}

// -------------------------------------------------------------------- score

struct ScoreArgs {
    std::string pairs, dataset, week, out;
    std::size_t jobs = 1;
};

void run_score(const ScoreArgs& a) {
    const auto store = ingest::load_dataset_dir(a.dataset);
    auto week_of = [&](const pairs::QueryPair& p) -> const ingest::WeeklyDataset& {
        std::string week = p.week.empty() ? a.week : p.week;
        if (week.empty() && store.size() == 1) week = store.begin()->first;
        if (week.empty()) throw InvalidInput(fmt::format("pair '{}'/'{}' has no week; pass --week", p.q1, p.q2));
        const auto it = store.find(week);
        if (it == store.end()) throw InvalidInput(fmt::format("week {} is not in the dataset", week));
        return it->second;
    };

    Output out(a.out);
    out.stream() << kPairHeader << "\traw\tnormalized\tsimilarity\n";
    std::size_t evaluated = 0, skipped = 0;
    std::vector<pairs::QueryPair> chunk;
    auto flush = [&] {
        std::map<const ingest::WeeklyDataset*, std::vector<pairs::QueryPair>> by_week;
        for (auto& p : chunk) by_week[&week_of(p)].push_back(std::move(p));
        chunk.clear();
        std::vector<pairs::PairEvaluation> results;
        for (const auto& [ds, group] : by_week) {
            auto batch = pairs::evaluate_pairs(group, *ds, a.jobs);
            skipped += batch.skipped;
            std::move(batch.results.begin(), batch.results.end(), std::back_inserter(results));
        }
        std::sort(results.begin(), results.end(), [](const auto& x, const auto& y) { return x.pair < y.pair; });
        for (const auto& r : results) {
            pairs::write_evaluation(out.stream(), r);
            out.stream() << '\n';
        }
        evaluated += results.size();
    };

    auto in = tsv::open_input(a.pairs);
    for_each_data_line(in, [&](std::string_view body, std::size_t line_no) {
        auto p = pairs::parse_pair(body);
        if (!p) throw InvalidInput(fmt::format("{}:{}: malformed pair", a.pairs, line_no));
        chunk.push_back(std::move(*p));
        if (chunk.size() == kChunkSize) flush();
    });
    flush();
    out.close();
    note("{} pairs scored, {} skipped (query not in dataset)", evaluated, skipped);
}

// ---------------------------------------------------------- histogram/trend

struct ReportArgs {
    std::string in, out, json, source;
    std::vector<std::string> reports;
    double bin = 0.1;
};

std::optional<pairs::Source> source_filter(const std::string& text) {
    if (text.empty() || text == "all") return std::nullopt;
    std::string upper(text);
    std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
    auto s = pairs::parse_source(upper);
    if (!s) throw InvalidInput(fmt::format("unknown source '{}'", text));
    return s;
}

void run_histogram(const ReportArgs& a) {
    const auto source = source_filter(a.source);
    report::HistogramBuilder builder(a.bin);
    for_each_scored_row(a.in, [&](const pairs::ScoredRow& row) {
        if (!source || row.pair.source == *source) builder.add(row.rds.normalized);
    });
    const auto h = builder.finish();
    Output out(a.out);
    report::write_csv(out.stream(), h);
    out.close();
    write_json(a.json, report::to_json(h));
}

void run_trend(const ReportArgs& a) {
    std::vector<report::HistogramReport> weekly;
    if (!a.reports.empty()) {
        for (const auto& path : a.reports) {
            auto in = tsv::open_input(path);
            nlohmann::json j;
            try {
                in >> j;
            } catch (const nlohmann::json::exception& e) {
                throw InvalidInput(fmt::format("{}: {}", path, e.what()));
            }
            weekly.push_back(report::histogram_from_json(j));
        }
    } else {
        if (a.in.empty()) throw InvalidInput("trend needs --in or --reports");
        const auto source = source_filter(a.source);
        std::map<std::string, report::HistogramBuilder> builders;
        for_each_scored_row(a.in, [&](const pairs::ScoredRow& row) {
            if (source && row.pair.source != *source) return;
            if (row.pair.week.empty()) throw InvalidInput("trend needs a week on every score row");
            builders.try_emplace(row.pair.week, a.bin).first->second.add(row.rds.normalized);
        });
        for (const auto& [week, b] : builders) {
            weekly.push_back(b.finish());
            weekly.back().week = week;
        }
    }
    const auto t = report::trend(weekly);
    Output out(a.out);
    report::write_csv(out.stream(), t);
    out.close();
    write_json(a.json, report::to_json(t));
    note("max per-bin STD across {} weeks: {}", t.weeks.size(), tsv::format_double(t.max_std()));
}

// ----------------------------------------------------------------- taxonomy

struct TaxonomyArgs {
    std::string in, out, json, overflow, q1, q2, config;
};

void run_taxonomy(const TaxonomyArgs& a) {
    const auto cfg = load_config(a.config);
    if (!a.q1.empty() || !a.q2.empty()) {
        const auto label = taxonomy::classify(a.q1, a.q2, cfg);
        Output out(a.out);
        out.stream() << taxonomy::code(label) << '\t' << taxonomy::name(label) << '\n';
        out.close();
        return;
    }
    if (a.in.empty()) throw InvalidInput("taxonomy needs --in or --q1/--q2");
    std::vector<std::pair<std::string, std::string>> pairs;
    auto in = tsv::open_input(a.in);
    for_each_data_line(in, [&](std::string_view body, std::size_t line_no) {
        const auto f = tsv::split(body);
        if (f.size() < 2) throw InvalidInput(fmt::format("{}:{}: expected two queries", a.in, line_no));
        pairs.emplace_back(std::string(f[0]), std::string(f[1]));
    });
    const auto table = taxonomy::classify_corpus(pairs, cfg);
    Output out(a.out);
    report::write_csv(out.stream(), table);
    out.close();
    write_json(a.json, report::to_json(table));
    if (!a.overflow.empty()) {
        Output ov(a.overflow);
        ov.stream() << "#q1\tq2\n";
        for (const auto& [q1, q2] : table.overflow) ov.stream() << q1 << '\t' << q2 << '\n';
        ov.close();
    }
}

// ----------------------------------------------------------------- ensemble

struct EnsembleArgs {
    std::string pairs, dataset, week, out, json;
    std::size_t jobs = 1;
};

void run_ensemble(const EnsembleArgs& a) {
    const auto store = ingest::load_dataset_dir(a.dataset);
    if (store.empty()) throw InvalidInput("dataset has no weeks");
    const std::string week = a.week.empty() ? store.rbegin()->first : a.week;
    if (!store.contains(week)) throw InvalidInput(fmt::format("week {} is not in the dataset", week));
    auto list = load_pairs(a.pairs);
    std::sort(list.begin(), list.end());
    const auto cmp = ensemble::smoothed_vs_single(list, ensemble::build_series(store), week, a.jobs);
    Output out(a.out);
    ensemble::write_csv(out.stream(), cmp);
    out.close();
    write_json(a.json, ensemble::to_json(cmp));
    note("{} pairs compared against week {}, {} skipped", cmp.evaluated, week, cmp.skipped);
}

// ---------------------------------------------------------------- correlate

struct CorrelateArgs {
    std::string in, out, json;
};

void run_correlate(const CorrelateArgs& a) {
    std::vector<std::pair<double, double>> points;
    std::size_t without_score = 0;
    for_each_scored_row(a.in, [&](const pairs::ScoredRow& row) {
        if (row.pair.sim_score) {
            points.emplace_back(*row.pair.sim_score, row.rds.normalized);
        } else {
            ++without_score;
        }
    });
    if (without_score) note("{} rows without a similarity score ignored", without_score);
    const auto c = report::correlate(points);
    Output out(a.out);
    report::write_csv(out.stream(), c);
    out.close();
    write_json(a.json, report::to_json(c));
}

// -------------------------------------------------------------------- synth

struct SynthArgs {
    synth::GenLogConfig config;
    std::string out, noise = "identity", base, label;
    double sigma = 6.0;
    double treatment_share = 0.5;
    double divergence = 100.0;
    bool no_distractors = false;
};

void run_synth(SynthArgs a) {
    if (!a.base.empty() || !a.label.empty()) {
        const auto label = taxonomy::parse_label(a.label);
        if (!label) throw InvalidInput(fmt::format("unknown label '{}'", a.label));
        const auto pair = synth::gen_pair({a.base, *label, synth::default_vocabulary(), a.config.seed});
        Output out(a.out);
        out.stream() << pair.q1 << '\t' << pair.q2 << '\t' << taxonomy::code(pair.label) << '\n';
        out.close();
        return;
    }
    if (a.out.empty() || a.out == "-") throw InvalidInput("synth needs --out DIR");
    if (!ingest::is_iso_date(a.config.start_week)) throw InvalidInput("--start-week must be YYYY-MM-DD");
    a.config.noise = synth::parse_noise(a.noise, a.sigma);
    a.config.noise.treatment_share = a.treatment_share;
    a.config.noise.treatment_divergence = a.divergence;
    a.config.include_distractors = !a.no_distractors;
    const std::filesystem::path dir(a.out);
    Output log((dir / "log.tsv").string());
    Output truth((dir / "truth.tsv").string());
    Output sim((dir / "sim.tsv").string());
    const auto summary = synth::gen_log(a.config, log.stream(), truth.stream(), &sim.stream());
    log.close();
    truth.close();
    sim.close();
    note("{} families, {} queries, {} log lines over {} weeks", summary.families, summary.variant_queries,
         summary.log_lines, summary.weeks.size());
}

void add_out(CLI::App* sub, std::string& out, const std::string& what) {
    sub->add_option("-o,--out", out, what + " (default standard output)");
}

void add_jobs(CLI::App* sub, std::size_t& jobs) {
    sub->add_option("-j,--jobs", jobs, "Worker threads; output does not depend on it")->check(CLI::Range(1, 1024));
}

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"Ranking robustness evaluation over semantically identical query pairs"};
    app.require_subcommand(1);
    app.add_flag("-q,--quiet", g_quiet, "Suppress progress messages on standard error");

    NormalizeArgs norm;
    auto* s_norm = app.add_subcommand("normalize", "Print TPS keys, or filter a raw log into a dataset directory");
    s_norm->add_option("--query", norm.queries, "Query to normalize (repeatable)");
    s_norm->add_option("--in", norm.in, "File with one query per line");
    s_norm->add_option("--log", norm.log, "Raw log TSV to filter into a dataset directory");
    add_out(s_norm, norm.out, "Key TSV, or dataset directory with --log");
    s_norm->add_option("--locale", norm.locales, "Allowed locale (repeatable)")->capture_default_str();
    s_norm->add_option("--bottom-cut", norm.filters.bottom_cut, "Fraction of low-frequency records dropped")
        ->capture_default_str();
    s_norm->add_option("--min-len", norm.filters.min_len, "Required ranked-list length")->capture_default_str();
    s_norm->add_option("--top-k", norm.filters.top_k_queries_per_tps, "Queries kept per TPS group")
        ->capture_default_str();
    s_norm->add_flag("--strict", norm.strict, "Fail on the first malformed log line");
    add_config_option(s_norm, norm.config);

    PairsArgs pr;
    auto* s_pairs = app.add_subcommand("pairs", "Build TPS pairs from a dataset and/or top-k pairs from similarity scores");
    s_pairs->add_option("--dataset", pr.dataset, "Dataset directory");
    s_pairs->add_option("--sim", pr.sim, "Similarity score TSV (query_a, query_b, score)");
    s_pairs->add_option("--week", pr.week, "Restrict to one week; also stamps similarity pairs");
    s_pairs->add_option("--k", pr.k, "Partners kept per query")->capture_default_str()->check(CLI::PositiveNumber);
    s_pairs->add_option("--min-score", pr.min_score, "Lowest similarity score kept")->capture_default_str();
    add_out(s_pairs, pr.out, "Pair TSV");
    add_config_option(s_pairs, pr.config);

    ScoreArgs sc;
    auto* s_score = app.add_subcommand("score", "Compute RDS for every pair");
    s_score->add_option("--pairs", sc.pairs, "Pair TSV")->required();
    s_score->add_option("--dataset", sc.dataset, "Dataset directory")->required();
    s_score->add_option("--week", sc.week, "Week for pairs that carry none");
    add_out(s_score, sc.out, "Score TSV");
    add_jobs(s_score, sc.jobs);

    ReportArgs hist;
    auto* s_hist = app.add_subcommand("histogram", "Histogram of normalized RDS");
    s_hist->add_option("--in", hist.in, "Score TSV")->required();
    s_hist->add_option("--bin", hist.bin, "Bin width")->capture_default_str();
    s_hist->add_option("--source", hist.source, "Only pairs from this source (tps, sim)");
    s_hist->add_option("--json", hist.json, "Also write the report as JSON");
    add_out(s_hist, hist.out, "CSV");

    ReportArgs tr;
    auto* s_trend = app.add_subcommand("trend", "Per-bin mean and STD of weekly histograms");
    s_trend->add_option("--in", tr.in, "Score TSV; rows are grouped by week");
    s_trend->add_option("--reports", tr.reports, "Histogram JSON files, one per week");
    s_trend->add_option("--bin", tr.bin, "Bin width")->capture_default_str();
    s_trend->add_option("--source", tr.source, "Only pairs from this source (tps, sim)");
    s_trend->add_option("--json", tr.json, "Also write the report as JSON");
    add_out(s_trend, tr.out, "CSV");

    TaxonomyArgs tx;
    auto* s_tax = app.add_subcommand("taxonomy", "Classify query pairs into C1-C8");
    s_tax->add_option("--in", tx.in, "TSV whose first two columns are the queries");
    s_tax->add_option("--q1", tx.q1, "Classify a single pair: first query");
    s_tax->add_option("--q2", tx.q2, "Classify a single pair: second query");
    s_tax->add_option("--json", tx.json, "Also write the table as JSON");
    s_tax->add_option("--overflow", tx.overflow, "Write unclassified pairs here");
    add_out(s_tax, tx.out, "CSV");
    add_config_option(s_tax, tx.config);

    EnsembleArgs en;
    auto* s_ens = app.add_subcommand("ensemble", "Compare single-week RDS with position-averaged rankings");
    s_ens->add_option("--pairs", en.pairs, "Pair TSV")->required();
    s_ens->add_option("--dataset", en.dataset, "Dataset directory with several weeks")->required();
    s_ens->add_option("--week", en.week, "Single week to compare against (default latest)");
    s_ens->add_option("--json", en.json, "Also write the comparison as JSON");
    add_out(s_ens, en.out, "CSV");
    add_jobs(s_ens, en.jobs);

    CorrelateArgs co;
    auto* s_corr = app.add_subcommand("correlate", "Pearson correlation of similarity score and normalized RDS");
    s_corr->add_option("--in", co.in, "Score TSV")->required();
    s_corr->add_option("--json", co.json, "Also write the report as JSON");
    add_out(s_corr, co.out, "CSV");

    SynthArgs sy;
    auto* s_synth = app.add_subcommand("synth", "Generate a synthetic log, or a single taxonomy pair");
    s_synth->add_option("--seed", sy.config.seed, "Random seed")->capture_default_str();
    s_synth->add_option("--queries", sy.config.n_queries, "Query families")->capture_default_str()->check(CLI::PositiveNumber);
    s_synth->add_option("--weeks", sy.config.weeks, "Weeks")->capture_default_str()->check(CLI::PositiveNumber);
    s_synth->add_option("--depth", sy.config.depth, "Items per query and week")->capture_default_str()->check(CLI::PositiveNumber);
    s_synth->add_option("--pool", sy.config.pool_size, "Candidate items per family")->capture_default_str();
    s_synth->add_option("--start-week", sy.config.start_week, "First week (YYYY-MM-DD)")->capture_default_str();
    s_synth->add_option("--step-days", sy.config.step_days, "Days between weeks")->capture_default_str()->check(CLI::PositiveNumber);
    s_synth->add_option("--noise", sy.noise,
                        "identity, shuffle, jitter, ab_test, or a perturbation (top_swap, adjacent_swap:J, tail_replace:M, ...)")
        ->capture_default_str();
    s_synth->add_option("--sigma", sy.sigma, "Weekly rank noise scale")->capture_default_str();
    s_synth->add_option("--treatment-share", sy.treatment_share, "ab_test: share of weeks served by the second ranking")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 1.0));
    s_synth->add_option("--divergence", sy.divergence, "ab_test: rank noise of the second ranking")
        ->capture_default_str();
    s_synth->add_flag("--no-distractors", sy.no_distractors, "Omit queries the filters would drop");
    s_synth->add_option("--base", sy.base, "Build one pair from this query instead of a log");
    s_synth->add_option("--label", sy.label, "Taxonomy label for --base (C1..C8)");
    add_out(s_synth, sy.out, "Output directory (log.tsv, truth.tsv, sim.tsv)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*s_norm) run_normalize(norm);
        else if (*s_pairs) run_pairs(pr);
        else if (*s_score) run_score(sc);
        else if (*s_hist) run_histogram(hist);
        else if (*s_trend) run_trend(tr);
        else if (*s_tax) run_taxonomy(tx);
        else if (*s_ens) run_ensemble(en);
        else if (*s_corr) run_correlate(co);
        else if (*s_synth) run_synth(sy);
    } catch (const InvalidInput& e) {
        fmt::print(stderr, "rankrobust: error: {}\n", e.what());
        return 1;
    } catch (const IoError& e) {
        fmt::print(stderr, "rankrobust: error: {}\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        fmt::print(stderr, "rankrobust: internal error: {}\n", e.what());
        return 2;
    }
    return 0;
}

}  // namespace rankrobust::cli
