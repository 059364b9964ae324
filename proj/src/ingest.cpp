#include "rankrobust/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <tuple>

#include <fmt/format.h>
#include <json.hpp>

#include "rankrobust/error.hpp"
#include "rankrobust/tsv.hpp"

namespace rankrobust::ingest {

namespace {

constexpr std::size_t kMaxReportedLines = 20;

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

}  // namespace

bool is_iso_date(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (std::size_t i : {0, 1, 2, 3, 5, 6, 8, 9}) {
        if (s[i] < '0' || s[i] > '9') return false;
    }
    const int y = std::stoi(std::string(s.substr(0, 4)));
    const int m = std::stoi(std::string(s.substr(5, 2)));
    const int d = std::stoi(std::string(s.substr(8, 2)));
    static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m < 1 || m > 12 || d < 1) return false;
    const int limit = kDays[m - 1] + ((m == 2 && is_leap(y)) ? 1 : 0);
    return d <= limit;
}

bool parse_record(std::string_view line, QueryRecord& out) {
    const auto f = tsv::split(line);
    if (f.size() != 6) return false;
    if (!is_iso_date(f[0]) || f[1].empty() || f[2].empty() || f[3].empty()) return false;
    const auto pos = tsv::parse_double(f[4]);
    const auto freq = tsv::parse_uint(f[5]);
    if (!pos || *pos < 1.0 || !freq) return false;
    out.week = std::string(f[0]);
    out.locale = std::string(f[1]);
    out.query = std::string(f[2]);
    out.item = std::string(f[3]);
    out.avg_position = *pos;
    out.frequency = *freq;
    return true;
}

ParseResult parse_log(std::istream& in, bool strict) {
    ParseResult result;
    std::string line;
    std::size_t line_no = 0;
    QueryRecord rec;
    while (std::getline(in, line)) {
        ++line_no;
        const auto body = tsv::chomp(line);
        if (body.empty() || body.front() == '#') continue;
        if (parse_record(body, rec)) {
            result.records.push_back(rec);
            continue;
        }
        if (strict) {
            throw InvalidInput(fmt::format("malformed log line {}", line_no));
        }
        ++result.malformed;
        if (result.malformed_lines.size() < kMaxReportedLines) result.malformed_lines.push_back(line_no);
    }
    if (in.bad()) {
        throw IoError("error while reading log input");
    }
    return result;
}

ParseResult parse_log(const std::filesystem::path& path, bool strict) {
    auto in = tsv::open_input(path);
    return parse_log(in, strict);
}

void FilterParams::validate() const {
    if (!(bottom_cut >= 0.0 && bottom_cut < 1.0)) {
        throw InvalidInput(fmt::format("bottom_cut must be in [0, 1), got {}", bottom_cut));
    }
    if (min_len < 1) throw InvalidInput("min_len must be at least 1");
    if (top_k_queries_per_tps < 1) throw InvalidInput("top_k_queries_per_tps must be at least 1");
}

const RankedList* WeeklyDataset::find(const std::string& query) const {
    auto it = lists.find(query);
    return it == lists.end() ? nullptr : &it->second;
}

WeeklyDataset apply_filters(std::vector<QueryRecord> records, const FilterParams& params,
                            const normalize::NormalizationConfig& cfg) {
    params.validate();
    WeeklyDataset ds;
    ds.stats.input_records = records.size();
    if (records.empty()) return ds;
    ds.week = records.front().week;
    for (const auto& r : records) {
        if (r.week != ds.week) {
            throw InvalidInput(fmt::format("apply_filters: records span weeks {} and {}", ds.week, r.week));
        }
    }

    // Canonical order makes every later step independent of input order.
    auto key = [](const QueryRecord& r) {
        return std::tie(r.query, r.item, r.avg_position, r.frequency, r.locale);
    };
    std::sort(records.begin(), records.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });

    // (1) locale
    std::erase_if(records, [&](const QueryRecord& r) { return !params.locale_allow.contains(r.locale); });

    // Duplicate (query, item) rows keep the first in canonical order.
    auto dup = std::unique(records.begin(), records.end(),
                           [](const auto& a, const auto& b) { return a.query == b.query && a.item == b.item; });
    ds.stats.duplicate_records = static_cast<std::size_t>(records.end() - dup);
    records.erase(dup, records.end());
    ds.stats.after_locale = records.size();

    // (2) bottom fraction by frequency; everything tied with the first kept value survives.
    if (!records.empty() && params.bottom_cut > 0.0) {
        std::vector<std::uint64_t> freqs;
        freqs.reserve(records.size());
        for (const auto& r : records) freqs.push_back(r.frequency);
        std::sort(freqs.begin(), freqs.end());
        const auto n_drop = static_cast<std::size_t>(
            std::floor(params.bottom_cut * static_cast<double>(freqs.size()) + 1e-9));
        if (n_drop > 0) {
            const auto threshold = freqs[std::min(n_drop, freqs.size() - 1)];
            std::erase_if(records, [&](const QueryRecord& r) { return r.frequency < threshold; });
        }
    }
    ds.stats.after_frequency_cut = records.size();

    // (3) ranked lists
    struct Entry {
        double pos;
        const ItemId* item;
    };
    std::map<std::string, std::vector<Entry>> by_query;
    std::map<std::string, std::uint64_t> query_freq;
    for (const auto& r : records) {
        by_query[r.query].push_back({r.avg_position, &r.item});
        auto& f = query_freq[r.query];
        f = std::max(f, r.frequency);
    }
    ds.stats.queries_built = by_query.size();

    std::map<std::string, RankedList> lists;
    for (auto& [query, entries] : by_query) {
        if (entries.size() < params.min_len) continue;
        std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
            return a.pos != b.pos ? a.pos < b.pos : *a.item < *b.item;
        });
        std::vector<ItemId> items;
        items.reserve(params.min_len);
        for (std::size_t i = 0; i < params.min_len; ++i) items.push_back(*entries[i].item);
        lists.emplace(query, RankedList(std::move(items)));
    }
    ds.stats.queries_after_length = lists.size();

    // (4) top-k most searched queries per TPS key
    std::map<std::string, std::vector<std::string>> groups;
    for (const auto& [query, list] : lists) {
        auto k = normalize::normalize_query(query, cfg);
        if (k.empty()) {
            ++ds.stats.queries_empty_key;
            continue;
        }
        groups[k.key].push_back(query);
    }
    for (auto& [tps, queries] : groups) {
        std::sort(queries.begin(), queries.end(), [&](const std::string& a, const std::string& b) {
            const auto fa = query_freq[a];
            const auto fb = query_freq[b];
            return fa != fb ? fa > fb : a < b;
        });
        const auto keep = std::min(queries.size(), params.top_k_queries_per_tps);
        for (std::size_t i = 0; i < keep; ++i) {
            const auto& q = queries[i];
            ds.lists.emplace(q, lists.at(q));
            ds.frequency.emplace(q, query_freq[q]);
        }
    }
    ds.stats.queries_retained = ds.lists.size();
    return ds;
}

std::map<std::string, std::vector<QueryRecord>> split_by_week(std::vector<QueryRecord> records) {
    std::map<std::string, std::vector<QueryRecord>> out;
    for (auto& r : records) out[r.week].push_back(std::move(r));
    return out;
}

void save_dataset_dir(const std::filesystem::path& dir, const DatasetStore& store, const FilterParams& params) {
    std::filesystem::create_directories(dir);
    nlohmann::ordered_json manifest;
    manifest["schema_version"] = 1;
    manifest["filters"] = {
        {"locale_allow", std::vector<std::string>(params.locale_allow.begin(), params.locale_allow.end())},
        {"bottom_cut", params.bottom_cut},
        {"min_len", params.min_len},
        {"top_k_queries_per_tps", params.top_k_queries_per_tps},
    };
    auto weeks = nlohmann::ordered_json::array();
    for (const auto& [week, ds] : store) {
        const auto file = week + ".tsv";
        auto out = tsv::open_output(dir / file);
        out << "#query\titem_id\trank\tfrequency\n";
        std::size_t rows = 0;
        for (const auto& [query, list] : ds.lists) {
            const auto freq = ds.frequency.at(query);
            for (std::size_t i = 0; i < list.size(); ++i) {
                out << query << '\t' << list.items()[i] << '\t' << (i + 1) << '\t' << freq << '\n';
                ++rows;
            }
        }
        const auto& s = ds.stats;
        weeks.push_back({
            {"week", week},
            {"file", file},
            {"queries", ds.lists.size()},
            {"records", rows},
            {"input_records", s.input_records},
            {"duplicate_records", s.duplicate_records},
            {"after_locale", s.after_locale},
            {"after_frequency_cut", s.after_frequency_cut},
            {"queries_built", s.queries_built},
            {"queries_after_length", s.queries_after_length},
            {"queries_empty_key", s.queries_empty_key},
        });
    }
    manifest["weeks"] = std::move(weeks);
    auto out = tsv::open_output(dir / "manifest.json");
    out << manifest.dump(2) << '\n';
}

DatasetStore load_dataset_dir(const std::filesystem::path& dir) {
    auto in = tsv::open_input(dir / "manifest.json");
    nlohmann::json manifest;
    try {
        manifest = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(fmt::format("invalid manifest in '{}': {}", dir.string(), e.what()));
    }
    DatasetStore store;
    for (const auto& entry : manifest.at("weeks")) {
        WeeklyDataset ds;
        ds.week = entry.at("week").get<std::string>();
        auto file = tsv::open_input(dir / entry.at("file").get<std::string>());
        std::map<std::string, std::vector<ItemId>> items;
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(file, line)) {
            ++line_no;
            const auto body = tsv::chomp(line);
            if (body.empty() || body.front() == '#') continue;
            const auto f = tsv::split(body);
            const auto rank = f.size() == 4 ? tsv::parse_uint(f[2]) : std::nullopt;
            const auto freq = f.size() == 4 ? tsv::parse_uint(f[3]) : std::nullopt;
            std::string query(f[0]);
            if (!rank || !freq || *rank != items[query].size() + 1) {
                throw IoError(fmt::format("{}: malformed dataset line {}", ds.week, line_no));
            }
            items[query].emplace_back(f[1]);
            ds.frequency[query] = *freq;
        }
        for (auto& [query, list] : items) ds.lists.emplace(query, RankedList(std::move(list)));
        store.emplace(ds.week, std::move(ds));
    }
    return store;
}

}  // namespace rankrobust::ingest
