#include "rankrobust/normalize.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>

#include "rankrobust/stemmer.hpp"
#include "rankrobust/text.hpp"
#include "rankrobust/tsv.hpp"

namespace rankrobust::normalize {

namespace {

bool is_symbolic(std::string_view variant) {
    return std::any_of(variant.begin(), variant.end(), [](char c) {
        const auto u = static_cast<unsigned char>(c);
        return !((u >= 'a' && u <= 'z') || (u >= '0' && u <= '9'));
    });
}

// "24x20" / "24x20x3" -> digit groups; empty when the token is not a dimension.
std::vector<std::string> split_dimension(std::string_view token) {
    std::vector<std::string> parts;
    for (auto part : tsv::split(token, 'x')) {
        if (!text::is_digits(part)) return {};
        parts.emplace_back(part);
    }
    if (parts.size() < 2) return {};
    return parts;
}

void append_canonical(std::vector<std::string>& out, std::string_view canonical) {
    for (auto& t : text::split_whitespace(canonical)) out.push_back(std::move(t));
}

}  // namespace

NormalizationConfig NormalizationConfig::defaults() {
    NormalizationConfig cfg;
    cfg.articles = {"a", "an", "the"};
    cfg.prepositions = {"about", "at", "by", "for", "from", "in", "into", "near", "of",
                        "on",    "onto", "per", "to", "via", "with", "within"};
    cfg.stopwords = {"and", "or", "nor"};
    cfg.stopwords.insert(cfg.articles.begin(), cfg.articles.end());
    cfg.stopwords.insert(cfg.prepositions.begin(), cfg.prepositions.end());

    // Inch and foot marks, including typographic variants.
    cfg.abbreviations = {
        {"''", "inch"},     {"\"", "inch"},  {"″", "inch"}, {"”", "inch"},
        {"'", "foot"},      {"′", "foot"}, {"in", "inch"},  {"ft", "foot"},
        {"v", "volt"},      {"w", "watt"},   {"lb", "pound"},    {"lbs", "pound"},
        {"oz", "ounce"},    {"qt", "quart"}, {"pk", "pack"},     {"pc", "piece"},
        {"pcs", "piece"},
    };
    cfg.irregular_plurals = {
        {"men", "man"},     {"women", "woman"}, {"children", "child"}, {"feet", "foot"},
        {"teeth", "tooth"}, {"mice", "mouse"},  {"geese", "goose"},
    };
    return cfg;
}

void NormalizationConfig::add_abbreviation(std::string variant, std::string canonical) {
    auto [it, inserted] = abbreviations.emplace(variant, canonical);
    if (!inserted && it->second != canonical) {
        throw InvalidInput(fmt::format("abbreviation '{}' maps to both '{}' and '{}'", variant,
                                       it->second, canonical));
    }
}

NormalizationConfig NormalizationConfig::parse(std::istream& in, NormalizationConfig cfg) {
    std::string line;
    std::size_t line_no = 0;
    std::set<std::string> overridden;
    while (std::getline(in, line)) {
        ++line_no;
        const auto body = text::trim(tsv::chomp(line));
        if (body.empty() || body.front() == '#') continue;
        const auto fields = text::split_whitespace(text::fold_case(body));
        const auto& directive = fields[0];
        auto expect = [&](std::size_t n) {
            if (fields.size() != n) {
                throw InvalidInput(fmt::format("config line {}: '{}' expects {} argument(s)", line_no,
                                               directive, n - 1));
            }
        };
        if (directive == "stopword") {
            expect(2);
            cfg.stopwords.insert(fields[1]);
        } else if (directive == "article") {
            expect(2);
            cfg.articles.insert(fields[1]);
            cfg.stopwords.insert(fields[1]);
        } else if (directive == "preposition") {
            expect(2);
            cfg.prepositions.insert(fields[1]);
            cfg.stopwords.insert(fields[1]);
        } else if (directive == "abbrev") {
            expect(3);
            // A file may override an inherited mapping, but not contradict itself.
            if (overridden.insert(fields[1]).second) cfg.abbreviations.erase(fields[1]);
            cfg.add_abbreviation(fields[1], fields[2]);
        } else if (directive == "plural") {
            expect(3);
            cfg.irregular_plurals[fields[1]] = fields[2];
        } else if (directive == "stemmer") {
            expect(2);
            if (fields[1] == "porter") {
                cfg.stemmer = StemmerKind::Porter;
            } else if (fields[1] == "none") {
                cfg.stemmer = StemmerKind::None;
            } else {
                throw InvalidInput(fmt::format("config line {}: unknown stemmer '{}'", line_no, fields[1]));
            }
        } else if (directive == "connector") {
            expect(2);
            cfg.connectors = fields[1];
        } else if (directive == "clear") {
            expect(1);
            cfg = NormalizationConfig{};
        } else {
            throw InvalidInput(fmt::format("config line {}: unknown directive '{}'", line_no, directive));
        }
    }
    return cfg;
}

NormalizationConfig NormalizationConfig::load(const std::filesystem::path& path) {
    auto in = tsv::open_input(path);
    return parse(in);
}

TpsKey TpsKey::from_tokens(std::vector<std::string> tokens) {
    std::sort(tokens.begin(), tokens.end());
    TpsKey k;
    k.key = text::join(tokens, std::string_view(&kSeparator, 1));
    k.tokens = std::move(tokens);
    return k;
}

TpsKey TpsKey::from_key(std::string_view key) {
    std::vector<std::string> tokens;
    for (auto part : tsv::split(key, kSeparator)) {
        if (!part.empty()) tokens.emplace_back(part);
    }
    return from_tokens(std::move(tokens));
}

std::string expand_symbolic_abbreviations(std::string_view folded, const NormalizationConfig& cfg) {
    std::vector<std::pair<std::string_view, std::string_view>> symbolic;
    for (const auto& [variant, canonical] : cfg.abbreviations) {
        if (is_symbolic(variant)) symbolic.emplace_back(variant, canonical);
    }
    // Longest match first so "''" wins over "'".
    std::stable_sort(symbolic.begin(), symbolic.end(),
                     [](const auto& a, const auto& b) { return a.first.size() > b.first.size(); });

    std::string out;
    out.reserve(folded.size() + 8);
    std::size_t i = 0;
    while (i < folded.size()) {
        const bool after_digit = i > 0 && folded[i - 1] >= '0' && folded[i - 1] <= '9';
        bool matched = false;
        if (after_digit) {
            for (const auto& [variant, canonical] : symbolic) {
                if (folded.substr(i, variant.size()) == variant) {
                    out.push_back(' ');
                    out.append(canonical);
                    out.push_back(' ');
                    i += variant.size();
                    matched = true;
                    break;
                }
            }
        }
        if (!matched) out.push_back(folded[i++]);
    }
    return out;
}

std::string stem_token(std::string_view token, const NormalizationConfig& cfg) {
    std::string current(token);
    // Porter is not idempotent on every word; iterate to a fixed point so
    // that re-normalizing a key reproduces it.
    for (int round = 0; round < 8; ++round) {
        std::string next;
        if (auto it = cfg.irregular_plurals.find(current); it != cfg.irregular_plurals.end()) {
            next = it->second;
        } else if (cfg.stemmer == StemmerKind::Porter) {
            next = porter_stem(current);
        } else {
            next = current;
        }
        if (next == current) break;
        current = std::move(next);
    }
    return current;
}

TpsKey normalize_query(std::string_view query, const NormalizationConfig& cfg) {
    if (text::trim(query).empty()) {
        throw InvalidInput("query is empty");
    }
    const std::string folded = expand_symbolic_abbreviations(text::fold_case(query), cfg);
    const auto raw_tokens = text::split_whitespace(text::separators_to_spaces(text::drop_inner_apostrophes(folded)));

    auto expand = [&](std::string_view t, bool unit_context, std::vector<std::string>& out) {
        auto it = cfg.abbreviations.find(std::string(t));
        // Stopword variants ("in") are only units when glued to a number.
        if (it != cfg.abbreviations.end() && (unit_context || !cfg.is_stopword(t))) {
            append_canonical(out, it->second);
        } else {
            out.emplace_back(t);
        }
    };

    std::vector<std::string> tokens;
    for (const auto& t : raw_tokens) {
        if (auto dims = split_dimension(t); !dims.empty()) {
            tokens.insert(tokens.end(), dims.begin(), dims.end());
            continue;
        }
        const auto digits_end = t.find_first_not_of("0123456789");
        if (digits_end != 0 && digits_end != std::string::npos && text::is_ascii_alpha(t.substr(digits_end))) {
            tokens.push_back(t.substr(0, digits_end));
            expand(std::string_view(t).substr(digits_end), true, tokens);
            continue;
        }
        expand(t, false, tokens);
    }

    const bool has_number = std::any_of(tokens.begin(), tokens.end(), [](const auto& t) { return text::is_digits(t); });

    std::vector<std::string> kept;
    kept.reserve(tokens.size());
    for (const auto& t : tokens) {
        if (cfg.is_stopword(t) || (has_number && t == "x")) continue;
        std::string stem = stem_token(t, cfg);
        // "one" stems to "on"; keep the word rather than lose it as a stopword.
        if (cfg.is_stopword(stem)) {
            kept.push_back(t);
            continue;
        }
        if (auto it = cfg.abbreviations.find(stem); it != cfg.abbreviations.end() && !cfg.is_stopword(stem)) {
            std::vector<std::string> expanded;
            append_canonical(expanded, it->second);
            for (const auto& e : expanded) kept.push_back(stem_token(e, cfg));
            continue;
        }
        kept.push_back(std::move(stem));
    }
    return TpsKey::from_tokens(std::move(kept));
}

bool same_tps(std::string_view q1, std::string_view q2, const NormalizationConfig& cfg) {
    const auto k1 = normalize_query(q1, cfg);
    const auto k2 = normalize_query(q2, cfg);
    if (k1.empty() || k2.empty()) {
        throw EmptyKey(fmt::format("query '{}' has an empty TPS key", k1.empty() ? q1 : q2));
    }
    return k1.key == k2.key;
}

}  // namespace rankrobust::normalize
