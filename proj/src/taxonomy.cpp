#include "rankrobust/taxonomy.hpp"

#include <algorithm>

#include "rankrobust/text.hpp"
#include "rankrobust/tsv.hpp"

namespace rankrobust::taxonomy {

namespace {

using Tokens = std::vector<std::string>;
using normalize::NormalizationConfig;

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

Tokens sorted(Tokens t) {
    std::sort(t.begin(), t.end());
    return t;
}

template <typename Pred>
Tokens drop_if(const Tokens& t, Pred pred) {
    Tokens out;
    std::copy_if(t.begin(), t.end(), std::back_inserter(out), [&](const auto& w) { return !pred(w); });
    return out;
}

template <typename Pred>
Tokens only_if(const Tokens& t, Pred pred) {
    Tokens out;
    std::copy_if(t.begin(), t.end(), std::back_inserter(out), pred);
    return sorted(out);
}

// C8: connector characters become spaces, glued "NxM" splits, and a lone
// "x" between words disappears.
Tokens connector_tokens(std::string_view s, const NormalizationConfig& cfg) {
    std::string spaced(s);
    for (char& c : spaced) {
        if (cfg.connectors.find(c) != std::string::npos) c = ' ';
    }
    Tokens out;
    for (auto& t : text::split_whitespace(spaced)) {
        if (t == "x") continue;
        const auto parts = tsv::split(t, 'x');
        const bool dimension = parts.size() >= 2 &&
                               std::all_of(parts.begin(), parts.end(), [](auto p) { return text::is_digits(p); });
        if (dimension) {
            for (auto p : parts) out.emplace_back(p);
        } else {
            out.push_back(std::move(t));
        }
    }
    return out;
}

// C2: symbolic marks after digits, glued units, and standalone variants.
// A stopword variant ("in") counts as a unit only right after a number.
Tokens abbreviation_tokens(std::string_view s, const NormalizationConfig& cfg) {
    const auto tokens = text::split_whitespace(normalize::expand_symbolic_abbreviations(s, cfg));
    Tokens out;
    auto emit = [&](std::string_view t, bool unit_context) {
        auto it = cfg.abbreviations.find(std::string(t));
        if (it != cfg.abbreviations.end() && (unit_context || !cfg.is_stopword(t))) {
            for (auto& c : text::split_whitespace(it->second)) out.push_back(std::move(c));
        } else {
            out.emplace_back(t);
        }
    };
    for (const auto& t : tokens) {
        const bool after_number = !out.empty() && text::is_digits(out.back());
        const auto digits_end = t.find_first_not_of("0123456789");
        if (digits_end != 0 && digits_end != std::string::npos && text::is_ascii_alpha(t.substr(digits_end)) &&
            cfg.abbreviations.contains(t.substr(digits_end))) {
            out.push_back(t.substr(0, digits_end));
            emit(std::string_view(t).substr(digits_end), true);
            continue;
        }
        emit(t, after_number);
    }
    return out;
}

// C3: fold each alphabetic run of each token to its singular.
Tokens singular_tokens(const Tokens& tokens, const NormalizationConfig& cfg) {
    Tokens out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) {
        std::string folded;
        std::size_t i = 0;
        while (i < t.size()) {
            if (t[i] >= 'a' && t[i] <= 'z') {
                std::size_t j = i;
                while (j < t.size() && t[j] >= 'a' && t[j] <= 'z') ++j;
                folded += singularize(std::string_view(t).substr(i, j - i), cfg);
                i = j;
            } else {
                folded.push_back(t[i++]);
            }
        }
        out.push_back(std::move(folded));
    }
    return out;
}

}  // namespace

std::string_view code(Label label) {
    switch (label) {
        case Label::Preposition: return "C1";
        case Label::Abbreviation: return "C2";
        case Label::SingularPlural: return "C3";
        case Label::WordOrder: return "C4";
        case Label::Article: return "C5";
        case Label::Punctuation: return "C6";
        case Label::Space: return "C7";
        case Label::WordsConnection: return "C8";
        case Label::Unclassified: return "Unclassified";
    }
    return "Unclassified";
}

std::string_view name(Label label) {
    switch (label) {
        case Label::Preposition: return "Preposition";
        case Label::Abbreviation: return "Abbreviation";
        case Label::SingularPlural: return "Singular/Plural";
        case Label::WordOrder: return "Word order";
        case Label::Article: return "Article";
        case Label::Punctuation: return "Punctuation";
        case Label::Space: return "Space";
        case Label::WordsConnection: return "Words connection";
        case Label::Unclassified: return "Unclassified";
    }
    return "Unclassified";
}

std::optional<Label> parse_label(std::string_view text) {
    const auto folded = text::fold_case(text);
    for (auto label : kAllLabels) {
        if (text::fold_case(code(label)) == folded || text::fold_case(name(label)) == folded) return label;
    }
    return std::nullopt;
}

std::string singularize(std::string_view word, const NormalizationConfig& cfg) {
    if (auto it = cfg.irregular_plurals.find(std::string(word)); it != cfg.irregular_plurals.end()) {
        return it->second;
    }
    std::string w(word);
    if (w.size() <= 3) return w;
    if (ends_with(w, "ies")) return w.substr(0, w.size() - 3) + "y";
    if (ends_with(w, "sses") || ends_with(w, "xes") || ends_with(w, "ches") || ends_with(w, "shes")) {
        return w.substr(0, w.size() - 2);
    }
    if (ends_with(w, "ss") || ends_with(w, "us") || ends_with(w, "is")) return w;
    if (ends_with(w, "s")) return w.substr(0, w.size() - 1);
    return w;
}

Label classify(std::string_view q1, std::string_view q2, const NormalizationConfig& cfg) {
    if (q1 == q2) {
        throw InvalidInput("classify: the two queries are identical");
    }
    const auto a = text::fold_case(q1);
    const auto b = text::fold_case(q2);
    if (a == b) return Label::Unclassified;

    const auto ta = text::split_whitespace(a);
    const auto tb = text::split_whitespace(b);

    if (text::remove_whitespace(a) == text::remove_whitespace(b)) return Label::Space;

    const std::string keep = cfg.connectors;
    if (text::split_whitespace(text::strip_punctuation(a, keep)) ==
            text::split_whitespace(text::strip_punctuation(b, keep)) ||
        text::split_whitespace(text::separators_to_spaces(a, keep)) ==
            text::split_whitespace(text::separators_to_spaces(b, keep))) {
        return Label::Punctuation;
    }

    if (connector_tokens(a, cfg) == connector_tokens(b, cfg)) return Label::WordsConnection;

    auto is_article = [&](const std::string& w) { return cfg.is_article(w); };
    if (drop_if(ta, is_article) == drop_if(tb, is_article)) return Label::Article;

    // Preposition rewrites move the object around ("dress for women" ->
    // "women dress"), so compare bags of words, and require the pair to
    // actually differ in prepositions so pure reorderings stay word order.
    auto is_prep = [&](const std::string& w) { return cfg.is_preposition(w); };
    if (only_if(ta, is_prep) != only_if(tb, is_prep) &&
        sorted(drop_if(ta, is_prep)) == sorted(drop_if(tb, is_prep))) {
        return Label::Preposition;
    }

    if (abbreviation_tokens(a, cfg) == abbreviation_tokens(b, cfg)) return Label::Abbreviation;

    if (singular_tokens(ta, cfg) == singular_tokens(tb, cfg)) return Label::SingularPlural;

    if (sorted(ta) == sorted(tb)) return Label::WordOrder;

    return Label::Unclassified;
}

const LabelCount& LabelTable::row(Label label) const {
    return rows.at(static_cast<std::size_t>(label));
}

LabelTable classify_corpus(std::span<const std::pair<std::string, std::string>> pairs,
                           const NormalizationConfig& cfg) {
    if (pairs.empty()) {
        throw InvalidInput("classify_corpus: no pairs");
    }
    LabelTable table;
    for (auto label : kAllLabels) table.rows.push_back({label, 0, 0.0});
    for (const auto& [q1, q2] : pairs) {
        const auto label = classify(q1, q2, cfg);
        ++table.rows[static_cast<std::size_t>(label)].count;
        if (label == Label::Unclassified) table.overflow.emplace_back(q1, q2);
    }
    table.total = pairs.size();
    for (auto& row : table.rows) {
        row.rate = static_cast<double>(row.count) / static_cast<double>(table.total);
    }
    return table;
}

}  // namespace rankrobust::taxonomy
