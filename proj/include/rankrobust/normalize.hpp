#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rankrobust/error.hpp"

namespace rankrobust::normalize {

enum class StemmerKind { Porter, None };

/// Word lists and tables that drive query canonicalization.
///
/// `stopwords` always contains every article and preposition; the separate
/// sets exist because the taxonomy tests articles and prepositions apart.
struct NormalizationConfig {
    std::set<std::string> articles;
    std::set<std::string> prepositions;
    std::set<std::string> stopwords;
    std::map<std::string, std::string> abbreviations;      // variant -> canonical
    std::map<std::string, std::string> irregular_plurals;  // plural -> singular
    StemmerKind stemmer = StemmerKind::Porter;
    std::string connectors = "+/";                         // characters that join words

    static NormalizationConfig defaults();

    /// Reads directives, one per line, on top of `base`:
    ///   stopword <w> | article <w> | preposition <w>
    ///   abbrev <variant> <canonical> | plural <irregular> <singular>
    ///   stemmer porter|none | connector <chars> | clear
    /// Blank lines and lines starting with '#' are ignored.
    static NormalizationConfig parse(std::istream& in, NormalizationConfig base = defaults());
    static NormalizationConfig load(const std::filesystem::path& path);

    void add_abbreviation(std::string variant, std::string canonical);

    [[nodiscard]] bool is_stopword(std::string_view w) const { return stopwords.contains(std::string(w)); }
    [[nodiscard]] bool is_article(std::string_view w) const { return articles.contains(std::string(w)); }
    [[nodiscard]] bool is_preposition(std::string_view w) const {
        return prepositions.contains(std::string(w));
    }
};

/// Sorted normalized tokens of a query, and their canonical join.
struct TpsKey {
    std::vector<std::string> tokens;
    std::string key;

    static constexpr char kSeparator = ' ';

    static TpsKey from_tokens(std::vector<std::string> tokens);
    static TpsKey from_key(std::string_view key);

    [[nodiscard]] bool empty() const noexcept { return tokens.empty(); }
    friend bool operator==(const TpsKey&, const TpsKey&) = default;
};

/// Raised when a query normalizes to no tokens at all.
class EmptyKey : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

/// Lowercase, split connectors and punctuation, expand abbreviations,
/// split glued dimensions ("24x20", "1mm"), drop stopwords, stem, sort.
/// Throws InvalidInput for a blank query; an all-stopword query yields an
/// empty key.
[[nodiscard]] TpsKey normalize_query(std::string_view query, const NormalizationConfig& cfg);

/// True when both queries share a TPS key. Throws EmptyKey if either key is empty.
[[nodiscard]] bool same_tps(std::string_view q1, std::string_view q2, const NormalizationConfig& cfg);

/// Stem a single lowercase token: irregular plural table, then the
/// configured stemmer, repeated until stable.
[[nodiscard]] std::string stem_token(std::string_view token, const NormalizationConfig& cfg);

/// Substitutes abbreviation variants made of symbols (inch marks and the
/// like) when they directly follow a digit, e.g. "30''" -> "30 inch ".
[[nodiscard]] std::string expand_symbolic_abbreviations(std::string_view folded,
                                                        const NormalizationConfig& cfg);

}  // namespace rankrobust::normalize
