#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rankrobust/normalize.hpp"

namespace rankrobust::taxonomy {

enum class Label {
    Preposition,     // C1
    Abbreviation,    // C2
    SingularPlural,  // C3
    WordOrder,       // C4
    Article,         // C5
    Punctuation,     // C6
    Space,           // C7
    WordsConnection, // C8
    Unclassified,
};

inline constexpr std::array<Label, 9> kAllLabels = {
    Label::Preposition, Label::Abbreviation, Label::SingularPlural,  Label::WordOrder,   Label::Article,
    Label::Punctuation, Label::Space,        Label::WordsConnection, Label::Unclassified,
};

/// "C1".."C8" or "Unclassified".
[[nodiscard]] std::string_view code(Label label);
/// Human-readable category name, e.g. "Singular/Plural".
[[nodiscard]] std::string_view name(Label label);
[[nodiscard]] std::optional<Label> parse_label(std::string_view text);

/// Assigns the first single transform, in the order space, punctuation,
/// connector, article, preposition, abbreviation, singular/plural, word
/// order, under which the two queries become equal. Comparison is
/// case-insensitive; a pair that differs only by case is Unclassified.
/// Throws InvalidInput when the raw strings are identical.
[[nodiscard]] Label classify(std::string_view q1, std::string_view q2, const normalize::NormalizationConfig& cfg);

/// Singular form used by the singular/plural test: irregular table, then
/// plural suffix rules (-ies, -sses, -xes, -ches, -shes, -s).
[[nodiscard]] std::string singularize(std::string_view word, const normalize::NormalizationConfig& cfg);

struct LabelCount {
    Label label;
    std::size_t count = 0;
    double rate = 0.0;
};

struct LabelTable {
    std::vector<LabelCount> rows;  // one per label, in kAllLabels order
    std::size_t total = 0;
    /// Pairs no single transform explains, kept for manual triage.
    std::vector<std::pair<std::string, std::string>> overflow;

    [[nodiscard]] const LabelCount& row(Label label) const;
};

/// Classifies every (q1, q2) pair and tallies the labels. Throws InvalidInput
/// when `pairs` is empty.
[[nodiscard]] LabelTable classify_corpus(std::span<const std::pair<std::string, std::string>> pairs,
                                         const normalize::NormalizationConfig& cfg);

}  // namespace rankrobust::taxonomy
