#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace rankrobust::text {

/// Lowercases UTF-8 text. ASCII, Latin-1, Latin Extended-A, Greek and
/// Cyrillic capitals are folded; other code points pass through. Malformed
/// byte sequences become U+FFFD.
[[nodiscard]] std::string fold_case(std::string_view utf8);

/// True for code points that separate words: everything that is not a
/// letter or a digit.
[[nodiscard]] bool is_separator(char32_t cp);

/// Replaces every separator code point with a single ASCII space, except
/// ASCII characters listed in `keep`.
[[nodiscard]] std::string separators_to_spaces(std::string_view utf8, std::string_view keep = {});

/// Deletes separator code points other than whitespace and `keep`.
[[nodiscard]] std::string strip_punctuation(std::string_view utf8, std::string_view keep = {});

/// Removes apostrophes between two letters ("women's" -> "womens").
[[nodiscard]] std::string drop_inner_apostrophes(std::string_view utf8);

[[nodiscard]] std::vector<std::string> split_whitespace(std::string_view s);
[[nodiscard]] std::string remove_whitespace(std::string_view s);
[[nodiscard]] std::string join(const std::vector<std::string>& tokens, std::string_view sep = " ");

[[nodiscard]] bool is_digits(std::string_view s);
[[nodiscard]] bool is_ascii_alpha(std::string_view s);
[[nodiscard]] std::string_view trim(std::string_view s);

}  // namespace rankrobust::text
