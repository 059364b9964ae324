#include "rankrobust/text.hpp"

#include <algorithm>

namespace rankrobust::text {

namespace {

constexpr char32_t kReplacement = 0xFFFD;

struct Decoded {
    char32_t cp;
    std::size_t len;
};

Decoded decode(std::string_view s, std::size_t i) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) {
        return {b0, 1};
    }
    std::size_t len = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        return {kReplacement, 1};
    }
    if (i + len > s.size()) {
        return {kReplacement, 1};
    }
    for (std::size_t k = 1; k < len; ++k) {
        const auto b = static_cast<unsigned char>(s[i + k]);
        if ((b & 0xC0) != 0x80) {
            return {kReplacement, 1};
        }
        cp = (cp << 6) | (b & 0x3F);
    }
    return {cp, len};
}

void encode(char32_t cp, std::string& out) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

char32_t to_lower(char32_t cp) {
    if (cp >= 'A' && cp <= 'Z') return cp + 32;
    if (cp < 0x80) return cp;
    if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
    if (cp == 0x178) return 0xFF;
    if (cp >= 0x100 && cp <= 0x17F && cp != 0x138) {
        // Latin Extended-A pairs capitals with the following code point,
        // except the 0x139-0x148 and 0x179-0x17E runs which start odd.
        const bool odd_run = (cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17E);
        if (odd_run ? (cp % 2 == 1) : (cp % 2 == 0)) return cp + 1;
        return cp;
    }
    if (cp >= 0x391 && cp <= 0x3AB && cp != 0x3A2) return cp + 0x20;
    if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;
    if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;
    return cp;
}

bool is_space(char32_t cp) {
    return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\v' || cp == '\f';
}

}  // namespace

std::string fold_case(std::string_view utf8) {
    std::string out;
    out.reserve(utf8.size());
    for (std::size_t i = 0; i < utf8.size();) {
        const auto d = decode(utf8, i);
        encode(to_lower(d.cp), out);
        i += d.len;
    }
    return out;
}

bool is_separator(char32_t cp) {
    if (cp < 0x80) {
        const bool alnum = (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') || (cp >= '0' && cp <= '9');
        return !alnum;
    }
    return cp <= 0xBF                        // C1 controls, Latin-1 punctuation and symbols
           || cp == 0xD7 || cp == 0xF7       // multiplication and division signs
           || (cp >= 0x2000 && cp <= 0x2BFF)  // general punctuation through misc symbols
           || (cp >= 0x3000 && cp <= 0x303F)  // CJK punctuation
           || (cp >= 0xFE30 && cp <= 0xFE4F) || (cp >= 0xFF00 && cp <= 0xFF0F) ||
           (cp >= 0xFF1A && cp <= 0xFF20) || (cp >= 0xFF3B && cp <= 0xFF40) ||
           (cp >= 0xFF5B && cp <= 0xFF65) || cp == kReplacement;
}

std::string separators_to_spaces(std::string_view utf8, std::string_view keep) {
    std::string out;
    out.reserve(utf8.size());
    for (std::size_t i = 0; i < utf8.size();) {
        const auto d = decode(utf8, i);
        const bool kept = d.cp < 0x80 && keep.find(static_cast<char>(d.cp)) != std::string_view::npos;
        if (is_separator(d.cp) && !kept) {
            out.push_back(' ');
        } else {
            encode(d.cp, out);
        }
        i += d.len;
    }
    return out;
}

std::string drop_inner_apostrophes(std::string_view utf8) {
    std::vector<char32_t> cps;
    for (std::size_t i = 0; i < utf8.size();) {
        const auto d = decode(utf8, i);
        cps.push_back(d.cp);
        i += d.len;
    }
    auto letter = [&](std::size_t i) { return !is_separator(cps[i]) && !is_space(cps[i]) && !(cps[i] >= '0' && cps[i] <= '9'); };
    std::string out;
    out.reserve(utf8.size());
    for (std::size_t i = 0; i < cps.size(); ++i) {
        const bool apostrophe = cps[i] == U'\'' || cps[i] == U'\u2019';
        if (apostrophe && i > 0 && i + 1 < cps.size() && letter(i - 1) && letter(i + 1)) continue;
        encode(cps[i], out);
    }
    return out;
}

std::string strip_punctuation(std::string_view utf8, std::string_view keep) {
    std::string out;
    out.reserve(utf8.size());
    for (std::size_t i = 0; i < utf8.size();) {
        const auto d = decode(utf8, i);
        const bool kept = d.cp < 0x80 && keep.find(static_cast<char>(d.cp)) != std::string_view::npos;
        if (!is_separator(d.cp) || kept || is_space(d.cp)) {
            encode(d.cp, out);
        }
        i += d.len;
    }
    return out;
}

std::vector<std::string> split_whitespace(std::string_view s) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && is_space(static_cast<unsigned char>(s[i]))) ++i;
        const std::size_t start = i;
        while (i < s.size() && !is_space(static_cast<unsigned char>(s[i]))) ++i;
        if (i > start) tokens.emplace_back(s.substr(start, i - start));
    }
    return tokens;
}

std::string remove_whitespace(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (!is_space(static_cast<unsigned char>(c))) out.push_back(c);
    }
    return out;
}

std::string join(const std::vector<std::string>& tokens, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i > 0) out.append(sep);
        out.append(tokens[i]);
    }
    return out;
}

bool is_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

bool is_ascii_alpha(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= 'a' && c <= 'z'; });
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n\v\f");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n\v\f");
    return s.substr(first, last - first + 1);
}

}  // namespace rankrobust::text
