#pragma once

#include <string>
#include <string_view>

namespace rankrobust {

/// Porter (1980) suffix-stripping stemmer for lowercase ASCII words.
/// Words shorter than three letters, or containing anything other than
/// a-z, are returned unchanged.
[[nodiscard]] std::string porter_stem(std::string_view word);

}  // namespace rankrobust
