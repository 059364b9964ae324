#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rankrobust::tsv {

/// Splits one line on tab characters. Empty fields are preserved.
[[nodiscard]] std::vector<std::string_view> split(std::string_view line, char sep = '\t');

/// Shortest decimal representation that round-trips to the same double.
[[nodiscard]] std::string format_double(double value);

[[nodiscard]] std::optional<double> parse_double(std::string_view text);
[[nodiscard]] std::optional<std::uint64_t> parse_uint(std::string_view text);

/// Strips a trailing '\r' so CRLF files read like LF files.
[[nodiscard]] std::string_view chomp(std::string_view line);

/// Opens `path` for reading, throwing IoError when it cannot be opened.
[[nodiscard]] std::ifstream open_input(const std::filesystem::path& path);
/// Opens `path` for writing (binary, truncating), creating parent directories.
[[nodiscard]] std::ofstream open_output(const std::filesystem::path& path);

}  // namespace rankrobust::tsv
