#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace orelco {

/// Text up to the first '#', with surrounding whitespace trimmed.
std::string_view strip_comment(std::string_view line);
std::vector<std::string> split_ws(std::string_view text);
std::vector<std::string> split_lines(std::string_view text);
std::string_view trim(std::string_view text);

/// Throws a parse error naming `what` when `token` is not a decimal integer.
std::uint64_t parse_uint(std::string_view token, std::string_view what);
std::int64_t parse_int(std::string_view token, std::string_view what);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

/// "line <n>: <message>" parse error.
[[noreturn]] void parse_fail(std::size_t line, const std::string& message);

}  // namespace orelco
