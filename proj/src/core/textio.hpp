#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace stylesearch {

// 17 significant digits, '.' separator, locale-independent; round-trips any
// finite double exactly.
std::string format_double(double value);

// Locale-independent strtod over the whole token; throws ValidationError on
// trailing garbage or non-numeric input.
double parse_double(std::string_view token, const std::string& context);

long long parse_int(std::string_view token, const std::string& context);

unsigned long long parse_u64(std::string_view token, const std::string& context);

std::string_view trim(std::string_view text);

// Writes content atomically enough for our purposes ('\n' endings, binary
// stream); throws IoError with the path on failure.
void write_text_file(const std::filesystem::path& path, const std::string& content);

std::string read_text_file(const std::filesystem::path& path);

} // namespace stylesearch
