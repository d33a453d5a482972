#include "textio.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "errors.hpp"

namespace stylesearch {

std::string format_double(double value) {
    char buf[64];
    const auto [end, ec] =
        std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
    if (ec != std::errc()) {
        throw std::runtime_error("format_double: conversion failed");
    }
    return std::string(buf, end);
}

double parse_double(std::string_view token, const std::string& context) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw ValidationError(context + ": expected a real number, got '" +
                              std::string(token) + "'");
    }
    return value;
}

long long parse_int(std::string_view token, const std::string& context) {
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw ValidationError(context + ": expected an integer, got '" +
                              std::string(token) + "'");
    }
    return value;
}

unsigned long long parse_u64(std::string_view token, const std::string& context) {
    unsigned long long value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw ValidationError(context + ": expected an unsigned integer, got '" +
                              std::string(token) + "'");
    }
    return value;
}

std::string_view trim(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = text.find_last_not_of(" \t\r\n");
    return text.substr(first, last - first + 1);
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    file.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!file) {
        throw IoError("write failed for '" + path.string() + "'");
    }
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw IoError("cannot open '" + path.string() + "' for reading");
    }
    std::ostringstream buffer;
    buffer << file.rdbuf();
    if (file.bad()) {
        throw IoError("read failed for '" + path.string() + "'");
    }
    return buffer.str();
}

} // namespace stylesearch
