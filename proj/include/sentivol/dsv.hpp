#pragma once

#include "sentivol/types.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Delimiter-separated text helpers. No quoting: tickers, dates and numbers
// never contain the delimiter.
namespace sentivol::dsv {

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

inline std::string to_upper(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return out;
}

inline std::vector<std::string> split(std::string_view line, char delim) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(delim, start);
        if (pos == std::string_view::npos) {
            out.push_back(trim(line.substr(start)));
            break;
        }
        out.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
    return out;
}

inline std::optional<double> parse_double(std::string_view s) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || s.empty()) return std::nullopt;
    return v;
}

inline std::optional<std::int64_t> parse_int(std::string_view s) {
    std::int64_t v = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || s.empty()) return std::nullopt;
    return v;
}

/// Shortest decimal form that round-trips to the same double.
inline std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

inline std::string join(const std::vector<std::string>& fields, char delim) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out.push_back(delim);
        out += fields[i];
    }
    return out;
}

/// Case-insensitive header lookup; returns column index per required name.
/// Synonyms: any of the names in one entry match that column.
struct HeaderIndex {
    std::vector<std::string> columns;  // upper-cased header as read

    explicit HeaderIndex(const std::vector<std::string>& header) {
        columns.reserve(header.size());
        for (const auto& h : header) columns.push_back(to_upper(h));
    }

    std::optional<std::size_t> find(std::initializer_list<std::string_view> names) const {
        for (auto name : names) {
            auto up = to_upper(name);
            auto it = std::find(columns.begin(), columns.end(), up);
            if (it != columns.end())
                return static_cast<std::size_t>(it - columns.begin());
        }
        return std::nullopt;
    }
};

}  // namespace sentivol::dsv
