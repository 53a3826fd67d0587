#pragma once

#include <chrono>
#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sentivol {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input file is structurally unusable (missing required column, no header).
struct schema_error : error {
    using error::error;
};

/// Data failed record-level validation.
struct validation_error : error {
    using error::error;
};

/// Remote source unreachable or returned a transport-level failure. Retriable,
/// unlike validation_error.
struct fetch_error : error {
    using error::error;
};

/// Numeric input outside the operation's domain.
struct domain_error : error {
    using error::error;
};

struct config_error : error {
    using error::error;
};

// ---------------------------------------------------------------------------
// Dates (day granularity, UTC)
// ---------------------------------------------------------------------------

using Date = std::chrono::year_month_day;

inline Date make_date(int y, unsigned m, unsigned d) {
    return Date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
}

/// Serial day number; differences count calendar days.
inline long day_number(const Date& d) {
    return std::chrono::sys_days{d}.time_since_epoch().count();
}

inline Date date_from_day_number(long n) {
    return Date{std::chrono::sys_days{std::chrono::days{n}}};
}

inline Date next_day(const Date& d) { return date_from_day_number(day_number(d) + 1); }

/// Accepts YYYY-MM-DD or YYYY-MM-DD'T'HH:MM:SS'Z'; any time-of-day component
/// is truncated to the UTC day.
std::optional<Date> parse_date(std::string_view s);

std::string to_string(const Date& d);

// ---------------------------------------------------------------------------
// Daily records
// ---------------------------------------------------------------------------

/// One symbol-day of provider-scored social aggregates.
struct SentimentDaily {
    std::string symbol;
    Date date{};
    double bullish_intensity = 0.0;
    double bearish_intensity = 0.0;
    std::int64_t bull_scored_messages = 0;
    std::int64_t bear_scored_messages = 0;
    std::int64_t total_scanned_messages = 0;

    bool operator==(const SentimentDaily&) const = default;
};

/// One symbol-day of market quotes.
struct QuoteDaily {
    std::string symbol;
    Date date{};
    double open = 0.0;
    double high = 0.0;
    double low = 0.0;
    double close = 0.0;
    std::int64_t volume = 0;

    bool operator==(const QuoteDaily&) const = default;
};

// ---------------------------------------------------------------------------
// Fused per-symbol panel
// ---------------------------------------------------------------------------

inline constexpr double kUndefined = std::numeric_limits<double>::quiet_NaN();

/// NaN marks a value that does not exist for that day (first-day lag
/// artifacts); consumers drop such entries pairwise.
inline bool is_defined(double v) { return !std::isnan(v); }

/// Date-aligned social + financial series for one symbol. Derived columns are
/// added by the feature engine; every column has length dates.size().
struct SymbolPanel {
    std::string symbol;
    std::vector<Date> dates;                 // strictly increasing
    std::vector<SentimentDaily> social;      // per date
    std::vector<QuoteDaily> financial;       // per date
    std::map<std::string, std::vector<double>> derived;

    std::size_t size() const { return dates.size(); }

    const std::vector<double>& derived_column(const std::string& name) const {
        auto it = derived.find(name);
        if (it == derived.end())
            throw error("panel for " + symbol + " has no derived column " + name);
        return it->second;
    }
};

// ---------------------------------------------------------------------------
// inline date impls
// ---------------------------------------------------------------------------

inline std::optional<Date> parse_date(std::string_view s) {
    if (s.size() < 10) return std::nullopt;
    if (s.size() > 10 && s[10] != 'T') return std::nullopt;
    if (s[4] != '-' || s[7] != '-') return std::nullopt;
    auto digits = [](std::string_view t) {
        for (char c : t)
            if (c < '0' || c > '9') return false;
        return !t.empty();
    };
    if (!digits(s.substr(0, 4)) || !digits(s.substr(5, 2)) || !digits(s.substr(8, 2)))
        return std::nullopt;
    int y = std::stoi(std::string(s.substr(0, 4)));
    unsigned m = static_cast<unsigned>(std::stoi(std::string(s.substr(5, 2))));
    unsigned d = static_cast<unsigned>(std::stoi(std::string(s.substr(8, 2))));
    Date out = make_date(y, m, d);
    if (!out.ok()) return std::nullopt;
    return out;
}

inline std::string to_string(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(d.year()),
                  static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
    return buf;
}

}  // namespace sentivol
