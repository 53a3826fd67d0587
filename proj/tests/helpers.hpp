#pragma once

#include "sentivol/types.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace testutil {

/// Builds a panel with consecutive dates; one call per day.
struct PanelBuilder {
    sentivol::SymbolPanel p;
    long day = sentivol::day_number(sentivol::make_date(2013, 1, 1));

    explicit PanelBuilder(std::string symbol = "TST") { p.symbol = std::move(symbol); }

    PanelBuilder& row(double bull, double bear, long bull_msg, long bear_msg, long total,
                      double open, double high, double low, double close, long volume) {
        sentivol::Date d = sentivol::date_from_day_number(day++);
        p.dates.push_back(d);
        p.social.push_back({p.symbol, d, bull, bear, bull_msg, bear_msg, total});
        p.financial.push_back({p.symbol, d, open, high, low, close, volume});
        return *this;
    }

    /// Social values from two driver columns, quotes from a close series.
    PanelBuilder& simple_row(double a, double b, double close) {
        return row(a, b, 10, 10, 30, close, close * 1.02, close * 0.98, close, 1000);
    }
};

inline bool same_value(double a, double b) {
    if (std::isnan(a) && std::isnan(b)) return true;
    return a == b;
}

inline bool same_series(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!same_value(a[i], b[i])) return false;
    return true;
}

}  // namespace testutil
