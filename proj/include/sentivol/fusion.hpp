#pragma once

#include "sentivol/dsv.hpp"
#include "sentivol/types.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

// Inner-join of sentiment and quote records per symbol over the analysis
// period. No interpolation: non-trading and uncovered days drop out.
namespace sentivol::fusion {

struct AlignConfig {
    Date period_start = make_date(2012, 1, 1);
    Date period_end = make_date(2016, 1, 1);  // inclusive
    std::size_t min_obs = 100;
};

struct CoverageRow {
    std::string symbol;
    std::size_t joint_days = 0;
    std::optional<Date> first_date;
    std::optional<Date> last_date;
    std::size_t gap_count = 0;  // interior jumps of more than one calendar day
    bool included = false;
    std::string reason;  // why excluded, empty when included
};

struct AlignResult {
    std::map<std::string, SymbolPanel> panels;
    std::vector<CoverageRow> coverage;  // one row per input symbol, excluded ones too
};

namespace detail {

inline std::size_t count_gaps(const std::vector<Date>& dates) {
    std::size_t gaps = 0;
    for (std::size_t i = 1; i < dates.size(); ++i)
        if (day_number(dates[i]) - day_number(dates[i - 1]) > 1) ++gaps;
    return gaps;
}

inline CoverageRow coverage_of(const SymbolPanel& panel, bool included, std::string reason) {
    CoverageRow row;
    row.symbol = panel.symbol;
    row.joint_days = panel.size();
    if (!panel.dates.empty()) {
        row.first_date = panel.dates.front();
        row.last_date = panel.dates.back();
    }
    row.gap_count = count_gaps(panel.dates);
    row.included = included;
    row.reason = std::move(reason);
    return row;
}

}  // namespace detail

/// Joins per symbol on the exact date intersection, restricted to the period.
/// Symbols with fewer joint observations than min_obs are excluded but still
/// reported. Throws when no symbol has any joint date at all.
inline AlignResult align(const std::vector<SentimentDaily>& sentiment,
                         const std::vector<QuoteDaily>& quotes, const AlignConfig& cfg = {}) {
    if (cfg.period_end < cfg.period_start) throw config_error("align: empty analysis period");

    std::map<std::string, std::map<Date, SentimentDaily>> by_sym_sent;
    for (const auto& r : sentiment) by_sym_sent[r.symbol][r.date] = r;
    std::map<std::string, std::map<Date, QuoteDaily>> by_sym_quote;
    for (const auto& r : quotes) by_sym_quote[r.symbol][r.date] = r;

    std::map<std::string, int> all_symbols;
    for (const auto& [sym, _] : by_sym_sent) all_symbols[sym] |= 1;
    for (const auto& [sym, _] : by_sym_quote) all_symbols[sym] |= 2;

    AlignResult out;
    std::size_t any_joint = 0;
    for (const auto& [sym, sides] : all_symbols) {
        SymbolPanel panel;
        panel.symbol = sym;
        if (sides == 3) {
            const auto& s = by_sym_sent[sym];
            const auto& q = by_sym_quote[sym];
            for (const auto& [date, srec] : s) {
                if (date < cfg.period_start || cfg.period_end < date) continue;
                auto it = q.find(date);
                if (it == q.end()) continue;
                panel.dates.push_back(date);
                panel.social.push_back(srec);
                panel.financial.push_back(it->second);
            }
        }
        any_joint += panel.size();
        if (panel.size() >= cfg.min_obs) {
            out.coverage.push_back(detail::coverage_of(panel, true, ""));
            out.panels.emplace(sym, std::move(panel));
        } else {
            std::string reason = sides != 3              ? "present in only one input"
                                 : panel.dates.empty()   ? "no joint dates in period"
                                                         : "insufficient joint observations";
            out.coverage.push_back(detail::coverage_of(panel, false, std::move(reason)));
        }
    }
    if (any_joint == 0) throw error("no joint coverage: sentiment and quote dates never intersect");
    return out;
}

/// One row per panel (all included by construction).
inline std::vector<CoverageRow> coverage_report(const std::map<std::string, SymbolPanel>& panels) {
    std::vector<CoverageRow> out;
    out.reserve(panels.size());
    for (const auto& [_, panel] : panels) out.push_back(detail::coverage_of(panel, true, ""));
    return out;
}

inline void write_coverage(std::ostream& os, const std::vector<CoverageRow>& rows,
                           char delim = ',') {
    os << dsv::join({"SYMBOL", "JOINT_DAYS", "FIRST_DATE", "LAST_DATE", "GAP_COUNT", "INCLUDED",
                     "REASON"},
                    delim)
       << '\n';
    for (const auto& r : rows) {
        os << dsv::join({r.symbol, std::to_string(r.joint_days),
                         r.first_date ? to_string(*r.first_date) : "",
                         r.last_date ? to_string(*r.last_date) : "", std::to_string(r.gap_count),
                         r.included ? "1" : "0", r.reason},
                        delim)
           << '\n';
    }
}

}  // namespace sentivol::fusion
