#pragma once

#include "sentivol/dsv.hpp"
#include "sentivol/types.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

// Parse, validate and normalize raw sentiment / quote records. Rejected rows
// never abort a file; schema-level failures do.
namespace sentivol::ingest {

struct IngestOptions {
    char delimiter = ',';
};

struct IngestReport {
    std::size_t accepted = 0;
    std::vector<std::pair<std::size_t, std::string>> rejected;  // (line number, reason)
    std::set<std::string> symbols_seen;
    std::vector<std::pair<std::size_t, std::string>> warnings;

    std::size_t total_rows() const { return accepted + rejected.size(); }
};

struct SentimentParse {
    std::vector<SentimentDaily> records;
    IngestReport report;
};

struct QuoteParse {
    std::vector<QuoteDaily> records;
    IngestReport report;
};

namespace detail {

struct RowCursor {
    const std::vector<std::string>& fields;
    std::size_t line;
    std::vector<std::pair<std::size_t, std::string>>& rejected;
    bool bad = false;

    void reject(const std::string& reason) {
        if (!bad) rejected.emplace_back(line, reason);
        bad = true;
    }

    std::string symbol(std::size_t idx) {
        std::string s = dsv::to_upper(fields[idx]);
        if (s.empty()) reject("empty symbol");
        return s;
    }

    Date date(std::size_t idx) {
        auto d = parse_date(fields[idx]);
        if (!d) {
            reject("unparseable date: " + fields[idx]);
            return Date{};
        }
        return *d;
    }

    double real(std::size_t idx, const std::string& name) {
        auto v = dsv::parse_double(fields[idx]);
        if (!v) {
            reject("unparseable number in " + name + ": " + fields[idx]);
            return 0.0;
        }
        return *v;
    }

    std::int64_t count(std::size_t idx, const std::string& name) {
        auto v = dsv::parse_int(fields[idx]);
        if (!v) {
            reject("unparseable integer in " + name + ": " + fields[idx]);
            return 0;
        }
        if (*v < 0) reject(name + " negative: " + fields[idx]);
        return *v;
    }
};

inline std::vector<std::string> read_header(std::istream& in, char delim) {
    std::string line;
    if (!std::getline(in, line)) throw schema_error("empty input: header row required");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    // strip a UTF-8 BOM if present
    if (line.size() >= 3 && line[0] == '\xEF' && line[1] == '\xBB' && line[2] == '\xBF')
        line.erase(0, 3);
    return dsv::split(line, delim);
}

inline std::size_t require_column(const dsv::HeaderIndex& hdr,
                                  std::initializer_list<std::string_view> names) {
    if (auto idx = hdr.find(names)) return *idx;
    throw schema_error("missing required column: " + std::string(*names.begin()));
}

}  // namespace detail

/// Seven-attribute sentiment export: SYMBOL, TIMESTAMP_UTC (or DATE),
/// BULLISH_INTENSITY, BEARISH_INTENSITY, BULL_SCORED_MESSAGES,
/// BEAR_SCORED_MESSAGES, TOTAL_SCANNED_MESSAGES. Column order free, headers
/// case-insensitive. Output sorted by (symbol, date).
inline SentimentParse parse_sentiment(std::istream& in, const IngestOptions& opt = {}) {
    const dsv::HeaderIndex hdr(detail::read_header(in, opt.delimiter));
    const std::size_t c_sym = detail::require_column(hdr, {"SYMBOL"});
    const std::size_t c_date = detail::require_column(hdr, {"TIMESTAMP_UTC", "DATE"});
    const std::size_t c_bull = detail::require_column(hdr, {"BULLISH_INTENSITY"});
    const std::size_t c_bear = detail::require_column(hdr, {"BEARISH_INTENSITY"});
    const std::size_t c_bmsg = detail::require_column(hdr, {"BULL_SCORED_MESSAGES"});
    const std::size_t c_rmsg = detail::require_column(hdr, {"BEAR_SCORED_MESSAGES"});
    const std::size_t c_tot = detail::require_column(hdr, {"TOTAL_SCANNED_MESSAGES"});

    SentimentParse out;
    std::set<std::pair<std::string, Date>> seen;
    std::string line;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = dsv::split(line, opt.delimiter);
        if (fields.size() != hdr.columns.size()) {
            out.report.rejected.emplace_back(lineno, "column count mismatch");
            continue;
        }
        detail::RowCursor row{fields, lineno, out.report.rejected};
        SentimentDaily rec;
        rec.symbol = row.symbol(c_sym);
        rec.date = row.date(c_date);
        rec.bullish_intensity = row.real(c_bull, "bullish_intensity");
        rec.bearish_intensity = row.real(c_bear, "bearish_intensity");
        rec.bull_scored_messages = row.count(c_bmsg, "bull_scored_messages");
        rec.bear_scored_messages = row.count(c_rmsg, "bear_scored_messages");
        rec.total_scanned_messages = row.count(c_tot, "total_scanned_messages");
        if (!row.bad && rec.bullish_intensity < 0) row.reject("bullish_intensity negative");
        if (!row.bad && rec.bearish_intensity < 0) row.reject("bearish_intensity negative");
        if (!row.bad && !seen.insert({rec.symbol, rec.date}).second)
            row.reject("duplicate (symbol, date)");
        if (row.bad) continue;
        if (rec.bull_scored_messages + rec.bear_scored_messages > rec.total_scanned_messages)
            out.report.warnings.emplace_back(lineno, "scored messages exceed total_scanned_messages");
        out.report.symbols_seen.insert(rec.symbol);
        out.records.push_back(std::move(rec));
        ++out.report.accepted;
    }
    std::sort(out.records.begin(), out.records.end(), [](const auto& a, const auto& b) {
        return a.symbol != b.symbol ? a.symbol < b.symbol : a.date < b.date;
    });
    return out;
}

/// OPEN/HIGH/LOW/CLOSE/VOLUME plus SYMBOL and DATE (or TIMESTAMP_UTC).
inline QuoteParse parse_quotes(std::istream& in, const IngestOptions& opt = {}) {
    const dsv::HeaderIndex hdr(detail::read_header(in, opt.delimiter));
    const std::size_t c_sym = detail::require_column(hdr, {"SYMBOL"});
    const std::size_t c_date = detail::require_column(hdr, {"DATE", "TIMESTAMP_UTC"});
    const std::size_t c_open = detail::require_column(hdr, {"OPEN"});
    const std::size_t c_high = detail::require_column(hdr, {"HIGH"});
    const std::size_t c_low = detail::require_column(hdr, {"LOW"});
    const std::size_t c_close = detail::require_column(hdr, {"CLOSE"});
    const std::size_t c_vol = detail::require_column(hdr, {"VOLUME"});

    QuoteParse out;
    std::set<std::pair<std::string, Date>> seen;
    std::string line;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = dsv::split(line, opt.delimiter);
        if (fields.size() != hdr.columns.size()) {
            out.report.rejected.emplace_back(lineno, "column count mismatch");
            continue;
        }
        detail::RowCursor row{fields, lineno, out.report.rejected};
        QuoteDaily rec;
        rec.symbol = row.symbol(c_sym);
        rec.date = row.date(c_date);
        rec.open = row.real(c_open, "open");
        rec.high = row.real(c_high, "high");
        rec.low = row.real(c_low, "low");
        rec.close = row.real(c_close, "close");
        rec.volume = row.count(c_vol, "volume");
        if (!row.bad) {
            if (!(rec.low > 0)) row.reject("non-positive low price");
            else if (rec.high < rec.low) row.reject("high < low");
            else if (rec.open < rec.low || rec.open > rec.high) row.reject("open outside [low, high]");
            else if (rec.close < rec.low || rec.close > rec.high) row.reject("close outside [low, high]");
        }
        if (!row.bad && !seen.insert({rec.symbol, rec.date}).second)
            row.reject("duplicate (symbol, date)");
        if (row.bad) continue;
        out.report.symbols_seen.insert(rec.symbol);
        out.records.push_back(std::move(rec));
        ++out.report.accepted;
    }
    std::sort(out.records.begin(), out.records.end(), [](const auto& a, const auto& b) {
        return a.symbol != b.symbol ? a.symbol < b.symbol : a.date < b.date;
    });
    return out;
}

inline SentimentParse parse_sentiment_file(const std::string& path, const IngestOptions& opt = {}) {
    std::ifstream in(path);
    if (!in) throw error("cannot open " + path);
    return parse_sentiment(in, opt);
}

inline QuoteParse parse_quotes_file(const std::string& path, const IngestOptions& opt = {}) {
    std::ifstream in(path);
    if (!in) throw error("cannot open " + path);
    return parse_quotes(in, opt);
}

// ---------------------------------------------------------------------------
// Serialization back to the input schema (round-trip, synth fixtures)
// ---------------------------------------------------------------------------

inline void write_sentiment(std::ostream& os, const std::vector<SentimentDaily>& recs,
                            char delim = ',') {
    std::vector<std::string> hdr{"SYMBOL",
                                 "TIMESTAMP_UTC",
                                 "BULLISH_INTENSITY",
                                 "BEARISH_INTENSITY",
                                 "BULL_SCORED_MESSAGES",
                                 "BEAR_SCORED_MESSAGES",
                                 "TOTAL_SCANNED_MESSAGES"};
    os << dsv::join(hdr, delim) << '\n';
    for (const auto& r : recs) {
        os << dsv::join({r.symbol, to_string(r.date), dsv::format_double(r.bullish_intensity),
                         dsv::format_double(r.bearish_intensity),
                         std::to_string(r.bull_scored_messages),
                         std::to_string(r.bear_scored_messages),
                         std::to_string(r.total_scanned_messages)},
                        delim)
           << '\n';
    }
}

inline void write_quotes(std::ostream& os, const std::vector<QuoteDaily>& recs, char delim = ',') {
    std::vector<std::string> hdr{"SYMBOL", "DATE", "OPEN", "HIGH", "LOW", "CLOSE", "VOLUME"};
    os << dsv::join(hdr, delim) << '\n';
    for (const auto& r : recs) {
        os << dsv::join({r.symbol, to_string(r.date), dsv::format_double(r.open),
                         dsv::format_double(r.high), dsv::format_double(r.low),
                         dsv::format_double(r.close), std::to_string(r.volume)},
                        delim)
           << '\n';
    }
}

// ---------------------------------------------------------------------------
// Remote source
// ---------------------------------------------------------------------------

/// Endpoint template with {symbol}, {start}, {end} placeholders; the response
/// body must follow the parse_quotes schema. No provider is hardcoded.
struct RemoteSource {
    std::string url_template;
    char delimiter = ',';
    int timeout_sec = 10;
};

std::vector<QuoteDaily> fetch_quotes(const RemoteSource& source, const std::string& symbol,
                                     Date start, Date end);

}  // namespace sentivol::ingest
