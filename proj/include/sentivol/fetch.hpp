#pragma once

#include "sentivol/ingest.hpp"

#include <httplib.h>

#include <sstream>
#include <string>

namespace sentivol::ingest {

namespace detail {

inline std::string substitute(std::string templ, const std::string& key, const std::string& value) {
    const std::string tag = "{" + key + "}";
    std::size_t pos;
    while ((pos = templ.find(tag)) != std::string::npos) templ.replace(pos, tag.size(), value);
    return templ;
}

}  // namespace detail

/// GET the filled-in endpoint and validate the body exactly like parse_quotes.
/// Transport failures raise fetch_error (retriable); any rejected row raises
/// validation_error — no partial silent acceptance.
inline std::vector<QuoteDaily> fetch_quotes(const RemoteSource& source, const std::string& symbol,
                                            Date start, Date end) {
    std::string url = source.url_template;
    url = detail::substitute(url, "symbol", symbol);
    url = detail::substitute(url, "start", to_string(start));
    url = detail::substitute(url, "end", to_string(end));

    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw config_error("remote source URL needs a scheme: " + url);
    const auto path_start = url.find('/', scheme_end + 3);
    const std::string base = path_start == std::string::npos ? url : url.substr(0, path_start);
    const std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);

    httplib::Client client(base);
    client.set_connection_timeout(source.timeout_sec);
    client.set_read_timeout(source.timeout_sec);
    auto res = client.Get(path);
    if (!res) {
        std::ostringstream msg;
        msg << "remote source unreachable: " << base << " (" << httplib::to_string(res.error()) << ")";
        throw fetch_error(msg.str());
    }
    if (res->status != 200)
        throw fetch_error("remote source returned HTTP " + std::to_string(res->status));

    std::istringstream body(res->body);
    QuoteParse parsed;
    try {
        parsed = parse_quotes(body, IngestOptions{source.delimiter});
    } catch (const schema_error& e) {
        throw validation_error(std::string("remote payload malformed: ") + e.what());
    }
    if (!parsed.report.rejected.empty()) {
        const auto& [line, reason] = parsed.report.rejected.front();
        throw validation_error("remote payload invalid at line " + std::to_string(line) + ": " +
                               reason);
    }
    return std::move(parsed.records);
}

}  // namespace sentivol::ingest
