#include <catch2/catch_amalgamated.hpp>

#include "sentivol/fusion.hpp"
#include "sentivol/rng.hpp"

#include <sstream>

using namespace sentivol;
using namespace sentivol::fusion;

namespace {

SentimentDaily sent(const std::string& sym, int day_offset) {
    Date d = date_from_day_number(day_number(make_date(2013, 1, 1)) + day_offset);
    return {sym, d, 1.0, 0.5, 10, 5, 30};
}

QuoteDaily quote(const std::string& sym, int day_offset) {
    Date d = date_from_day_number(day_number(make_date(2013, 1, 1)) + day_offset);
    return {sym, d, 10.0, 11.0, 9.5, 10.5, 1000};
}

AlignConfig loose() {
    AlignConfig cfg;
    cfg.period_start = make_date(2012, 1, 1);
    cfg.period_end = make_date(2016, 1, 1);
    cfg.min_obs = 1;
    return cfg;
}

}  // namespace

TEST_CASE("align takes the per-symbol date intersection") {
    std::vector<SentimentDaily> s{sent("A", 1), sent("A", 2), sent("A", 3)};
    std::vector<QuoteDaily> q{quote("A", 2), quote("A", 3), quote("A", 4)};
    auto res = align(s, q, loose());
    REQUIRE(res.panels.count("A") == 1);
    const auto& p = res.panels.at("A");
    REQUIRE(p.size() == 2);
    CHECK(p.dates[0] == date_from_day_number(day_number(make_date(2013, 1, 1)) + 2));
    CHECK(p.dates[1] == date_from_day_number(day_number(make_date(2013, 1, 1)) + 3));
}

TEST_CASE("align keeps identical date sets intact") {
    std::vector<SentimentDaily> s;
    std::vector<QuoteDaily> q;
    for (int i = 0; i < 5; ++i) {
        s.push_back(sent("A", i));
        q.push_back(quote("A", i));
    }
    auto res = align(s, q, loose());
    CHECK(res.panels.at("A").size() == 5);
    REQUIRE(res.coverage.size() == 1);
    CHECK(res.coverage[0].included);
    CHECK(res.coverage[0].gap_count == 0);
}

TEST_CASE("min_obs excludes but reports") {
    std::vector<SentimentDaily> s;
    std::vector<QuoteDaily> q;
    for (int i = 0; i < 10; ++i) {
        s.push_back(sent("A", i));
        q.push_back(quote("A", i));
    }
    AlignConfig cfg = loose();
    cfg.min_obs = 100;
    auto res = align(s, q, cfg);
    CHECK(res.panels.empty());
    REQUIRE(res.coverage.size() == 1);
    CHECK_FALSE(res.coverage[0].included);
    CHECK(res.coverage[0].joint_days == 10);
    CHECK(res.coverage[0].reason.find("insufficient") != std::string::npos);
}

TEST_CASE("period restricts the join and no joint coverage throws") {
    std::vector<SentimentDaily> s{sent("A", 1)};
    std::vector<QuoteDaily> q{quote("A", 2)};
    CHECK_THROWS_AS(align(s, q, loose()), sentivol::error);

    AlignConfig empty_period = loose();
    empty_period.period_end = make_date(2011, 1, 1);
    CHECK_THROWS_AS(align({sent("A", 1)}, {quote("A", 1)}, empty_period), config_error);
}

TEST_CASE("one-sided symbols are excluded with a reason") {
    auto res = align({sent("A", 1), sent("B", 1)}, {quote("A", 1)}, loose());
    REQUIRE(res.coverage.size() == 2);
    CHECK(res.coverage[0].symbol == "A");
    CHECK(res.coverage[0].included);
    CHECK(res.coverage[1].symbol == "B");
    CHECK(res.coverage[1].reason == "present in only one input");
}

TEST_CASE("coverage_report") {
    SECTION("full panel has no gaps; one missing interior day is one gap") {
        std::vector<SentimentDaily> s;
        std::vector<QuoteDaily> q;
        for (int i = 0; i < 5; ++i) s.push_back(sent("A", i));
        for (int i = 0; i < 5; ++i)
            if (i != 2) q.push_back(quote("A", i));
        auto res = align(s, q, loose());
        auto rows = coverage_report(res.panels);
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].joint_days == 4);
        CHECK(rows[0].gap_count == 1);
        CHECK(rows[0].first_date == make_date(2013, 1, 1));
    }
    SECTION("empty map yields empty summary") {
        CHECK(coverage_report({}).empty());
    }
}

TEST_CASE("align is idempotent on its own output") {
    rng::Engine eng(17);
    std::vector<SentimentDaily> s;
    std::vector<QuoteDaily> q;
    for (int i = 0; i < 30; ++i) {
        if (rng::below(eng, 4)) s.push_back(sent("A", i));
        if (rng::below(eng, 4)) q.push_back(quote("A", i));
    }
    auto first = align(s, q, loose());
    if (!first.panels.empty()) {
        const auto& p = first.panels.at("A");
        auto second = align(p.social, p.financial, loose());
        const auto& p2 = second.panels.at("A");
        CHECK(p2.dates == p.dates);
        CHECK(p2.social == p.social);
        CHECK(p2.financial == p.financial);
    }
}

TEST_CASE("aligned dates never leave either input") {
    rng::Engine eng(23);
    for (int rep = 0; rep < 40; ++rep) {
        std::vector<SentimentDaily> s;
        std::vector<QuoteDaily> q;
        std::set<Date> s_dates, q_dates;
        for (int i = 0; i < 40; ++i) {
            if (rng::below(eng, 3)) {
                s.push_back(sent("A", i));
                s_dates.insert(s.back().date);
            }
            if (rng::below(eng, 3)) {
                q.push_back(quote("A", i));
                q_dates.insert(q.back().date);
            }
        }
        try {
            auto res = align(s, q, loose());
            for (const auto& [_, p] : res.panels) {
                for (std::size_t i = 0; i < p.size(); ++i) {
                    CHECK(s_dates.count(p.dates[i]) == 1);
                    CHECK(q_dates.count(p.dates[i]) == 1);
                    if (i) CHECK(day_number(p.dates[i]) > day_number(p.dates[i - 1]));
                }
            }
        } catch (const sentivol::error&) {
            // no joint coverage in this draw
        }
    }
}

TEST_CASE("coverage writer emits one line per symbol") {
    auto res = align({sent("A", 1), sent("B", 2)}, {quote("A", 1)}, loose());
    std::ostringstream os;
    write_coverage(os, res.coverage);
    std::string text = os.str();
    CHECK(text.find("SYMBOL") == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 3);  // header + 2 symbols
}
