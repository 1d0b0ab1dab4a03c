#include <doctest.h>

#include <cmath>

#include "lexshift/report.hpp"
#include "lexshift/simcorpus.hpp"
#include "test_util.hpp"

using namespace lexshift;
using lexshift::test::record;

TEST_SUITE_BEGIN("report");

namespace {

const LexiconBundle& lex() { return LexiconBundle::defaults(); }

// Hand-built profiles keyed by id; only the metric under test matters.
std::map<std::string, SemanticProfile> fixed_profiles(
    const std::vector<std::pair<std::string, double>>& values) {
    std::map<std::string, SemanticProfile> out;
    for (const auto& [id, v] : values) {
        SemanticProfile p;
        p.diversity = v;
        out[id] = p;
    }
    return out;
}

const TrendSeries& series_for(const std::vector<TrendSeries>& all, TrendGroup g) {
    for (const auto& s : all) {
        if (s.group == g) return s;
    }
    FAIL("missing series");
    ::abort();
}

}  // namespace

TEST_CASE("base-year normalization") {
    Corpus c({record("a", 2000, VenueKind::journal, "T."),
              record("b", 2010, VenueKind::journal, "T.")});
    auto profiles = fixed_profiles({{"a", 4.0}, {"b", 6.0}});
    auto all = trend_series(c, profiles, {}, "diversity", 2000, 2023);
    const auto& s = series_for(all, TrendGroup::all);
    CHECK(s.points.at(2000).normalized == 1.0);
    CHECK(s.points.at(2010).normalized == doctest::Approx(1.5));
}

TEST_CASE("constant metric normalizes to one everywhere") {
    std::vector<AbstractRecord> recs;
    std::vector<std::pair<std::string, double>> vals;
    for (int year = 2000; year <= 2005; ++year) {
        for (int i = 0; i < 3; ++i) {
            std::string id = "r" + std::to_string(year) + "_" + std::to_string(i);
            recs.push_back(record(id, year, VenueKind::journal, "T."));
            vals.emplace_back(id, 2.5);
        }
    }
    auto all = trend_series(Corpus(recs), fixed_profiles(vals), {}, "diversity", 2000, 2023);
    for (const auto& [year, p] : series_for(all, TrendGroup::all).points) {
        CHECK(p.normalized == doctest::Approx(1.0));
    }
}

TEST_CASE("unknown metric and absent base year raise") {
    Corpus c({record("a", 2000, VenueKind::journal, "T.")});
    auto profiles = fixed_profiles({{"a", 1.0}});
    CHECK_THROWS(trend_series(c, profiles, {}, "not_a_metric", 2000, 2023));
    CHECK_THROWS(trend_series(c, profiles, {}, "diversity", 1999, 2023));
}

TEST_CASE("overlay removes classified documents from the main groups") {
    std::vector<AbstractRecord> recs;
    std::vector<std::pair<std::string, double>> vals;
    std::vector<ClassificationResult> results;
    for (int i = 0; i < 10; ++i) {
        std::string id = "base" + std::to_string(i);
        recs.push_back(record(id, 2000, VenueKind::journal, "T."));
        vals.emplace_back(id, 1.0);
    }
    for (int i = 0; i < 10; ++i) {
        std::string id = "post" + std::to_string(i);
        recs.push_back(record(id, 2024, i % 2 ? VenueKind::journal : VenueKind::proceedings,
                              "T."));
        vals.emplace_back(id, i < 4 ? 9.0 : 1.0);
        results.push_back({id, 0, 0, i < 4});  // four flagged docs carry value 9
    }
    // one pre-onset flagged doc stays in the main groups
    recs.push_back(record("early", 2000, VenueKind::journal, "T."));
    vals.emplace_back("early", 1.0);
    results.push_back({"early", 0, 0, true});

    auto all = trend_series(Corpus(recs), fixed_profiles(vals), results, "diversity", 2000, 2023);
    const auto& main = series_for(all, TrendGroup::all);
    const auto& overlay = series_for(all, TrendGroup::llm_overlay);

    CHECK(main.points.at(2024).n_docs == 6);
    CHECK(overlay.points.at(2024).n_docs == 4);
    CHECK(main.points.at(2024).mean == doctest::Approx(1.0));
    CHECK(overlay.points.at(2024).mean == doctest::Approx(9.0));
    CHECK(overlay.points.count(2000) == 0);         // onset gate
    CHECK(main.points.at(2000).n_docs == 11);       // pre-onset flag ignored
    // overlay normalizes against the all-group base mean
    CHECK(overlay.points.at(2024).normalized == doctest::Approx(9.0));
}

TEST_CASE("main plus overlay counts conserve totals per year") {
    SimConfig cfg = SimConfig::example(0.2, 314);
    cfg.docs_per_year = 80;
    cfg.years = {2019, 2025};
    cfg.onset_year = 2023;
    SimResult sim = generate(cfg, lex());
    ProcessedCorpus processed = process_corpus(sim.corpus, lex());
    GlobalMarkerSet g;
    g.rare = sim.true_rare;
    g.common = sim.true_common;
    auto results = classify_corpus(processed, g);

    std::map<std::string, SemanticProfile> profiles;
    for (const auto& rec : sim.corpus.records()) {
        profiles[rec.id] = profile(rec.text, lex());
    }
    auto all = trend_series(sim.corpus, profiles, results, "passive_per_sentence", 2019, 2023);
    const auto& main = series_for(all, TrendGroup::all);
    const auto& journal = series_for(all, TrendGroup::journal);
    const auto& proceedings = series_for(all, TrendGroup::proceedings);
    const auto& overlay = series_for(all, TrendGroup::llm_overlay);
    for (int year : sim.corpus.years()) {
        std::size_t total = sim.corpus.in_year(year).size();
        std::size_t main_n = main.points.count(year) ? main.points.at(year).n_docs : 0;
        std::size_t over_n = overlay.points.count(year) ? overlay.points.at(year).n_docs : 0;
        CHECK(main_n + over_n == total);
        std::size_t j = journal.points.count(year) ? journal.points.at(year).n_docs : 0;
        std::size_t p = proceedings.points.count(year) ? proceedings.points.at(year).n_docs : 0;
        CHECK(j + p == main_n);
    }
    // injected documents have their passive rate suppressed
    for (int year = 2023; year <= 2025; ++year) {
        CHECK(overlay.points.at(year).mean < main.points.at(year).mean);
    }
}

TEST_CASE("normalization is scale equivariant") {
    std::vector<AbstractRecord> recs;
    std::vector<std::pair<std::string, double>> vals, scaled;
    std::mt19937 rng(51);
    for (int year = 2000; year <= 2006; ++year) {
        for (int i = 0; i < 4; ++i) {
            std::string id = "r" + std::to_string(year) + "_" + std::to_string(i);
            recs.push_back(record(id, year, VenueKind::journal, "T."));
            double v = 1.0 + (rng() % 1000) / 250.0;
            vals.emplace_back(id, v);
            scaled.emplace_back(id, 3.5 * v);
        }
    }
    Corpus c(recs);
    auto a = trend_series(c, fixed_profiles(vals), {}, "diversity", 2000, 2023);
    auto b = trend_series(c, fixed_profiles(scaled), {}, "diversity", 2000, 2023);
    const auto& sa = series_for(a, TrendGroup::all);
    const auto& sb = series_for(b, TrendGroup::all);
    for (const auto& [year, p] : sa.points) {
        REQUIRE(p.normalized.has_value());
        CHECK(*p.normalized == doctest::Approx(*sb.points.at(year).normalized).epsilon(1e-12));
    }
}

TEST_CASE("author_count metric skips records lacking the field") {
    Corpus c({record("a", 2000, VenueKind::journal, "T.", 2),
              record("b", 2000, VenueKind::journal, "T."),
              record("c", 2001, VenueKind::journal, "T.", 4)});
    auto all = trend_series(c, {}, {}, "author_count", 2000, 2023);
    const auto& s = series_for(all, TrendGroup::all);
    CHECK(s.points.at(2000).n_docs == 1);
    CHECK(s.points.at(2000).mean == doctest::Approx(2.0));
    CHECK(s.points.at(2001).normalized == doctest::Approx(2.0));
}

TEST_CASE("csv export: row counts, ordering, and full-precision round trip") {
    Corpus c({record("a", 2000, VenueKind::journal, "T."),
              record("b", 2001, VenueKind::journal, "T."),
              record("c", 2002, VenueKind::proceedings, "T.")});
    auto profiles = fixed_profiles({{"a", 1.0 / 3.0}, {"b", 2.0 / 7.0}, {"c", 0.123456789012345}});
    auto all = trend_series(c, profiles, {}, "diversity", 2000, 2023);
    std::string csv = series_to_csv(all);

    // header + (all: 3 rows) + (journal: 2) + (proceedings: 1)
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
    auto header_pos = csv.find("metric,group,year,mean,normalized,n_docs");
    CHECK(header_pos == 0);
    CHECK(csv.find(",all,") < csv.find(",journal,"));
    CHECK(csv.find(",journal,") < csv.find(",proceedings,"));

    auto parsed = parse_series_csv(csv);
    REQUIRE(parsed.size() == 3);  // empty overlay series exports no rows
    for (const auto& s : parsed) {
        for (const auto& [year, p] : s.points) {
            const auto& orig = series_for(all, s.group).points.at(year);
            CHECK(p.mean == orig.mean);
            CHECK(p.n_docs == orig.n_docs);
            CHECK(p.normalized == orig.normalized);
        }
    }

    CHECK(series_to_csv({}) == "metric,group,year,mean,normalized,n_docs\n");
}

TEST_CASE("row order is a pure function of content") {
    Corpus c({record("a", 2000, VenueKind::journal, "T."),
              record("b", 2001, VenueKind::proceedings, "T.")});
    auto profiles = fixed_profiles({{"a", 1.0}, {"b", 2.0}});
    auto s1 = trend_series(c, profiles, {}, "diversity", 2000, 2023);
    auto s2 = s1;
    std::reverse(s2.begin(), s2.end());
    CHECK(series_to_csv(s1) == series_to_csv(s2));
    CHECK(series_to_json(s1) == series_to_json(s2));
}

TEST_SUITE_END();
