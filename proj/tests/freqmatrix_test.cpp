#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "lexshift/freqmatrix.hpp"
#include "test_util.hpp"

using namespace lexshift;
using lexshift::test::record;

TEST_SUITE_BEGIN("freqmatrix");

namespace {

const LexiconBundle& lex() { return LexiconBundle::defaults(); }

// Closed-form normal equations in extended precision; an independent route
// compared against the centered two-pass fit.
std::pair<double, double> ols_oracle(const std::vector<int>& xs, const std::vector<double>& ys) {
    long double n = static_cast<long double>(xs.size());
    long double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        long double x = xs[i];
        long double y = ys[i];
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    long double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    long double intercept = (sy - slope * sx) / n;
    return {static_cast<double>(slope), static_cast<double>(intercept)};
}

YearWordMatrix linear_word_matrix() {
    // "girder" frequency rises 0.01/yr over 2000-2004 with 100 docs per year
    YearWordMatrix::RawCounts raw;
    for (int year = 2000; year <= 2006; ++year) {
        std::size_t count = static_cast<std::size_t>(year - 1999);
        if (year == 2006) count = 14;  // observed departure in the target year
        raw[year] = {100, {{"girder", count}}};
    }
    return YearWordMatrix(raw);
}

}  // namespace

TEST_CASE("document-level frequency is containment, not occurrences") {
    Corpus c({record("a", 2020, VenueKind::journal, "Girder girder girder, girders everywhere."),
              record("b", 2020, VenueKind::journal, "Nothing relevant here."),
              record("c", 2020, VenueKind::journal, "Concrete slabs."),
              record("d", 2020, VenueKind::journal, "Concrete girders again.")});
    YearWordMatrix m = build_matrix(c, lex(), 1);
    CHECK(m.n_docs(2020) == 4);
    CHECK(m.doc_count(2020, "girder") == 2);  // doc "a" counts once
    CHECK(m.frequency(2020, "girder") == 0.5);
    CHECK(m.frequency(2020, "concrete") == 0.5);
    CHECK(m.frequency(2020, "absent") == 0.0);
}

TEST_CASE("single-document word yields 1/n frequency") {
    std::vector<AbstractRecord> recs;
    for (int i = 0; i < 4; ++i) {
        recs.push_back(record("r" + std::to_string(i), 2021, VenueKind::journal,
                              i == 0 ? "Unique pylon study." : "Generic flow narrative."));
    }
    YearWordMatrix m = build_matrix(Corpus(recs), lex(), 1);
    CHECK(m.frequency(2021, "pylon") == 0.25);
}

TEST_CASE("matrix frequencies times n_docs are integral document counts") {
    std::mt19937 rng(29);
    std::vector<std::string> vocabulary = {"beam",  "soil",  "creep", "flux",
                                           "crack", "gauge", "strain"};
    std::vector<AbstractRecord> recs;
    for (int i = 0; i < 1000; ++i) {
        std::string text;
        std::size_t n = 1 + rng() % 6;
        for (std::size_t k = 0; k < n; ++k) {
            // duplicated words exercise the containment rule
            const auto& w = vocabulary[rng() % vocabulary.size()];
            text += w + " " + w + " ";
        }
        text += "ends.";
        recs.push_back(record("r" + std::to_string(i), 2000 + static_cast<int>(rng() % 5),
                              VenueKind::journal, text));
    }
    Corpus c(recs);
    YearWordMatrix m = build_matrix(c, lex(), 1);

    // brute-force recount from raw text
    ProcessedCorpus processed = process_corpus(c, lex());
    for (int year : m.years()) {
        for (const auto& w : m.vocab()) {
            double f = m.frequency(year, w);
            CHECK(f >= 0.0);
            CHECK(f <= 1.0);
            double scaled = f * static_cast<double>(m.n_docs(year));
            CHECK(std::abs(scaled - std::round(scaled)) < 1e-9);
            std::size_t brute = 0;
            for (const auto& d : processed.docs) {
                if (d.year == year && d.contains(w)) ++brute;
            }
            CHECK(m.doc_count(year, w) == brute);
        }
    }
}

TEST_CASE("matrix build is permutation invariant") {
    std::mt19937 rng(31);
    std::vector<AbstractRecord> recs;
    for (int i = 0; i < 60; ++i) {
        recs.push_back(record("r" + std::to_string(i), 2000 + static_cast<int>(rng() % 3),
                              VenueKind::journal,
                              (i % 2 ? "Shear walls resist loads." : "Dampers absorb energy.")));
    }
    YearWordMatrix a = build_matrix(Corpus(recs), lex(), 1);
    std::shuffle(recs.begin(), recs.end(), rng);
    YearWordMatrix b = build_matrix(Corpus(recs), lex(), 1);
    CHECK(a.years() == b.years());
    CHECK(a.vocab() == b.vocab());
    for (int year : a.years()) {
        for (const auto& w : a.vocab()) {
            CHECK(a.doc_count(year, w) == b.doc_count(year, w));
        }
    }
}

TEST_CASE("zero-document years are omitted from the matrix") {
    YearWordMatrix::RawCounts raw;
    raw[2000] = {10, {{"w", 1}}};
    raw[2001] = {0, {}};
    raw[2002] = {10, {{"w", 2}}};
    YearWordMatrix m(raw);
    CHECK(m.years() == std::vector<int>{2000, 2002});
    CHECK_FALSE(m.has_year(2001));
}

TEST_CASE("vocabulary pruning is reported") {
    Corpus c({record("a", 2020, VenueKind::journal, "Rare hapax word zyzzyva."),
              record("b", 2020, VenueKind::journal, "Common concrete thing."),
              record("c", 2020, VenueKind::journal, "Common concrete thing again.")});
    YearWordMatrix m = build_matrix(c, lex(), 2);
    CHECK(std::binary_search(m.vocab().begin(), m.vocab().end(), std::string("concrete")));
    CHECK_FALSE(std::binary_search(m.vocab().begin(), m.vocab().end(), std::string("zyzzyva")));
    CHECK(m.pruned_words() > 0);
    CHECK(m.min_doc_count() == 2);
}

TEST_CASE("exact linear series recovers slope and extrapolates") {
    YearWordMatrix m = linear_word_matrix();
    TrendModel fit = fit_counterfactual(m, "girder", {2000, 2004});
    CHECK(fit.slope == doctest::Approx(0.01).epsilon(1e-9));
    CHECK(fit.predict(2006) == doctest::Approx(0.07).epsilon(1e-9));
    CHECK(fit.floor_epsilon == doctest::Approx(0.01));
}

TEST_CASE("constant series has zero slope") {
    YearWordMatrix::RawCounts raw;
    for (int year = 2000; year <= 2009; ++year) raw[year] = {100, {{"w", 2}}};
    YearWordMatrix m(raw);
    TrendModel fit = fit_counterfactual(m, "w", {2000, 2009});
    CHECK(std::abs(fit.slope) < 1e-12);
    CHECK(fit.predict(2015) == doctest::Approx(0.02).epsilon(1e-9));
}

TEST_CASE("least squares matches the normal-equations oracle") {
    std::mt19937 rng(37);
    std::uniform_real_distribution<double> noise(0.0, 0.2);
    for (int trial = 0; trial < 100; ++trial) {
        YearWordMatrix::RawCounts raw;
        std::vector<int> xs;
        std::vector<double> ys;
        for (int year = 2010; year < 2020; ++year) {
            std::size_t count = static_cast<std::size_t>(noise(rng) * 1000);
            raw[year] = {1000, {{"w", count}}};
            xs.push_back(year);
            ys.push_back(static_cast<double>(count) / 1000.0);
        }
        YearWordMatrix m(raw);
        TrendModel fit = fit_counterfactual(m, "w", {2010, 2019});
        auto [slope, intercept] = ols_oracle(xs, ys);
        CHECK(std::abs(fit.slope - slope) < 1e-9);
        CHECK(std::abs(fit.intercept - intercept) < 1e-9);
    }
}

TEST_CASE("fits need two data years") {
    YearWordMatrix::RawCounts raw;
    raw[2020] = {10, {{"w", 1}}};
    YearWordMatrix m(raw);
    CHECK_THROWS(fit_counterfactual(m, "w", {2019, 2021}));
}

TEST_CASE("departure arithmetic") {
    YearWordMatrix m = linear_word_matrix();
    DepartureRecord rec = departures(m, "girder", 2006, {2000, 2004});
    CHECK(rec.observed == doctest::Approx(0.14));
    CHECK(rec.expected == doctest::Approx(0.07).epsilon(1e-9));
    CHECK(rec.delta == doctest::Approx(0.07).epsilon(1e-7));
    CHECK(rec.ratio == doctest::Approx(2.0).epsilon(1e-7));
}

TEST_CASE("observed equal to expected gives zero delta and unit ratio") {
    YearWordMatrix::RawCounts raw;
    for (int year = 2000; year <= 2008; ++year) raw[year] = {100, {{"w", 5}}};
    YearWordMatrix m(raw);
    DepartureRecord rec = departures(m, "w", 2008, {2000, 2006});
    CHECK(std::abs(rec.delta) < 1e-9);
    CHECK(rec.ratio == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("ratio is exact and finite under clamping") {
    // decreasing word: raw extrapolation would go negative
    YearWordMatrix::RawCounts raw;
    for (int year = 2000; year <= 2004; ++year) {
        raw[year] = {100, {{"w", static_cast<std::size_t>(10 - 2 * (year - 2000))}}};
    }
    raw[2010] = {100, {{"w", 1}}};
    YearWordMatrix m(raw);
    DepartureRecord rec = departures(m, "w", 2010, {2000, 2004});
    CHECK(rec.expected == doctest::Approx(0.01));  // clamped to one document's worth
    CHECK(std::isfinite(rec.ratio));
    CHECK(rec.ratio * rec.expected == doctest::Approx(rec.observed).epsilon(1e-12));
    CHECK(std::abs(rec.delta) <= 1.0 + rec.expected);
}

TEST_CASE("extrapolated years on an exact line keep delta zero and ratio one") {
    YearWordMatrix::RawCounts raw;
    for (int year = 2000; year <= 2010; ++year) {
        raw[year] = {200, {{"w", static_cast<std::size_t>(2 * (year - 1999))}}};
    }
    YearWordMatrix m(raw);
    for (int target = 2006; target <= 2010; ++target) {
        DepartureRecord rec = departures(m, "w", target, {2000, 2005});
        CHECK(std::abs(rec.delta) < 1e-9);
        CHECK(rec.ratio == doctest::Approx(1.0).epsilon(1e-7));
    }
}

TEST_CASE("missing target year raises") {
    YearWordMatrix m = linear_word_matrix();
    CHECK_THROWS(departures(m, "girder", 2050, {2000, 2004}));
}

TEST_CASE("matrix and departures export to csv") {
    YearWordMatrix m = linear_word_matrix();
    std::string csv = matrix_to_csv(m);
    CHECK(csv.rfind("year,word,frequency,n_docs\n", 0) == 0);
    CHECK(csv.find("2000,girder,0.01,100") != std::string::npos);
    DepartureRecord rec = departures(m, "girder", 2006, {2000, 2004});
    std::string dep = departures_to_csv({rec});
    CHECK(dep.find("girder,2006,0.14,") != std::string::npos);
}

TEST_SUITE_END();
