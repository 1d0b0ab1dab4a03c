#include <doctest.h>

#include <cmath>

#include "lexshift/classify.hpp"
#include "lexshift/simcorpus.hpp"
#include "test_util.hpp"

using namespace lexshift;

TEST_SUITE_BEGIN("simcorpus");

namespace {

const LexiconBundle& lex() { return LexiconBundle::defaults(); }

}  // namespace

TEST_CASE("same seed gives byte-identical corpora") {
    SimConfig cfg = SimConfig::example(0.2, 616);
    cfg.docs_per_year = 60;
    cfg.years = {2020, 2024};
    SimResult a = generate(cfg, lex());
    SimResult b = generate(cfg, lex());
    CHECK(corpus_to_jsonl(a.corpus) == corpus_to_jsonl(b.corpus));
    CHECK(a.ground_truth == b.ground_truth);

    cfg.seed = 617;
    SimResult c = generate(cfg, lex());
    CHECK(corpus_to_jsonl(a.corpus) != corpus_to_jsonl(c.corpus));
}

TEST_CASE("zero injection rate yields an all-false ground truth") {
    SimConfig cfg = SimConfig::example(0.0, 11);
    cfg.docs_per_year = 40;
    cfg.years = {2021, 2024};
    SimResult sim = generate(cfg, lex());
    for (const auto& [id, v] : sim.ground_truth) {
        CHECK_FALSE(v);
    }
}

TEST_CASE("injection counts are exact per post year") {
    SimConfig cfg = SimConfig::example(0.2, 12);
    cfg.docs_per_year = 1000;
    cfg.years = {2021, 2025};
    cfg.onset_year = 2023;
    SimResult sim = generate(cfg, lex());
    std::map<int, int> injected;
    for (const auto& rec : sim.corpus.records()) {
        if (sim.ground_truth.at(rec.id)) ++injected[rec.year];
    }
    CHECK(injected.size() == 3);
    CHECK(injected[2023] == 200);
    CHECK(injected[2024] == 200);
    CHECK(injected[2025] == 200);
}

TEST_CASE("pre-onset years contain no injected documents or rare markers") {
    SimConfig cfg = SimConfig::example(0.3, 13);
    cfg.docs_per_year = 50;
    cfg.years = {2019, 2024};
    SimResult sim = generate(cfg, lex());
    ProcessedCorpus processed = process_corpus(sim.corpus, lex());
    for (const auto& d : processed.docs) {
        if (d.year >= cfg.onset_year) continue;
        CHECK_FALSE(sim.ground_truth.at(d.id));
        for (const auto& m : sim.true_rare) {
            CHECK_FALSE(d.contains(m));
        }
    }
}

TEST_CASE("injected documents classify positive with the true marker set") {
    SimConfig cfg = SimConfig::example(0.25, 14);
    cfg.docs_per_year = 80;
    cfg.years = {2020, 2025};
    SimResult sim = generate(cfg, lex());
    ProcessedCorpus processed = process_corpus(sim.corpus, lex());
    GlobalMarkerSet g;
    g.rare = sim.true_rare;
    g.common = sim.true_common;
    auto results = classify_corpus(processed, g, 1, 2);
    std::size_t injected = 0, recalled = 0;
    for (const auto& r : results) {
        if (!sim.ground_truth.at(r.id)) continue;
        ++injected;
        if (r.is_llm) ++recalled;
    }
    REQUIRE(injected > 0);
    CHECK(recalled == injected);  // recall 1.0 by construction
}

TEST_CASE("background frequencies match the configuration within 3 sigma") {
    SimConfig cfg = SimConfig::example(0.0, 15);
    cfg.docs_per_year = 1500;
    cfg.years = {2010, 2013};
    SimResult sim = generate(cfg, lex());
    YearWordMatrix m = build_matrix(sim.corpus, lex(), 1);
    for (const auto& bw : cfg.background_vocab) {
        for (int year : m.years()) {
            double expected = bw.base_frequency + bw.yearly_drift * (year - cfg.years.first);
            double sigma = std::sqrt(expected * (1.0 - expected) / cfg.docs_per_year);
            double observed = m.frequency(year, bw.lemma);
            INFO("word ", bw.lemma, " year ", year);
            CHECK(std::abs(observed - expected) <= 3.0 * sigma + 1e-12);
        }
    }
}

TEST_CASE("config validation rejects broken configs") {
    SimConfig ok = SimConfig::example();
    CHECK_NOTHROW(validate_sim_config(ok, lex()));

    SimConfig bad = ok;
    bad.injection_rate = 1.5;
    CHECK_THROWS(validate_sim_config(bad, lex()));

    bad = ok;
    bad.background_vocab.push_back({"the", 0.5, 0.0});  // stop word
    CHECK_THROWS(validate_sim_config(bad, lex()));

    bad = ok;
    bad.background_vocab.push_back({"models", 0.5, 0.0});  // not lemma-stable
    CHECK_THROWS(validate_sim_config(bad, lex()));

    bad = ok;
    bad.rare_markers.push_back({"bridge", 0.5, 0.0});  // collides with background
    CHECK_THROWS(validate_sim_config(bad, lex()));

    bad = ok;
    bad.common_markers.clear();
    CHECK_THROWS(validate_sim_config(bad, lex()));
}

TEST_CASE("config serialization round-trips") {
    SimConfig cfg = SimConfig::example(0.1, 321);
    cfg.docs_per_year = 123;
    SimConfig back = parse_sim_config(sim_config_to_json(cfg));
    CHECK(back.seed == cfg.seed);
    CHECK(back.docs_per_year == 123);
    CHECK(back.injection_rate == cfg.injection_rate);
    CHECK(back.background_vocab.size() == cfg.background_vocab.size());
    CHECK(back.rare_markers.size() == cfg.rare_markers.size());
    CHECK(back.style.passive_rate == cfg.style.passive_rate);
    CHECK(back.injected_style.passive_multiplier == cfg.injected_style.passive_multiplier);
    CHECK_THROWS(parse_sim_config("not json"));
}

TEST_SUITE_END();
