#include "lexshift/simcorpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "lexshift/json.hpp"

#include "lexshift/csv.hpp"

namespace lexshift {

namespace {

// splitmix64: tiny, stable, and stateless enough to derive independent
// per-document streams from (seed, year, index).
struct SplitMix {
    std::uint64_t state;

    explicit SplitMix(std::uint64_t s) : state(s) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t year, std::uint64_t idx) {
    SplitMix s(seed ^ (year * 0x9E3779B97F4A7C15ull) ^ (idx * 0xC2B2AE3D27D4EB4Full));
    s.next();
    return s.next();
}

// Fixed filler vocabulary; every non-stop-word filler lemma appears at a
// near-constant rate across years so it never trips the excess thresholds.
const std::vector<std::string>& filler_verbs() {
    static const std::vector<std::string> v = {"show", "indicate", "present", "provide"};
    return v;
}

const std::vector<std::string>& filler_participles() {
    static const std::vector<std::string> v = {"analyzed", "studied",   "measured",
                                               "observed", "evaluated", "examined"};
    return v;
}

const std::vector<std::string>& filler_hedges() {
    static const std::vector<std::string> v = {"may", "likely", "possibly", "perhaps"};
    return v;
}

const std::vector<std::string>& filler_nouns() {
    static const std::vector<std::string> v = {"system", "method",  "process",
                                               "region", "factor",  "report"};
    return v;
}

std::set<std::string> filler_lemmas(const LexiconBundle& lex) {
    std::set<std::string> out;
    for (const auto& w : filler_verbs()) out.insert(lemmatize(w, lex));
    for (const auto& w : filler_participles()) out.insert(lemmatize(w, lex));
    for (const auto& w : filler_hedges()) out.insert(lemmatize(w, lex));
    for (const auto& w : filler_nouns()) out.insert(lemmatize(w, lex));
    out.insert("along");
    out.insert("matter");
    return out;
}

struct Venue {
    const char* name;
    VenueKind kind;
    const char* discipline;
};

const std::vector<Venue>& venues() {
    static const std::vector<Venue> v = {
        {"Journal of Synthetic Analysis", VenueKind::journal, "analysis"},
        {"Journal of Applied Simulation", VenueKind::journal, "simulation"},
        {"Journal of Structural Benchmarks", VenueKind::journal, "benchmarks"},
        {"Proceedings of the Synthetic Congress", VenueKind::proceedings, "analysis"},
        {"Proceedings on Simulation Studies", VenueKind::proceedings, "simulation"},
    };
    return v;
}

std::string doc_id(int year, int idx) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "y%04d-d%05d", year, idx);
    return buf;
}

// Builds one sentence consuming up to three content words.
std::string build_sentence(SplitMix& rng, std::vector<std::string>& queue, bool passive,
                           bool first_person, bool hedged, int extra_clauses) {
    auto take = [&]() -> std::string {
        if (queue.empty()) return filler_nouns()[rng.below(filler_nouns().size())];
        std::string w = queue.back();
        queue.pop_back();
        return w;
    };
    const auto& verbs = filler_verbs();
    const auto& parts = filler_participles();
    std::string verb = verbs[rng.below(verbs.size())];
    std::string hedge = filler_hedges()[rng.below(filler_hedges().size())];

    std::string s;
    if (first_person) {
        s = "We " + verb + " the " + take();
        if (hedged) s += " that " + hedge + " matter";
    } else if (passive) {
        std::string part = parts[rng.below(parts.size())];
        if (hedged) {
            s = "The " + take() + " may be " + part + " for the " + take();
        } else {
            s = "The " + take() + " was " + part + " for the " + take();
        }
    } else {
        if (hedged) {
            s = "The " + take() + " " + hedge + " " + verb + (hedge == "may" ? "" : "s") +
                " the " + take();
        } else {
            s = "The " + take() + " " + verb + "s the " + take();
        }
    }
    for (int c = 0; c < extra_clauses; ++c) {
        s += ", along with the " + take();
    }
    if (rng.bernoulli(0.15)) {
        s += " by " + std::to_string(5 + rng.below(90)) + "%";
    }
    s += ".";
    return s;
}

}  // namespace

SimConfig SimConfig::example(double injection_rate, std::uint64_t seed) {
    SimConfig cfg;
    cfg.seed = seed;
    cfg.years = {2010, 2025};
    cfg.docs_per_year = 1000;
    cfg.onset_year = 2023;
    cfg.injection_rate = injection_rate;
    cfg.background_vocab = {
        {"bridge", 0.45, 0.000}, {"girder", 0.18, 0.002},  {"soil", 0.30, -0.001},
        {"tunnel", 0.12, 0.001}, {"seismic", 0.22, 0.003}, {"concrete", 0.50, 0.000},
        {"beam", 0.35, 0.001},   {"column", 0.28, 0.000},  {"sensor", 0.10, 0.004},
        {"model", 0.55, 0.002},  {"dataset", 0.08, 0.005}, {"failure", 0.25, 0.000},
        {"load", 0.40, 0.001},   {"stress", 0.33, 0.000},  {"strain", 0.20, 0.000},
        {"design", 0.48, 0.001}, {"safety", 0.26, 0.002},  {"cost", 0.21, 0.000},
        {"risk", 0.17, 0.002},   {"water", 0.29, -0.001},
    };
    cfg.rare_markers = {
        {"delve", 0.65, 0.0},     {"pivotal", 0.70, 0.0},   {"intricate", 0.60, 0.0},
        {"showcase", 0.55, 0.0},  {"underscore", 0.75, 0.0},
    };
    cfg.common_markers = {
        {"leverage", 1.0, 0.08},
    };
    cfg.style = {0.5, 0.3, 0.4, 0.6};
    cfg.injected_style = {0.3, 0.5, 1.2, 0.8};
    return cfg;
}

void validate_sim_config(const SimConfig& cfg, const LexiconBundle& lex) {
    cfg.years.require_valid("simulation years");
    if (cfg.docs_per_year < 1) throw std::invalid_argument("docs_per_year must be >= 1");
    if (cfg.injection_rate < 0.0 || cfg.injection_rate > 1.0) {
        throw std::invalid_argument("injection_rate must be in [0, 1]");
    }
    if (cfg.onset_year < cfg.years.first) {
        throw std::invalid_argument("onset_year precedes the simulated years");
    }
    if (cfg.rare_markers.size() < 2) {
        throw std::invalid_argument("need at least two rare markers");
    }
    if (cfg.common_markers.empty()) {
        throw std::invalid_argument("need at least one common marker");
    }
    const auto fillers = filler_lemmas(lex);
    auto check_lemma = [&](const std::string& w) {
        if (w.empty()) throw std::invalid_argument("empty lemma in config");
        if (lex.is_stopword(w)) {
            throw std::invalid_argument("config lemma is a stop word: " + w);
        }
        if (lemmatize(w, lex) != w) {
            throw std::invalid_argument("config lemma is not lemma-stable: " + w);
        }
        if (fillers.count(w)) {
            throw std::invalid_argument("config lemma collides with filler vocabulary: " + w);
        }
    };
    int span = cfg.years.last - cfg.years.first;
    for (const auto& bw : cfg.background_vocab) {
        check_lemma(bw.lemma);
        double f0 = bw.base_frequency;
        double f1 = bw.base_frequency + bw.yearly_drift * span;
        if (f0 <= 0.0 || f0 >= 1.0 || f1 <= 0.0 || f1 >= 1.0) {
            throw std::invalid_argument("background frequency leaves (0,1): " + bw.lemma);
        }
    }
    std::set<std::string> seen;
    for (const auto* markers : {&cfg.rare_markers, &cfg.common_markers}) {
        for (const auto& m : *markers) {
            check_lemma(m.lemma);
            if (!seen.insert(m.lemma).second) {
                throw std::invalid_argument("duplicate marker lemma: " + m.lemma);
            }
            if (m.injection_frequency <= 0.0 || m.injection_frequency > 1.0) {
                throw std::invalid_argument("injection frequency must be in (0, 1]: " + m.lemma);
            }
            if (m.base_frequency < 0.0 || m.base_frequency >= 1.0) {
                throw std::invalid_argument("marker base frequency must be in [0, 1): " + m.lemma);
            }
        }
    }
    for (const auto& bw : cfg.background_vocab) {
        if (seen.count(bw.lemma)) {
            throw std::invalid_argument("marker duplicates background lemma: " + bw.lemma);
        }
    }
}

SimResult generate(const SimConfig& cfg, const LexiconBundle& lex) {
    validate_sim_config(cfg, lex);
    SimResult result;
    std::vector<AbstractRecord> records;

    for (int year = cfg.years.first; year <= cfg.years.last; ++year) {
        bool post = year >= cfg.onset_year;
        int injected_count =
            post ? static_cast<int>(std::lround(cfg.injection_rate * cfg.docs_per_year)) : 0;
        for (int idx = 0; idx < cfg.docs_per_year; ++idx) {
            SplitMix rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(year),
                                  static_cast<std::uint64_t>(idx)));
            bool injected = idx < injected_count;

            // Document-level content: background picks, marker background
            // picks, then guaranteed injections.
            std::vector<std::string> content;
            for (const auto& bw : cfg.background_vocab) {
                double f = bw.base_frequency + bw.yearly_drift * (year - cfg.years.first);
                if (rng.bernoulli(f)) content.push_back(bw.lemma);
            }
            for (const auto& m : cfg.common_markers) {
                if (m.base_frequency > 0.0 && rng.bernoulli(m.base_frequency)) {
                    content.push_back(m.lemma);
                }
            }
            for (const auto& m : cfg.rare_markers) {
                if (m.base_frequency > 0.0 && rng.bernoulli(m.base_frequency)) {
                    content.push_back(m.lemma);
                }
            }
            if (injected) {
                std::vector<std::string> rare_in;
                for (const auto& m : cfg.rare_markers) {
                    if (rng.bernoulli(m.injection_frequency)) rare_in.push_back(m.lemma);
                }
                // top up via rotation so every injected doc has >= 2 rare hits
                std::size_t probe = static_cast<std::size_t>(idx);
                while (rare_in.size() < 2) {
                    const auto& cand = cfg.rare_markers[probe % cfg.rare_markers.size()].lemma;
                    if (std::find(rare_in.begin(), rare_in.end(), cand) == rare_in.end()) {
                        rare_in.push_back(cand);
                    }
                    ++probe;
                }
                bool any_common = false;
                for (const auto& m : cfg.common_markers) {
                    if (rng.bernoulli(m.injection_frequency)) {
                        content.push_back(m.lemma);
                        any_common = true;
                    }
                }
                if (!any_common) {
                    content.push_back(
                        cfg.common_markers[static_cast<std::size_t>(idx) %
                                           cfg.common_markers.size()].lemma);
                }
                content.insert(content.end(), rare_in.begin(), rare_in.end());
            }
            std::sort(content.begin(), content.end());
            content.erase(std::unique(content.begin(), content.end()), content.end());
            // consumption order should not depend on set order
            for (std::size_t i = content.size(); i > 1; --i) {
                std::swap(content[i - 1], content[rng.below(i)]);
            }

            StyleRates st = cfg.style;
            double extra_commas = 0.0;
            if (injected) {
                st.passive_rate = std::clamp(st.passive_rate * cfg.injected_style.passive_multiplier,
                                             0.0, 1.0);
                st.hedging_rate = std::clamp(st.hedging_rate * cfg.injected_style.hedging_multiplier,
                                             0.0, 1.0);
                st.first_person_rate = std::clamp(
                    st.first_person_rate * cfg.injected_style.first_person_multiplier, 0.0, 1.0);
                extra_commas = cfg.injected_style.extra_commas_per_sentence;
            }

            std::vector<std::string> queue = content;  // consumed back to front
            std::size_t n_sentences =
                std::max<std::size_t>(4, (content.size() + 2) / 3 + rng.below(2));
            std::string text;
            for (std::size_t s = 0; s < n_sentences; ++s) {
                bool first_person = rng.bernoulli(st.first_person_rate);
                bool passive = !first_person && rng.bernoulli(st.passive_rate);
                bool hedged = rng.bernoulli(st.hedging_rate);
                int clauses = rng.bernoulli(st.comma_clause_rate) ? 1 : 0;
                if (extra_commas > 0.0 && rng.bernoulli(std::min(extra_commas, 1.0))) ++clauses;
                if (!text.empty()) text += ' ';
                text += build_sentence(rng, queue, passive, first_person, hedged, clauses);
            }
            while (!queue.empty()) {
                SplitMix extra(rng.next());
                text += ' ';
                text += build_sentence(extra, queue, false, false, false,
                                       queue.size() > 2 ? 2 : 0);
            }

            const Venue& venue = venues()[static_cast<std::size_t>(idx) % venues().size()];
            AbstractRecord rec;
            rec.id = doc_id(year, idx);
            rec.year = year;
            rec.venue_kind = venue.kind;
            rec.venue_name = venue.name;
            rec.author_count =
                1 + static_cast<int>(rng.below(3)) +
                static_cast<int>((year - cfg.years.first) * 2 / 3 / 5);
            rec.text = std::move(text);
            result.ground_truth[rec.id] = injected;
            records.push_back(std::move(rec));
        }
    }
    result.corpus = Corpus(std::move(records));

    for (const auto& m : cfg.rare_markers) {
        result.true_rare.insert(m.lemma);
        result.annotations[m.lemma] = StyleLabel::style;
    }
    for (const auto& m : cfg.common_markers) {
        result.true_common.insert(m.lemma);
        result.annotations[m.lemma] = StyleLabel::style;
    }
    for (const auto& bw : cfg.background_vocab) {
        result.annotations[bw.lemma] = StyleLabel::content;
    }
    for (const auto& w : filler_lemmas(lex)) {
        result.annotations[w] = StyleLabel::content;
    }
    for (const auto& v : venues()) {
        result.discipline_map[v.name] = v.discipline;
    }
    return result;
}

namespace {

using json = nlohmann::ordered_json;

}  // namespace

std::string sim_config_to_json(const SimConfig& cfg) {
    json j;
    j["seed"] = cfg.seed;
    j["first_year"] = cfg.years.first;
    j["last_year"] = cfg.years.last;
    j["docs_per_year"] = cfg.docs_per_year;
    j["onset_year"] = cfg.onset_year;
    j["injection_rate"] = cfg.injection_rate;
    j["background_vocab"] = json::array();
    for (const auto& bw : cfg.background_vocab) {
        j["background_vocab"].push_back({{"lemma", bw.lemma},
                                         {"base_frequency", bw.base_frequency},
                                         {"yearly_drift", bw.yearly_drift}});
    }
    j["rare_markers"] = json::array();
    for (const auto& m : cfg.rare_markers) {
        j["rare_markers"].push_back({{"lemma", m.lemma},
                                     {"injection_frequency", m.injection_frequency},
                                     {"base_frequency", m.base_frequency}});
    }
    j["common_markers"] = json::array();
    for (const auto& m : cfg.common_markers) {
        j["common_markers"].push_back({{"lemma", m.lemma},
                                       {"injection_frequency", m.injection_frequency},
                                       {"base_frequency", m.base_frequency}});
    }
    j["style"] = {{"passive_rate", cfg.style.passive_rate},
                  {"first_person_rate", cfg.style.first_person_rate},
                  {"hedging_rate", cfg.style.hedging_rate},
                  {"comma_clause_rate", cfg.style.comma_clause_rate}};
    j["injected_style"] = {{"passive_multiplier", cfg.injected_style.passive_multiplier},
                           {"hedging_multiplier", cfg.injected_style.hedging_multiplier},
                           {"first_person_multiplier", cfg.injected_style.first_person_multiplier},
                           {"extra_commas_per_sentence",
                            cfg.injected_style.extra_commas_per_sentence}};
    return j.dump(2) + "\n";
}

SimConfig parse_sim_config(std::string_view text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw std::runtime_error("malformed simulation config");
    }
    SimConfig cfg = SimConfig::example();  // omitted sections keep working defaults
    cfg.seed = j.value("seed", cfg.seed);
    cfg.years.first = j.value("first_year", cfg.years.first);
    cfg.years.last = j.value("last_year", cfg.years.last);
    cfg.docs_per_year = j.value("docs_per_year", cfg.docs_per_year);
    cfg.onset_year = j.value("onset_year", cfg.onset_year);
    cfg.injection_rate = j.value("injection_rate", cfg.injection_rate);
    auto words = [&](const char* key, bool marker) {
        std::vector<MarkerWord> ms;
        std::vector<BackgroundWord> bs;
        if (j.contains(key)) {
            for (const auto& e : j[key]) {
                if (marker) {
                    MarkerWord m;
                    m.lemma = e.at("lemma").get<std::string>();
                    m.injection_frequency = e.value("injection_frequency", 1.0);
                    m.base_frequency = e.value("base_frequency", 0.0);
                    ms.push_back(std::move(m));
                } else {
                    BackgroundWord b;
                    b.lemma = e.at("lemma").get<std::string>();
                    b.base_frequency = e.at("base_frequency").get<double>();
                    b.yearly_drift = e.value("yearly_drift", 0.0);
                    bs.push_back(std::move(b));
                }
            }
        }
        return std::make_pair(ms, bs);
    };
    if (j.contains("background_vocab")) {
        cfg.background_vocab = words("background_vocab", false).second;
    }
    if (j.contains("rare_markers")) cfg.rare_markers = words("rare_markers", true).first;
    if (j.contains("common_markers")) cfg.common_markers = words("common_markers", true).first;
    if (j.contains("style")) {
        const auto& s = j["style"];
        cfg.style.passive_rate = s.value("passive_rate", cfg.style.passive_rate);
        cfg.style.first_person_rate = s.value("first_person_rate", cfg.style.first_person_rate);
        cfg.style.hedging_rate = s.value("hedging_rate", cfg.style.hedging_rate);
        cfg.style.comma_clause_rate = s.value("comma_clause_rate", cfg.style.comma_clause_rate);
    }
    if (j.contains("injected_style")) {
        const auto& s = j["injected_style"];
        cfg.injected_style.passive_multiplier =
            s.value("passive_multiplier", cfg.injected_style.passive_multiplier);
        cfg.injected_style.hedging_multiplier =
            s.value("hedging_multiplier", cfg.injected_style.hedging_multiplier);
        cfg.injected_style.first_person_multiplier =
            s.value("first_person_multiplier", cfg.injected_style.first_person_multiplier);
        cfg.injected_style.extra_commas_per_sentence =
            s.value("extra_commas_per_sentence", cfg.injected_style.extra_commas_per_sentence);
    }
    return cfg;
}

SimConfig load_sim_config(const std::filesystem::path& path) {
    return parse_sim_config(read_file(path));
}

std::string ground_truth_to_csv(const std::map<std::string, bool>& truth) {
    CsvBuilder csv("id,is_llm");
    for (const auto& [id, v] : truth) {
        csv.row({id, v ? "true" : "false"});
    }
    return csv.str();
}

std::string annotations_to_csv(const AnnotationMap& annotations) {
    CsvBuilder csv("word,label");
    for (const auto& [word, label] : annotations) {
        csv.row({word, to_string(label)});
    }
    return csv.str();
}

std::string discipline_map_to_csv(const DisciplineMap& map) {
    CsvBuilder csv("venue_name,discipline");
    for (const auto& [venue, disc] : map) {
        csv.row({venue, disc});
    }
    return csv.str();
}

}  // namespace lexshift
