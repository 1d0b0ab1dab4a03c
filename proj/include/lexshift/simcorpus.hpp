#ifndef LEXSHIFT_SIMCORPUS_HPP_
#define LEXSHIFT_SIMCORPUS_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "lexshift/corpus.hpp"
#include "lexshift/excess.hpp"
#include "lexshift/textproc.hpp"

namespace lexshift {

struct BackgroundWord {
    std::string lemma;
    double base_frequency = 0.0;  // document-level frequency in the first year
    double yearly_drift = 0.0;    // linear change per year
};

struct MarkerWord {
    std::string lemma;
    double injection_frequency = 1.0;  // inclusion probability within injected docs
    double base_frequency = 0.0;       // background presence in every document
};

// Metric shifts applied to injected documents only.
struct StyleDeltas {
    double passive_multiplier = 1.0;
    double hedging_multiplier = 1.0;
    double first_person_multiplier = 1.0;
    double extra_commas_per_sentence = 0.0;
};

struct StyleRates {
    double passive_rate = 0.5;       // fraction of sentences with a passive clause
    double first_person_rate = 0.3;  // fraction of sentences opening first-person
    double hedging_rate = 0.4;       // fraction of sentences carrying a hedge
    double comma_clause_rate = 0.6;  // fraction of sentences with an extra clause
};

struct SimConfig {
    std::uint64_t seed = 1;
    YearRange years{2010, 2025};
    int docs_per_year = 1000;
    int onset_year = 2023;
    double injection_rate = 0.2;  // fraction p of each post-onset year
    std::vector<BackgroundWord> background_vocab;
    std::vector<MarkerWord> rare_markers;
    std::vector<MarkerWord> common_markers;
    StyleRates style;
    StyleDeltas injected_style;

    // The configuration used by the synthetic end-to-end suites.
    static SimConfig example(double injection_rate = 0.2, std::uint64_t seed = 20250101);
};

SimConfig load_sim_config(const std::filesystem::path& path);
SimConfig parse_sim_config(std::string_view text);
std::string sim_config_to_json(const SimConfig& cfg);

// Rejects configs whose lemmas are stop words, unstable under the lemmatizer,
// or colliding with the generator's fixed filler vocabulary.
void validate_sim_config(const SimConfig& cfg, const LexiconBundle& lex);

struct SimResult {
    Corpus corpus;
    std::map<std::string, bool> ground_truth;  // id -> injected
    AnnotationMap annotations;                 // markers are style, the rest content
    std::set<std::string> true_rare;
    std::set<std::string> true_common;
    DisciplineMap discipline_map;
};

// Deterministic for a given seed; exactly round(p * docs_per_year) documents
// per post-onset year are injected (the lexicographically first ids), each
// carrying at least one common and two rare markers.
SimResult generate(const SimConfig& cfg, const LexiconBundle& lex);

std::string ground_truth_to_csv(const std::map<std::string, bool>& truth);
std::string annotations_to_csv(const AnnotationMap& annotations);
std::string discipline_map_to_csv(const DisciplineMap& map);

}  // namespace lexshift

#endif  // LEXSHIFT_SIMCORPUS_HPP_
