#ifndef LEXSHIFT_SEMANTICS_HPP_
#define LEXSHIFT_SEMANTICS_HPP_

#include <map>
#include <set>
#include <string>
#include <string_view>

#include "lexshift/textproc.hpp"

namespace lexshift {

// Per-document structure/complexity/voice/confidence metrics.
struct SemanticProfile {
    std::size_t word_count = 0;
    std::size_t sentence_count = 0;
    double mean_sentence_length = 0.0;
    double diversity = 0.0;
    double fog = 0.0;
    double fk_grade = 0.0;
    double first_person_per_sentence = 0.0;
    double passive_per_sentence = 0.0;
    double hedging_per_sentence = 0.0;
    std::map<std::string, double> punctuation_per_sentence;
};

// 0.4 * (words/sentences + 100 * complex/words)
double gunning_fog_score(double words, double sentences, double complex_words);
double gunning_fog(const TokenizedAbstract& t);

// 0.39 * M_W + 11.8 * M_S - 15.59
double flesch_kincaid_score(double mean_words_per_sentence, double mean_syllables_per_word);
double flesch_kincaid(const TokenizedAbstract& t);

// unique lowercase word tokens / total word tokens (stop words included)
double word_diversity(const TokenizedAbstract& t);

struct RateMetrics {
    std::map<std::string, double> punctuation_per_sentence;
    double first_person_per_sentence = 0.0;
    double passive_per_sentence = 0.0;
    double hedging_per_sentence = 0.0;
};

// Marks reported by default: comma, semicolon, colon, em_dash, en_dash,
// hyphen, lparen, rparen, percent, quote. Em/en dashes also surface merged
// under "dash" whenever either is requested.
const std::set<std::string>& default_punct_set();

RateMetrics rate_metrics(const TokenizedAbstract& t, const LexiconBundle& lex,
                         const std::set<std::string>& punct_set = default_punct_set());

SemanticProfile profile(std::string_view text, const LexiconBundle& lex);
SemanticProfile profile(const TokenizedAbstract& t, const LexiconBundle& lex);

// Column order for CSV export / trend metric names.
const std::vector<std::string>& profile_metric_names();

// Value of one named metric; "punct_<mark>" reads the punctuation map
// (0 when the mark never occurred). Throws on unknown names.
double profile_metric(const SemanticProfile& p, std::string_view name);

}  // namespace lexshift

#endif  // LEXSHIFT_SEMANTICS_HPP_
