#include "lexshift/semantics.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace lexshift {

namespace {

void require_nondegenerate(const TokenizedAbstract& t) {
    if (t.word_count == 0 || t.sentence_count == 0) {
        throw std::invalid_argument("degenerate document");
    }
}

// Syllables for readability means; tokens without letters (numbers, years)
// are spoken, so they count as one syllable.
int metric_syllables(const std::string& token) {
    for (char c : token) {
        if (std::isalpha(static_cast<unsigned char>(c))) return count_syllables(token);
    }
    return 1;
}

bool ends_with(const std::string& s, std::string_view suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Frequent -en words that are not participles.
const std::unordered_set<std::string>& participle_en_exclusions() {
    static const std::unordered_set<std::string> set = {
        "often",   "even",   "open",     "seven",    "ten",     "then",  "when",
        "than",    "men",    "women",    "children", "between", "green", "screen",
        "garden",  "kitchen", "hyphen",  "oxygen",   "hydrogen", "nitrogen",
        "specimen", "burden", "keen",    "teen",     "queen",   "eigen",
    };
    return set;
}

bool is_past_participle(const std::string& token, const LexiconBundle& lex) {
    if (lex.be_forms.count(token)) return false;
    if (lex.irregular_participles.count(token)) return true;
    if (token.size() >= 4 && ends_with(token, "ed")) return true;
    if (token.size() >= 5 && ends_with(token, "en") && !participle_en_exclusions().count(token)) {
        return true;
    }
    return false;
}

bool is_adverbish(const std::string& token) {
    return token.size() >= 4 && ends_with(token, "ly");
}

}  // namespace

double gunning_fog_score(double words, double sentences, double complex_words) {
    return 0.4 * (words / sentences + 100.0 * complex_words / words);
}

double gunning_fog(const TokenizedAbstract& t) {
    require_nondegenerate(t);
    std::size_t complex_count = 0;
    for (const auto& sentence : t.sentence_raw_tokens) {
        for (std::size_t i = 0; i < sentence.size(); ++i) {
            if (is_complex_word(sentence[i], i == 0)) ++complex_count;
        }
    }
    return gunning_fog_score(static_cast<double>(t.word_count),
                             static_cast<double>(t.sentence_count),
                             static_cast<double>(complex_count));
}

double flesch_kincaid_score(double mean_words_per_sentence, double mean_syllables_per_word) {
    return 0.39 * mean_words_per_sentence + 11.8 * mean_syllables_per_word - 15.59;
}

double flesch_kincaid(const TokenizedAbstract& t) {
    require_nondegenerate(t);
    long long syllables = 0;
    for (const auto& sentence : t.sentence_tokens) {
        for (const auto& token : sentence) {
            syllables += metric_syllables(token);
        }
    }
    double mw = static_cast<double>(t.word_count) / static_cast<double>(t.sentence_count);
    double ms = static_cast<double>(syllables) / static_cast<double>(t.word_count);
    return flesch_kincaid_score(mw, ms);
}

double word_diversity(const TokenizedAbstract& t) {
    if (t.word_count == 0) {
        throw std::invalid_argument("degenerate document");
    }
    std::unordered_set<std::string> unique;
    for (const auto& sentence : t.sentence_tokens) {
        unique.insert(sentence.begin(), sentence.end());
    }
    return static_cast<double>(unique.size()) / static_cast<double>(t.word_count);
}

const std::set<std::string>& default_punct_set() {
    static const std::set<std::string> set = {
        "comma",  "semicolon", "colon",  "em_dash", "en_dash",
        "hyphen", "lparen",    "rparen", "percent", "quote",
    };
    return set;
}

RateMetrics rate_metrics(const TokenizedAbstract& t, const LexiconBundle& lex,
                         const std::set<std::string>& punct_set) {
    require_nondegenerate(t);
    RateMetrics out;
    double sentences = static_cast<double>(t.sentence_count);

    std::map<std::string, std::size_t> punct_counts;
    for (const auto& name : punct_set) punct_counts[name] = 0;
    for (const auto& sentence : t.sentence_punct) {
        for (const auto& mark : sentence) {
            auto it = punct_counts.find(mark);
            if (it != punct_counts.end()) ++it->second;
        }
    }
    std::size_t dash_total = 0;
    bool want_dash = false;
    for (const auto& [name, count] : punct_counts) {
        out.punctuation_per_sentence[name] = static_cast<double>(count) / sentences;
        if (name == "em_dash" || name == "en_dash") {
            dash_total += count;
            want_dash = true;
        }
    }
    if (want_dash) {
        // encodings differ between publishers, so also report them merged
        out.punctuation_per_sentence["dash"] = static_cast<double>(dash_total) / sentences;
    }

    std::size_t first_person = 0;
    std::size_t passive = 0;
    std::size_t hedging = 0;
    for (const auto& tokens : t.sentence_tokens) {
        for (const auto& tok : tokens) {
            if (lex.first_person_pronouns.count(tok)) ++first_person;
        }
        // be-form, optionally one adverb or "being", then a past participle
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            if (!lex.be_forms.count(tokens[i])) continue;
            std::size_t j = i + 1;
            if (j < tokens.size() && (tokens[j] == "being" || is_adverbish(tokens[j]))) ++j;
            if (j < tokens.size() && is_past_participle(tokens[j], lex)) {
                ++passive;
                i = j;  // consume the construction
            }
        }
        for (std::size_t i = 0; i < tokens.size();) {
            bool matched = false;
            for (const auto& pattern : lex.hedging_patterns) {
                if (i + pattern.size() > tokens.size()) continue;
                bool ok = true;
                for (std::size_t k = 0; k < pattern.size(); ++k) {
                    if (tokens[i + k] != pattern[k]) {
                        ok = false;
                        break;
                    }
                }
                if (ok) {
                    ++hedging;
                    i += pattern.size();
                    matched = true;
                    break;
                }
            }
            if (!matched) ++i;
        }
    }
    out.first_person_per_sentence = static_cast<double>(first_person) / sentences;
    out.passive_per_sentence = static_cast<double>(passive) / sentences;
    out.hedging_per_sentence = static_cast<double>(hedging) / sentences;
    return out;
}

SemanticProfile profile(const TokenizedAbstract& t, const LexiconBundle& lex) {
    require_nondegenerate(t);
    SemanticProfile p;
    p.word_count = t.word_count;
    p.sentence_count = t.sentence_count;
    p.mean_sentence_length =
        static_cast<double>(t.word_count) / static_cast<double>(t.sentence_count);
    p.diversity = word_diversity(t);
    p.fog = gunning_fog(t);
    p.fk_grade = flesch_kincaid(t);
    RateMetrics rates = rate_metrics(t, lex);
    p.punctuation_per_sentence = std::move(rates.punctuation_per_sentence);
    p.first_person_per_sentence = rates.first_person_per_sentence;
    p.passive_per_sentence = rates.passive_per_sentence;
    p.hedging_per_sentence = rates.hedging_per_sentence;
    return p;
}

SemanticProfile profile(std::string_view text, const LexiconBundle& lex) {
    return profile(preprocess(text, lex), lex);
}

const std::vector<std::string>& profile_metric_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n = {
            "word_count",
            "sentence_count",
            "mean_sentence_length",
            "diversity",
            "fog",
            "fk_grade",
            "first_person_per_sentence",
            "passive_per_sentence",
            "hedging_per_sentence",
        };
        for (const auto& mark : default_punct_set()) n.push_back("punct_" + mark);
        n.push_back("punct_dash");
        return n;
    }();
    return names;
}

double profile_metric(const SemanticProfile& p, std::string_view name) {
    if (name == "word_count") return static_cast<double>(p.word_count);
    if (name == "sentence_count") return static_cast<double>(p.sentence_count);
    if (name == "mean_sentence_length") return p.mean_sentence_length;
    if (name == "diversity") return p.diversity;
    if (name == "fog") return p.fog;
    if (name == "fk_grade") return p.fk_grade;
    if (name == "first_person_per_sentence") return p.first_person_per_sentence;
    if (name == "passive_per_sentence") return p.passive_per_sentence;
    if (name == "hedging_per_sentence") return p.hedging_per_sentence;
    if (name.substr(0, 6) == "punct_") {
        std::string mark(name.substr(6));
        if (mark != "dash" && default_punct_set().count(mark) == 0) {
            throw std::invalid_argument("unknown metric: " + std::string(name));
        }
        auto it = p.punctuation_per_sentence.find(mark);
        return it == p.punctuation_per_sentence.end() ? 0.0 : it->second;
    }
    throw std::invalid_argument("unknown metric: " + std::string(name));
}

}  // namespace lexshift
