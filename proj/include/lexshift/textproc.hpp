#ifndef LEXSHIFT_TEXTPROC_HPP_
#define LEXSHIFT_TEXTPROC_HPP_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace lexshift {

// Word lists driving normalization and the voice/confidence proxies.
// All entries are lowercase.
struct LexiconBundle {
    std::unordered_set<std::string> stopwords;
    std::unordered_map<std::string, std::string> lemma_map;
    std::unordered_set<std::string> irregular_participles;
    std::unordered_set<std::string> first_person_pronouns;
    std::vector<std::vector<std::string>> hedging_patterns;  // 1-2 token sequences
    std::unordered_set<std::string> be_forms;

    bool is_stopword(const std::string& token) const { return stopwords.count(token) > 0; }

    // Built-in defaults; also shipped as plain files under data/lexicons/.
    static const LexiconBundle& defaults();
};

// Loads a lexicon directory. Any of stopwords.txt, lemma_map.tsv,
// irregular_participles.txt, first_person.txt, hedging.txt, be_forms.txt
// present in the directory replaces the corresponding default list.
LexiconBundle load_lexicon_dir(const std::filesystem::path& dir);

struct TokenizedAbstract {
    std::vector<std::string> sentences;                         // raw sentence strings
    std::vector<std::vector<std::string>> sentence_tokens;      // lowercase word tokens
    std::vector<std::vector<std::string>> sentence_raw_tokens;  // original-case word tokens
    std::vector<std::vector<std::string>> sentence_punct;       // canonical punctuation names
    std::vector<std::string> lemmas;  // stop-word-free, lemmatized, in token order
    std::size_t word_count = 0;
    std::size_t sentence_count = 0;
};

// Splits raw text into sentences on {. ! ?} followed by whitespace and an
// uppercase letter, with an abbreviation exception list. Never drops
// non-whitespace characters.
std::vector<std::string> split_sentences(std::string_view text);

// One sentence -> (lowercase word tokens, original-case word tokens,
// canonical punctuation names). A token is a maximal run of letters/digits
// plus internal apostrophes and hyphens.
void tokenize_sentence(std::string_view sentence,
                       std::vector<std::string>& lower_tokens,
                       std::vector<std::string>& raw_tokens,
                       std::vector<std::string>& punct);

// Dictionary lookup first, then suffix rules (-ies/-ied -> y, plural -s/-es,
// -ing/-ed with doubled-consonant and silent-e repair), else identity.
// Expects a lowercase token.
std::string lemmatize(const std::string& word, const LexiconBundle& lex);

// Full deterministic pipeline. Throws std::invalid_argument("empty document")
// on whitespace-only input.
TokenizedAbstract preprocess(std::string_view text, const LexiconBundle& lex);

// Contiguous vowel-group count (a,e,i,o,u,y), minus a trailing standalone
// silent 'e' when another group exists; never below 1. Throws if the word has
// no alphabetic characters.
int count_syllables(std::string_view word);

// Three or more syllables after stripping one of -ing/-ed/-es/-ly, unless the
// token looks like a proper noun (capitalized while not sentence-initial).
// Tokens without alphabetic characters are never complex.
bool is_complex_word(std::string_view word, bool sentence_initial);

namespace detail {

// File-format parsers shared by load_lexicon_dir and the embedded defaults.
std::unordered_set<std::string> parse_wordset(std::string_view text);
std::unordered_map<std::string, std::string> parse_lemma_map(std::string_view text);
std::vector<std::vector<std::string>> parse_patterns(std::string_view text);

}  // namespace detail

}  // namespace lexshift

#endif  // LEXSHIFT_TEXTPROC_HPP_
