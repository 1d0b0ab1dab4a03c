#include "lexshift/textproc.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "lexshift/util.hpp"

namespace lexshift {

namespace {

bool is_ascii_alnum(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

bool is_vowel(char c) {
    switch (c) {
        case 'a': case 'e': case 'i': case 'o': case 'u': case 'y':
            return true;
        default:
            return false;
    }
}

// Decodes the UTF-8 sequence starting at i; invalid bytes come back as
// single-byte codepoints so nothing is ever skipped.
std::pair<char32_t, std::size_t> next_codepoint(std::string_view s, std::size_t i) {
    unsigned char c0 = static_cast<unsigned char>(s[i]);
    if (c0 < 0x80) return {c0, 1};
    std::size_t len = 0;
    char32_t cp = 0;
    if ((c0 & 0xE0) == 0xC0) { len = 2; cp = c0 & 0x1F; }
    else if ((c0 & 0xF0) == 0xE0) { len = 3; cp = c0 & 0x0F; }
    else if ((c0 & 0xF8) == 0xF0) { len = 4; cp = c0 & 0x07; }
    else return {c0, 1};
    if (i + len > s.size()) return {c0, 1};
    for (std::size_t k = 1; k < len; ++k) {
        unsigned char ck = static_cast<unsigned char>(s[i + k]);
        if ((ck & 0xC0) != 0x80) return {c0, 1};
        cp = (cp << 6) | (ck & 0x3F);
    }
    return {cp, len};
}

constexpr char32_t kEnDash = 0x2013;
constexpr char32_t kEmDash = 0x2014;
constexpr char32_t kLeftSingleQuote = 0x2018;
constexpr char32_t kRightSingleQuote = 0x2019;  // doubles as curly apostrophe
constexpr char32_t kLeftDoubleQuote = 0x201C;
constexpr char32_t kRightDoubleQuote = 0x201D;

// Canonical mark name for a punctuation codepoint.
std::string punct_name(char32_t cp) {
    switch (cp) {
        case ',': return "comma";
        case ';': return "semicolon";
        case ':': return "colon";
        case '-': return "hyphen";
        case '(': return "lparen";
        case ')': return "rparen";
        case '%': return "percent";
        case '"': case '\'': return "quote";
        case '.': return "period";
        case '!': return "exclamation";
        case '?': return "question";
        case kEmDash: return "em_dash";
        case kEnDash: return "en_dash";
        case kLeftSingleQuote: case kRightSingleQuote:
        case kLeftDoubleQuote: case kRightDoubleQuote:
            return "quote";
        default: return "other";
    }
}

bool is_apostrophe(char32_t cp) { return cp == '\'' || cp == kRightSingleQuote; }

// Letters with diacritics and other non-ASCII letters count as word
// characters; the known dash/quote codepoints do not.
bool is_word_cp(char32_t cp) {
    if (cp < 0x80) return is_ascii_alnum(static_cast<unsigned char>(cp));
    switch (cp) {
        case kEnDash: case kEmDash:
        case kLeftSingleQuote: case kRightSingleQuote:
        case kLeftDoubleQuote: case kRightDoubleQuote:
            return false;
        default:
            return true;
    }
}

const std::unordered_set<std::string>& abbreviations() {
    static const std::unordered_set<std::string> abbrevs = {
        "e.g", "i.e", "etc", "cf", "vs", "fig", "figs", "eq", "eqs", "al",
        "dr", "mr", "mrs", "ms", "prof", "no", "nos", "approx", "ca", "resp",
        "sec", "vol", "pp", "st",
    };
    return abbrevs;
}

// Word (letters and internal dots) immediately preceding position `dot`.
std::string word_before_dot(std::string_view text, std::size_t dot) {
    std::size_t end = dot;
    std::size_t begin = end;
    while (begin > 0) {
        char c = text[begin - 1];
        bool letter = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
        bool inner_dot = c == '.' && begin >= 2 &&
                         ((text[begin - 2] >= 'a' && text[begin - 2] <= 'z') ||
                          (text[begin - 2] >= 'A' && text[begin - 2] <= 'Z'));
        if (!letter && !inner_dot) break;
        --begin;
    }
    return to_lower(text.substr(begin, end - begin));
}

}  // namespace

std::vector<std::string> split_sentences(std::string_view text) {
    std::vector<std::string> sentences;
    std::size_t start = 0;
    std::size_t i = 0;
    auto flush = [&](std::size_t end) {
        std::string s = trim(text.substr(start, end - start));
        if (!s.empty()) sentences.push_back(std::move(s));
        start = end;
    };
    while (i < text.size()) {
        char c = text[i];
        if (c != '.' && c != '!' && c != '?') {
            ++i;
            continue;
        }
        std::size_t term = i;
        ++i;
        // absorb closing quotes/brackets after the terminator
        while (i < text.size()) {
            auto [cp, len] = next_codepoint(text, i);
            if (cp == ')' || cp == ']' || cp == '"' || cp == '\'' ||
                cp == kRightSingleQuote || cp == kRightDoubleQuote) {
                i += len;
            } else {
                break;
            }
        }
        std::size_t after_close = i;
        std::size_t ws = i;
        while (ws < text.size() && std::isspace(static_cast<unsigned char>(text[ws]))) ++ws;
        if (ws == after_close) continue;          // no whitespace after terminator
        if (ws >= text.size()) break;             // trailing whitespace; final flush below
        char next = text[ws];
        if (!(next >= 'A' && next <= 'Z')) continue;
        if (c == '.') {
            std::string prev = word_before_dot(text, term);
            if (prev.size() == 1 || abbreviations().count(prev) > 0) continue;
        }
        flush(after_close);
        i = ws;
    }
    flush(text.size());
    return sentences;
}

void tokenize_sentence(std::string_view sentence,
                       std::vector<std::string>& lower_tokens,
                       std::vector<std::string>& raw_tokens,
                       std::vector<std::string>& punct) {
    std::string cur_raw;
    std::string cur_lower;
    auto flush = [&]() {
        if (cur_raw.empty()) return;
        raw_tokens.push_back(cur_raw);
        lower_tokens.push_back(cur_lower);
        cur_raw.clear();
        cur_lower.clear();
    };
    std::size_t i = 0;
    while (i < sentence.size()) {
        auto [cp, len] = next_codepoint(sentence, i);
        if (is_word_cp(cp)) {
            cur_raw.append(sentence.substr(i, len));
            if (cp < 0x80) {
                cur_lower.push_back(static_cast<char>(std::tolower(static_cast<int>(cp))));
            } else {
                cur_lower.append(sentence.substr(i, len));
            }
            i += len;
            continue;
        }
        bool internal = false;
        if ((is_apostrophe(cp) || cp == '-') && !cur_raw.empty()) {
            std::size_t j = i + len;
            if (j < sentence.size()) {
                auto [cp2, len2] = next_codepoint(sentence, j);
                (void)len2;
                internal = is_word_cp(cp2);
            }
        }
        if (internal) {
            cur_raw.append(sentence.substr(i, len));
            cur_lower.push_back(is_apostrophe(cp) ? '\'' : '-');
        } else {
            flush();
            bool whitespace =
                (cp < 0x80 && std::isspace(static_cast<int>(cp))) || cp == 0xA0;
            if (!whitespace) punct.push_back(punct_name(cp));
        }
        i += len;
    }
    flush();
}

std::string lemmatize(const std::string& word, const LexiconBundle& lex) {
    auto it = lex.lemma_map.find(word);
    if (it != lex.lemma_map.end()) return it->second;

    std::size_t n = word.size();
    auto ends_with = [&](std::string_view suffix) {
        return n >= suffix.size() && word.compare(n - suffix.size(), suffix.size(), suffix) == 0;
    };

    // After -ing/-ed removal: undouble the final consonant, or restore a
    // dropped silent 'e'. The tests pin the observable cases; everything the
    // rules cannot decide goes through the dictionary.
    auto repair = [&](std::string stem) {
        std::size_t m = stem.size();
        if (m >= 4 && stem[m - 1] == stem[m - 2]) {
            switch (stem[m - 1]) {
                case 'b': case 'd': case 'g': case 'm':
                case 'n': case 'p': case 'r': case 't':
                    stem.pop_back();  // runn -> run, stopp -> stop
                    return stem;
                default:
                    break;
            }
        }
        if (m < 3) return stem;
        char last = stem[m - 1];
        char prev = stem[m - 2];
        char pprev = stem[m - 3];
        auto aeiou = [](char c) {
            return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
        };
        bool add_e = false;
        if (last == 'u') {
            add_e = true;  // continu -> continue
        } else if ((last == 'c' || last == 's' || last == 'v' || last == 'z' || last == 'g') &&
                   is_vowel(prev)) {
            add_e = true;  // chas -> chase, analyz -> analyze, hous -> house
        } else if ((last == 'k' || last == 'd' || last == 'b' || last == 'm' || last == 'p') &&
                   is_vowel(prev) && !aeiou(pprev)) {
            add_e = true;  // mak -> make, provid -> provide; look/need/claim keep
        } else if (last == 't' && (prev == 'a' || prev == 'o' || prev == 'u') && !aeiou(pprev)) {
            add_e = true;  // generat -> generate, comput -> compute; float/treat keep
        } else if (last == 'n' && prev == 'i' && !aeiou(pprev)) {
            add_e = true;  // determin -> determine, combin -> combine
        } else if (last == 'l' && !aeiou(prev) && prev != 'l') {
            add_e = true;  // enabl -> enable, sampl -> sample; model keeps
        }
        if (add_e) stem.push_back('e');
        return stem;
    };

    if (n >= 5 && (ends_with("ies") || ends_with("ied"))) {
        return word.substr(0, n - 3) + "y";
    }
    if (n >= 5 && (ends_with("sses") || ends_with("xes") || ends_with("zes") ||
                   ends_with("ches") || ends_with("shes"))) {
        return word.substr(0, n - 2);
    }
    if (n >= 4 && word[n - 1] == 's' && !ends_with("ss") && !ends_with("us") && !ends_with("is") &&
        word[n - 2] != '\'') {
        return word.substr(0, n - 1);
    }
    if (n >= 6 && ends_with("ing")) {
        return repair(word.substr(0, n - 3));
    }
    if (n >= 5 && ends_with("ed")) {
        return repair(word.substr(0, n - 2));
    }
    return word;
}

TokenizedAbstract preprocess(std::string_view text, const LexiconBundle& lex) {
    if (trim(text).empty()) {
        throw std::invalid_argument("empty document");
    }
    TokenizedAbstract out;
    out.sentences = split_sentences(text);
    out.sentence_tokens.resize(out.sentences.size());
    out.sentence_raw_tokens.resize(out.sentences.size());
    out.sentence_punct.resize(out.sentences.size());
    for (std::size_t s = 0; s < out.sentences.size(); ++s) {
        tokenize_sentence(out.sentences[s], out.sentence_tokens[s], out.sentence_raw_tokens[s],
                          out.sentence_punct[s]);
        out.word_count += out.sentence_tokens[s].size();
        for (const auto& tok : out.sentence_tokens[s]) {
            if (lex.is_stopword(tok)) continue;
            out.lemmas.push_back(lemmatize(tok, lex));
        }
    }
    out.sentence_count = out.sentences.size();
    return out;
}

int count_syllables(std::string_view word) {
    int groups = 0;
    bool in_group = false;
    bool any_alpha = false;
    char last_alpha = 0;
    char before_last_alpha = 0;
    for (char ch : word) {
        unsigned char uc = static_cast<unsigned char>(ch);
        if (!std::isalpha(uc)) {
            in_group = false;  // separators break vowel groups
            continue;
        }
        any_alpha = true;
        char c = static_cast<char>(std::tolower(uc));
        before_last_alpha = last_alpha;
        last_alpha = c;
        if (is_vowel(c)) {
            if (!in_group) ++groups;
            in_group = true;
        } else {
            in_group = false;
        }
    }
    if (!any_alpha) {
        throw std::invalid_argument("no alphabetic characters: '" + std::string(word) + "'");
    }
    // trailing standalone silent 'e'
    if (groups >= 2 && last_alpha == 'e' && before_last_alpha != 0 && !is_vowel(before_last_alpha)) {
        --groups;
    }
    return std::max(groups, 1);
}

bool is_complex_word(std::string_view word, bool sentence_initial) {
    std::string alpha;
    alpha.reserve(word.size());
    char first_alpha = 0;
    for (char ch : word) {
        if (std::isalpha(static_cast<unsigned char>(ch))) {
            if (first_alpha == 0) first_alpha = ch;
            alpha.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
        }
    }
    if (alpha.empty()) return false;
    if (!sentence_initial && std::isupper(static_cast<unsigned char>(first_alpha))) {
        return false;  // proper-noun exclusion
    }
    auto strip = [&](std::string_view suffix) {
        if (alpha.size() >= suffix.size() + 3 &&
            alpha.compare(alpha.size() - suffix.size(), suffix.size(), suffix) == 0) {
            alpha.erase(alpha.size() - suffix.size());
            return true;
        }
        return false;
    };
    strip("ing") || strip("ed") || strip("es") || strip("ly");
    return count_syllables(alpha) >= 3;
}

namespace detail {

std::unordered_set<std::string> parse_wordset(std::string_view text) {
    std::unordered_set<std::string> out;
    std::istringstream is{std::string(text)};
    std::string line;
    while (std::getline(is, line)) {
        std::string t = trim(line);
        if (!t.empty()) out.insert(to_lower(t));
    }
    return out;
}

std::unordered_map<std::string, std::string> parse_lemma_map(std::string_view text) {
    std::unordered_map<std::string, std::string> out;
    std::istringstream is{std::string(text)};
    std::string line;
    while (std::getline(is, line)) {
        std::string t = trim(line);
        if (t.empty()) continue;
        auto tab = t.find('\t');
        if (tab == std::string::npos) {
            throw std::runtime_error("lemma map line missing tab: '" + t + "'");
        }
        out[to_lower(trim(t.substr(0, tab)))] = to_lower(trim(t.substr(tab + 1)));
    }
    return out;
}

std::vector<std::vector<std::string>> parse_patterns(std::string_view text) {
    std::vector<std::vector<std::string>> out;
    std::istringstream is{std::string(text)};
    std::string line;
    while (std::getline(is, line)) {
        std::istringstream ss(to_lower(trim(line)));
        std::vector<std::string> pattern;
        std::string tok;
        while (ss >> tok) pattern.push_back(tok);
        if (!pattern.empty()) out.push_back(std::move(pattern));
    }
    return out;
}

}  // namespace detail

LexiconBundle load_lexicon_dir(const std::filesystem::path& dir) {
    LexiconBundle lex = LexiconBundle::defaults();
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) {
        throw std::runtime_error("not a lexicon directory: " + dir.string());
    }
    auto slurp = [&](const char* name) -> std::string { return read_file(dir / name); };
    if (fs::exists(dir / "stopwords.txt")) {
        lex.stopwords = detail::parse_wordset(slurp("stopwords.txt"));
    }
    if (fs::exists(dir / "lemma_map.tsv")) {
        lex.lemma_map = detail::parse_lemma_map(slurp("lemma_map.tsv"));
    }
    if (fs::exists(dir / "irregular_participles.txt")) {
        lex.irregular_participles = detail::parse_wordset(slurp("irregular_participles.txt"));
    }
    if (fs::exists(dir / "first_person.txt")) {
        lex.first_person_pronouns = detail::parse_wordset(slurp("first_person.txt"));
    }
    if (fs::exists(dir / "hedging.txt")) {
        lex.hedging_patterns = detail::parse_patterns(slurp("hedging.txt"));
    }
    if (fs::exists(dir / "be_forms.txt")) {
        lex.be_forms = detail::parse_wordset(slurp("be_forms.txt"));
    }
    return lex;
}

}  // namespace lexshift
