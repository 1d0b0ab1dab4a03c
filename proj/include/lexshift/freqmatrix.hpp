#ifndef LEXSHIFT_FREQMATRIX_HPP_
#define LEXSHIFT_FREQMATRIX_HPP_

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "lexshift/corpus.hpp"
#include "lexshift/textproc.hpp"
#include "lexshift/util.hpp"

namespace lexshift {

// One document reduced to its distinct-lemma set, plus the grouping fields.
struct DocLemmas {
    std::string id;
    int year = 0;
    VenueKind venue_kind = VenueKind::journal;
    std::optional<std::string> discipline;
    std::vector<std::string> lemma_set;  // sorted, unique

    bool contains(const std::string& lemma) const;
};

struct ProcessedCorpus {
    std::vector<DocLemmas> docs;  // aligned with the source corpus record order

    std::vector<const DocLemmas*> in_year(int year) const;
    std::size_t count_in_year(int year) const;
};

// Runs preprocess over every record; embarrassingly parallel, output
// independent of worker count.
ProcessedCorpus process_corpus(const Corpus& corpus, const LexiconBundle& lex,
                               unsigned workers = 1);

// f_y(w) = (#documents in year y containing lemma w) / n_docs[y].
// Frequencies are stored as integer document counts so f * n_docs is exact.
class YearWordMatrix {
public:
    YearWordMatrix() = default;

    // year -> (n_docs, word -> containing-document count); used by tests.
    using RawCounts = std::map<int, std::pair<std::size_t, std::map<std::string, std::size_t>>>;
    explicit YearWordMatrix(const RawCounts& counts);

    const std::vector<int>& years() const { return years_; }
    const std::vector<std::string>& vocab() const { return vocab_; }
    bool has_year(int year) const { return n_docs_.count(year) > 0; }
    std::size_t n_docs(int year) const;
    std::size_t doc_count(int year, const std::string& word) const;
    double frequency(int year, const std::string& word) const;

    std::size_t pruned_words() const { return pruned_words_; }
    std::size_t min_doc_count() const { return min_doc_count_; }

    friend YearWordMatrix build_matrix(const ProcessedCorpus&, std::size_t);

private:
    std::vector<int> years_;
    std::vector<std::string> vocab_;
    std::map<int, std::size_t> n_docs_;
    std::map<int, std::unordered_map<std::string, std::size_t>> counts_;
    std::size_t pruned_words_ = 0;
    std::size_t min_doc_count_ = 0;
};

// Vocabulary is pruned to lemmas contained in at least `min_doc_count`
// documents overall; years with zero documents are simply absent.
YearWordMatrix build_matrix(const ProcessedCorpus& processed, std::size_t min_doc_count = 5);
YearWordMatrix build_matrix(const Corpus& corpus, const LexiconBundle& lex,
                            std::size_t min_doc_count = 5, unsigned workers = 1);

// Least-squares counterfactual; predictions clamp at floor_epsilon
// (one document's worth of frequency in the largest fit year).
struct TrendModel {
    double slope = 0.0;      // frequency per year
    double intercept = 0.0;  // frequency at year zero
    YearRange fit_years;
    double floor_epsilon = 0.0;

    double predict(int year) const {
        double v = slope * static_cast<double>(year) + intercept;
        return v > floor_epsilon ? v : floor_epsilon;
    }
};

// Ordinary least squares on the (year, frequency) pairs inside fit_years.
// Throws "insufficient fit window" with fewer than two data years.
TrendModel fit_counterfactual(const YearWordMatrix& m, const std::string& word,
                              YearRange fit_years);

struct DepartureRecord {
    std::string word;
    int year = 0;
    double observed = 0.0;
    double expected = 0.0;
    double delta = 0.0;  // observed - expected
    double ratio = 0.0;  // observed / expected
};

DepartureRecord departures(const YearWordMatrix& m, const std::string& word, int target_year,
                           YearRange fit_years);

// CSV "year,word,frequency,n_docs"; zero-frequency pairs are omitted.
std::string matrix_to_csv(const YearWordMatrix& m);

// CSV "word,year,observed,expected,delta,ratio".
std::string departures_to_csv(const std::vector<DepartureRecord>& records);

}  // namespace lexshift

#endif  // LEXSHIFT_FREQMATRIX_HPP_
