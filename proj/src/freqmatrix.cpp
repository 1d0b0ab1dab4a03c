#include "lexshift/freqmatrix.hpp"

#include <algorithm>
#include <stdexcept>

#include "lexshift/csv.hpp"

namespace lexshift {

bool DocLemmas::contains(const std::string& lemma) const {
    return std::binary_search(lemma_set.begin(), lemma_set.end(), lemma);
}

std::vector<const DocLemmas*> ProcessedCorpus::in_year(int year) const {
    std::vector<const DocLemmas*> out;
    for (const auto& d : docs) {
        if (d.year == year) out.push_back(&d);
    }
    return out;
}

std::size_t ProcessedCorpus::count_in_year(int year) const {
    std::size_t n = 0;
    for (const auto& d : docs) {
        if (d.year == year) ++n;
    }
    return n;
}

ProcessedCorpus process_corpus(const Corpus& corpus, const LexiconBundle& lex, unsigned workers) {
    const auto& records = corpus.records();
    ProcessedCorpus out;
    out.docs.resize(records.size());
    parallel_chunks(records.size(), workers, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const auto& r = records[i];
            TokenizedAbstract t = preprocess(r.text, lex);
            DocLemmas d;
            d.id = r.id;
            d.year = r.year;
            d.venue_kind = r.venue_kind;
            d.discipline = r.discipline;
            d.lemma_set.assign(t.lemmas.begin(), t.lemmas.end());
            std::sort(d.lemma_set.begin(), d.lemma_set.end());
            d.lemma_set.erase(std::unique(d.lemma_set.begin(), d.lemma_set.end()),
                              d.lemma_set.end());
            out.docs[i] = std::move(d);
        }
    });
    return out;
}

YearWordMatrix::YearWordMatrix(const RawCounts& raw) {
    for (const auto& [year, entry] : raw) {
        if (entry.first == 0) continue;
        n_docs_[year] = entry.first;
        auto& yc = counts_[year];
        for (const auto& [word, count] : entry.second) {
            if (count == 0) continue;
            yc[word] = count;
            if (!std::binary_search(vocab_.begin(), vocab_.end(), word)) {
                vocab_.insert(std::lower_bound(vocab_.begin(), vocab_.end(), word), word);
            }
        }
    }
    for (const auto& [year, _] : n_docs_) years_.push_back(year);
}

std::size_t YearWordMatrix::n_docs(int year) const {
    auto it = n_docs_.find(year);
    return it == n_docs_.end() ? 0 : it->second;
}

std::size_t YearWordMatrix::doc_count(int year, const std::string& word) const {
    auto yit = counts_.find(year);
    if (yit == counts_.end()) return 0;
    auto wit = yit->second.find(word);
    return wit == yit->second.end() ? 0 : wit->second;
}

double YearWordMatrix::frequency(int year, const std::string& word) const {
    auto it = n_docs_.find(year);
    if (it == n_docs_.end() || it->second == 0) return 0.0;
    return static_cast<double>(doc_count(year, word)) / static_cast<double>(it->second);
}

YearWordMatrix build_matrix(const ProcessedCorpus& processed, std::size_t min_doc_count) {
    YearWordMatrix m;
    m.min_doc_count_ = min_doc_count;
    std::map<std::string, std::size_t> total_docs;  // word -> containing docs overall
    for (const auto& d : processed.docs) {
        ++m.n_docs_[d.year];
        auto& yc = m.counts_[d.year];
        for (const auto& lemma : d.lemma_set) {
            ++yc[lemma];  // lemma_set is unique, so one count per document
            ++total_docs[lemma];
        }
    }
    for (const auto& [word, total] : total_docs) {
        if (total >= min_doc_count) {
            m.vocab_.push_back(word);
        } else {
            ++m.pruned_words_;
        }
    }
    if (m.pruned_words_ > 0) {
        for (auto& [year, yc] : m.counts_) {
            for (auto it = yc.begin(); it != yc.end();) {
                if (!std::binary_search(m.vocab_.begin(), m.vocab_.end(), it->first)) {
                    it = yc.erase(it);
                } else {
                    ++it;
                }
            }
        }
    }
    for (const auto& [year, _] : m.n_docs_) m.years_.push_back(year);
    return m;
}

YearWordMatrix build_matrix(const Corpus& corpus, const LexiconBundle& lex,
                            std::size_t min_doc_count, unsigned workers) {
    return build_matrix(process_corpus(corpus, lex, workers), min_doc_count);
}

TrendModel fit_counterfactual(const YearWordMatrix& m, const std::string& word,
                              YearRange fit_years) {
    fit_years.require_valid("fit window");
    std::vector<int> xs;
    std::vector<double> ys;
    std::size_t max_docs = 0;
    for (int year : m.years()) {
        if (!fit_years.contains(year)) continue;
        xs.push_back(year);
        ys.push_back(m.frequency(year, word));
        max_docs = std::max(max_docs, m.n_docs(year));
    }
    if (xs.size() < 2) {
        throw std::runtime_error("insufficient fit window for '" + word + "': " +
                                 std::to_string(xs.size()) + " data years");
    }
    double n = static_cast<double>(xs.size());
    double x_mean = 0.0, y_mean = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        x_mean += xs[i];
        y_mean += ys[i];
    }
    x_mean /= n;
    y_mean /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double dx = xs[i] - x_mean;
        sxy += dx * (ys[i] - y_mean);
        sxx += dx * dx;
    }
    TrendModel model;
    model.slope = sxy / sxx;
    model.intercept = y_mean - model.slope * x_mean;
    model.fit_years = fit_years;
    model.floor_epsilon = 1.0 / static_cast<double>(max_docs);
    return model;
}

DepartureRecord departures(const YearWordMatrix& m, const std::string& word, int target_year,
                           YearRange fit_years) {
    if (!m.has_year(target_year)) {
        throw std::runtime_error("year not in matrix: " + std::to_string(target_year));
    }
    TrendModel model = fit_counterfactual(m, word, fit_years);
    DepartureRecord rec;
    rec.word = word;
    rec.year = target_year;
    rec.observed = m.frequency(target_year, word);
    rec.expected = model.predict(target_year);
    rec.delta = rec.observed - rec.expected;
    rec.ratio = rec.observed / rec.expected;
    return rec;
}

std::string matrix_to_csv(const YearWordMatrix& m) {
    CsvBuilder csv("year,word,frequency,n_docs");
    for (int year : m.years()) {
        std::string n = std::to_string(m.n_docs(year));
        for (const auto& word : m.vocab()) {
            std::size_t count = m.doc_count(year, word);
            if (count == 0) continue;
            csv.row({std::to_string(year), word, format_double(m.frequency(year, word)), n});
        }
    }
    return csv.str();
}

std::string departures_to_csv(const std::vector<DepartureRecord>& records) {
    CsvBuilder csv("word,year,observed,expected,delta,ratio");
    for (const auto& r : records) {
        csv.row({r.word, std::to_string(r.year), format_double(r.observed),
                 format_double(r.expected), format_double(r.delta), format_double(r.ratio)});
    }
    return csv.str();
}

}  // namespace lexshift
