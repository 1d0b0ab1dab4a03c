#include "lexshift/excess.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "lexshift/csv.hpp"

namespace lexshift {

std::string to_string(FlaggedBy f) {
    switch (f) {
        case FlaggedBy::delta: return "delta";
        case FlaggedBy::ratio: return "ratio";
        case FlaggedBy::both: return "both";
    }
    return "?";
}

std::string to_string(StyleLabel l) {
    switch (l) {
        case StyleLabel::style: return "style";
        case StyleLabel::content: return "content";
        case StyleLabel::unlabeled: return "unlabeled";
    }
    return "?";
}

std::string to_string(TuneMode mode) {
    return mode == TuneMode::rare ? "rare" : "common";
}

double ratio_curve(double observed_frequency) {
    if (observed_frequency <= 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return std::pow(observed_frequency, std::log10(3.0) / -2.0);
}

ExcessScan preliminary_excess(const YearWordMatrix& m, int target_year, YearRange fit_years,
                              double delta_thresh, const std::function<double(double)>& curve) {
    ExcessScan out;
    for (const auto& word : m.vocab()) {
        DepartureRecord dep;
        try {
            dep = departures(m, word, target_year, fit_years);
        } catch (const std::exception&) {
            out.skipped_words.push_back(word);
            continue;
        }
        bool by_delta = dep.delta > delta_thresh;
        bool by_ratio = dep.ratio > curve(dep.observed);
        if (!by_delta && !by_ratio) continue;
        ExcessWordRecord rec;
        rec.word = dep.word;
        rec.year = dep.year;
        rec.observed = dep.observed;
        rec.expected = dep.expected;
        rec.delta = dep.delta;
        rec.ratio = dep.ratio;
        rec.flagged_by = by_delta && by_ratio ? FlaggedBy::both
                         : by_delta           ? FlaggedBy::delta
                                              : FlaggedBy::ratio;
        out.records.push_back(std::move(rec));
    }
    std::sort(out.records.begin(), out.records.end(),
              [](const ExcessWordRecord& a, const ExcessWordRecord& b) {
                  if (a.delta != b.delta) return a.delta > b.delta;
                  return a.word < b.word;
              });
    return out;
}

AnnotationMap parse_annotations(std::string_view text) {
    AnnotationMap map;
    std::istringstream is{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (line_no == 1 && t == "word,label") continue;
        auto fields = csv_split(t);
        std::string word = fields.size() == 2 ? to_lower(trim(fields[0])) : "";
        std::string label = fields.size() == 2 ? to_lower(trim(fields[1])) : "";
        StyleLabel parsed;
        if (label == "style") {
            parsed = StyleLabel::style;
        } else if (label == "content") {
            parsed = StyleLabel::content;
        } else {
            throw std::runtime_error("annotation parse error at line " + std::to_string(line_no));
        }
        if (word.empty()) {
            throw std::runtime_error("annotation parse error at line " + std::to_string(line_no));
        }
        auto it = map.find(word);
        if (it != map.end() && it->second != parsed) {
            throw std::runtime_error("conflicting annotation for '" + word + "' at line " +
                                     std::to_string(line_no));
        }
        map[word] = parsed;
    }
    return map;
}

AnnotationMap load_annotations(const std::filesystem::path& path) {
    return parse_annotations(read_file(path));
}

StyleFilterResult style_filter(const std::vector<ExcessWordRecord>& records,
                               const AnnotationMap& annotations) {
    StyleFilterResult out;
    for (ExcessWordRecord rec : records) {
        auto it = annotations.find(rec.word);
        if (it == annotations.end()) {
            rec.label = StyleLabel::unlabeled;
            out.needs_annotation.push_back(std::move(rec));
        } else if (it->second == StyleLabel::style) {
            rec.label = StyleLabel::style;
            out.style.push_back(std::move(rec));
        } else {
            rec.label = StyleLabel::content;
            out.content.push_back(std::move(rec));
        }
    }
    return out;
}

double group_prevalence(const ProcessedCorpus& processed, int year,
                        const std::set<std::string>& words) {
    std::size_t total = 0;
    std::size_t hit = 0;
    for (const auto& d : processed.docs) {
        if (d.year != year) continue;
        ++total;
        for (const auto& w : words) {
            if (d.contains(w)) {
                ++hit;
                break;
            }
        }
    }
    if (total == 0) {
        throw std::runtime_error("empty year slice: " + std::to_string(year));
    }
    return static_cast<double>(hit) / static_cast<double>(total);
}

double prevalence_differential(const ProcessedCorpus& processed, const std::set<std::string>& words,
                               int post_year, int pre_year) {
    return group_prevalence(processed, post_year, words) -
           group_prevalence(processed, pre_year, words);
}

TunedSet tune_marker_set(const ProcessedCorpus& processed, const YearWordMatrix& m,
                         const std::vector<ExcessWordRecord>& style_records, TuneMode mode,
                         int post_year, int pre_year, const std::vector<double>& cutoff_grid,
                         YearRange fit_years, PartitionStrategy strategy, unsigned workers) {
    if (cutoff_grid.empty()) {
        throw std::invalid_argument("empty cutoff grid");
    }
    if (!std::is_sorted(cutoff_grid.begin(), cutoff_grid.end())) {
        throw std::invalid_argument("cutoff grid must be ascending");
    }

    // Partition key per word: counterfactual baseline at pre_year, or the
    // target-year ratio under the alternative strategy.
    std::vector<std::pair<std::string, double>> keys;
    keys.reserve(style_records.size());
    for (const auto& rec : style_records) {
        double key;
        if (strategy == PartitionStrategy::baseline_frequency) {
            key = fit_counterfactual(m, rec.word, fit_years).predict(pre_year);
        } else {
            key = rec.ratio;
        }
        keys.emplace_back(rec.word, key);
    }

    auto candidates = [&](double cutoff) {
        std::set<std::string> words;
        for (const auto& [word, key] : keys) {
            bool in = mode == TuneMode::rare
                          ? (strategy == PartitionStrategy::ratio_threshold ? key > cutoff
                                                                            : key < cutoff)
                          : (strategy == PartitionStrategy::ratio_threshold ? key <= cutoff
                                                                            : key >= cutoff);
            if (in) words.insert(word);
        }
        return words;
    };

    struct Point {
        std::set<std::string> words;
        double delta = 0.0;
    };
    std::vector<Point> points(cutoff_grid.size());
    parallel_chunks(cutoff_grid.size(), workers, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            points[i].words = candidates(cutoff_grid[i]);
            points[i].delta = points[i].words.empty()
                                  ? 0.0
                                  : prevalence_differential(processed, points[i].words, post_year,
                                                            pre_year);
        }
    });

    // An empty candidate set is a real grid point with delta exactly 0; it
    // wins when every non-empty set scores negative, which reads as "no
    // usable markers" rather than the least-bad set.
    bool any_nonempty = false;
    std::size_t best = 0;
    TunedSet out;
    out.mode = mode;
    out.sweep.reserve(cutoff_grid.size());
    for (std::size_t i = 0; i < cutoff_grid.size(); ++i) {
        out.sweep.push_back({cutoff_grid[i], points[i].words.size(), points[i].delta});
        if (!points[i].words.empty()) any_nonempty = true;
        if (i == 0) continue;
        const Point& cand = points[i];
        const Point& cur = points[best];
        if (cand.delta > cur.delta ||
            (cand.delta == cur.delta && cand.words.size() < cur.words.size())) {
            best = i;  // equal delta and size keeps the earlier (smaller) cutoff
        }
    }
    if (!any_nonempty) {
        throw std::runtime_error("no candidates: every cutoff yields an empty set");
    }
    out.cutoff = cutoff_grid[best];
    out.words = points[best].words;
    out.delta = points[best].delta;
    return out;
}

MarkerSets make_marker_sets(const ProcessedCorpus& processed, const TunedSet& rare,
                            const TunedSet& common, int post_year, int pre_year) {
    MarkerSets out;
    out.rare = rare.words;
    out.common = common.words;
    for (const auto& w : out.common) out.rare.erase(w);  // partition: common wins
    out.rare_cutoff = rare.cutoff;
    out.common_cutoff = common.cutoff;
    out.post_year = post_year;
    out.pre_year = pre_year;
    out.delta_rare =
        out.rare.empty() ? 0.0 : prevalence_differential(processed, out.rare, post_year, pre_year);
    out.delta_common = out.common.empty()
                           ? 0.0
                           : prevalence_differential(processed, out.common, post_year, pre_year);
    return out;
}

double estimate_llm_share(double delta_rare, double delta_common) {
    double mean = (delta_rare + delta_common) / 2.0;
    return mean > 0.0 ? mean : 0.0;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    if (!(lo > 0.0) || !(hi > lo) || n < 2) {
        throw std::invalid_argument("log grid requires 0 < lo < hi and n >= 2");
    }
    std::vector<double> grid(n);
    double llo = std::log(lo);
    double lhi = std::log(hi);
    for (std::size_t i = 0; i < n; ++i) {
        double t = static_cast<double>(i) / static_cast<double>(n - 1);
        grid[i] = std::exp(llo + t * (lhi - llo));
    }
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}

std::string excess_to_csv(const std::vector<ExcessWordRecord>& records) {
    CsvBuilder csv("word,year,observed,expected,delta,ratio,flagged_by,label");
    for (const auto& r : records) {
        csv.row({r.word, std::to_string(r.year), format_double(r.observed),
                 format_double(r.expected), format_double(r.delta), format_double(r.ratio),
                 to_string(r.flagged_by), to_string(r.label)});
    }
    return csv.str();
}

std::string sweep_to_csv(const TunedSet& rare, const TunedSet& common) {
    CsvBuilder csv("mode,cutoff,set_size,delta");
    for (const TunedSet* set : {&rare, &common}) {
        for (const auto& p : set->sweep) {
            csv.row({to_string(set->mode), format_double(p.cutoff), std::to_string(p.set_size),
                     format_double(p.delta)});
        }
    }
    csv.raw_line("# optimum rare: cutoff=" + format_double(rare.cutoff) +
                 " set_size=" + std::to_string(rare.words.size()) +
                 " delta=" + format_double(rare.delta));
    csv.raw_line("# optimum common: cutoff=" + format_double(common.cutoff) +
                 " set_size=" + std::to_string(common.words.size()) +
                 " delta=" + format_double(common.delta));
    return csv.str();
}

}  // namespace lexshift
