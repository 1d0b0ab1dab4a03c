#ifndef LEXSHIFT_EXCESS_HPP_
#define LEXSHIFT_EXCESS_HPP_

#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "lexshift/freqmatrix.hpp"

namespace lexshift {

enum class FlaggedBy { delta, ratio, both };
enum class StyleLabel { style, content, unlabeled };

std::string to_string(FlaggedBy f);
std::string to_string(StyleLabel l);

struct ExcessWordRecord {
    std::string word;
    int year = 0;
    double observed = 0.0;
    double expected = 0.0;
    double delta = 0.0;
    double ratio = 0.0;
    FlaggedBy flagged_by = FlaggedBy::delta;
    StyleLabel label = StyleLabel::unlabeled;
};

// r(f) = f^(log10(3) / -2): the ratio bar rises as the observed frequency
// falls; r(1) = 1 and r(0.01) = 3.
double ratio_curve(double observed_frequency);

struct ExcessScan {
    std::vector<ExcessWordRecord> records;        // delta-descending, then word
    std::vector<std::string> skipped_words;       // per-word fit failures
};

// A word is excess when delta > delta_thresh or ratio > curve(observed).
ExcessScan preliminary_excess(const YearWordMatrix& m, int target_year, YearRange fit_years,
                              double delta_thresh = 0.03,
                              const std::function<double(double)>& curve = ratio_curve);

using AnnotationMap = std::map<std::string, StyleLabel>;

// CSV "word,label" with label in {style, content}; conflicting duplicates are
// an error, as is any malformed line (reported with its line number).
AnnotationMap load_annotations(const std::filesystem::path& path);
AnnotationMap parse_annotations(std::string_view text);

struct StyleFilterResult {
    std::vector<ExcessWordRecord> style;
    std::vector<ExcessWordRecord> content;
    std::vector<ExcessWordRecord> needs_annotation;  // never silently dropped
};

StyleFilterResult style_filter(const std::vector<ExcessWordRecord>& records,
                               const AnnotationMap& annotations);

// Fraction of year-`year` documents whose lemma set intersects `words`.
double group_prevalence(const ProcessedCorpus& processed, int year,
                        const std::set<std::string>& words);

// P(post) - Q(pre), in [-1, 1].
double prevalence_differential(const ProcessedCorpus& processed, const std::set<std::string>& words,
                               int post_year, int pre_year);

enum class TuneMode { rare, common };
enum class PartitionStrategy {
    baseline_frequency,  // cutoff on the counterfactual baseline at pre_year
    ratio_threshold,     // cutoff directly on the frequency ratio
};

std::string to_string(TuneMode mode);

struct SweepPoint {
    double cutoff = 0.0;
    std::size_t set_size = 0;
    double delta = 0.0;
};

struct TunedSet {
    TuneMode mode = TuneMode::rare;
    double cutoff = 0.0;
    std::set<std::string> words;
    double delta = 0.0;
    std::vector<SweepPoint> sweep;  // one row per grid point
};

// Sweeps the cutoff grid and keeps the point maximizing the group-prevalence
// differential; ties break toward the smaller candidate set, then the smaller
// cutoff. Grid evaluation may run in parallel; the result is the sequential one.
TunedSet tune_marker_set(const ProcessedCorpus& processed, const YearWordMatrix& m,
                         const std::vector<ExcessWordRecord>& style_records, TuneMode mode,
                         int post_year, int pre_year, const std::vector<double>& cutoff_grid,
                         YearRange fit_years,
                         PartitionStrategy strategy = PartitionStrategy::baseline_frequency,
                         unsigned workers = 1);

struct MarkerSets {
    std::set<std::string> rare;
    std::set<std::string> common;
    double rare_cutoff = 0.0;
    double common_cutoff = 0.0;
    double delta_rare = 0.0;
    double delta_common = 0.0;
    int post_year = 0;
    int pre_year = 0;
};

// Combines the two tuned sets; a word landing in both goes to common, and the
// deltas are recomputed on the final sets.
MarkerSets make_marker_sets(const ProcessedCorpus& processed, const TunedSet& rare,
                            const TunedSet& common, int post_year, int pre_year);

// Mean of the two differentials, floored at zero; a lower bound by design.
double estimate_llm_share(double delta_rare, double delta_common);

// n log-spaced points covering [lo, hi].
std::vector<double> log_grid(double lo, double hi, std::size_t n);

std::string excess_to_csv(const std::vector<ExcessWordRecord>& records);
std::string sweep_to_csv(const TunedSet& rare, const TunedSet& common);

}  // namespace lexshift

#endif  // LEXSHIFT_EXCESS_HPP_
