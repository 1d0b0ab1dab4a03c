#ifndef LEXSHIFT_CLASSIFY_HPP_
#define LEXSHIFT_CLASSIFY_HPP_

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lexshift/excess.hpp"
#include "lexshift/freqmatrix.hpp"

namespace lexshift {

struct MarkerProvenance {
    int year = 0;
    TuneMode mode = TuneMode::rare;
    double cutoff = 0.0;
};

// Union of the tuned per-year sets; a lemma in both unions belongs to common.
struct GlobalMarkerSet {
    std::set<std::string> rare;
    std::set<std::string> common;
    std::vector<MarkerProvenance> provenance;
};

GlobalMarkerSet build_global_markers(const std::vector<MarkerSets>& sets);

struct ClassificationResult {
    std::string id;
    int rare_hits = 0;    // distinct rare markers present
    int common_hits = 0;  // distinct common markers present
    bool is_llm = false;
};

// A document is classified when it contains at least min_common common and
// min_rare rare markers; hits count distinct lemmas, not occurrences.
ClassificationResult classify_lemmas(const std::string& id, const DocLemmas& doc,
                                     const GlobalMarkerSet& markers, int min_common = 1,
                                     int min_rare = 2);
ClassificationResult classify_abstract(const TokenizedAbstract& t, const GlobalMarkerSet& markers,
                                       int min_common = 1, int min_rare = 2);
std::vector<ClassificationResult> classify_corpus(const ProcessedCorpus& processed,
                                                  const GlobalMarkerSet& markers,
                                                  int min_common = 1, int min_rare = 2);

struct SensitivityRow {
    int min_common = 0;
    int min_rare = 0;
    std::size_t fp_count = 0;
    std::size_t fp_total = 0;
    std::size_t pos_count = 0;
    std::size_t pos_total = 0;
    std::optional<double> fp_rate;        // absent when the pre slice is empty
    std::optional<double> positive_rate;  // absent when the post slice is empty
};

// False-positive rate over years < pre_cut_year against the positive rate
// over years >= post_start_year, for every threshold pair in the grid.
std::vector<SensitivityRow> sensitivity_sweep(const ProcessedCorpus& processed,
                                              const GlobalMarkerSet& markers,
                                              const std::vector<std::pair<int, int>>& grid,
                                              int pre_cut_year, int post_start_year);

struct YearTableRow {
    int year = 0;
    std::size_t classified = 0;
    std::size_t total = 0;
};

struct VenueTableRow {
    int year = 0;
    VenueKind venue_kind = VenueKind::journal;
    std::size_t classified = 0;
    std::size_t total = 0;
};

struct DisciplineTableRow {
    std::string discipline;
    int year = 0;
    std::size_t classified = 0;
    std::size_t total = 0;
};

struct PrevalenceTables {
    std::vector<YearTableRow> by_year;
    std::vector<VenueTableRow> by_venue;
    std::vector<DisciplineTableRow> by_discipline;  // journals only
};

// Per-year, per-(year x venue), and per-(discipline x year) counts; journal
// records without a mapping fall under "unmapped".
PrevalenceTables prevalence_tables(const Corpus& corpus,
                                   const std::vector<ClassificationResult>& results,
                                   const DisciplineMap& discipline_map);

std::string year_table_to_csv(const std::vector<YearTableRow>& rows);
std::string venue_table_to_csv(const std::vector<VenueTableRow>& rows);
std::string discipline_table_to_csv(const std::vector<DisciplineTableRow>& rows);
std::string classifications_to_csv(const std::vector<ClassificationResult>& results);
std::string sensitivity_to_csv(const std::vector<SensitivityRow>& rows);

// Marker-set file: CSV "word,kind" plus "# provenance:" comment lines.
std::string markers_to_csv(const GlobalMarkerSet& markers);
GlobalMarkerSet parse_markers_csv(std::string_view text);
GlobalMarkerSet load_markers_csv(const std::filesystem::path& path);

}  // namespace lexshift

#endif  // LEXSHIFT_CLASSIFY_HPP_
