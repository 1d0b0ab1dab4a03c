#ifndef LEXSHIFT_CORPUS_HPP_
#define LEXSHIFT_CORPUS_HPP_

#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lexshift/util.hpp"

namespace lexshift {

enum class VenueKind { journal, proceedings };

std::string to_string(VenueKind kind);
std::optional<VenueKind> venue_kind_from_string(std::string_view s);

struct AbstractRecord {
    std::string id;
    int year = 0;
    VenueKind venue_kind = VenueKind::journal;
    std::string venue_name;
    std::optional<std::string> discipline;
    std::optional<int> author_count;
    std::string text;

    bool operator==(const AbstractRecord&) const = default;
};

// Immutable after construction; grouping indexes partition the record list.
class Corpus {
public:
    Corpus() = default;
    explicit Corpus(std::vector<AbstractRecord> records);

    const std::vector<AbstractRecord>& records() const { return records_; }
    std::size_t size() const { return records_.size(); }
    bool empty() const { return records_.empty(); }

    const std::vector<int>& years() const { return years_; }
    bool has_year(int year) const { return year_index_.count(year) > 0; }

    // Indices into records() for one year / one (year, venue) group.
    const std::vector<std::size_t>& in_year(int year) const;
    const std::vector<std::size_t>& in_year_venue(int year, VenueKind kind) const;

    const AbstractRecord* find(const std::string& id) const;

private:
    std::vector<AbstractRecord> records_;
    std::vector<int> years_;
    std::map<int, std::vector<std::size_t>> year_index_;
    std::map<std::pair<int, int>, std::vector<std::size_t>> year_venue_index_;
    std::map<std::string, std::size_t> id_index_;
};

struct RejectedLine {
    std::size_t line_no = 0;
    std::string reason;
};

struct LoadReport {
    std::size_t total_lines = 0;  // non-blank lines seen
    std::size_t accepted = 0;
    std::vector<RejectedLine> rejected;
};

// venue_name -> discipline label, from a CSV with header "venue_name,discipline".
using DisciplineMap = std::map<std::string, std::string>;

DisciplineMap load_discipline_map(const std::filesystem::path& path);

struct LoadOptions {
    YearRange valid_years{1900, 2100};
    // When set, fills missing `discipline` fields from venue_name.
    const DisciplineMap* discipline_map = nullptr;
};

struct LoadResult {
    Corpus corpus;
    LoadReport report;
};

// One JSON object per line; invalid records are rejected with a reason and
// processing continues.
LoadResult load_corpus(const std::filesystem::path& path, const LoadOptions& options = {});
LoadResult parse_corpus(std::istream& in, const LoadOptions& options = {});

// JSONL writer; load_corpus(export_corpus(c)) restores an identical record set.
void export_corpus(const Corpus& corpus, const std::filesystem::path& path);
std::string corpus_to_jsonl(const Corpus& corpus);

struct FilterSpec {
    YearRange year_range;
    std::optional<VenueKind> venue_kind;
    std::optional<std::string> discipline;
};

Corpus filter_corpus(const Corpus& corpus, const FilterSpec& spec);

struct SummaryRow {
    int year = 0;
    VenueKind venue_kind = VenueKind::journal;
    std::size_t count = 0;
    std::optional<double> mean_author_count;  // absent when no record has the field
    std::size_t author_count_missing = 0;
};

// Rows sorted by (year, venue_kind); counts sum to corpus size.
std::vector<SummaryRow> summarize_corpus(const Corpus& corpus);

std::string summary_to_csv(const std::vector<SummaryRow>& rows);
std::string load_report_to_csv(const LoadReport& report);

}  // namespace lexshift

#endif  // LEXSHIFT_CORPUS_HPP_
