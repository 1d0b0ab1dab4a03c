#include "lexshift/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "lexshift/json.hpp"

#include "lexshift/csv.hpp"

namespace lexshift {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string to_string(VenueKind kind) {
    return kind == VenueKind::journal ? "journal" : "proceedings";
}

std::optional<VenueKind> venue_kind_from_string(std::string_view s) {
    if (s == "journal") return VenueKind::journal;
    if (s == "proceedings") return VenueKind::proceedings;
    return std::nullopt;
}

Corpus::Corpus(std::vector<AbstractRecord> records) : records_(std::move(records)) {
    for (std::size_t i = 0; i < records_.size(); ++i) {
        const auto& r = records_[i];
        year_index_[r.year].push_back(i);
        year_venue_index_[{r.year, static_cast<int>(r.venue_kind)}].push_back(i);
        id_index_[r.id] = i;
    }
    years_.reserve(year_index_.size());
    for (const auto& [year, _] : year_index_) years_.push_back(year);
}

const std::vector<std::size_t>& Corpus::in_year(int year) const {
    static const std::vector<std::size_t> kEmpty;
    auto it = year_index_.find(year);
    return it == year_index_.end() ? kEmpty : it->second;
}

const std::vector<std::size_t>& Corpus::in_year_venue(int year, VenueKind kind) const {
    static const std::vector<std::size_t> kEmpty;
    auto it = year_venue_index_.find({year, static_cast<int>(kind)});
    return it == year_venue_index_.end() ? kEmpty : it->second;
}

const AbstractRecord* Corpus::find(const std::string& id) const {
    auto it = id_index_.find(id);
    return it == id_index_.end() ? nullptr : &records_[it->second];
}

namespace {

// Parses one JSONL record; returns the failure reason instead of a record.
std::optional<std::string> parse_record(const std::string& line, const LoadOptions& options,
                                        AbstractRecord& out) {
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) return "malformed json";

    for (const char* field : {"id", "year", "venue_kind", "venue_name", "text"}) {
        if (!j.contains(field)) return std::string("missing field: ") + field;
    }
    if (!j["id"].is_string()) return "invalid type: id";
    out.id = j["id"].get<std::string>();
    if (trim(out.id).empty()) return "empty id";

    if (!j["year"].is_number_integer()) return "invalid type: year";
    out.year = j["year"].get<int>();
    if (!options.valid_years.contains(out.year)) return "year out of range";

    if (!j["venue_kind"].is_string()) return "invalid type: venue_kind";
    auto kind = venue_kind_from_string(j["venue_kind"].get<std::string>());
    if (!kind) return "invalid venue_kind";
    out.venue_kind = *kind;

    if (!j["venue_name"].is_string()) return "invalid type: venue_name";
    out.venue_name = j["venue_name"].get<std::string>();

    if (!j["text"].is_string()) return "invalid type: text";
    out.text = j["text"].get<std::string>();
    if (trim(out.text).empty()) return "empty text";

    out.discipline.reset();
    if (j.contains("discipline") && !j["discipline"].is_null()) {
        if (!j["discipline"].is_string()) return "invalid type: discipline";
        out.discipline = j["discipline"].get<std::string>();
    }
    out.author_count.reset();
    if (j.contains("author_count") && !j["author_count"].is_null()) {
        if (!j["author_count"].is_number_integer()) return "invalid type: author_count";
        int n = j["author_count"].get<int>();
        if (n < 1) return "invalid author_count";
        out.author_count = n;
    }

    if (!out.discipline && options.discipline_map) {
        auto it = options.discipline_map->find(out.venue_name);
        if (it != options.discipline_map->end()) out.discipline = it->second;
    }
    return std::nullopt;
}

}  // namespace

LoadResult parse_corpus(std::istream& in, const LoadOptions& options) {
    LoadResult result;
    std::vector<AbstractRecord> records;
    std::map<std::string, std::size_t> seen_ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        ++result.report.total_lines;
        AbstractRecord rec;
        if (auto reason = parse_record(line, options, rec)) {
            result.report.rejected.push_back({line_no, *reason});
            continue;
        }
        if (seen_ids.count(rec.id)) {
            result.report.rejected.push_back({line_no, "duplicate id"});
            continue;
        }
        seen_ids[rec.id] = records.size();
        records.push_back(std::move(rec));
    }
    result.report.accepted = records.size();
    result.corpus = Corpus(std::move(records));
    return result;
}

LoadResult load_corpus(const std::filesystem::path& path, const LoadOptions& options) {
    std::ifstream is(path, std::ios::binary);
    if (!is) {
        throw std::runtime_error("cannot open corpus file: " + path.string());
    }
    return parse_corpus(is, options);
}

std::string corpus_to_jsonl(const Corpus& corpus) {
    std::string out;
    for (const auto& r : corpus.records()) {
        ordered_json j;
        j["id"] = r.id;
        j["year"] = r.year;
        j["venue_kind"] = to_string(r.venue_kind);
        j["venue_name"] = r.venue_name;
        if (r.discipline) j["discipline"] = *r.discipline;
        if (r.author_count) j["author_count"] = *r.author_count;
        j["text"] = r.text;
        out += j.dump();
        out += '\n';
    }
    return out;
}

void export_corpus(const Corpus& corpus, const std::filesystem::path& path) {
    write_file_atomic(path, corpus_to_jsonl(corpus));
}

Corpus filter_corpus(const Corpus& corpus, const FilterSpec& spec) {
    spec.year_range.require_valid("filter year range");
    std::vector<AbstractRecord> out;
    for (const auto& r : corpus.records()) {
        if (!spec.year_range.contains(r.year)) continue;
        if (spec.venue_kind && r.venue_kind != *spec.venue_kind) continue;
        if (spec.discipline && (!r.discipline || *r.discipline != *spec.discipline)) continue;
        out.push_back(r);
    }
    return Corpus(std::move(out));
}

std::vector<SummaryRow> summarize_corpus(const Corpus& corpus) {
    std::map<std::pair<int, int>, SummaryRow> rows;
    std::map<std::pair<int, int>, std::pair<long long, std::size_t>> author_sums;
    for (const auto& r : corpus.records()) {
        auto key = std::make_pair(r.year, static_cast<int>(r.venue_kind));
        auto& row = rows[key];
        row.year = r.year;
        row.venue_kind = r.venue_kind;
        ++row.count;
        if (r.author_count) {
            author_sums[key].first += *r.author_count;
            author_sums[key].second += 1;
        } else {
            ++row.author_count_missing;
        }
    }
    std::vector<SummaryRow> out;
    out.reserve(rows.size());
    for (auto& [key, row] : rows) {
        auto it = author_sums.find(key);
        if (it != author_sums.end() && it->second.second > 0) {
            row.mean_author_count =
                static_cast<double>(it->second.first) / static_cast<double>(it->second.second);
        }
        out.push_back(row);
    }
    return out;
}

std::string summary_to_csv(const std::vector<SummaryRow>& rows) {
    CsvBuilder csv("year,venue_kind,count,mean_author_count,author_count_missing");
    for (const auto& r : rows) {
        csv.row({std::to_string(r.year), to_string(r.venue_kind), std::to_string(r.count),
                 r.mean_author_count ? format_double(*r.mean_author_count) : std::string(),
                 std::to_string(r.author_count_missing)});
    }
    return csv.str();
}

std::string load_report_to_csv(const LoadReport& report) {
    CsvBuilder csv("line,reason");
    for (const auto& r : report.rejected) {
        csv.row({std::to_string(r.line_no), r.reason});
    }
    return csv.str();
}

DisciplineMap load_discipline_map(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) {
        throw std::runtime_error("cannot open discipline map: " + path.string());
    }
    DisciplineMap map;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty()) continue;
        if (line_no == 1 && t == "venue_name,discipline") continue;
        auto fields = csv_split(t);
        if (fields.size() != 2 || trim(fields[0]).empty() || trim(fields[1]).empty()) {
            throw std::runtime_error("discipline map parse error at line " +
                                     std::to_string(line_no));
        }
        map[trim(fields[0])] = trim(fields[1]);
    }
    return map;
}

}  // namespace lexshift
