#include "lexshift/classify.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "lexshift/csv.hpp"

namespace lexshift {

GlobalMarkerSet build_global_markers(const std::vector<MarkerSets>& sets) {
    if (sets.empty()) {
        throw std::invalid_argument("no marker sets given");
    }
    GlobalMarkerSet out;
    for (const auto& s : sets) {
        out.rare.insert(s.rare.begin(), s.rare.end());
        out.common.insert(s.common.begin(), s.common.end());
        out.provenance.push_back({s.post_year, TuneMode::rare, s.rare_cutoff});
        out.provenance.push_back({s.post_year, TuneMode::common, s.common_cutoff});
    }
    for (const auto& w : out.common) out.rare.erase(w);  // common wins
    return out;
}

namespace {

ClassificationResult classify_set(const std::string& id,
                                  const std::vector<std::string>& sorted_lemmas,
                                  const GlobalMarkerSet& markers, int min_common, int min_rare) {
    if (min_common < 0 || min_rare < 0) {
        throw std::invalid_argument("classification thresholds must be >= 0");
    }
    ClassificationResult r;
    r.id = id;
    for (const auto& w : markers.rare) {
        if (std::binary_search(sorted_lemmas.begin(), sorted_lemmas.end(), w)) ++r.rare_hits;
    }
    for (const auto& w : markers.common) {
        if (std::binary_search(sorted_lemmas.begin(), sorted_lemmas.end(), w)) ++r.common_hits;
    }
    r.is_llm = r.common_hits >= min_common && r.rare_hits >= min_rare;
    return r;
}

}  // namespace

ClassificationResult classify_lemmas(const std::string& id, const DocLemmas& doc,
                                     const GlobalMarkerSet& markers, int min_common,
                                     int min_rare) {
    return classify_set(id, doc.lemma_set, markers, min_common, min_rare);
}

ClassificationResult classify_abstract(const TokenizedAbstract& t, const GlobalMarkerSet& markers,
                                       int min_common, int min_rare) {
    std::vector<std::string> lemmas(t.lemmas.begin(), t.lemmas.end());
    std::sort(lemmas.begin(), lemmas.end());
    lemmas.erase(std::unique(lemmas.begin(), lemmas.end()), lemmas.end());
    return classify_set(std::string(), lemmas, markers, min_common, min_rare);
}

std::vector<ClassificationResult> classify_corpus(const ProcessedCorpus& processed,
                                                  const GlobalMarkerSet& markers, int min_common,
                                                  int min_rare) {
    std::vector<ClassificationResult> out;
    out.reserve(processed.docs.size());
    for (const auto& d : processed.docs) {
        out.push_back(classify_lemmas(d.id, d, markers, min_common, min_rare));
    }
    return out;
}

std::vector<SensitivityRow> sensitivity_sweep(const ProcessedCorpus& processed,
                                              const GlobalMarkerSet& markers,
                                              const std::vector<std::pair<int, int>>& grid,
                                              int pre_cut_year, int post_start_year) {
    if (grid.empty()) {
        throw std::invalid_argument("empty sensitivity grid");
    }
    // Hit counts are threshold-independent; compute them once.
    struct DocHits {
        int rare = 0;
        int common = 0;
        bool pre = false;
        bool post = false;
    };
    std::vector<DocHits> hits;
    hits.reserve(processed.docs.size());
    for (const auto& d : processed.docs) {
        ClassificationResult r = classify_lemmas(d.id, d, markers, 0, 0);
        hits.push_back({r.rare_hits, r.common_hits, d.year < pre_cut_year,
                        d.year >= post_start_year});
    }
    std::vector<SensitivityRow> rows;
    rows.reserve(grid.size());
    for (const auto& [min_common, min_rare] : grid) {
        SensitivityRow row;
        row.min_common = min_common;
        row.min_rare = min_rare;
        for (const auto& h : hits) {
            bool classified = h.common >= min_common && h.rare >= min_rare;
            if (h.pre) {
                ++row.fp_total;
                if (classified) ++row.fp_count;
            }
            if (h.post) {
                ++row.pos_total;
                if (classified) ++row.pos_count;
            }
        }
        if (row.fp_total > 0) {
            row.fp_rate = static_cast<double>(row.fp_count) / static_cast<double>(row.fp_total);
        }
        if (row.pos_total > 0) {
            row.positive_rate =
                static_cast<double>(row.pos_count) / static_cast<double>(row.pos_total);
        }
        rows.push_back(row);
    }
    return rows;
}

PrevalenceTables prevalence_tables(const Corpus& corpus,
                                   const std::vector<ClassificationResult>& results,
                                   const DisciplineMap& discipline_map) {
    std::map<std::string, bool> flagged;
    for (const auto& r : results) {
        if (!corpus.find(r.id)) {
            throw std::runtime_error("classification result for unknown id: " + r.id);
        }
        flagged[r.id] = r.is_llm;
    }
    auto is_flagged = [&](const AbstractRecord& rec) {
        auto it = flagged.find(rec.id);
        return it != flagged.end() && it->second;
    };

    PrevalenceTables tables;
    std::map<int, YearTableRow> by_year;
    std::map<std::pair<int, int>, VenueTableRow> by_venue;
    std::map<std::pair<std::string, int>, DisciplineTableRow> by_disc;
    for (const auto& rec : corpus.records()) {
        bool f = is_flagged(rec);
        auto& yrow = by_year[rec.year];
        yrow.year = rec.year;
        ++yrow.total;
        if (f) ++yrow.classified;

        auto& vrow = by_venue[{rec.year, static_cast<int>(rec.venue_kind)}];
        vrow.year = rec.year;
        vrow.venue_kind = rec.venue_kind;
        ++vrow.total;
        if (f) ++vrow.classified;

        if (rec.venue_kind == VenueKind::journal) {
            std::string disc;
            if (rec.discipline) {
                disc = *rec.discipline;
            } else {
                auto it = discipline_map.find(rec.venue_name);
                disc = it != discipline_map.end() ? it->second : "unmapped";
            }
            auto& drow = by_disc[{disc, rec.year}];
            drow.discipline = disc;
            drow.year = rec.year;
            ++drow.total;
            if (f) ++drow.classified;
        }
    }
    for (const auto& [_, row] : by_year) tables.by_year.push_back(row);
    for (const auto& [_, row] : by_venue) tables.by_venue.push_back(row);
    for (const auto& [_, row] : by_disc) tables.by_discipline.push_back(row);
    return tables;
}

namespace {

std::string pct(std::size_t classified, std::size_t total) {
    if (total == 0) return "0.0";
    return format_percent_value(static_cast<double>(classified) / static_cast<double>(total));
}

}  // namespace

std::string year_table_to_csv(const std::vector<YearTableRow>& rows) {
    CsvBuilder csv("year,classified,total,percent");
    for (const auto& r : rows) {
        csv.row({std::to_string(r.year), std::to_string(r.classified), std::to_string(r.total),
                 pct(r.classified, r.total)});
    }
    return csv.str();
}

std::string venue_table_to_csv(const std::vector<VenueTableRow>& rows) {
    CsvBuilder csv("year,venue_kind,classified,total,percent");
    for (const auto& r : rows) {
        csv.row({std::to_string(r.year), to_string(r.venue_kind), std::to_string(r.classified),
                 std::to_string(r.total), pct(r.classified, r.total)});
    }
    return csv.str();
}

std::string discipline_table_to_csv(const std::vector<DisciplineTableRow>& rows) {
    CsvBuilder csv("discipline,year,classified,total,percent");
    for (const auto& r : rows) {
        csv.row({r.discipline, std::to_string(r.year), std::to_string(r.classified),
                 std::to_string(r.total), pct(r.classified, r.total)});
    }
    return csv.str();
}

std::string classifications_to_csv(const std::vector<ClassificationResult>& results) {
    CsvBuilder csv("id,rare_hits,common_hits,is_llm");
    for (const auto& r : results) {
        csv.row({r.id, std::to_string(r.rare_hits), std::to_string(r.common_hits),
                 r.is_llm ? "true" : "false"});
    }
    return csv.str();
}

std::string sensitivity_to_csv(const std::vector<SensitivityRow>& rows) {
    CsvBuilder csv("min_common,min_rare,fp_count,fp_total,fp_rate,pos_count,pos_total,pos_rate");
    for (const auto& r : rows) {
        csv.row({std::to_string(r.min_common), std::to_string(r.min_rare),
                 std::to_string(r.fp_count), std::to_string(r.fp_total),
                 r.fp_rate ? format_double(*r.fp_rate) : std::string("na"),
                 std::to_string(r.pos_count), std::to_string(r.pos_total),
                 r.positive_rate ? format_double(*r.positive_rate) : std::string("na")});
    }
    return csv.str();
}

std::string markers_to_csv(const GlobalMarkerSet& markers) {
    std::ostringstream os;
    for (const auto& p : markers.provenance) {
        os << "# provenance: year=" << p.year << " mode=" << to_string(p.mode)
           << " cutoff=" << format_double(p.cutoff) << '\n';
    }
    os << "word,kind\n";
    for (const auto& w : markers.common) os << csv_escape(w) << ",common\n";
    for (const auto& w : markers.rare) os << csv_escape(w) << ",rare\n";
    return os.str();
}

GlobalMarkerSet parse_markers_csv(std::string_view text) {
    GlobalMarkerSet out;
    std::istringstream is{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(is, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty()) continue;
        if (t.rfind("# provenance:", 0) == 0) {
            MarkerProvenance p;
            std::istringstream ps(t.substr(13));
            std::string item;
            while (ps >> item) {
                auto eq = item.find('=');
                if (eq == std::string::npos) continue;
                std::string key = item.substr(0, eq);
                std::string value = item.substr(eq + 1);
                if (key == "year") p.year = std::stoi(value);
                if (key == "mode") p.mode = value == "common" ? TuneMode::common : TuneMode::rare;
                if (key == "cutoff") p.cutoff = parse_double(value);
            }
            out.provenance.push_back(p);
            continue;
        }
        if (t[0] == '#') continue;
        if (!header_seen && t == "word,kind") {
            header_seen = true;
            continue;
        }
        auto fields = csv_split(t);
        if (fields.size() != 2) {
            throw std::runtime_error("marker file parse error at line " + std::to_string(line_no));
        }
        std::string word = to_lower(trim(fields[0]));
        std::string kind = to_lower(trim(fields[1]));
        if (word.empty() || (kind != "rare" && kind != "common")) {
            throw std::runtime_error("marker file parse error at line " + std::to_string(line_no));
        }
        if (kind == "rare") {
            out.rare.insert(word);
        } else {
            out.common.insert(word);
        }
    }
    for (const auto& w : out.common) out.rare.erase(w);
    if (out.rare.empty() && out.common.empty()) {
        throw std::runtime_error("marker file contains no markers");
    }
    return out;
}

GlobalMarkerSet load_markers_csv(const std::filesystem::path& path) {
    return parse_markers_csv(read_file(path));
}

}  // namespace lexshift
