#include "lexshift/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "lexshift/json.hpp"

#include "lexshift/csv.hpp"

namespace lexshift {

std::string to_string(TrendGroup g) {
    switch (g) {
        case TrendGroup::all: return "all";
        case TrendGroup::journal: return "journal";
        case TrendGroup::llm_overlay: return "llm_overlay";
        case TrendGroup::proceedings: return "proceedings";
    }
    return "?";
}

namespace {

std::optional<TrendGroup> group_from_string(std::string_view s) {
    if (s == "all") return TrendGroup::all;
    if (s == "journal") return TrendGroup::journal;
    if (s == "llm_overlay") return TrendGroup::llm_overlay;
    if (s == "proceedings") return TrendGroup::proceedings;
    return std::nullopt;
}

struct Accumulator {
    std::vector<double> values;

    void add(double v) { values.push_back(v); }

    TrendPoint finish() const {
        TrendPoint p;
        p.n_docs = values.size();
        if (values.empty()) return p;
        double sum = 0.0;
        for (double v : values) sum += v;
        p.mean = sum / static_cast<double>(values.size());
        double sq = 0.0;
        for (double v : values) sq += (v - p.mean) * (v - p.mean);
        p.stddev = std::sqrt(sq / static_cast<double>(values.size()));
        return p;
    }
};

}  // namespace

std::vector<TrendSeries> trend_series(const Corpus& corpus,
                                      const std::map<std::string, SemanticProfile>& profiles,
                                      const std::vector<ClassificationResult>& results,
                                      const std::string& metric, int base_year, int onset_year) {
    bool is_author_metric = metric == "author_count";
    if (!is_author_metric) {
        // validates the name up front
        profile_metric(SemanticProfile{}, metric);
    }
    if (!corpus.has_year(base_year)) {
        throw std::runtime_error("base year absent from corpus: " + std::to_string(base_year));
    }

    std::map<std::string, bool> flagged;
    for (const auto& r : results) flagged[r.id] = r.is_llm;

    auto metric_value = [&](const AbstractRecord& rec) -> std::optional<double> {
        if (is_author_metric) {
            if (!rec.author_count) return std::nullopt;
            return static_cast<double>(*rec.author_count);
        }
        auto it = profiles.find(rec.id);
        if (it == profiles.end()) return std::nullopt;
        return profile_metric(it->second, metric);
    };

    std::map<std::pair<TrendGroup, int>, Accumulator> acc;
    for (const auto& rec : corpus.records()) {
        auto value = metric_value(rec);
        if (!value) continue;
        auto fit = flagged.find(rec.id);
        bool overlay = fit != flagged.end() && fit->second && rec.year >= onset_year;
        if (overlay) {
            acc[{TrendGroup::llm_overlay, rec.year}].add(*value);
            continue;
        }
        acc[{TrendGroup::all, rec.year}].add(*value);
        TrendGroup venue_group = rec.venue_kind == VenueKind::journal ? TrendGroup::journal
                                                                      : TrendGroup::proceedings;
        acc[{venue_group, rec.year}].add(*value);
    }

    std::vector<TrendSeries> out;
    for (TrendGroup g : {TrendGroup::all, TrendGroup::journal, TrendGroup::llm_overlay,
                         TrendGroup::proceedings}) {
        TrendSeries s;
        s.metric = metric;
        s.group = g;
        s.base_year = base_year;
        for (const auto& [key, a] : acc) {
            if (key.first != g) continue;
            s.points[key.second] = a.finish();
        }
        out.push_back(std::move(s));
    }

    // Base mean per series; the overlay has no base-year documents, so it is
    // normalized against the full-corpus base mean.
    std::optional<double> all_base;
    for (auto& s : out) {
        if (s.group != TrendGroup::all) continue;
        auto it = s.points.find(base_year);
        if (it != s.points.end() && it->second.n_docs > 0) all_base = it->second.mean;
    }
    for (auto& s : out) {
        std::optional<double> base;
        if (s.group == TrendGroup::llm_overlay) {
            base = all_base;
        } else {
            auto it = s.points.find(base_year);
            if (it != s.points.end() && it->second.n_docs > 0) base = it->second.mean;
        }
        if (!base || *base == 0.0) continue;
        for (auto& [year, p] : s.points) {
            p.normalized = p.mean / *base;
        }
    }
    return out;
}

namespace {

std::vector<const TrendSeries*> sorted_series(const std::vector<TrendSeries>& series) {
    std::vector<const TrendSeries*> order;
    order.reserve(series.size());
    for (const auto& s : series) order.push_back(&s);
    std::sort(order.begin(), order.end(), [](const TrendSeries* a, const TrendSeries* b) {
        if (a->metric != b->metric) return a->metric < b->metric;
        return to_string(a->group) < to_string(b->group);
    });
    return order;
}

}  // namespace

std::string series_to_csv(const std::vector<TrendSeries>& series) {
    CsvBuilder csv("metric,group,year,mean,normalized,n_docs");
    for (const TrendSeries* s : sorted_series(series)) {
        for (const auto& [year, p] : s->points) {
            csv.row({s->metric, to_string(s->group), std::to_string(year), format_double(p.mean),
                     p.normalized ? format_double(*p.normalized) : std::string(),
                     std::to_string(p.n_docs)});
        }
    }
    return csv.str();
}

std::string series_dist_to_csv(const std::vector<TrendSeries>& series) {
    CsvBuilder csv("metric,group,year,n_docs,mean,stddev");
    for (const TrendSeries* s : sorted_series(series)) {
        for (const auto& [year, p] : s->points) {
            csv.row({s->metric, to_string(s->group), std::to_string(year),
                     std::to_string(p.n_docs), format_double(p.mean), format_double(p.stddev)});
        }
    }
    return csv.str();
}

std::string series_to_json(const std::vector<TrendSeries>& series) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const TrendSeries* s : sorted_series(series)) {
        for (const auto& [year, p] : s->points) {
            nlohmann::ordered_json row;
            row["metric"] = s->metric;
            row["group"] = to_string(s->group);
            row["year"] = year;
            row["mean"] = p.mean;
            if (p.normalized) {
                row["normalized"] = *p.normalized;
            } else {
                row["normalized"] = nullptr;
            }
            row["n_docs"] = p.n_docs;
            rows.push_back(std::move(row));
        }
    }
    return rows.dump(2) + "\n";
}

std::vector<TrendSeries> parse_series_csv(std::string_view text) {
    std::istringstream is{std::string(text)};
    std::string line;
    if (!std::getline(is, line) || trim(line) != "metric,group,year,mean,normalized,n_docs") {
        throw std::runtime_error("bad trend CSV header");
    }
    std::map<std::pair<std::string, std::string>, TrendSeries> map;
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto fields = csv_split(line);
        if (fields.size() != 6) {
            throw std::runtime_error("trend CSV parse error at line " + std::to_string(line_no));
        }
        auto group = group_from_string(fields[1]);
        if (!group) {
            throw std::runtime_error("trend CSV parse error at line " + std::to_string(line_no));
        }
        auto& s = map[{fields[0], fields[1]}];
        s.metric = fields[0];
        s.group = *group;
        TrendPoint p;
        p.mean = parse_double(fields[3]);
        if (!fields[4].empty()) p.normalized = parse_double(fields[4]);
        p.n_docs = static_cast<std::size_t>(std::stoull(fields[5]));
        s.points[std::stoi(fields[2])] = p;
    }
    std::vector<TrendSeries> out;
    out.reserve(map.size());
    for (auto& [_, s] : map) out.push_back(std::move(s));
    return out;
}

}  // namespace lexshift
