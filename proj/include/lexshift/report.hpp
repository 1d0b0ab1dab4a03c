#ifndef LEXSHIFT_REPORT_HPP_
#define LEXSHIFT_REPORT_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lexshift/classify.hpp"
#include "lexshift/corpus.hpp"
#include "lexshift/semantics.hpp"

namespace lexshift {

enum class TrendGroup { all, journal, llm_overlay, proceedings };

std::string to_string(TrendGroup g);

struct TrendPoint {
    double mean = 0.0;
    double stddev = 0.0;  // population standard deviation
    std::size_t n_docs = 0;
    std::optional<double> normalized;  // mean / base-year mean, when defined
};

struct TrendSeries {
    std::string metric;
    TrendGroup group = TrendGroup::all;
    int base_year = 0;
    std::map<int, TrendPoint> points;  // year -> point
};

// Yearly means per group. Documents classified as likely LLM-written in years
// >= onset_year move from the main groups into the llm_overlay series;
// pre-onset flags are ignored here. Metric is any SemanticProfile metric name
// or "author_count". The overlay normalizes against the all-group base mean.
std::vector<TrendSeries> trend_series(const Corpus& corpus,
                                      const std::map<std::string, SemanticProfile>& profiles,
                                      const std::vector<ClassificationResult>& results,
                                      const std::string& metric, int base_year = 2000,
                                      int onset_year = 2023);

// CSV "metric,group,year,mean,normalized,n_docs"; rows ordered by
// (metric, group, year); values round-trip at full precision.
std::string series_to_csv(const std::vector<TrendSeries>& series);
std::vector<TrendSeries> parse_series_csv(std::string_view text);

// JSON mirror with identical content and ordering.
std::string series_to_json(const std::vector<TrendSeries>& series);

// Distribution companion: "metric,group,year,n_docs,mean,stddev".
std::string series_dist_to_csv(const std::vector<TrendSeries>& series);

}  // namespace lexshift

#endif  // LEXSHIFT_REPORT_HPP_
