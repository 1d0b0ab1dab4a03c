// lexshift: excess-vocabulary analysis over a timestamped abstract corpus.
//
// Subcommands: summary, profile, freq, excess, tune, classify, trends,
// simulate. Stages communicate through CSV/JSONL artifacts in --out so each
// one is independently runnable and resumable.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lexshift/classify.hpp"
#include "lexshift/corpus.hpp"
#include "lexshift/csv.hpp"
#include "lexshift/excess.hpp"
#include "lexshift/freqmatrix.hpp"
#include "lexshift/report.hpp"
#include "lexshift/semantics.hpp"
#include "lexshift/simcorpus.hpp"
#include "lexshift/textproc.hpp"
#include "lexshift/util.hpp"

namespace fs = std::filesystem;
using namespace lexshift;

namespace {

struct CommonOpts {
    std::string corpus_path;
    std::string lexicon_dir;
    std::string out_dir = ".";
    unsigned workers = 1;
};

LexiconBundle lexicon_for(const CommonOpts& opts) {
    if (opts.lexicon_dir.empty()) return LexiconBundle::defaults();
    return load_lexicon_dir(opts.lexicon_dir);
}

Corpus load_or_die(const CommonOpts& opts, const DisciplineMap* map = nullptr) {
    LoadOptions lo;
    lo.discipline_map = map;
    LoadResult res = load_corpus(opts.corpus_path, lo);
    if (!res.report.rejected.empty()) {
        std::cerr << "note: rejected " << res.report.rejected.size() << " of "
                  << res.report.total_lines << " lines\n";
    }
    if (res.corpus.empty()) {
        throw std::runtime_error("corpus is empty after validation");
    }
    return std::move(res.corpus);
}

void add_common(CLI::App* cmd, CommonOpts& opts, bool needs_corpus = true) {
    auto* c = cmd->add_option("--corpus", opts.corpus_path, "corpus JSONL file");
    if (needs_corpus) c->required();
    cmd->add_option("--lexicon-dir", opts.lexicon_dir, "lexicon directory overriding defaults");
    cmd->add_option("--out", opts.out_dir, "output directory");
    cmd->add_option("--workers", opts.workers, "worker threads (output is identical for any count)");
}

std::string profiles_to_csv(const Corpus& corpus, const std::vector<SemanticProfile>& profiles) {
    std::string header = "id,year,venue_kind";
    for (const auto& name : profile_metric_names()) header += "," + name;
    CsvBuilder csv(header);
    const auto& records = corpus.records();
    for (std::size_t i = 0; i < records.size(); ++i) {
        std::vector<std::string> row = {records[i].id, std::to_string(records[i].year),
                                        to_string(records[i].venue_kind)};
        for (const auto& name : profile_metric_names()) {
            row.push_back(format_double(profile_metric(profiles[i], name)));
        }
        csv.row(row);
    }
    return csv.str();
}

std::vector<SemanticProfile> compute_profiles(const Corpus& corpus, const LexiconBundle& lex,
                                              unsigned workers) {
    std::vector<SemanticProfile> profiles(corpus.size());
    const auto& records = corpus.records();
    parallel_chunks(records.size(), workers, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            profiles[i] = profile(records[i].text, lex);
        }
    });
    return profiles;
}

int cmd_summary(const CommonOpts& opts, const std::string& discipline_map_path) {
    DisciplineMap dmap;
    if (!discipline_map_path.empty()) dmap = load_discipline_map(discipline_map_path);
    LoadOptions lo;
    lo.discipline_map = discipline_map_path.empty() ? nullptr : &dmap;
    LoadResult res = load_corpus(opts.corpus_path, lo);
    fs::path out(opts.out_dir);
    write_file_atomic(out / "corpus_summary.csv", summary_to_csv(summarize_corpus(res.corpus)));
    write_file_atomic(out / "load_report.csv", load_report_to_csv(res.report));
    std::cout << "records: " << res.report.accepted << " accepted, "
              << res.report.rejected.size() << " rejected\n";
    return 0;
}

int cmd_profile(const CommonOpts& opts) {
    LexiconBundle lex = lexicon_for(opts);
    Corpus corpus = load_or_die(opts);
    auto profiles = compute_profiles(corpus, lex, opts.workers);
    write_file_atomic(fs::path(opts.out_dir) / "profiles.csv",
                      profiles_to_csv(corpus, profiles));
    std::cout << "profiled " << corpus.size() << " documents\n";
    return 0;
}

int cmd_freq(const CommonOpts& opts, YearRange fit, std::optional<int> target_year, bool rolling,
             int roll_start, int roll_min_fit, std::size_t min_docs) {
    LexiconBundle lex = lexicon_for(opts);
    Corpus corpus = load_or_die(opts);
    YearWordMatrix m = build_matrix(corpus, lex, min_docs, opts.workers);
    fs::path out(opts.out_dir);
    write_file_atomic(out / "matrix.csv", matrix_to_csv(m));
    std::cerr << "note: vocabulary " << m.vocab().size() << " lemmas ("
              << m.pruned_words() << " pruned below " << m.min_doc_count() << " docs)\n";

    std::vector<DepartureRecord> deps;
    if (rolling) {
        // trailing fit window: all matrix years strictly before the target
        for (int year : m.years()) {
            if (year < roll_start) continue;
            int prior = 0;
            for (int y : m.years()) {
                if (y < year) ++prior;
            }
            if (prior < roll_min_fit) continue;
            YearRange window{m.years().front(), year - 1};
            for (const auto& word : m.vocab()) {
                deps.push_back(departures(m, word, year, window));
            }
        }
    } else if (target_year) {
        for (const auto& word : m.vocab()) {
            deps.push_back(departures(m, word, *target_year, fit));
        }
    }
    if (rolling || target_year) {
        std::sort(deps.begin(), deps.end(), [](const DepartureRecord& a, const DepartureRecord& b) {
            if (a.word != b.word) return a.word < b.word;
            return a.year < b.year;
        });
        write_file_atomic(out / "departures.csv", departures_to_csv(deps));
    }
    return 0;
}

int cmd_excess(const CommonOpts& opts, YearRange fit, int target_year, double delta_thresh,
               const std::string& annotations_path, std::size_t min_docs) {
    LexiconBundle lex = lexicon_for(opts);
    Corpus corpus = load_or_die(opts);
    YearWordMatrix m = build_matrix(corpus, lex, min_docs, opts.workers);
    ExcessScan scan = preliminary_excess(m, target_year, fit, delta_thresh);
    for (const auto& w : scan.skipped_words) {
        std::cerr << "note: skipped (fit failure): " << w << "\n";
    }
    fs::path out(opts.out_dir);
    if (!annotations_path.empty()) {
        AnnotationMap ann = load_annotations(annotations_path);
        StyleFilterResult filtered = style_filter(scan.records, ann);
        std::vector<ExcessWordRecord> labeled = filtered.style;
        labeled.insert(labeled.end(), filtered.content.begin(), filtered.content.end());
        labeled.insert(labeled.end(), filtered.needs_annotation.begin(),
                       filtered.needs_annotation.end());
        write_file_atomic(out / "excess_words.csv", excess_to_csv(labeled));
        write_file_atomic(out / "needs_annotation.csv",
                          excess_to_csv(filtered.needs_annotation));
        std::cout << "excess words: " << scan.records.size() << " (" << filtered.style.size()
                  << " style, " << filtered.content.size() << " content, "
                  << filtered.needs_annotation.size() << " unannotated)\n";
    } else {
        write_file_atomic(out / "excess_words.csv", excess_to_csv(scan.records));
        std::cout << "excess words: " << scan.records.size() << "\n";
    }
    return 0;
}

int cmd_tune(const CommonOpts& opts, YearRange fit, int pre_year, int post_year,
             std::optional<int> target_year, double delta_thresh,
             const std::string& annotations_path, double grid_min, double grid_max,
             std::size_t grid_points, const std::string& strategy_name, std::size_t min_docs) {
    LexiconBundle lex = lexicon_for(opts);
    Corpus corpus = load_or_die(opts);
    ProcessedCorpus processed = process_corpus(corpus, lex, opts.workers);
    YearWordMatrix m = build_matrix(processed, min_docs);

    int target = target_year.value_or(post_year);
    ExcessScan scan = preliminary_excess(m, target, fit, delta_thresh);
    AnnotationMap ann = load_annotations(annotations_path);
    StyleFilterResult filtered = style_filter(scan.records, ann);
    if (!filtered.needs_annotation.empty()) {
        std::cerr << "note: " << filtered.needs_annotation.size()
                  << " excess words lack style/content annotation and are excluded\n";
    }

    PartitionStrategy strategy = PartitionStrategy::baseline_frequency;
    if (strategy_name == "ratio") strategy = PartitionStrategy::ratio_threshold;

    auto grid = log_grid(grid_min, grid_max, grid_points);
    TunedSet rare = tune_marker_set(processed, m, filtered.style, TuneMode::rare, post_year,
                                    pre_year, grid, fit, strategy, opts.workers);
    TunedSet common = tune_marker_set(processed, m, filtered.style, TuneMode::common, post_year,
                                      pre_year, grid, fit, strategy, opts.workers);
    MarkerSets sets = make_marker_sets(processed, rare, common, post_year, pre_year);
    GlobalMarkerSet global = build_global_markers({sets});

    double estimate = estimate_llm_share(sets.delta_rare, sets.delta_common);
    fs::path out(opts.out_dir);
    write_file_atomic(out / "markers.csv", markers_to_csv(global));
    write_file_atomic(out / "sweep.csv", sweep_to_csv(rare, common));
    {
        CsvBuilder csv("post_year,pre_year,mode,cutoff,set_size,delta,estimate");
        csv.row({std::to_string(post_year), std::to_string(pre_year), "rare",
                 format_double(sets.rare_cutoff), std::to_string(sets.rare.size()),
                 format_double(sets.delta_rare), ""});
        csv.row({std::to_string(post_year), std::to_string(pre_year), "common",
                 format_double(sets.common_cutoff), std::to_string(sets.common.size()),
                 format_double(sets.delta_common), ""});
        csv.row({std::to_string(post_year), std::to_string(pre_year), "mean", "", "", "",
                 format_double(estimate)});
        write_file_atomic(out / "tune_summary.csv", csv.str());
    }
    if (!filtered.needs_annotation.empty()) {
        write_file_atomic(out / "needs_annotation.csv",
                          excess_to_csv(filtered.needs_annotation));
    }
    std::cout << "rare: " << sets.rare.size() << " words (cutoff "
              << format_double(sets.rare_cutoff) << ", delta "
              << format_percent(sets.delta_rare) << ")\n";
    std::cout << "common: " << sets.common.size() << " words (cutoff "
              << format_double(sets.common_cutoff) << ", delta "
              << format_percent(sets.delta_common) << ")\n";
    std::cout << "estimated lower-bound LLM share " << post_year << ": "
              << format_percent(estimate) << "\n";
    return 0;
}

int cmd_classify(const CommonOpts& opts, const std::string& markers_path, int min_common,
                 int min_rare, const std::string& discipline_map_path, bool sensitivity,
                 int pre_cut_year, std::optional<int> post_start_year) {
    LexiconBundle lex = lexicon_for(opts);
    DisciplineMap dmap;
    if (!discipline_map_path.empty()) dmap = load_discipline_map(discipline_map_path);
    Corpus corpus = load_or_die(opts, discipline_map_path.empty() ? nullptr : &dmap);

    GlobalMarkerSet markers = load_markers_csv(markers_path);
    ProcessedCorpus processed = process_corpus(corpus, lex, opts.workers);
    auto results = classify_corpus(processed, markers, min_common, min_rare);
    PrevalenceTables tables = prevalence_tables(corpus, results, dmap);

    fs::path out(opts.out_dir);
    write_file_atomic(out / "classifications.csv", classifications_to_csv(results));
    write_file_atomic(out / "prevalence_by_year.csv", year_table_to_csv(tables.by_year));
    write_file_atomic(out / "prevalence_by_venue.csv", venue_table_to_csv(tables.by_venue));
    write_file_atomic(out / "prevalence_by_discipline.csv",
                      discipline_table_to_csv(tables.by_discipline));
    if (sensitivity) {
        std::vector<std::pair<int, int>> grid;
        for (int c = 0; c <= 3; ++c) {
            for (int r = 0; r <= 4; ++r) grid.emplace_back(c, r);
        }
        auto rows = sensitivity_sweep(processed, markers, grid, pre_cut_year,
                                      post_start_year.value_or(pre_cut_year + 1));
        write_file_atomic(out / "sensitivity.csv", sensitivity_to_csv(rows));
    }
    std::size_t flagged = 0;
    for (const auto& r : results) {
        if (r.is_llm) ++flagged;
    }
    std::cout << "classified " << flagged << " of " << results.size()
              << " documents as likely LLM-written\n";
    return 0;
}

int cmd_trends(const CommonOpts& opts, const std::string& markers_path,
               const std::string& metrics_arg, int base_year, int onset_year, int min_common,
               int min_rare, bool json_mirror) {
    LexiconBundle lex = lexicon_for(opts);
    Corpus corpus = load_or_die(opts);
    ProcessedCorpus processed = process_corpus(corpus, lex, opts.workers);
    GlobalMarkerSet markers = load_markers_csv(markers_path);
    auto results = classify_corpus(processed, markers, min_common, min_rare);

    auto profiles_vec = compute_profiles(corpus, lex, opts.workers);
    std::map<std::string, SemanticProfile> profiles;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        profiles[corpus.records()[i].id] = profiles_vec[i];
    }

    std::vector<std::string> metrics;
    if (metrics_arg == "all") {
        metrics = profile_metric_names();
        metrics.push_back("author_count");
    } else {
        std::string cur;
        for (char c : metrics_arg + ",") {
            if (c == ',') {
                if (!cur.empty()) metrics.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
    }

    std::vector<TrendSeries> all_series;
    for (const auto& metric : metrics) {
        auto series = trend_series(corpus, profiles, results, metric, base_year, onset_year);
        all_series.insert(all_series.end(), series.begin(), series.end());
    }
    fs::path out(opts.out_dir);
    write_file_atomic(out / "trends.csv", series_to_csv(all_series));
    write_file_atomic(out / "trends_dist.csv", series_dist_to_csv(all_series));
    if (json_mirror) {
        write_file_atomic(out / "trends.json", series_to_json(all_series));
    }
    std::cout << "exported " << metrics.size() << " metrics\n";
    return 0;
}

int cmd_simulate(const CommonOpts& opts, const std::string& config_path,
                 std::optional<std::uint64_t> seed_override) {
    SimConfig cfg = config_path.empty() ? SimConfig::example() : load_sim_config(config_path);
    if (seed_override) cfg.seed = *seed_override;
    LexiconBundle lex = lexicon_for(opts);
    SimResult sim = generate(cfg, lex);
    fs::path out(opts.out_dir);
    write_file_atomic(out / "corpus.jsonl", corpus_to_jsonl(sim.corpus));
    write_file_atomic(out / "truth.csv", ground_truth_to_csv(sim.ground_truth));
    write_file_atomic(out / "annotations.csv", annotations_to_csv(sim.annotations));
    write_file_atomic(out / "discipline_map.csv", discipline_map_to_csv(sim.discipline_map));
    {
        CsvBuilder csv("word,kind");
        for (const auto& w : sim.true_common) csv.row({w, "common"});
        for (const auto& w : sim.true_rare) csv.row({w, "rare"});
        write_file_atomic(out / "markers_true.csv", csv.str());
    }
    std::cerr << "note: seed " << cfg.seed << ", " << sim.corpus.size() << " documents\n";
    std::cout << "simulated corpus written to " << (out / "corpus.jsonl").string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"excess-vocabulary corpus analysis"};
    app.require_subcommand(1);

    CommonOpts o_summary, o_profile, o_freq, o_excess, o_tune, o_classify, o_trends, o_simulate;

    auto* summary = app.add_subcommand("summary", "corpus counts and load report");
    add_common(summary, o_summary);
    std::string summary_dmap;
    summary->add_option("--discipline-map", summary_dmap, "venue_name,discipline CSV");

    auto* profile_cmd = app.add_subcommand("profile", "per-document semantic profiles");
    add_common(profile_cmd, o_profile);

    auto* freq = app.add_subcommand("freq", "year-word frequency matrix and departures");
    add_common(freq, o_freq);
    YearRange freq_fit{2000, 2021};
    std::optional<int> freq_target;
    bool freq_rolling = false;
    int freq_roll_start = 2005;
    int freq_roll_min_fit = 5;
    std::size_t freq_min_docs = 5;
    freq->add_option("--fit-start", freq_fit.first, "first fit year")->capture_default_str();
    freq->add_option("--fit-end", freq_fit.last, "last fit year")->capture_default_str();
    freq->add_option("--target-year", freq_target, "departure target year");
    freq->add_flag("--rolling", freq_rolling, "departures for every year with a trailing window");
    freq->add_option("--roll-start", freq_roll_start, "first rolling target year")
        ->capture_default_str();
    freq->add_option("--roll-min-fit", freq_roll_min_fit,
                     "minimum trailing fit years for a rolling target")
        ->capture_default_str();
    freq->add_option("--min-docs", freq_min_docs, "prune lemmas below this document count")
        ->capture_default_str();

    auto* excess_cmd = app.add_subcommand("excess", "preliminary excess-word scan");
    add_common(excess_cmd, o_excess);
    YearRange excess_fit{2000, 2021};
    int excess_target = 0;
    double excess_delta = 0.03;
    std::string excess_annotations;
    std::size_t excess_min_docs = 5;
    excess_cmd->add_option("--fit-start", excess_fit.first, "first fit year")
        ->capture_default_str();
    excess_cmd->add_option("--fit-end", excess_fit.last, "last fit year")->capture_default_str();
    excess_cmd->add_option("--target-year", excess_target, "year to scan")->required();
    excess_cmd->add_option("--delta-thresh", excess_delta, "frequency-gap threshold")
        ->capture_default_str();
    excess_cmd->add_option("--annotations", excess_annotations, "style/content CSV");
    excess_cmd->add_option("--min-docs", excess_min_docs, "prune lemmas below this document count")
        ->capture_default_str();

    auto* tune = app.add_subcommand("tune", "tune rare/common marker sets");
    add_common(tune, o_tune);
    YearRange tune_fit{2000, 2021};
    int tune_pre = 0, tune_post = 0;
    std::optional<int> tune_target;
    double tune_delta = 0.03, tune_grid_min = 0.001, tune_grid_max = 0.1;
    std::size_t tune_grid_points = 100, tune_min_docs = 5;
    std::string tune_annotations, tune_strategy = "baseline";
    tune->add_option("--fit-start", tune_fit.first, "first fit year")->capture_default_str();
    tune->add_option("--fit-end", tune_fit.last, "last fit year")->capture_default_str();
    tune->add_option("--pre-year", tune_pre, "pre-LLM comparison year")->required();
    tune->add_option("--post-year", tune_post, "post-LLM comparison year")->required();
    tune->add_option("--target-year", tune_target, "excess-scan year (default: post year)");
    tune->add_option("--delta-thresh", tune_delta, "frequency-gap threshold")
        ->capture_default_str();
    tune->add_option("--annotations", tune_annotations, "style/content CSV")->required();
    tune->add_option("--grid-min", tune_grid_min, "smallest cutoff")->capture_default_str();
    tune->add_option("--grid-max", tune_grid_max, "largest cutoff")->capture_default_str();
    tune->add_option("--grid-points", tune_grid_points, "grid resolution")->capture_default_str();
    tune->add_option("--strategy", tune_strategy, "baseline | ratio")->capture_default_str();
    tune->add_option("--min-docs", tune_min_docs, "prune lemmas below this document count")
        ->capture_default_str();

    auto* classify_cmd = app.add_subcommand("classify", "multi-marker classification and tables");
    add_common(classify_cmd, o_classify);
    std::string classify_markers, classify_dmap;
    int classify_min_common = 1, classify_min_rare = 2, classify_pre_cut = 2023;
    std::optional<int> classify_post_start;
    bool classify_sensitivity = false;
    classify_cmd->add_option("--markers", classify_markers, "marker-set CSV")->required();
    classify_cmd->add_option("--min-common", classify_min_common, "common-marker threshold")
        ->capture_default_str();
    classify_cmd->add_option("--min-rare", classify_min_rare, "rare-marker threshold")
        ->capture_default_str();
    classify_cmd->add_option("--discipline-map", classify_dmap, "venue_name,discipline CSV");
    classify_cmd->add_flag("--sensitivity", classify_sensitivity,
                           "emit the threshold sensitivity table");
    classify_cmd->add_option("--pre-cut-year", classify_pre_cut,
                             "false positives counted before this year")
        ->capture_default_str();
    classify_cmd->add_option("--post-start-year", classify_post_start,
                             "positives counted from this year (default: pre-cut + 1)");

    auto* trends = app.add_subcommand("trends", "semantic trend series with LLM overlay");
    add_common(trends, o_trends);
    std::string trends_markers, trends_metrics = "all";
    int trends_base = 2000, trends_onset = 2023;
    int trends_min_common = 1, trends_min_rare = 2;
    bool trends_json = false;
    trends->add_option("--markers", trends_markers, "marker-set CSV")->required();
    trends->add_option("--metrics", trends_metrics, "comma list or 'all'")->capture_default_str();
    trends->add_option("--base-year", trends_base, "normalization base year")
        ->capture_default_str();
    trends->add_option("--onset-year", trends_onset, "overlay onset year")->capture_default_str();
    trends->add_option("--min-common", trends_min_common, "common-marker threshold")
        ->capture_default_str();
    trends->add_option("--min-rare", trends_min_rare, "rare-marker threshold")
        ->capture_default_str();
    trends->add_flag("--json", trends_json, "also write trends.json");

    auto* simulate = app.add_subcommand("simulate", "deterministic synthetic corpus");
    add_common(simulate, o_simulate, /*needs_corpus=*/false);
    std::string sim_config;
    std::optional<std::uint64_t> sim_seed;
    simulate->add_option("--config", sim_config, "simulation config JSON");
    simulate->add_option("--seed", sim_seed, "override the config seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (summary->parsed()) return cmd_summary(o_summary, summary_dmap);
        if (profile_cmd->parsed()) return cmd_profile(o_profile);
        if (freq->parsed()) {
            return cmd_freq(o_freq, freq_fit, freq_target, freq_rolling, freq_roll_start,
                            freq_roll_min_fit, freq_min_docs);
        }
        if (excess_cmd->parsed()) {
            return cmd_excess(o_excess, excess_fit, excess_target, excess_delta,
                              excess_annotations, excess_min_docs);
        }
        if (tune->parsed()) {
            return cmd_tune(o_tune, tune_fit, tune_pre, tune_post, tune_target, tune_delta,
                            tune_annotations, tune_grid_min, tune_grid_max, tune_grid_points,
                            tune_strategy, tune_min_docs);
        }
        if (classify_cmd->parsed()) {
            return cmd_classify(o_classify, classify_markers, classify_min_common,
                                classify_min_rare, classify_dmap, classify_sensitivity,
                                classify_pre_cut, classify_post_start);
        }
        if (trends->parsed()) {
            return cmd_trends(o_trends, trends_markers, trends_metrics, trends_base, trends_onset,
                              trends_min_common, trends_min_rare, trends_json);
        }
        if (simulate->parsed()) return cmd_simulate(o_simulate, sim_config, sim_seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
