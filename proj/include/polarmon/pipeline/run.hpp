#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "polarmon/corpus/annotations.hpp"
#include "polarmon/corpus/rules.hpp"
#include "polarmon/corpus/tweet.hpp"
#include "polarmon/polarization/fj.hpp"

namespace polarmon::pipeline {

/// Settings for a run. Paths in the config file are relative to the file.
struct PipelineConfig {
    std::filesystem::path tweets;
    std::filesystem::path annotations;  // optional
    std::filesystem::path follows;      // optional
    std::filesystem::path rules;        // empty: shipped default rules
    std::filesystem::path stopwords;    // optional
    std::filesystem::path out_dir = "out";

    std::optional<Date> from;  // analysis window, inclusive
    std::optional<Date> to;
    std::optional<int> utc_offset_minutes;  // overrides the rule set's offset

    double threshold = 0.0;
    std::vector<double> thresholds{0.0, 0.5, 0.7};
    int k = 500;  // influencers per graph
    int prevalent_top_k = 500;
    std::size_t stats_top_k = 10;
    std::size_t top_communities = 10;
    bool lean_left_positive = true;  // sign of the community lean column
    bool drop_isolated = true;           // ablation removal mode
    bool emit_both_isolated_modes = false;
    bool include_isolated_in_pi = true;  // degree-0 nodes enter the index
    bool include_isolated_authors = true;
    bool schema_strict = false;
    polarization::SolverMethod solver = polarization::SolverMethod::DirectSolve;
    unsigned workers = 0;

    // Directory of the config file; echoed paths are written relative to it.
    std::filesystem::path base_dir;
};

PipelineConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir);
PipelineConfig load_config(const std::filesystem::path& path);
/// Canonical JSON echo of the settings that affect output (no out_dir, no
/// worker count).
std::string config_to_json(const PipelineConfig& cfg);

/// Thrown by run stages; the message starts with "[stage] ".
class StageError : public Error {
public:
    StageError(std::string stage, const std::string& what)
        : Error("[" + stage + "] " + what), stage_(std::move(stage)) {}
    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

/// Loaded and filtered inputs shared by the subcommands.
struct Inputs {
    corpus::RuleSet rules;
    corpus::LoadReport load_report;
    corpus::FilterReport filter_report;
    std::vector<corpus::TweetRecord> tweets;  // kept by the rules and the analysis window
    corpus::Annotations annotations;
    std::vector<corpus::FollowRecord> follows;
    Date window_begin{};
    Date window_end{};
    std::chrono::minutes utc_offset{0};
    std::vector<std::string> warnings;

    // Graphs, stances and results shared between stages of one run.
    struct Cache;
    std::shared_ptr<Cache> cache;

    std::string window_label() const;
};

Inputs load_inputs(const PipelineConfig& cfg);

/// Individual stages. Each writes its files under cfg.out_dir and returns the
/// file names it wrote.
std::vector<std::string> run_filter(const PipelineConfig& cfg, Inputs& in);
std::vector<std::string> run_graph(const PipelineConfig& cfg, Inputs& in);
std::vector<std::string> run_stance(const PipelineConfig& cfg, Inputs& in);
std::vector<std::string> run_stats(const PipelineConfig& cfg, Inputs& in);
std::vector<std::string> run_polarize(const PipelineConfig& cfg, Inputs& in);
std::vector<std::string> run_influencers(const PipelineConfig& cfg, Inputs& in);
std::vector<std::string> run_communities(const PipelineConfig& cfg, Inputs& in);
std::vector<std::string> run_ablate(const PipelineConfig& cfg, Inputs& in);
std::vector<std::string> run_sweep(const PipelineConfig& cfg, Inputs& in);

struct RunSummary {
    std::vector<std::string> files;
    std::vector<std::string> warnings;
};

/// filter -> graphs -> stances -> stats -> PI series -> influencers ->
/// ablation -> sweep -> communities, then the HTML summary and the manifest.
/// Output depends only on the inputs and settings.
RunSummary run_all(const PipelineConfig& cfg);

std::string sha256_file(const std::filesystem::path& path);

}  // namespace polarmon::pipeline
