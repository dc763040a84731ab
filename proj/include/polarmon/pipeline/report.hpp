#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "polarmon/corpus/rules.hpp"
#include "polarmon/pipeline/experiments.hpp"
#include "polarmon/pipeline/stats.hpp"
#include "polarmon/structure/louvain.hpp"

namespace polarmon::pipeline {

struct InfluencerRow {
    std::string user_id;
    double score = 0.0;
    std::string category;
};

struct SummaryData {
    std::string title = "Discussion monitoring report";
    std::string window_label;
    const corpus::FilterReport* filter = nullptr;
    const std::vector<DailyStats>* daily = nullptr;
    const DailyStats* total = nullptr;
    const StanceShares* shares = nullptr;
    const std::vector<PiSeriesRow>* pi_rows = nullptr;
    const std::vector<AblationResult>* ablation = nullptr;
    const ThresholdSweepResult* sweep = nullptr;
    const std::vector<structure::CommunityProfile>* communities = nullptr;
    double modularity = 0.0;
    std::size_t community_count = 0;
    std::vector<InfluencerRow> influencers;
    std::vector<std::string> warnings;
};

/// Self-contained HTML page: tables plus inline SVG charts for the daily post
/// volume, the PI series with its ablations, and the threshold sweep.
void write_summary_html(std::ostream& out, const SummaryData& data);

struct Series {
    std::string name;
    std::string color;
    std::vector<std::optional<double>> values;
};

/// Line chart as an <svg> element. Missing values break the line.
std::string svg_line_chart(const std::vector<std::string>& x_labels, const std::vector<Series>& series,
                           const std::string& y_label, std::optional<double> y_max = std::nullopt);

}  // namespace polarmon::pipeline
