#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "polarmon/corpus/annotations.hpp"
#include "polarmon/graphkit/graph.hpp"
#include "polarmon/polarization/fj.hpp"
#include "polarmon/stance/stance.hpp"

namespace polarmon::pipeline {

/// Runs fn(0..count-1) on up to `workers` threads (0 = hardware concurrency).
/// Each index is handled exactly once; results must be written by index.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& fn);

struct PiSeriesRow {
    Date date;
    std::size_t nodes = 0;
    std::size_t edges = 0;
    std::optional<polarization::PolarizationResult> result;
    std::string error;  // set when result is empty
};

/// compute_pi over each daily graph. A failing day keeps its row with the
/// error recorded; the series continues.
std::vector<PiSeriesRow> pi_series(const std::vector<graphkit::DailyGraph>& days, const stance::StanceMap& stances,
                                   const polarization::PiOptions& options = {}, unsigned workers = 0);

/// date,n,m,pi,method,iterations,residual. Failed days have empty pi and
/// method "failed".
void write_pi_series_csv(std::ostream& out, const std::vector<PiSeriesRow>& rows);

enum class RemovedGroup { Political, MediaJournalist, Influencers };

constexpr std::array<RemovedGroup, 3> kRemovedGroups{RemovedGroup::Political, RemovedGroup::MediaJournalist,
                                                    RemovedGroup::Influencers};

std::string_view to_string(RemovedGroup g);

/// PI after removing a group, or the reason it could not be computed.
struct GroupPi {
    std::optional<double> pi;
    std::string error;
};

struct AblationResult {
    std::string label;  // date or window label
    std::optional<double> pi_full;
    std::string full_error;
    std::array<GroupPi, 3> pi_without;  // kRemovedGroups order
    bool drop_isolated = true;

    const GroupPi& without(RemovedGroup g) const { return pi_without[static_cast<std::size_t>(g)]; }
};

struct AblationOptions {
    bool drop_isolated = true;
    polarization::PiOptions pi;
};

/// Members of each removable group: annotated Political, annotated
/// MediaJournalist, and the given influencer set.
std::array<std::set<UserId>, 3> removal_groups(const corpus::Annotations& annotations,
                                               const std::set<UserId>& influencers);

AblationResult ablation(const graphkit::InteractionGraph& g, const stance::StanceMap& stances,
                        const corpus::Annotations& annotations, const std::set<UserId>& influencers,
                        const AblationOptions& options = {});

/// label,drop_isolated,pi_full,pi_without_political,pi_without_media,pi_without_influencers
void write_ablation_csv(std::ostream& out, const std::vector<AblationResult>& rows);

struct SweepRow {
    double threshold = 0.0;
    AblationResult pis;
    std::size_t n_left_users = 0;   // graph nodes labelled Left
    std::size_t n_right_users = 0;  // graph nodes labelled Right
};

struct ThresholdSweepResult {
    std::vector<double> thresholds;
    std::vector<SweepRow> rows;
};

/// Recomputes stances (for the graph's users) and every ablation PI per
/// threshold.
ThresholdSweepResult threshold_sweep(const graphkit::InteractionGraph& g,
                                     const std::vector<corpus::FollowRecord>& follows,
                                     const corpus::Annotations& annotations, const std::set<UserId>& influencers,
                                     const std::vector<double>& thresholds = {0.0, 0.5, 0.7},
                                     const AblationOptions& options = {}, unsigned workers = 0);

/// threshold,drop_isolated,pi_full,pi_without_political,pi_without_media,pi_without_influencers,n_left_users,n_right_users
void write_sweep_csv(std::ostream& out, const ThresholdSweepResult& sweep);

}  // namespace polarmon::pipeline
