#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "polarmon/graphkit/graph.hpp"
#include "polarmon/stance/stance.hpp"

namespace polarmon::structure {

struct CommunityProfile {
    int community_id = 0;
    std::size_t size = 0;
    std::size_t n_left = 0;
    std::size_t n_right = 0;
    std::size_t n_center = 0;
    std::size_t n_neutral = 0;
    double lean = 0.0;
};

struct CommunityPartition {
    std::vector<int> assignment;  // by node index, dense ids 0..c-1
    int community_count = 0;
    double modularity = 0.0;
    int levels = 0;
    std::vector<CommunityProfile> per_community;  // by community id, filled by decompose_communities

    int community_of(graphkit::NodeIndex i) const { return assignment[static_cast<std::size_t>(i)]; }
};

/// Q = sum_c [ e_c / m - (d_c / 2m)^2 ], 0 for an edgeless graph.
double modularity(const graphkit::InteractionGraph& g, std::span<const int> assignment);

struct LouvainOptions {
    double resolution = 1.0;
    double min_gain = 1e-12;
};

/// Two-phase Louvain: local moves in ascending node order until no move gains
/// more than `min_gain`, then aggregation, repeated until a level makes no
/// move. Community ids are numbered by first appearance in node order. An
/// edgeless graph yields singletons with Q = 0.
CommunityPartition louvain(const graphkit::InteractionGraph& g, const LouvainOptions& options = {});

struct DecomposeOptions {
    std::size_t top_n = 10;
    // lean = (left - right) / (left + right); flip to make Right-majority positive.
    bool left_positive = true;
};

/// Fills partition.per_community and returns the `top_n` largest communities
/// (size descending, id ascending).
std::vector<CommunityProfile> decompose_communities(CommunityPartition& partition, const graphkit::InteractionGraph& g,
                                                   const stance::StanceMap& stances,
                                                   const DecomposeOptions& options = {});

/// community_id,size,n_left,n_right,n_center,n_neutral,lean
void write_communities_csv(std::ostream& out, const std::vector<CommunityProfile>& profiles);

}  // namespace polarmon::structure
