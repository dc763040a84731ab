#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "polarmon/corpus/annotations.hpp"
#include "polarmon/graphkit/graph.hpp"

namespace polarmon::stance {

enum class Stance { Left, Right, Center, Neutral };

std::string_view to_string(Stance s);
Stance parse_stance(std::string_view text);

struct StanceAssignment {
    UserId user_id;
    Stance stance = Stance::Neutral;
    int n_left = 0;
    int n_right = 0;
    int n_center = 0;
    double threshold_used = 0.0;

    int political_follows() const { return n_left + n_right + n_center; }
};

/// Attribution rule applied to follow tallies:
///  - no political follows: Neutral;
///  - more Center follows than either side: Center;
///  - strict Left (Right) plurality whose share of all political follows is
///    at least `threshold`: Left (Right);
///  - anything else, including ties between sides: Center.
/// With threshold 0 this is the plain "follows more" rule.
Stance classify(int n_left, int n_right, int n_center, double threshold);

/// Tallies the followed accounts of one user. Throws InvalidArgument naming
/// the id if a followed account is not annotated Political with a side, or
/// if threshold is outside [0, 1].
StanceAssignment infer_stance(const UserId& user, const std::vector<UserId>& followed,
                              const corpus::Annotations& annotations, double threshold = 0.0);

using StanceMap = std::map<UserId, StanceAssignment>;

/// Assignments for every follower in `follows` and every id in `corpus_users`
/// (users without follow data become Neutral).
StanceMap stance_map(const std::vector<corpus::FollowRecord>& follows, const corpus::Annotations& annotations,
                     double threshold, const std::vector<UserId>& corpus_users = {});

/// Missing users are Neutral.
Stance stance_of(const StanceMap& stances, const UserId& id);

/// Innate opinions indexed by node: Right +1, Left -1, Center and Neutral 0.
std::vector<double> opinion_vector(const graphkit::InteractionGraph& g, const StanceMap& stances);

double opinion_value(Stance s);

/// user_id,stance,n_left,n_right,n_center,threshold for the given users.
void write_stance_csv(std::ostream& out, const StanceMap& stances);

}  // namespace polarmon::stance
