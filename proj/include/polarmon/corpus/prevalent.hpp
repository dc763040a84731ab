#pragma once

#include <map>
#include <set>
#include <string_view>
#include <vector>

#include "polarmon/corpus/tweet.hpp"

namespace polarmon::corpus {

enum class PrevalenceList { Posts, Replies, Quotes, QuotedBy, Influence };

std::string_view to_string(PrevalenceList l);

/// Top `top_k` users by count, count descending then id ascending. Users with
/// a zero count are never listed.
std::vector<UserId> top_by_count(const std::map<UserId, std::size_t>& counts, int top_k);

struct PrevalentUsers {
    std::set<UserId> users;
    std::map<PrevalenceList, std::vector<UserId>> lists;
};

/// Union of the top-k lists: posts of any kind, replies posted, quotes posted,
/// times quoted by someone else, and the first k of `influencer_ranking`.
/// Throws InvalidArgument when top_k <= 0.
PrevalentUsers prevalent_users(const std::vector<TweetRecord>& tweets, const std::vector<UserId>& influencer_ranking,
                               int top_k = 500);

}  // namespace polarmon::corpus
