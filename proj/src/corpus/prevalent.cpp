#include "polarmon/corpus/prevalent.hpp"

#include <algorithm>

namespace polarmon::corpus {

std::string_view to_string(PrevalenceList l) {
    switch (l) {
        case PrevalenceList::Posts: return "posts";
        case PrevalenceList::Replies: return "replies";
        case PrevalenceList::Quotes: return "quotes";
        case PrevalenceList::QuotedBy: return "quoted_by";
        case PrevalenceList::Influence: return "influence";
    }
    return "posts";
}

std::vector<UserId> top_by_count(const std::map<UserId, std::size_t>& counts, int top_k) {
    std::vector<std::pair<UserId, std::size_t>> items;
    for (const auto& [id, n] : counts)
        if (n > 0) items.emplace_back(id, n);
    std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (top_k >= 0 && items.size() > static_cast<std::size_t>(top_k)) items.resize(static_cast<std::size_t>(top_k));
    std::vector<UserId> out;
    out.reserve(items.size());
    for (auto& [id, n] : items) out.push_back(std::move(id));
    return out;
}

PrevalentUsers prevalent_users(const std::vector<TweetRecord>& tweets, const std::vector<UserId>& influencer_ranking,
                               int top_k) {
    if (top_k <= 0) throw InvalidArgument("top_k must be positive");

    std::map<UserId, std::size_t> posts, replies, quotes, quoted_by;
    for (const auto& t : tweets) {
        ++posts[t.author_id];
        if (t.kind == TweetKind::Reply) ++replies[t.author_id];
        if (t.kind == TweetKind::Quote) {
            ++quotes[t.author_id];
            if (!t.referenced_user_ids.empty() && t.referenced_user_ids.front() != t.author_id)
                ++quoted_by[t.referenced_user_ids.front()];
        }
    }

    PrevalentUsers out;
    out.lists[PrevalenceList::Posts] = top_by_count(posts, top_k);
    out.lists[PrevalenceList::Replies] = top_by_count(replies, top_k);
    out.lists[PrevalenceList::Quotes] = top_by_count(quotes, top_k);
    out.lists[PrevalenceList::QuotedBy] = top_by_count(quoted_by, top_k);
    auto& infl = out.lists[PrevalenceList::Influence];
    for (const auto& id : influencer_ranking) {
        if (infl.size() >= static_cast<std::size_t>(top_k)) break;
        if (std::find(infl.begin(), infl.end(), id) == infl.end()) infl.push_back(id);
    }
    for (const auto& [list, ids] : out.lists) out.users.insert(ids.begin(), ids.end());
    return out;
}

}  // namespace polarmon::corpus
