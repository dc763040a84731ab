#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "polarmon/corpus/tweet.hpp"
#include "polarmon/stance/stance.hpp"

namespace polarmon::pipeline {

struct RankedItem {
    std::string key;
    std::uint64_t count = 0;

    bool operator==(const RankedItem&) const = default;
};

/// Aggregates for one day, or for the whole input when `date` is empty.
struct DailyStats {
    std::optional<Date> date;
    std::size_t n_posts = 0;
    std::size_t n_tweets = 0;  // Original
    std::size_t n_retweets = 0;
    std::size_t n_quotes = 0;
    std::size_t n_replies = 0;
    std::size_t n_users = 0;     // distinct authors
    std::size_t n_hashtags = 0;  // distinct hashtags
    std::size_t n_urls = 0;      // distinct urls

    std::vector<RankedItem> most_liked;  // tweet ids
    std::vector<RankedItem> most_retweeted;
    std::vector<RankedItem> most_replied;
    std::vector<RankedItem> most_mentioned;  // user ids
    std::vector<RankedItem> most_active;
    std::vector<RankedItem> top_urls;
    std::vector<RankedItem> top_images;
    std::vector<RankedItem> top_videos;
    std::vector<RankedItem> top_words;
    std::vector<RankedItem> top_phrases;  // word bigrams
    std::vector<RankedItem> top_hashtags;
};

struct StatsOptions {
    std::size_t top_k = 10;
    std::chrono::minutes utc_offset{0};
    std::set<std::string> stopwords;  // folded form
};

DailyStats aggregate_stats(const std::vector<corpus::TweetRecord>& tweets, const StatsOptions& options = {});

/// One entry per calendar date with posts, ascending.
std::vector<DailyStats> compute_stats(const std::vector<corpus::TweetRecord>& tweets,
                                      const StatsOptions& options = {});

/// Word tokens used for word/phrase statistics: text folded (case and
/// accents), URLs, @mentions and #hashtags removed, split on non-letters,
/// stopwords dropped.
std::vector<std::string> content_words(std::string_view text, const std::set<std::string>& stopwords);

std::set<std::string> load_stopwords(const std::filesystem::path& path);

/// date,n_posts,n_tweets,n_retweets,n_quotes,n_replies,n_users,n_hashtags,n_urls
/// The aggregate row, if given, is written last with date "ALL".
void write_stats_csv(std::ostream& out, const std::vector<DailyStats>& days, const DailyStats* total);

/// date,list,rank,key,count for every top list.
void write_top_lists_csv(std::ostream& out, const std::vector<DailyStats>& days, const DailyStats* total);

constexpr std::array<stance::Stance, 4> kAllStances{stance::Stance::Left, stance::Stance::Right,
                                                   stance::Stance::Center, stance::Stance::Neutral};

/// Shares in tenths of a percent; each vector sums to exactly 1000 when the
/// corresponding total is positive. Indexed in kAllStances order.
struct StanceShares {
    std::array<std::size_t, 4> tweet_counts{};
    std::array<std::size_t, 4> user_counts{};
    std::array<int, 4> tweet_share_permille{};
    std::array<int, 4> user_share_permille{};
};

/// Each post counts toward its author's stance; users are distinct authors.
StanceShares stance_shares(const std::vector<corpus::TweetRecord>& tweets, const stance::StanceMap& stances);

/// Counts to tenths of a percent, round-half-even, with the rounding
/// remainder added to the largest share (first one on ties).
std::array<int, 4> shares_permille(const std::array<std::size_t, 4>& counts);

/// stance,tweets,tweet_share_pct,users,user_share_pct
void write_stance_shares_csv(std::ostream& out, const StanceShares& shares);

}  // namespace polarmon::pipeline
