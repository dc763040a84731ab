#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "polarmon/common.hpp"
#include "polarmon/corpus/tweet.hpp"

namespace polarmon::corpus {

enum class MatchMode { HashtagExact, KeywordSubstring };

std::string_view to_string(MatchMode mode);

/// A collection term. HashtagExact terms are stored normalized without '#';
/// KeywordSubstring terms also keep their folded form for matching.
struct FilterRule {
    std::string term;
    MatchMode mode = MatchMode::KeywordSubstring;
    std::optional<Date> active_from;   // inclusive
    std::optional<Date> active_until;  // inclusive

    std::string match_key;  // normalized hashtag or folded keyword

    bool active_on(Date d) const {
        return (!active_from || d >= *active_from) && (!active_until || d <= *active_until);
    }
};

FilterRule make_rule(std::string_view term, MatchMode mode, std::optional<Date> from = std::nullopt,
                     std::optional<Date> until = std::nullopt);

struct RuleSet {
    std::vector<FilterRule> rules;
    std::set<std::string> language_whitelist{"el"};
    Date window_begin{};
    Date window_end{};
    // Offset applied to timestamps before taking the calendar date.
    std::chrono::minutes utc_offset{0};

    Date date_of(const TweetRecord& t) const { return polarmon::date_of(t.timestamp, utc_offset); }
};

/// Validates invariants (non-empty rules, ordered windows); throws InvalidArgument.
void validate(const RuleSet& rs);

RuleSet parse_rule_set(std::string_view json_text);
RuleSet load_rule_set(const std::filesystem::path& path);

/// The shipped collection rules: the scandal's keyword/hashtag table plus the
/// per-name date restrictions.
RuleSet default_rule_set();
std::string_view default_rule_set_json();

std::string rule_set_to_json(const RuleSet& rs);

/// Index of every rule that matches (language and study window ignored).
std::vector<std::size_t> matching_rules(const RuleSet& rs, const TweetRecord& t);

bool matches(const RuleSet& rs, const TweetRecord& t);

enum class DropReason { Language, OutsideWindow, NoRule };

std::string_view to_string(DropReason r);

/// Counters for one filtering pass. Reports from shards merge with `+=`.
struct FilterReport {
    std::size_t input = 0;
    std::size_t kept = 0;
    std::size_t dropped = 0;
    std::map<DropReason, std::size_t> drop_reasons;
    std::vector<std::size_t> rule_hits;  // parallel to RuleSet::rules

    FilterReport& operator+=(const FilterReport& other);
};

struct FilterResult {
    std::vector<TweetRecord> kept;
    FilterReport report;
};

FilterResult filter_corpus(const RuleSet& rs, const std::vector<TweetRecord>& tweets);

}  // namespace polarmon::corpus
