#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "polarmon/common.hpp"

namespace polarmon::corpus {

enum class TweetKind { Original, Retweet, Quote, Reply };
enum class MediaKind { Image, Video };

std::string_view to_string(TweetKind kind);
std::string_view to_string(MediaKind kind);
TweetKind parse_tweet_kind(std::string_view text);

struct Media {
    MediaKind kind = MediaKind::Image;
    std::string url;

    bool operator==(const Media&) const = default;
};

/// One post. For Retweet, Quote and Reply the first entry of
/// referenced_user_ids is the author of the referenced post; later entries
/// are mentions.
struct TweetRecord {
    std::string tweet_id;
    UserId author_id;
    Timestamp timestamp{};
    std::string text;
    std::string lang;
    TweetKind kind = TweetKind::Original;
    std::vector<std::string> hashtags;
    std::vector<std::string> urls;
    std::vector<Media> media;
    std::vector<UserId> referenced_user_ids;
    std::optional<std::string> referenced_tweet_id;
    std::uint64_t like_count = 0;
    std::uint64_t retweet_count = 0;
    std::uint64_t reply_count = 0;

    bool operator==(const TweetRecord&) const = default;
};

/// Parses and validates one archive line. Hashtags are normalized on the way
/// in. Throws ParseError with a description of the first problem found.
TweetRecord parse_tweet(std::string_view line);

/// Serializes to the archive line format (no trailing newline).
std::string serialize_tweet(const TweetRecord& tweet);

struct LoadWarning {
    std::size_t line_number;
    std::string message;
};

struct LoadReport {
    std::size_t lines = 0;
    std::size_t records = 0;
    std::vector<LoadWarning> warnings;
};

/// Streaming reader over a line-delimited archive. Blank lines are skipped
/// silently; malformed lines are recorded in the report, or rethrown with the
/// line number in strict mode.
class TweetReader {
public:
    TweetReader(const std::filesystem::path& path, bool schema_strict);

    /// Next valid record in file order, or nullopt at end of file.
    std::optional<TweetRecord> next();

    const LoadReport& report() const { return report_; }

private:
    std::filesystem::path path_;
    std::ifstream in_;
    bool strict_;
    LoadReport report_;
};

struct LoadedTweets {
    std::vector<TweetRecord> tweets;
    LoadReport report;
};

LoadedTweets load_tweets(const std::filesystem::path& path, bool schema_strict = false);

void write_tweets(const std::filesystem::path& path, const std::vector<TweetRecord>& tweets);

}  // namespace polarmon::corpus
