#include "polarmon/corpus/tweet.hpp"

#include <json.hpp>

#include "polarmon/corpus/text.hpp"

namespace polarmon::corpus {

using nlohmann::json;

std::string_view to_string(TweetKind kind) {
    switch (kind) {
        case TweetKind::Original: return "Original";
        case TweetKind::Retweet: return "Retweet";
        case TweetKind::Quote: return "Quote";
        case TweetKind::Reply: return "Reply";
    }
    return "Original";
}

std::string_view to_string(MediaKind kind) { return kind == MediaKind::Video ? "Video" : "Image"; }

namespace {

std::string lower_ascii(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return out;
}

MediaKind parse_media_kind(std::string_view text) {
    const std::string k = lower_ascii(text);
    if (k == "image" || k == "photo") return MediaKind::Image;
    if (k == "video" || k == "animated_gif") return MediaKind::Video;
    throw ParseError("unknown media kind '" + std::string(text) + "'");
}

// Ids in exported archives are sometimes numbers; keep them opaque strings.
std::string id_field(const json& obj, const char* key, bool required) {
    const auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) {
        if (required) throw ParseError(std::string("missing field '") + key + "'");
        return {};
    }
    if (it->is_string()) {
        std::string v = it->get<std::string>();
        if (required && v.empty()) throw ParseError(std::string("empty field '") + key + "'");
        return v;
    }
    if (it->is_number_unsigned() || it->is_number_integer()) return it->dump();
    throw ParseError(std::string("field '") + key + "' must be a string id");
}

std::string string_field(const json& obj, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end() || !it->is_string()) throw ParseError(std::string("missing string field '") + key + "'");
    return it->get<std::string>();
}

std::uint64_t count_field(const json& obj, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return 0;
    if (it->is_number_unsigned()) return it->get<std::uint64_t>();
    if (it->is_number_integer()) {
        const auto v = it->get<std::int64_t>();
        if (v < 0) throw ParseError(std::string("field '") + key + "' must be non-negative");
        return static_cast<std::uint64_t>(v);
    }
    throw ParseError(std::string("field '") + key + "' must be an integer");
}

const json* array_field(const json& obj, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return nullptr;
    if (!it->is_array()) throw ParseError(std::string("field '") + key + "' must be an array");
    return &*it;
}

}  // namespace

TweetKind parse_tweet_kind(std::string_view text) {
    const std::string k = lower_ascii(text);
    if (k == "original" || k == "tweet") return TweetKind::Original;
    if (k == "retweet") return TweetKind::Retweet;
    if (k == "quote") return TweetKind::Quote;
    if (k == "reply") return TweetKind::Reply;
    throw ParseError("unknown tweet kind '" + std::string(text) + "'");
}

TweetRecord parse_tweet(std::string_view line) {
    json obj;
    try {
        obj = json::parse(line);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!obj.is_object()) throw ParseError("record is not an object");

    TweetRecord t;
    t.tweet_id = id_field(obj, "tweet_id", true);
    t.author_id = id_field(obj, "author_id", true);
    t.timestamp = parse_timestamp(string_field(obj, "timestamp"));
    t.text = string_field(obj, "text");
    t.lang = string_field(obj, "lang");
    t.kind = parse_tweet_kind(string_field(obj, "kind"));

    if (const json* tags = array_field(obj, "hashtags")) {
        for (const auto& tag : *tags) {
            if (!tag.is_string()) throw ParseError("hashtags must be strings");
            std::string norm = normalize_hashtag(tag.get<std::string>());
            if (!norm.empty()) t.hashtags.push_back(std::move(norm));
        }
    }
    if (const json* urls = array_field(obj, "urls")) {
        for (const auto& u : *urls) {
            if (!u.is_string()) throw ParseError("urls must be strings");
            t.urls.push_back(u.get<std::string>());
        }
    }
    if (const json* media = array_field(obj, "media")) {
        for (const auto& m : *media) {
            if (!m.is_object()) throw ParseError("media entries must be objects");
            t.media.push_back(Media{parse_media_kind(string_field(m, "kind")), string_field(m, "url")});
        }
    }
    if (const json* refs = array_field(obj, "referenced_user_ids")) {
        for (const auto& r : *refs) {
            if (r.is_string() && !r.get<std::string>().empty())
                t.referenced_user_ids.push_back(r.get<std::string>());
            else if (r.is_number_integer() || r.is_number_unsigned())
                t.referenced_user_ids.push_back(r.dump());
            else
                throw ParseError("referenced_user_ids must be non-empty ids");
        }
    }
    if (std::string ref = id_field(obj, "referenced_tweet_id", false); !ref.empty())
        t.referenced_tweet_id = std::move(ref);
    t.like_count = count_field(obj, "like_count");
    t.retweet_count = count_field(obj, "retweet_count");
    t.reply_count = count_field(obj, "reply_count");

    if (t.kind != TweetKind::Original && t.referenced_user_ids.empty())
        throw ParseError(std::string(to_string(t.kind)) + " without referenced_user_ids");
    return t;
}

std::string serialize_tweet(const TweetRecord& t) {
    json media = json::array();
    for (const auto& m : t.media) media.push_back({{"kind", to_string(m.kind)}, {"url", m.url}});
    json obj = {
        {"tweet_id", t.tweet_id},
        {"author_id", t.author_id},
        {"timestamp", format_timestamp(t.timestamp)},
        {"text", t.text},
        {"lang", t.lang},
        {"kind", to_string(t.kind)},
        {"hashtags", t.hashtags},
        {"urls", t.urls},
        {"media", media},
        {"referenced_user_ids", t.referenced_user_ids},
        {"referenced_tweet_id", t.referenced_tweet_id ? json(*t.referenced_tweet_id) : json(nullptr)},
        {"like_count", t.like_count},
        {"retweet_count", t.retweet_count},
        {"reply_count", t.reply_count},
    };
    return obj.dump();
}

TweetReader::TweetReader(const std::filesystem::path& path, bool schema_strict)
    : path_(path), in_(path), strict_(schema_strict) {
    if (!in_) throw Error("cannot read tweet archive " + path.string());
}

std::optional<TweetRecord> TweetReader::next() {
    std::string line;
    while (std::getline(in_, line)) {
        ++report_.lines;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        try {
            TweetRecord t = parse_tweet(line);
            ++report_.records;
            return t;
        } catch (const Error& e) {
            if (strict_)
                throw ParseError(path_.string() + ":" + std::to_string(report_.lines) + ": " + e.what());
            report_.warnings.push_back({report_.lines, e.what()});
        }
    }
    if (in_.bad()) throw Error("read error on " + path_.string());
    return std::nullopt;
}

LoadedTweets load_tweets(const std::filesystem::path& path, bool schema_strict) {
    TweetReader reader(path, schema_strict);
    LoadedTweets out;
    while (auto t = reader.next()) out.tweets.push_back(std::move(*t));
    out.report = reader.report();
    return out;
}

void write_tweets(const std::filesystem::path& path, const std::vector<TweetRecord>& tweets) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    for (const auto& t : tweets) out << serialize_tweet(t) << '\n';
    if (!out) throw Error("write failed on " + path.string());
}

}  // namespace polarmon::corpus
