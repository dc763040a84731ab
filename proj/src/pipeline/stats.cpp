#include "polarmon/pipeline/stats.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "polarmon/corpus/text.hpp"

namespace polarmon::pipeline {
namespace {

using Counter = std::map<std::string, std::uint64_t>;

std::vector<RankedItem> top(const Counter& counts, std::size_t k) {
    std::vector<RankedItem> items;
    items.reserve(counts.size());
    for (const auto& [key, n] : counts)
        if (n > 0) items.push_back({key, n});
    // Map order already gives ascending keys; stable sort keeps it for ties.
    std::stable_sort(items.begin(), items.end(), [](const RankedItem& a, const RankedItem& b) { return a.count > b.count; });
    if (items.size() > k) items.resize(k);
    return items;
}

bool strip_token(std::string_view piece) {
    return piece.starts_with("http://") || piece.starts_with("https://") || piece.starts_with("www.") ||
           piece.starts_with("@") || piece.starts_with("#");
}

}  // namespace

std::vector<std::string> content_words(std::string_view text, const std::set<std::string>& stopwords) {
    // Runs of kept whitespace-separated pieces are tokenized together; an empty
    // string marks each removed piece so bigrams never span it.
    std::vector<std::string> words;
    std::string run;
    auto flush = [&] {
        for (auto& w : corpus::tokenize_words(corpus::fold_for_match(run)))
            if (!stopwords.contains(w)) words.push_back(std::move(w));
        run.clear();
    };
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t end = std::min(text.find_first_of(" \t\n\r", pos), text.size());
        const std::string_view piece = text.substr(pos, end - pos);
        if (strip_token(piece)) {
            flush();
            words.emplace_back();
        } else if (!piece.empty()) {
            run.append(piece);
            run.push_back(' ');
        }
        pos = end + 1;
    }
    flush();
    return words;
}

std::set<std::string> load_stopwords(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read stopword file " + path.string());
    std::set<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        for (auto& w : corpus::tokenize_words(corpus::fold_for_match(line))) out.insert(std::move(w));
    }
    return out;
}

DailyStats aggregate_stats(const std::vector<corpus::TweetRecord>& tweets, const StatsOptions& options) {
    DailyStats s;
    std::set<UserId> authors;
    std::set<std::string> hashtags, urls;
    Counter liked, retweeted, replied, mentioned, active, url_count, images, videos, words, phrases, tags;
    for (const auto& t : tweets) {
        ++s.n_posts;
        switch (t.kind) {
            case corpus::TweetKind::Original: ++s.n_tweets; break;
            case corpus::TweetKind::Retweet: ++s.n_retweets; break;
            case corpus::TweetKind::Quote: ++s.n_quotes; break;
            case corpus::TweetKind::Reply: ++s.n_replies; break;
        }
        authors.insert(t.author_id);
        ++active[t.author_id];
        for (const auto& h : t.hashtags) {
            hashtags.insert(h);
            ++tags[h];
        }
        for (const auto& u : t.urls) {
            urls.insert(u);
            ++url_count[u];
        }
        for (const auto& m : t.media) ++(m.kind == corpus::MediaKind::Image ? images : videos)[m.url];
        for (const auto& r : t.referenced_user_ids)
            if (r != t.author_id) ++mentioned[r];

        // Retweet records repeat the engagement counts and text of the
        // original post, so they are left out of per-post rankings and text.
        if (t.kind == corpus::TweetKind::Retweet) continue;
        liked[t.tweet_id] = t.like_count;
        retweeted[t.tweet_id] = t.retweet_count;
        replied[t.tweet_id] = t.reply_count;
        const auto ws = content_words(t.text, options.stopwords);
        for (std::size_t i = 0; i < ws.size(); ++i) {
            if (ws[i].empty()) continue;
            ++words[ws[i]];
            if (i + 1 < ws.size() && !ws[i + 1].empty()) ++phrases[ws[i] + " " + ws[i + 1]];
        }
    }
    s.n_users = authors.size();
    s.n_hashtags = hashtags.size();
    s.n_urls = urls.size();
    const std::size_t k = options.top_k;
    s.most_liked = top(liked, k);
    s.most_retweeted = top(retweeted, k);
    s.most_replied = top(replied, k);
    s.most_mentioned = top(mentioned, k);
    s.most_active = top(active, k);
    s.top_urls = top(url_count, k);
    s.top_images = top(images, k);
    s.top_videos = top(videos, k);
    s.top_words = top(words, k);
    s.top_phrases = top(phrases, k);
    s.top_hashtags = top(tags, k);
    return s;
}

std::vector<DailyStats> compute_stats(const std::vector<corpus::TweetRecord>& tweets, const StatsOptions& options) {
    std::map<Date, std::vector<corpus::TweetRecord>> by_day;
    for (const auto& t : tweets) by_day[date_of(t.timestamp, options.utc_offset)].push_back(t);
    std::vector<DailyStats> out;
    out.reserve(by_day.size());
    for (const auto& [d, day] : by_day) {
        out.push_back(aggregate_stats(day, options));
        out.back().date = d;
    }
    return out;
}

namespace {

std::string date_label(const DailyStats& s) { return s.date ? format_date(*s.date) : "ALL"; }

void stats_row(std::ostream& out, const DailyStats& s) {
    out << date_label(s) << ',' << s.n_posts << ',' << s.n_tweets << ',' << s.n_retweets << ',' << s.n_quotes << ','
        << s.n_replies << ',' << s.n_users << ',' << s.n_hashtags << ',' << s.n_urls << '\n';
}

std::string csv_field(const std::string& v) {
    if (v.find_first_of(",\"\n\r") == std::string::npos) return v;
    std::string q = "\"";
    for (char c : v) {
        if (c == '"') q.push_back('"');
        q.push_back(c);
    }
    q.push_back('"');
    return q;
}

void top_rows(std::ostream& out, const DailyStats& s) {
    const std::pair<const char*, const std::vector<RankedItem>*> lists[] = {
        {"most_liked", &s.most_liked},       {"most_retweeted", &s.most_retweeted},
        {"most_replied", &s.most_replied},   {"most_mentioned", &s.most_mentioned},
        {"most_active", &s.most_active},     {"top_urls", &s.top_urls},
        {"top_images", &s.top_images},       {"top_videos", &s.top_videos},
        {"top_words", &s.top_words},         {"top_phrases", &s.top_phrases},
        {"top_hashtags", &s.top_hashtags},
    };
    const std::string label = date_label(s);
    for (const auto& [name, items] : lists)
        for (std::size_t i = 0; i < items->size(); ++i)
            out << label << ',' << name << ',' << (i + 1) << ',' << csv_field((*items)[i].key) << ','
                << (*items)[i].count << '\n';
}

}  // namespace

void write_stats_csv(std::ostream& out, const std::vector<DailyStats>& days, const DailyStats* total) {
    out << "date,n_posts,n_tweets,n_retweets,n_quotes,n_replies,n_users,n_hashtags,n_urls\n";
    for (const auto& d : days) stats_row(out, d);
    if (total) stats_row(out, *total);
}

void write_top_lists_csv(std::ostream& out, const std::vector<DailyStats>& days, const DailyStats* total) {
    out << "date,list,rank,key,count\n";
    for (const auto& d : days) top_rows(out, d);
    if (total) top_rows(out, *total);
}

std::array<int, 4> shares_permille(const std::array<std::size_t, 4>& counts) {
    std::array<int, 4> out{};
    std::uint64_t total = 0;
    for (auto c : counts) total += c;
    if (total == 0) return out;
    int sum = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const std::uint64_t num = static_cast<std::uint64_t>(counts[i]) * 1000u;
        std::uint64_t q = num / total;
        const std::uint64_t twice_rem = 2 * (num % total);
        if (twice_rem > total || (twice_rem == total && (q % 2 == 1))) ++q;
        out[i] = static_cast<int>(q);
        sum += out[i];
    }
    const std::size_t largest = static_cast<std::size_t>(std::max_element(counts.begin(), counts.end()) - counts.begin());
    out[largest] += 1000 - sum;
    return out;
}

StanceShares stance_shares(const std::vector<corpus::TweetRecord>& tweets, const stance::StanceMap& stances) {
    StanceShares s;
    std::map<UserId, stance::Stance> authors;
    auto slot = [](stance::Stance st) { return static_cast<std::size_t>(st); };
    for (const auto& t : tweets) {
        const stance::Stance st = stance::stance_of(stances, t.author_id);
        ++s.tweet_counts[slot(st)];
        authors.emplace(t.author_id, st);
    }
    for (const auto& [id, st] : authors) ++s.user_counts[slot(st)];
    s.tweet_share_permille = shares_permille(s.tweet_counts);
    s.user_share_permille = shares_permille(s.user_counts);
    return s;
}

namespace {
std::string permille_text(int v) {
    std::ostringstream ss;
    ss << (v / 10) << '.' << (v % 10);
    return ss.str();
}
}  // namespace

void write_stance_shares_csv(std::ostream& out, const StanceShares& shares) {
    out << "stance,tweets,tweet_share_pct,users,user_share_pct\n";
    for (std::size_t i = 0; i < kAllStances.size(); ++i)
        out << stance::to_string(kAllStances[i]) << ',' << shares.tweet_counts[i] << ','
            << permille_text(shares.tweet_share_permille[i]) << ',' << shares.user_counts[i] << ','
            << permille_text(shares.user_share_permille[i]) << '\n';
}

}  // namespace polarmon::pipeline
