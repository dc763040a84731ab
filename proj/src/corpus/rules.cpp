#include "polarmon/corpus/rules.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "polarmon/corpus/text.hpp"
#include "polarmon/default_rules.inc"

namespace polarmon::corpus {

using nlohmann::json;

std::string_view to_string(MatchMode mode) {
    return mode == MatchMode::HashtagExact ? "HashtagExact" : "KeywordSubstring";
}

std::string_view to_string(DropReason r) {
    switch (r) {
        case DropReason::Language: return "language";
        case DropReason::OutsideWindow: return "outside_window";
        case DropReason::NoRule: return "no_rule";
    }
    return "unknown";
}

FilterRule make_rule(std::string_view term, MatchMode mode, std::optional<Date> from, std::optional<Date> until) {
    FilterRule r;
    r.mode = mode;
    r.active_from = from;
    r.active_until = until;
    if (mode == MatchMode::HashtagExact) {
        r.term = normalize_hashtag(term);
        r.match_key = r.term;
    } else {
        r.term = std::string(term);
        r.match_key = fold_for_match(term);
    }
    if (r.match_key.empty()) throw InvalidArgument("empty filter term");
    if (from && until && *from > *until)
        throw InvalidArgument("rule '" + r.term + "': active_from after active_until");
    return r;
}

void validate(const RuleSet& rs) {
    if (rs.rules.empty()) throw InvalidArgument("rule set has no rules");
    if (rs.window_begin > rs.window_end) throw InvalidArgument("study window is not ordered");
    if (rs.language_whitelist.empty()) throw InvalidArgument("language whitelist is empty");
    for (const auto& r : rs.rules)
        if (r.active_from && r.active_until && *r.active_from > *r.active_until)
            throw InvalidArgument("rule '" + r.term + "': active_from after active_until");
}

RuleSet parse_rule_set(std::string_view json_text) {
    json cfg;
    try {
        cfg = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("rule set: ") + e.what());
    }
    RuleSet rs;
    try {
        if (cfg.contains("language_whitelist")) {
            rs.language_whitelist.clear();
            for (const auto& l : cfg.at("language_whitelist")) rs.language_whitelist.insert(l.get<std::string>());
        }
        const auto& window = cfg.at("study_window");
        if (!window.is_array() || window.size() != 2)
            throw ParseError("study_window must be [begin, end]");
        rs.window_begin = parse_date(window[0].get<std::string>());
        rs.window_end = parse_date(window[1].get<std::string>());
        if (cfg.contains("utc_offset_minutes"))
            rs.utc_offset = std::chrono::minutes{cfg.at("utc_offset_minutes").get<int>()};

        for (const auto& r : cfg.at("rules")) {
            const std::string mode_text = r.at("mode").get<std::string>();
            MatchMode mode;
            if (mode_text == "HashtagExact")
                mode = MatchMode::HashtagExact;
            else if (mode_text == "KeywordSubstring")
                mode = MatchMode::KeywordSubstring;
            else
                throw ParseError("unknown rule mode '" + mode_text + "'");
            std::optional<Date> from, until;
            if (r.contains("active_from") && !r.at("active_from").is_null())
                from = parse_date(r.at("active_from").get<std::string>());
            if (r.contains("active_until") && !r.at("active_until").is_null())
                until = parse_date(r.at("active_until").get<std::string>());
            rs.rules.push_back(make_rule(r.at("term").get<std::string>(), mode, from, until));
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("rule set: ") + e.what());
    }
    validate(rs);
    return rs;
}

RuleSet load_rule_set(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read rule set " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_rule_set(ss.str());
}

std::string_view default_rule_set_json() { return kDefaultRulesJson; }

RuleSet default_rule_set() {
    static const RuleSet rs = parse_rule_set(kDefaultRulesJson);
    return rs;
}

std::string rule_set_to_json(const RuleSet& rs) {
    json rules = json::array();
    for (const auto& r : rs.rules) {
        json j = {{"term", r.mode == MatchMode::HashtagExact ? "#" + r.term : r.term},
                  {"mode", to_string(r.mode)}};
        if (r.active_from) j["active_from"] = format_date(*r.active_from);
        if (r.active_until) j["active_until"] = format_date(*r.active_until);
        rules.push_back(std::move(j));
    }
    json cfg = {
        {"language_whitelist", rs.language_whitelist},
        {"study_window", {format_date(rs.window_begin), format_date(rs.window_end)}},
        {"utc_offset_minutes", rs.utc_offset.count()},
        {"rules", rules},
    };
    return cfg.dump(2);
}

namespace {

bool rule_hits(const FilterRule& r, const TweetRecord& t, const std::string& folded_text) {
    if (r.mode == MatchMode::HashtagExact)
        return std::find(t.hashtags.begin(), t.hashtags.end(), r.match_key) != t.hashtags.end();
    return folded_text.find(r.match_key) != std::string::npos;
}

bool needs_folded_text(const RuleSet& rs) {
    return std::any_of(rs.rules.begin(), rs.rules.end(),
                       [](const FilterRule& r) { return r.mode == MatchMode::KeywordSubstring; });
}

std::optional<DropReason> check(const RuleSet& rs, const TweetRecord& t, std::vector<std::size_t>* hits) {
    if (!rs.language_whitelist.contains(t.lang)) return DropReason::Language;
    const Date d = rs.date_of(t);
    if (d < rs.window_begin || d > rs.window_end) return DropReason::OutsideWindow;
    const std::string folded = needs_folded_text(rs) ? fold_for_match(t.text) : std::string{};
    bool any = false;
    for (std::size_t i = 0; i < rs.rules.size(); ++i) {
        const FilterRule& r = rs.rules[i];
        if (!r.active_on(d) || !rule_hits(r, t, folded)) continue;
        any = true;
        if (!hits) break;
        hits->push_back(i);
    }
    if (!any) return DropReason::NoRule;
    return std::nullopt;
}

}  // namespace

std::vector<std::size_t> matching_rules(const RuleSet& rs, const TweetRecord& t) {
    const Date d = rs.date_of(t);
    const std::string folded = needs_folded_text(rs) ? fold_for_match(t.text) : std::string{};
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < rs.rules.size(); ++i)
        if (rs.rules[i].active_on(d) && rule_hits(rs.rules[i], t, folded)) out.push_back(i);
    return out;
}

bool matches(const RuleSet& rs, const TweetRecord& t) { return !check(rs, t, nullptr).has_value(); }

FilterReport& FilterReport::operator+=(const FilterReport& other) {
    input += other.input;
    kept += other.kept;
    dropped += other.dropped;
    for (const auto& [reason, n] : other.drop_reasons) drop_reasons[reason] += n;
    if (rule_hits.size() < other.rule_hits.size()) rule_hits.resize(other.rule_hits.size(), 0);
    for (std::size_t i = 0; i < other.rule_hits.size(); ++i) rule_hits[i] += other.rule_hits[i];
    return *this;
}

FilterResult filter_corpus(const RuleSet& rs, const std::vector<TweetRecord>& tweets) {
    FilterResult out;
    out.report.rule_hits.assign(rs.rules.size(), 0);
    std::vector<std::size_t> hits;
    for (const auto& t : tweets) {
        ++out.report.input;
        hits.clear();
        if (const auto reason = check(rs, t, &hits)) {
            ++out.report.dropped;
            ++out.report.drop_reasons[*reason];
            continue;
        }
        for (std::size_t i : hits) ++out.report.rule_hits[i];
        ++out.report.kept;
        out.kept.push_back(t);
    }
    return out;
}

}  // namespace polarmon::corpus
