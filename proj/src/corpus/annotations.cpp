#include "polarmon/corpus/annotations.hpp"

#include <algorithm>
#include <fstream>
#include <set>

namespace polarmon::corpus {

std::string_view to_string(AccountCategory c) {
    switch (c) {
        case AccountCategory::Individual: return "Individual";
        case AccountCategory::MediaJournalist: return "MediaJournalist";
        case AccountCategory::Political: return "Political";
        case AccountCategory::Organization: return "Organization";
        case AccountCategory::Bot: return "Bot";
    }
    return "Individual";
}

std::string_view to_string(Side s) {
    switch (s) {
        case Side::Left: return "Left";
        case Side::Right: return "Right";
        case Side::Center: return "Center";
    }
    return "Center";
}

namespace {

std::string canon(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c == ' ' || c == '_' || c == '-' || c == '/') continue;
        out.push_back((c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c);
    }
    return out;
}

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

char detect_delimiter(const std::string& header) {
    for (char c : {',', '\t', ';', '|'})
        if (header.find(c) != std::string::npos) return c;
    return ',';
}

std::vector<std::string> split_line(const std::string& line, char delim) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"' && cur.empty()) {
            quoted = true;
        } else if (c == delim) {
            fields.push_back(trim(std::move(cur)));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (quoted) throw ParseError("unterminated quoted field");
    fields.push_back(trim(std::move(cur)));
    return fields;
}

std::size_t column(const DsvTable& t, std::string_view name, const std::filesystem::path& path) {
    for (std::size_t i = 0; i < t.header.size(); ++i)
        if (t.header[i] == name) return i;
    throw ParseError(path.string() + ": missing column '" + std::string(name) + "'");
}

}  // namespace

AccountCategory parse_category(std::string_view text) {
    const std::string c = canon(text);
    if (c == "individual" || c == "individuals") return AccountCategory::Individual;
    if (c == "mediajournalist" || c == "mediajournalists" || c == "media" || c == "journalist")
        return AccountCategory::MediaJournalist;
    if (c == "political" || c == "politicalaccount" || c == "politicalaccounts") return AccountCategory::Political;
    if (c == "organization" || c == "organizations" || c == "organisation") return AccountCategory::Organization;
    if (c == "bot" || c == "bots") return AccountCategory::Bot;
    throw ParseError("unknown account category '" + std::string(text) + "'");
}

Side parse_side(std::string_view text) {
    const std::string c = canon(text);
    if (c == "left") return Side::Left;
    if (c == "right") return Side::Right;
    if (c == "center" || c == "centre" || c == "central") return Side::Center;
    throw ParseError("unknown political side '" + std::string(text) + "'");
}

void Annotations::add(AccountAnnotation a) {
    if (a.user_id.empty()) throw InvalidArgument("annotation with empty user_id");
    const bool political = a.category == AccountCategory::Political;
    if (political && !a.side) throw InvalidArgument("political account " + a.user_id + " has no side");
    if (!political && a.side) throw InvalidArgument("non-political account " + a.user_id + " has a side");
    const UserId id = a.user_id;
    if (!by_id_.emplace(id, std::move(a)).second) throw InvalidArgument("duplicate annotation for " + id);
}

const AccountAnnotation* Annotations::find(const UserId& id) const {
    const auto it = by_id_.find(id);
    return it == by_id_.end() ? nullptr : &it->second;
}

std::optional<AccountCategory> Annotations::category_of(const UserId& id) const {
    if (const auto* a = find(id)) return a->category;
    return std::nullopt;
}

std::vector<UserId> Annotations::users_in(AccountCategory c) const {
    std::vector<UserId> out;
    for (const auto& [id, a] : by_id_)
        if (a.category == c) out.push_back(id);
    return out;
}

DsvTable read_dsv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path.string());
    DsvTable t;
    std::string line;
    std::size_t line_no = 0;
    char delim = ',';
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
        if (trim(line).empty()) continue;
        try {
            if (t.header.empty()) {
                delim = detect_delimiter(line);
                t.header = split_line(line, delim);
                continue;
            }
            auto fields = split_line(line, delim);
            if (fields.size() < t.header.size()) fields.resize(t.header.size());
            t.rows.push_back(std::move(fields));
            t.line_numbers.push_back(line_no);
        } catch (const ParseError& e) {
            throw ParseError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (t.header.empty()) throw ParseError(path.string() + ": missing header");
    return t;
}

Annotations load_annotations(const std::filesystem::path& path) {
    const DsvTable t = read_dsv(path);
    const std::size_t c_id = column(t, "user_id", path);
    const std::size_t c_cat = column(t, "category", path);
    const std::size_t c_side = column(t, "side", path);
    Annotations out;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto& row = t.rows[r];
        try {
            AccountAnnotation a;
            a.user_id = row[c_id];
            a.category = parse_category(row[c_cat]);
            if (!row[c_side].empty()) a.side = parse_side(row[c_side]);
            out.add(std::move(a));
        } catch (const Error& e) {
            throw ParseError(path.string() + ":" + std::to_string(t.line_numbers[r]) + ": " + e.what());
        }
    }
    return out;
}

std::vector<FollowRecord> load_follows(const std::filesystem::path& path, const Annotations* annotations) {
    const DsvTable t = read_dsv(path);
    const std::size_t c_follower = column(t, "follower_id", path);
    const std::size_t c_followed = column(t, "followed_political_id", path);
    std::vector<FollowRecord> out;
    std::set<FollowRecord> seen;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto where = path.string() + ":" + std::to_string(t.line_numbers[r]) + ": ";
        FollowRecord f{t.rows[r][c_follower], t.rows[r][c_followed]};
        if (f.follower_id.empty() || f.followed_political_id.empty()) throw ParseError(where + "empty id");
        if (annotations) {
            const auto* a = annotations->find(f.followed_political_id);
            if (!a || a->category != AccountCategory::Political)
                throw ParseError(where + "followed account " + f.followed_political_id +
                                 " is not annotated Political");
        }
        if (!seen.insert(f).second)
            throw ParseError(where + "duplicate follow " + f.follower_id + " -> " + f.followed_political_id);
        out.push_back(std::move(f));
    }
    return out;
}

}  // namespace polarmon::corpus
