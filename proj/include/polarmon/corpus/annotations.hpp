#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polarmon/common.hpp"

namespace polarmon::corpus {

enum class AccountCategory { Individual, MediaJournalist, Political, Organization, Bot };
enum class Side { Left, Right, Center };

std::string_view to_string(AccountCategory c);
std::string_view to_string(Side s);
AccountCategory parse_category(std::string_view text);
Side parse_side(std::string_view text);

struct AccountAnnotation {
    UserId user_id;
    AccountCategory category = AccountCategory::Individual;
    std::optional<Side> side;  // present exactly for Political
};

/// One annotation per user, keyed by id.
class Annotations {
public:
    /// Throws InvalidArgument on duplicates or a side/category mismatch.
    void add(AccountAnnotation a);

    const AccountAnnotation* find(const UserId& id) const;
    std::optional<AccountCategory> category_of(const UserId& id) const;
    std::vector<UserId> users_in(AccountCategory c) const;  // ascending id
    std::size_t size() const { return by_id_.size(); }
    const std::map<UserId, AccountAnnotation>& all() const { return by_id_; }

private:
    std::map<UserId, AccountAnnotation> by_id_;
};

struct FollowRecord {
    UserId follower_id;
    UserId followed_political_id;

    auto operator<=>(const FollowRecord&) const = default;
};

/// Reads user_id,category,side. The delimiter (comma, tab, semicolon) is
/// taken from the header line.
Annotations load_annotations(const std::filesystem::path& path);

/// Reads follower_id,followed_political_id. Duplicate pairs are an error, as
/// is a followed id that is not annotated Political when `annotations` is
/// given.
std::vector<FollowRecord> load_follows(const std::filesystem::path& path, const Annotations* annotations = nullptr);

/// Minimal delimiter-separated reader shared by the loaders. Supports
/// double-quoted fields with "" escapes.
struct DsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> line_numbers;
};

DsvTable read_dsv(const std::filesystem::path& path);

}  // namespace polarmon::corpus
