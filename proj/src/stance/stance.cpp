#include "polarmon/stance/stance.hpp"

#include <algorithm>
#include <ostream>

namespace polarmon::stance {

std::string_view to_string(Stance s) {
    switch (s) {
        case Stance::Left: return "Left";
        case Stance::Right: return "Right";
        case Stance::Center: return "Center";
        case Stance::Neutral: return "Neutral";
    }
    return "Neutral";
}

Stance parse_stance(std::string_view text) {
    if (text == "Left") return Stance::Left;
    if (text == "Right") return Stance::Right;
    if (text == "Center") return Stance::Center;
    if (text == "Neutral") return Stance::Neutral;
    throw ParseError("unknown stance '" + std::string(text) + "'");
}

Stance classify(int n_left, int n_right, int n_center, double threshold) {
    const int total = n_left + n_right + n_center;
    if (total == 0) return Stance::Neutral;
    if (n_center > std::max(n_left, n_right)) return Stance::Center;
    const double denom = static_cast<double>(total);
    if (n_left > n_right && static_cast<double>(n_left) / denom >= threshold) return Stance::Left;
    if (n_right > n_left && static_cast<double>(n_right) / denom >= threshold) return Stance::Right;
    return Stance::Center;
}

StanceAssignment infer_stance(const UserId& user, const std::vector<UserId>& followed,
                              const corpus::Annotations& annotations, double threshold) {
    if (!(threshold >= 0.0 && threshold <= 1.0)) throw InvalidArgument("threshold must lie in [0, 1]");
    StanceAssignment a;
    a.user_id = user;
    a.threshold_used = threshold;
    for (const auto& id : followed) {
        const auto* ann = annotations.find(id);
        if (!ann || ann->category != corpus::AccountCategory::Political || !ann->side)
            throw InvalidArgument("followed account " + id + " is not annotated Political with a side");
        switch (*ann->side) {
            case corpus::Side::Left: ++a.n_left; break;
            case corpus::Side::Right: ++a.n_right; break;
            case corpus::Side::Center: ++a.n_center; break;
        }
    }
    a.stance = classify(a.n_left, a.n_right, a.n_center, threshold);
    return a;
}

StanceMap stance_map(const std::vector<corpus::FollowRecord>& follows, const corpus::Annotations& annotations,
                     double threshold, const std::vector<UserId>& corpus_users) {
    std::map<UserId, std::vector<UserId>> by_user;
    for (const auto& f : follows) by_user[f.follower_id].push_back(f.followed_political_id);
    StanceMap out;
    for (const auto& [user, followed] : by_user) out.emplace(user, infer_stance(user, followed, annotations, threshold));
    for (const auto& user : corpus_users)
        if (!out.contains(user)) out.emplace(user, infer_stance(user, {}, annotations, threshold));
    return out;
}

Stance stance_of(const StanceMap& stances, const UserId& id) {
    const auto it = stances.find(id);
    return it == stances.end() ? Stance::Neutral : it->second.stance;
}

double opinion_value(Stance s) {
    switch (s) {
        case Stance::Right: return 1.0;
        case Stance::Left: return -1.0;
        default: return 0.0;
    }
}

std::vector<double> opinion_vector(const graphkit::InteractionGraph& g, const StanceMap& stances) {
    std::vector<double> s(g.node_count(), 0.0);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = opinion_value(stance_of(stances, g.node_ids()[i]));
    return s;
}

void write_stance_csv(std::ostream& out, const StanceMap& stances) {
    out << "user_id,stance,n_left,n_right,n_center,threshold\n";
    for (const auto& [id, a] : stances)
        out << id << ',' << to_string(a.stance) << ',' << a.n_left << ',' << a.n_right << ',' << a.n_center << ','
            << format_double(a.threshold_used) << '\n';
}

}  // namespace polarmon::stance
