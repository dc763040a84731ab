#include "polarmon/pipeline/report.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace polarmon::pipeline {
namespace {

std::string esc(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string opt_fixed(const std::optional<double>& v, int digits = 4) { return v ? fixed(*v, digits) : "n/a"; }

std::string permille(int v) { return std::to_string(v / 10) + "." + std::to_string(v % 10) + "%"; }

}  // namespace

std::string svg_line_chart(const std::vector<std::string>& x_labels, const std::vector<Series>& series,
                           const std::string& y_label, std::optional<double> y_max) {
    constexpr double W = 760, H = 260, left = 56, right = 150, top = 16, bottom = 40;
    const double pw = W - left - right, ph = H - top - bottom;
    double hi = y_max.value_or(0.0);
    if (!y_max)
        for (const auto& s : series)
            for (const auto& v : s.values)
                if (v) hi = std::max(hi, *v);
    if (hi <= 0.0) hi = 1.0;
    const std::size_t n = x_labels.size();
    auto xpos = [&](std::size_t i) { return left + (n <= 1 ? pw / 2 : pw * static_cast<double>(i) / static_cast<double>(n - 1)); };
    auto ypos = [&](double v) { return top + ph * (1.0 - v / hi); };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
      << ' ' << H << "\">\n";
    o << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"#fafafa\" stroke=\"#999\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        const double v = hi * t / 4.0;
        o << "<line x1=\"" << left << "\" x2=\"" << left + pw << "\" y1=\"" << fixed(ypos(v), 1) << "\" y2=\""
          << fixed(ypos(v), 1) << "\" stroke=\"#e0e0e0\"/>";
        o << "<text x=\"" << left - 6 << "\" y=\"" << fixed(ypos(v) + 4, 1)
          << "\" font-size=\"10\" text-anchor=\"end\">" << (hi >= 10 ? fixed(v, 0) : fixed(v, 2)) << "</text>\n";
    }
    const std::size_t label_step = std::max<std::size_t>(1, n / 8);
    for (std::size_t i = 0; i < n; i += label_step)
        o << "<text x=\"" << fixed(xpos(i), 1) << "\" y=\"" << H - bottom + 14
          << "\" font-size=\"9\" text-anchor=\"middle\">" << esc(x_labels[i]) << "</text>\n";
    o << "<text x=\"12\" y=\"" << top + ph / 2 << "\" font-size=\"11\" transform=\"rotate(-90 12 " << top + ph / 2
      << ")\" text-anchor=\"middle\">" << esc(y_label) << "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        std::string path;
        bool pen_down = false;
        for (std::size_t i = 0; i < s.values.size() && i < n; ++i) {
            if (!s.values[i]) {
                pen_down = false;
                continue;
            }
            path += (pen_down ? " L" : " M") + fixed(xpos(i), 1) + "," + fixed(ypos(*s.values[i]), 1);
            pen_down = true;
        }
        if (!path.empty())
            o << "<path d=\"" << path << "\" fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\"/>\n";
        if (n == 1 && !s.values.empty() && s.values[0])
            o << "<circle cx=\"" << fixed(xpos(0), 1) << "\" cy=\"" << fixed(ypos(*s.values[0]), 1)
              << "\" r=\"3\" fill=\"" << s.color << "\"/>\n";
        const double ly = top + 12 + 16.0 * static_cast<double>(si);
        o << "<rect x=\"" << left + pw + 10 << "\" y=\"" << ly - 8 << "\" width=\"10\" height=\"10\" fill=\"" << s.color
          << "\"/><text x=\"" << left + pw + 24 << "\" y=\"" << ly << "\" font-size=\"11\">" << esc(s.name)
          << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

void write_summary_html(std::ostream& out, const SummaryData& d) {
    out << "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n<title>" << esc(d.title)
        << "</title>\n<style>\nbody{font-family:sans-serif;max-width:980px;margin:24px auto;color:#222}\n"
           "table{border-collapse:collapse;margin:8px 0 20px}\n"
           "td,th{border:1px solid #ccc;padding:3px 8px;font-size:13px;text-align:right}\n"
           "th{background:#f0f0f0}td.l,th.l{text-align:left}\n</style>\n</head>\n<body>\n";
    out << "<h1>" << esc(d.title) << "</h1>\n<p>Analysis window: " << esc(d.window_label) << "</p>\n";

    if (!d.warnings.empty()) {
        out << "<h2>Warnings</h2>\n<ul>\n";
        for (const auto& w : d.warnings) out << "<li>" << esc(w) << "</li>\n";
        out << "</ul>\n";
    }

    if (d.filter) {
        out << "<h2>Corpus filter</h2>\n<table><tr><th class=\"l\">input</th><th>kept</th><th>dropped</th>";
        for (const auto& [reason, n] : d.filter->drop_reasons) out << "<th>" << esc(corpus::to_string(reason)) << "</th>";
        out << "</tr>\n<tr><td class=\"l\">" << d.filter->input << "</td><td>" << d.filter->kept << "</td><td>"
            << d.filter->dropped << "</td>";
        for (const auto& [reason, n] : d.filter->drop_reasons) out << "<td>" << n << "</td>";
        out << "</tr></table>\n";
    }

    if (d.total) {
        const DailyStats& t = *d.total;
        out << "<h2>Totals</h2>\n<table><tr><th>posts</th><th>tweets</th><th>retweets</th><th>quotes</th>"
               "<th>replies</th><th>users</th><th>hashtags</th><th>urls</th></tr>\n<tr><td>"
            << t.n_posts << "</td><td>" << t.n_tweets << "</td><td>" << t.n_retweets << "</td><td>" << t.n_quotes
            << "</td><td>" << t.n_replies << "</td><td>" << t.n_users << "</td><td>" << t.n_hashtags << "</td><td>"
            << t.n_urls << "</td></tr></table>\n";
        auto list = [&](const char* name, const std::vector<RankedItem>& items) {
            out << "<h3>" << name << "</h3>\n<table><tr><th>#</th><th class=\"l\">item</th><th>count</th></tr>\n";
            for (std::size_t i = 0; i < items.size(); ++i)
                out << "<tr><td>" << i + 1 << "</td><td class=\"l\">" << esc(items[i].key) << "</td><td>"
                    << items[i].count << "</td></tr>\n";
            out << "</table>\n";
        };
        list("Most active users", t.most_active);
        list("Most mentioned users", t.most_mentioned);
        list("Top hashtags", t.top_hashtags);
        list("Top words", t.top_words);
        list("Top phrases", t.top_phrases);
        list("Top URLs", t.top_urls);
    }

    if (d.daily && !d.daily->empty()) {
        std::vector<std::string> x;
        Series tw{"tweets", "#d62728", {}}, rt{"retweets", "#1f77b4", {}}, qr{"quotes+replies", "#e6b800", {}};
        for (const auto& s : *d.daily) {
            x.push_back(format_date(*s.date));
            tw.values.emplace_back(static_cast<double>(s.n_tweets));
            rt.values.emplace_back(static_cast<double>(s.n_retweets));
            qr.values.emplace_back(static_cast<double>(s.n_quotes + s.n_replies));
        }
        out << "<h2>Posts per day</h2>\n" << svg_line_chart(x, {tw, rt, qr}, "posts");
    }

    if (d.shares) {
        out << "<h2>Stance shares</h2>\n<table><tr><th class=\"l\">stance</th><th>tweets</th><th>tweet share</th>"
               "<th>users</th><th>user share</th></tr>\n";
        for (std::size_t i = 0; i < kAllStances.size(); ++i)
            out << "<tr><td class=\"l\">" << stance::to_string(kAllStances[i]) << "</td><td>"
                << d.shares->tweet_counts[i] << "</td><td>" << permille(d.shares->tweet_share_permille[i])
                << "</td><td>" << d.shares->user_counts[i] << "</td><td>"
                << permille(d.shares->user_share_permille[i]) << "</td></tr>\n";
        out << "</table>\n";
    }

    if (d.pi_rows && !d.pi_rows->empty()) {
        std::vector<std::string> x;
        Series full{"PI", "#1f77b4", {}}, pol{"w/o political", "#ff7f0e", {}}, med{"w/o media", "#2ca02c", {}},
            inf{"w/o influencers", "#d62728", {}};
        for (std::size_t i = 0; i < d.pi_rows->size(); ++i) {
            const auto& r = (*d.pi_rows)[i];
            x.push_back(format_date(r.date));
            full.values.push_back(r.result ? std::optional<double>(r.result->pi) : std::nullopt);
            if (d.ablation && i < d.ablation->size()) {
                const auto& a = (*d.ablation)[i];
                pol.values.push_back(a.without(RemovedGroup::Political).pi);
                med.values.push_back(a.without(RemovedGroup::MediaJournalist).pi);
                inf.values.push_back(a.without(RemovedGroup::Influencers).pi);
            }
        }
        std::vector<Series> all{full};
        if (d.ablation) all.insert(all.end(), {pol, med, inf});
        out << "<h2>Polarization index per day</h2>\n" << svg_line_chart(x, all, "PI", 1.0);
    }

    if (d.sweep && !d.sweep->rows.empty()) {
        std::vector<std::string> x;
        Series full{"PI", "#1f77b4", {}}, pol{"w/o political", "#ff7f0e", {}}, med{"w/o media", "#2ca02c", {}},
            inf{"w/o influencers", "#d62728", {}};
        out << "<h2>Polarization vs. stance threshold</h2>\n<table><tr><th>threshold</th><th>PI</th>"
               "<th>w/o political</th><th>w/o media</th><th>w/o influencers</th><th>Left users</th>"
               "<th>Right users</th></tr>\n";
        for (const auto& r : d.sweep->rows) {
            x.push_back(fixed(r.threshold, 2));
            full.values.push_back(r.pis.pi_full);
            pol.values.push_back(r.pis.without(RemovedGroup::Political).pi);
            med.values.push_back(r.pis.without(RemovedGroup::MediaJournalist).pi);
            inf.values.push_back(r.pis.without(RemovedGroup::Influencers).pi);
            out << "<tr><td>" << fixed(r.threshold, 2) << "</td><td>" << opt_fixed(r.pis.pi_full) << "</td><td>"
                << opt_fixed(r.pis.without(RemovedGroup::Political).pi) << "</td><td>"
                << opt_fixed(r.pis.without(RemovedGroup::MediaJournalist).pi) << "</td><td>"
                << opt_fixed(r.pis.without(RemovedGroup::Influencers).pi) << "</td><td>" << r.n_left_users
                << "</td><td>" << r.n_right_users << "</td></tr>\n";
        }
        out << "</table>\n" << svg_line_chart(x, {full, pol, med, inf}, "PI", 1.0);
    }

    if (!d.influencers.empty()) {
        out << "<h2>Top influencers (NetShield)</h2>\n<table><tr><th>#</th><th class=\"l\">user</th>"
               "<th class=\"l\">category</th><th>marginal score</th></tr>\n";
        for (std::size_t i = 0; i < d.influencers.size(); ++i)
            out << "<tr><td>" << i + 1 << "</td><td class=\"l\">" << esc(d.influencers[i].user_id)
                << "</td><td class=\"l\">" << esc(d.influencers[i].category) << "</td><td>"
                << fixed(d.influencers[i].score, 6) << "</td></tr>\n";
        out << "</table>\n";
    }

    if (d.communities) {
        out << "<h2>Communities</h2>\n<p>" << d.community_count << " communities, modularity "
            << fixed(d.modularity, 4) << ".</p>\n<table><tr><th>id</th><th>size</th><th>Left</th><th>Right</th>"
               "<th>Center</th><th>Neutral</th><th>lean</th></tr>\n";
        for (const auto& c : *d.communities)
            out << "<tr><td>" << c.community_id << "</td><td>" << c.size << "</td><td>" << c.n_left << "</td><td>"
                << c.n_right << "</td><td>" << c.n_center << "</td><td>" << c.n_neutral << "</td><td>"
                << fixed(c.lean, 3) << "</td></tr>\n";
        out << "</table>\n";
    }
    out << "</body>\n</html>\n";
}

}  // namespace polarmon::pipeline
