#include "polarmon/common.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace polarmon {
namespace {

bool read_int(std::string_view text, std::size_t pos, std::size_t len, int& out) {
    if (pos + len > text.size()) return false;
    int v = 0;
    for (std::size_t i = pos; i < pos + len; ++i) {
        const char c = text[i];
        if (c < '0' || c > '9') return false;
        v = v * 10 + (c - '0');
    }
    out = v;
    return true;
}

std::optional<Date> civil(int y, int m, int d) {
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                                          std::chrono::day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) return std::nullopt;
    return Date{ymd};
}

}  // namespace

std::optional<Date> try_parse_date(std::string_view text) {
    int y, m, d;
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    if (!read_int(text, 0, 4, y) || !read_int(text, 5, 2, m) || !read_int(text, 8, 2, d)) return std::nullopt;
    return civil(y, m, d);
}

Date parse_date(std::string_view text) {
    if (auto d = try_parse_date(text)) return *d;
    throw ParseError("invalid date '" + std::string(text) + "', expected YYYY-MM-DD");
}

Timestamp parse_timestamp(std::string_view text) {
    auto fail = [&]() -> Timestamp {
        throw ParseError("invalid timestamp '" + std::string(text) + "'");
    };
    if (text.size() < 19) return fail();
    const auto day = try_parse_date(text.substr(0, 10));
    if (!day || (text[10] != 'T' && text[10] != ' ')) return fail();
    int hh, mm, ss;
    if (!read_int(text, 11, 2, hh) || text[13] != ':' || !read_int(text, 14, 2, mm) || text[16] != ':' ||
        !read_int(text, 17, 2, ss))
        return fail();
    if (hh > 23 || mm > 59 || ss > 60) return fail();

    std::size_t pos = 19;
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        const std::size_t start = pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
        if (pos == start) return fail();
    }
    std::chrono::minutes offset{0};
    if (pos < text.size()) {
        const char c = text[pos];
        if (c == 'Z' || c == 'z') {
            ++pos;
        } else if (c == '+' || c == '-') {
            int oh, om;
            if (!read_int(text, pos + 1, 2, oh)) return fail();
            std::size_t mpos = pos + 3;
            if (mpos < text.size() && text[mpos] == ':') ++mpos;
            if (!read_int(text, mpos, 2, om)) return fail();
            offset = std::chrono::minutes{oh * 60 + om};
            if (c == '-') offset = -offset;
            pos = mpos + 2;
        } else {
            return fail();
        }
    }
    if (pos != text.size()) return fail();
    return Timestamp{*day} + std::chrono::hours{hh} + std::chrono::minutes{mm} + std::chrono::seconds{ss} -
           offset;
}

std::string format_date(Date d) {
    const std::chrono::year_month_day ymd{d};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

std::string format_timestamp(Timestamp t) {
    const Date d = std::chrono::floor<std::chrono::days>(t);
    const auto secs = static_cast<unsigned>((t - d).count());  // [0, 86400)
    char buf[32];
    std::snprintf(buf, sizeof buf, "T%02u:%02u:%02uZ", secs / 3600, (secs / 60) % 60, secs % 60);
    return format_date(d) + buf;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (v == 0.0) return "0";  // folds -0
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace polarmon
