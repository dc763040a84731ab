#pragma once

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace polarmon {

using UserId = std::string;
using Timestamp = std::chrono::sys_seconds;
using Date = std::chrono::sys_days;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// An iterative solver stopped at its iteration cap.
class NonConvergence : public Error {
public:
    NonConvergence(const std::string& what, int iterations, double residual)
        : Error(what), iterations_(iterations), residual_(residual) {}
    int iterations() const { return iterations_; }
    double residual() const { return residual_; }

private:
    int iterations_;
    double residual_;
};

/// Parses "YYYY-MM-DD".
Date parse_date(std::string_view text);
std::optional<Date> try_parse_date(std::string_view text);

/// Parses ISO-8601 instants: "YYYY-MM-DDTHH:MM:SS" followed by an optional
/// fractional part (truncated) and "Z", "+HH:MM", "-HH:MM" or nothing (UTC).
Timestamp parse_timestamp(std::string_view text);

std::string format_date(Date d);
std::string format_timestamp(Timestamp t);  // "YYYY-MM-DDTHH:MM:SSZ"

/// Calendar date of an instant after shifting by a fixed UTC offset.
inline Date date_of(Timestamp t, std::chrono::minutes utc_offset = std::chrono::minutes{0}) {
    return std::chrono::floor<std::chrono::days>(t + utc_offset);
}

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double v);

}  // namespace polarmon
