#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace polarmon::corpus {

/// Lowercase + NFC, leading '#' removed. Accents are kept, so "υποκλοπες" and
/// "υποκλοπές" stay distinct hashtags.
std::string normalize_hashtag(std::string_view tag);

/// Matching key for keyword search: canonical decomposition, combining marks
/// stripped, full case folding (which also maps final sigma to sigma), NFC.
std::string fold_for_match(std::string_view text);

/// Splits folded text into runs of letters and digits. Everything else is a
/// boundary.
std::vector<std::string> tokenize_words(std::string_view text);

/// True when the input is well-formed UTF-8.
bool valid_utf8(std::string_view text);

}  // namespace polarmon::corpus
