#include "polarmon/corpus/text.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/locid.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "polarmon/common.hpp"

namespace polarmon::corpus {
namespace {

const icu::Normalizer2& nfc() {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(status);
    if (U_FAILURE(status)) throw Error("ICU NFC normalizer unavailable");
    return *n;
}

const icu::Normalizer2& nfd() {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* n = icu::Normalizer2::getNFDInstance(status);
    if (U_FAILURE(status)) throw Error("ICU NFD normalizer unavailable");
    return *n;
}

std::string to_utf8(const icu::UnicodeString& s) {
    std::string out;
    s.toUTF8String(out);
    return out;
}

icu::UnicodeString from_utf8(std::string_view text) {
    return icu::UnicodeString::fromUTF8(icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
}

}  // namespace

bool valid_utf8(std::string_view text) {
    const auto* s = reinterpret_cast<const uint8_t*>(text.data());
    const auto len = static_cast<int32_t>(text.size());
    int32_t i = 0;
    while (i < len) {
        UChar32 c;
        U8_NEXT(s, i, len, c);
        if (c < 0) return false;
    }
    return true;
}

std::string normalize_hashtag(std::string_view tag) {
    while (!tag.empty() && (tag.front() == '#' || tag.front() == ' ')) tag.remove_prefix(1);
    while (!tag.empty() && tag.back() == ' ') tag.remove_suffix(1);
    icu::UnicodeString s = from_utf8(tag);
    s.toLower(icu::Locale::getRoot());
    UErrorCode status = U_ZERO_ERROR;
    icu::UnicodeString out = nfc().normalize(s, status);
    if (U_FAILURE(status)) throw Error("NFC normalization failed");
    return to_utf8(out);
}

std::string fold_for_match(std::string_view text) {
    UErrorCode status = U_ZERO_ERROR;
    const icu::UnicodeString decomposed = nfd().normalize(from_utf8(text), status);
    if (U_FAILURE(status)) throw Error("NFD normalization failed");

    icu::UnicodeString stripped;
    for (int32_t i = 0; i < decomposed.length();) {
        const UChar32 c = decomposed.char32At(i);
        if (u_charType(c) != U_NON_SPACING_MARK) stripped.append(c);
        i += U16_LENGTH(c);
    }
    stripped.foldCase(U_FOLD_CASE_DEFAULT);
    icu::UnicodeString out = nfc().normalize(stripped, status);
    if (U_FAILURE(status)) throw Error("NFC normalization failed");
    return to_utf8(out);
}

std::vector<std::string> tokenize_words(std::string_view text) {
    const icu::UnicodeString s = from_utf8(text);
    std::vector<std::string> words;
    icu::UnicodeString current;
    auto flush = [&] {
        if (!current.isEmpty()) {
            words.push_back(to_utf8(current));
            current.remove();
        }
    };
    for (int32_t i = 0; i < s.length();) {
        const UChar32 c = s.char32At(i);
        if (u_isalpha(c) || u_isdigit(c))
            current.append(c);
        else
            flush();
        i += U16_LENGTH(c);
    }
    flush();
    return words;
}

}  // namespace polarmon::corpus
