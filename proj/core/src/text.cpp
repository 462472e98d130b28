#include "botdrift/text.hpp"

#include <array>
#include <string_view>

namespace botdrift::text {

namespace {

constexpr char32_t kReplacement = 0xFFFD;

struct Decoded {
    char32_t cp;
    std::size_t length;  // bytes consumed; 0 means invalid at this position
};

Decoded decode_one(std::string_view s, std::size_t i) noexcept {
    const auto b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) {
        return {b0, 1};
    }
    std::size_t len = 0;
    char32_t cp = 0;
    char32_t min = 0;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
        min = 0x80;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
        min = 0x800;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
        min = 0x10000;
    } else {
        return {kReplacement, 0};
    }
    if (i + len > s.size()) {
        return {kReplacement, 0};
    }
    for (std::size_t k = 1; k < len; ++k) {
        const auto b = static_cast<unsigned char>(s[i + k]);
        if ((b & 0xC0) != 0x80) {
            return {kReplacement, 0};
        }
        cp = (cp << 6) | (b & 0x3F);
    }
    if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
        return {kReplacement, 0};
    }
    return {cp, len};
}

bool is_space(char32_t cp) noexcept {
    switch (cp) {
        case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
        case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
        case 0x202F: case 0x205F: case 0x3000:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200A;
    }
}

char32_t to_lower(char32_t cp) noexcept {
    if (cp < 0x80) {
        return (cp >= 'A' && cp <= 'Z') ? cp + 32 : cp;
    }
    // Latin-1 Supplement, except U+00D7 (multiplication sign).
    if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) {
        return cp + 32;
    }
    if (cp == 0x130) {
        return U'i';
    }
    // Latin Extended-A: alternating upper/lower pairs in two runs.
    if ((cp >= 0x100 && cp <= 0x137) || (cp >= 0x14A && cp <= 0x177)) {
        return (cp % 2 == 0) ? cp + 1 : cp;
    }
    if ((cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17E)) {
        return (cp % 2 == 1) ? cp + 1 : cp;
    }
    if (cp == 0x178) {
        return 0xFF;
    }
    // Greek capitals (U+03A2 is unassigned).
    if (cp >= 0x391 && cp <= 0x3AB && cp != 0x3A2) {
        return cp + 32;
    }
    // Cyrillic.
    if (cp >= 0x410 && cp <= 0x42F) {
        return cp + 32;
    }
    if (cp >= 0x400 && cp <= 0x40F) {
        return cp + 80;
    }
    return cp;
}

bool starts_with_url(std::string_view s, std::size_t i) noexcept {
    const std::string_view rest = s.substr(i);
    return rest.starts_with("http://") || rest.starts_with("https://") ||
           rest.starts_with("www.");
}

bool is_modifier(char32_t cp) noexcept {
    return (cp >= 0x1F3FB && cp <= 0x1F3FF)   // skin tones
           || cp == 0xFE0F || cp == 0xFE0E     // variation selectors
           || cp == 0x20E3                     // combining keycap
           || (cp >= 0xE0020 && cp <= 0xE007F);  // tag sequences
}

bool is_regional_indicator(char32_t cp) noexcept { return cp >= 0x1F1E6 && cp <= 0x1F1FF; }

constexpr char32_t kZwj = 0x200D;

}  // namespace

bool is_valid_utf8(std::string_view s) noexcept {
    std::size_t i = 0;
    while (i < s.size()) {
        const Decoded d = decode_one(s, i);
        if (d.length == 0) {
            return false;
        }
        i += d.length;
    }
    return true;
}

std::vector<char32_t> decode_utf8(std::string_view s) {
    std::vector<char32_t> out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        const Decoded d = decode_one(s, i);
        out.push_back(d.cp);
        i += d.length == 0 ? 1 : d.length;
    }
    return out;
}

void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

NormalizedText normalize_text(std::string_view raw) {
    // Pass 1: lowercase and map whitespace to ' '.
    std::string lowered;
    lowered.reserve(raw.size());
    for (char32_t cp : decode_utf8(raw)) {
        append_utf8(lowered, is_space(cp) ? U' ' : to_lower(cp));
    }

    // Pass 2: drop URL tokens, collapse spaces, trim.
    std::string cleaned;
    cleaned.reserve(lowered.size());
    std::size_t i = 0;
    while (i < lowered.size()) {
        if (starts_with_url(lowered, i)) {
            while (i < lowered.size() && lowered[i] != ' ') {
                ++i;
            }
            continue;
        }
        const char c = lowered[i++];
        if (c == ' ') {
            if (!cleaned.empty() && cleaned.back() != ' ') {
                cleaned.push_back(' ');
            }
        } else {
            cleaned.push_back(c);
        }
    }
    if (!cleaned.empty() && cleaned.back() == ' ') {
        cleaned.pop_back();
    }

    NormalizedText out;
    out.original = std::string(raw);
    out.is_empty = cleaned.empty();
    out.cleaned = std::move(cleaned);
    return out;
}

std::vector<std::string_view> tokens(std::string_view cleaned) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < cleaned.size()) {
        while (i < cleaned.size() && cleaned[i] == ' ') {
            ++i;
        }
        const std::size_t start = i;
        while (i < cleaned.size() && cleaned[i] != ' ') {
            ++i;
        }
        if (i > start) {
            out.push_back(cleaned.substr(start, i - start));
        }
    }
    return out;
}

bool is_emoji_codepoint(char32_t cp) noexcept {
    struct Range {
        char32_t lo;
        char32_t hi;
    };
    static constexpr std::array<Range, 20> kRanges = {{
        {0x1F000, 0x1F02F},  // mahjong, domino
        {0x1F0A0, 0x1F0FF},  // playing cards
        {0x1F100, 0x1F1FF},  // enclosed alphanumerics, regional indicators
        {0x1F200, 0x1F2FF},  // enclosed ideographic
        {0x1F300, 0x1F5FF},  // symbols and pictographs
        {0x1F600, 0x1F64F},  // emoticons
        {0x1F680, 0x1F6FF},  // transport and map
        {0x1F700, 0x1F77F},  // alchemical
        {0x1F780, 0x1F7FF},  // geometric shapes extended
        {0x1F800, 0x1F8FF},  // supplemental arrows-C
        {0x1F900, 0x1F9FF},  // supplemental symbols and pictographs
        {0x1FA00, 0x1FAFF},  // chess, symbols and pictographs extended-A
        {0x2600, 0x26FF},    // miscellaneous symbols
        {0x2700, 0x27BF},    // dingbats
        {0x2300, 0x23FF},    // miscellaneous technical
        {0x2B00, 0x2BFF},    // arrows and stars
        {0x2190, 0x21FF},    // arrows
        {0x3030, 0x3030},
        {0x303D, 0x303D},
        {0x3297, 0x3299},
    }};
    if (cp == 0x00A9 || cp == 0x00AE || cp == 0x203C || cp == 0x2049 || cp == 0x2122 ||
        cp == 0x2139 || (cp >= 0x25AA && cp <= 0x25FE)) {
        return true;
    }
    for (const auto& r : kRanges) {
        if (cp >= r.lo && cp <= r.hi) {
            return true;
        }
    }
    return false;
}

std::int64_t count_emoji(std::string_view raw) {
    const std::vector<char32_t> cps = decode_utf8(raw);
    std::int64_t count = 0;
    std::size_t i = 0;
    while (i < cps.size()) {
        if (!is_emoji_codepoint(cps[i])) {
            ++i;
            continue;
        }
        ++count;
        const bool flag = is_regional_indicator(cps[i]);
        ++i;
        if (flag && i < cps.size() && is_regional_indicator(cps[i])) {
            ++i;
        }
        // Absorb modifiers and ZWJ continuations into this emoji.
        while (i < cps.size()) {
            if (is_modifier(cps[i])) {
                ++i;
            } else if (cps[i] == kZwj && i + 1 < cps.size() && is_emoji_codepoint(cps[i + 1])) {
                i += 2;
            } else {
                break;
            }
        }
    }
    return count;
}

}  // namespace botdrift::text
