#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace botdrift::text {

/// Lowercased, URL-free, whitespace-collapsed form of a tweet's text.
struct NormalizedText {
    std::string original;
    std::string cleaned;
    bool is_empty = true;
};

/// Lowercase (ASCII, Latin-1, Latin Extended-A, Greek, Cyrillic), drop every
/// token starting at "http://", "https://" or "www." up to the next whitespace,
/// then collapse runs of Unicode whitespace to one ASCII space and trim.
/// Idempotent: normalize(normalize(x).cleaned).cleaned == normalize(x).cleaned.
NormalizedText normalize_text(std::string_view raw);

bool is_valid_utf8(std::string_view s) noexcept;

/// Decodes UTF-8; invalid sequences decode to U+FFFD one byte at a time.
std::vector<char32_t> decode_utf8(std::string_view s);
void append_utf8(std::string& out, char32_t cp);

/// Whitespace-separated tokens of already-normalized text.
std::vector<std::string_view> tokens(std::string_view cleaned);

/// Emoji occurrences in raw text. Modifiers, variation selectors and keycap
/// marks attach to the preceding emoji; ZWJ-joined runs and regional-indicator
/// pairs count once.
std::int64_t count_emoji(std::string_view raw);

bool is_emoji_codepoint(char32_t cp) noexcept;

}  // namespace botdrift::text
