#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

#include "botdrift/text.hpp"

namespace botdrift::sentiment {

enum class Polarity : std::uint8_t { positive, negative, neutral };

std::string_view to_string(Polarity p) noexcept;

/// Token valences in [-1, 1] plus the tokens that flip the next token's sign.
class Lexicon {
public:
    Lexicon() = default;

    /// Throws Error(domain) when score is outside [-1, 1].
    void add(std::string token, double score);
    void add_negation(std::string token);

    [[nodiscard]] const double* find(std::string_view token) const;
    [[nodiscard]] bool is_negation(std::string_view token) const;
    [[nodiscard]] std::size_t size() const noexcept { return scores_.size(); }
    [[nodiscard]] bool empty() const noexcept { return scores_.empty(); }

    /// Text format: `token<whitespace>score` lines, '#' comments, and a
    /// `[negations]` line after which each line is one negation token.
    static Lexicon parse(std::istream& in);
    static Lexicon load(const std::string& path);

    /// The lexicon compiled into the library.
    static const Lexicon& bundled();

private:
    std::unordered_map<std::string, double> scores_;
    std::unordered_set<std::string> negations_;
};

/// Strict thresholds at +/-0.2; the boundaries themselves are neutral.
/// Throws Error(domain) outside [-1, 1].
Polarity classify_sentiment(double score);

/// Mean valence of lexicon tokens (punctuation stripped at the token edges),
/// negated when the previous token is a negation. 0 with no hits; clamped.
double score_sentiment(const text::NormalizedText& text, const Lexicon& lexicon);

}  // namespace botdrift::sentiment
