#pragma once

#include <array>
#include <bitset>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "botdrift/corpus.hpp"
#include "botdrift/sentiment.hpp"
#include "botdrift/topic.hpp"

namespace botdrift::features {

inline constexpr std::size_t kFeatureCount = 18;
inline constexpr std::size_t kPairCount = kFeatureCount * (kFeatureCount - 1) / 2;  // 153

/// Binary behavioural feature, F1..F18. Values are zero-based slot indices.
enum class Feature : std::uint8_t {
    F1, F2, F3,       // tweet only / retweet only / tweet and retweet (account level)
    F4, F5, F6,       // single-topic / mixed-topic / topic-infrequent
    F7, F8,           // URL / no URL
    F9, F10, F11,     // one hashtag / two or more / none
    F12, F13, F14,    // positive / negative / neutral sentiment
    F15, F16,         // emoji / no emoji
    F17, F18,         // media / no media
};

constexpr std::size_t index(Feature f) noexcept { return static_cast<std::size_t>(f); }
constexpr Feature feature_at(std::size_t i) noexcept { return static_cast<Feature>(i); }

std::string name(Feature f);  // "F1".."F18"
std::optional<Feature> parse_feature(std::string_view s) noexcept;

/// Mutually exclusive groups; exactly one member of each is true per tweet.
inline constexpr std::array<std::array<int, 3>, 7> kFamilies = {{
    {0, 1, 2}, {3, 4, 5}, {6, 7, -1}, {8, 9, 10}, {11, 12, 13}, {14, 15, -1}, {16, 17, -1},
}};

/// Family index of a feature (0..6).
std::size_t family_of(Feature f) noexcept;

/// Both features belong to one family, so they can never co-occur.
bool structurally_exclusive(Feature a, Feature b) noexcept;

/// The 153 unordered pairs (i < j) in row-major order.
const std::array<std::pair<Feature, Feature>, kPairCount>& all_pairs();

struct FeatureVector {
    std::bitset<kFeatureCount> f;
    double sentiment_score = 0.0;
    topic::TopicClass topic_class = topic::TopicClass::infrequent;
    bool duplicated = false;

    [[nodiscard]] bool operator[](Feature x) const { return f.test(index(x)); }

    /// Each of the seven families has exactly one true member.
    [[nodiscard]] bool exclusive() const noexcept;

    friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

sentiment::Polarity polarity_of(const FeatureVector& v) noexcept;

/// Maps one tweet's inputs onto F1..F18. Throws Error(internal) if the result
/// violates family exclusivity.
FeatureVector derive_feature_vector(const corpus::TweetRecord& record,
                                    const corpus::AccountProfile& profile, bool duplicated,
                                    topic::TopicClass topic_class, sentiment::Polarity polarity,
                                    double sentiment_score = 0.0);

/// Distinct language hints among records of one account in one year.
std::size_t count_languages(std::span<const corpus::TweetRecord* const> account_year_records);

struct ExtractionConfig {
    topic::TopicParams topic;
};

/// Per-tweet vectors aligned index-for-index with corpus.records. Accounts are
/// processed independently (in parallel when threads > 1).
std::vector<FeatureVector> extract_features(const corpus::Corpus& corpus,
                                            const sentiment::Lexicon& lexicon,
                                            const ExtractionConfig& config = {},
                                            std::size_t threads = 1);

/// CSV: tweet_id, F1..F18, sentiment_score, topic_class, duplicated.
std::vector<std::string> dump_header();
void write_dump(std::ostream& out, const corpus::Corpus& corpus,
                std::span<const FeatureVector> vectors);

/// Reads a dump and realigns it to corpus.records by tweet_id. Throws
/// Error(schema) on a bad header or a tweet_id set that does not match.
std::vector<FeatureVector> read_dump(const std::string& path, const corpus::Corpus& corpus);

}  // namespace botdrift::features
