#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "botdrift/corpus.hpp"
#include "botdrift/features.hpp"
#include "botdrift/series.hpp"

namespace botdrift::tsagg {

enum class Scheme : std::uint8_t { generation, age_class };

std::string_view to_string(Scheme s) noexcept;

/// Mean and median of a per-account quantity.
struct AccountStat {
    double mean = 0.0;
    double median = 0.0;
};

struct SentimentShares {
    double neutral = 0.0;
    double positive = 0.0;
    double negative = 0.0;
};

struct StratumSummary {
    std::string stratum;       // "G1".."G3", "short".."long", or "outside"
    bool zero_population = true;
    std::size_t accounts = 0;
    std::size_t tweets = 0;

    /// Lifetime per-account counts, keyed by meta-feature (languages = distinct codes).
    std::array<AccountStat, kMetaFeatures.size()> per_account{};

    // Shares pooled over the stratum's tweets.
    double url_share = 0.0;
    double hashtag_share = 0.0;
    double media_share = 0.0;
    double emoji_share = 0.0;
    double duplicated_share = 0.0;
    double empty_text_share = 0.0;
    SentimentShares sentiment;

    // The same shares averaged per account (each account weighted equally).
    double url_share_account_mean = 0.0;
    double hashtag_share_account_mean = 0.0;
    double media_share_account_mean = 0.0;
    double emoji_share_account_mean = 0.0;
    double duplicated_share_account_mean = 0.0;
    SentimentShares sentiment_account_mean;

    double mean_languages_per_account = 0.0;
    std::pair<std::size_t, std::size_t> language_range{0, 0};       // per account
    std::pair<std::size_t, std::size_t> hashtag_count_range{0, 0};  // per hashtagged post
    double mean_emojis_per_emoji_post = 0.0;
    std::size_t image_posts = 0;   // media image or both
    std::size_t video_posts = 0;   // media video or both
    std::vector<std::pair<std::string, std::size_t>> top_hashtags;
};

/// One summary per non-outside stratum in G1,G2,G3 / short,mid,long order.
/// `outside` accounts are summarised separately by summarize_outside.
std::vector<StratumSummary> summarize_stratum(const corpus::Corpus& corpus,
                                              std::span<const features::FeatureVector> vectors,
                                              Scheme scheme, std::size_t top_k = 30);

StratumSummary summarize_outside(const corpus::Corpus& corpus,
                                 std::span<const features::FeatureVector> vectors, Scheme scheme,
                                 std::size_t top_k = 30);

/// Most frequent hashtags (per occurrence) of the stratum, count desc then tag asc.
/// An empty stratum label selects every account.
std::vector<std::pair<std::string, std::size_t>> top_hashtags(
    const corpus::Corpus& corpus, Scheme scheme, std::optional<std::string> stratum,
    std::size_t k);

/// Stratum label of an account under a scheme ("outside" included).
std::string stratum_of(const corpus::AccountProfile& p, Scheme scheme);

/// JSON document: {"scheme":..., "strata":[...], "outside":{...}}.
std::string summaries_to_json(Scheme scheme, std::span<const StratumSummary> strata,
                              const StratumSummary& outside);

}  // namespace botdrift::tsagg
