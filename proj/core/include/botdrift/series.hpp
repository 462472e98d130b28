#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "botdrift/corpus.hpp"
#include "botdrift/features.hpp"

namespace botdrift::tsagg {

enum class MetaFeature : std::uint8_t {
    tweeting,
    retweeting,
    replying,
    urls,
    hashtags,
    duplicated,
    sentiment,
    languages,
    emojis,
    media,
};

inline constexpr std::array<MetaFeature, 10> kMetaFeatures = {
    MetaFeature::tweeting,   MetaFeature::retweeting, MetaFeature::replying,
    MetaFeature::urls,       MetaFeature::hashtags,   MetaFeature::duplicated,
    MetaFeature::sentiment,  MetaFeature::languages,  MetaFeature::emojis,
    MetaFeature::media,
};

inline constexpr std::size_t kMinSeriesLength = 4;

std::string_view to_string(MetaFeature m) noexcept;
std::optional<MetaFeature> parse_meta_feature(std::string_view s) noexcept;

/// Yearly counts over consecutive years. `name` is the meta-feature name or a
/// sentiment sub-series ("sentiment_positive", ...).
struct YearlySeries {
    std::string name;
    std::vector<int> years;
    std::vector<double> counts;

    [[nodiscard]] std::size_t size() const noexcept { return counts.size(); }
};

/// Pooled yearly counts of one meta-feature. Count features tally tweets
/// carrying at least one item; `sentiment` counts non-neutral tweets;
/// `languages` sums distinct codes per account per year. Records outside the
/// range are ignored. Throws Error(series_too_short) for fewer than 4 years.
YearlySeries build_yearly_series(const corpus::Corpus& corpus,
                                 std::span<const features::FeatureVector> vectors,
                                 MetaFeature meta, corpus::Interval year_range);

/// Positive, negative and neutral yearly counts, in that order.
std::array<YearlySeries, 3> build_sentiment_subseries(
    const corpus::Corpus& corpus, std::span<const features::FeatureVector> vectors,
    corpus::Interval year_range);

/// All ten meta-features followed by the three sentiment sub-series.
std::vector<YearlySeries> build_all_series(const corpus::Corpus& corpus,
                                           std::span<const features::FeatureVector> vectors,
                                           corpus::Interval year_range);

/// CSV: meta_feature, year, count.
void write_series_csv(std::ostream& out, std::span<const YearlySeries> series);
std::vector<YearlySeries> read_series_csv(const std::string& path);

}  // namespace botdrift::tsagg
