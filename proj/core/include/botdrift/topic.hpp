#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "botdrift/text.hpp"

namespace botdrift::topic {

enum class TopicClass : std::uint8_t { single, mixed, infrequent };

std::string_view to_string(TopicClass c) noexcept;

/// A record is duplicated iff its cleaned text is nonempty and equals the
/// cleaned text of at least one other record in the same account.
std::vector<bool> mark_duplicates(std::span<const text::NormalizedText> account_texts);

struct TopicParams {
    double theta = 0.7;  // Jaccard threshold, (0, 1]
    std::size_t k = 3;   // minimum cluster size for `single`
};

/// Word 2-shingles; a one-token text uses its token as the only shingle and
/// empty text has none. Sorted and deduplicated.
std::vector<std::string> shingles(std::string_view cleaned);

/// |A ∩ B| / |A ∪ B| over sorted unique shingle sets; 0 when either is empty.
double jaccard(std::span<const std::string> a, std::span<const std::string> b);

/// Single-linkage clustering at Jaccard >= theta; cluster size >= k is
/// `single`, [2, k) is `mixed`, singletons are `infrequent`.
std::vector<TopicClass> assign_topic_class(std::span<const text::NormalizedText> account_texts,
                                           const TopicParams& params = {});

}  // namespace botdrift::topic
