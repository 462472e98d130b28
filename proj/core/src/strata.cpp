#include "botdrift/strata.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include <json.hpp>

#include "botdrift/error.hpp"

namespace botdrift::tsagg {

using nlohmann::ordered_json;

namespace {

struct AccountTally {
    std::array<double, kMetaFeatures.size()> counts{};
    std::set<std::string_view> languages;
    std::size_t tweets = 0;
    std::size_t positive = 0;
    std::size_t negative = 0;
};

double median(std::vector<double> v) {
    if (v.empty()) {
        return 0.0;
    }
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double ratio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

StratumSummary summarize_label(const corpus::Corpus& corpus,
                               std::span<const features::FeatureVector> vectors, Scheme scheme,
                               const std::string& label, std::size_t top_k) {
    if (vectors.size() != corpus.records.size()) {
        fail(ErrorCode::precondition, "feature vectors not aligned with corpus records");
    }
    StratumSummary s;
    s.stratum = label;

    // Accounts keyed by id so the result does not depend on record order.
    std::map<std::string_view, AccountTally> tally;
    for (const auto& [id, profile] : corpus.profiles) {
        if (stratum_of(profile, scheme) == label) {
            tally.try_emplace(profile.account_id);
        }
    }
    if (tally.empty()) {
        return s;
    }

    std::size_t url = 0, tagged = 0, media = 0, emoji = 0, dup = 0, empty_text = 0;
    std::size_t pos = 0, neg = 0, emoji_total = 0;
    std::size_t tag_min = 0, tag_max = 0;
    bool any_tagged = false;
    for (std::size_t i = 0; i < corpus.records.size(); ++i) {
        const auto& r = corpus.records[i];
        auto it = tally.find(r.account_id);
        if (it == tally.end()) {
            continue;
        }
        const auto& v = vectors[i];
        auto& a = it->second;
        ++a.tweets;
        ++s.tweets;
        for (std::size_t m = 0; m < kMetaFeatures.size(); ++m) {
            const MetaFeature meta = kMetaFeatures[m];
            bool hit = false;
            switch (meta) {
                case MetaFeature::tweeting: hit = r.action == corpus::Action::original; break;
                case MetaFeature::retweeting: hit = r.action == corpus::Action::retweet; break;
                case MetaFeature::replying: hit = r.action == corpus::Action::reply; break;
                case MetaFeature::urls: hit = r.urls >= 1; break;
                case MetaFeature::hashtags: hit = !r.hashtags.empty(); break;
                case MetaFeature::duplicated: hit = v.duplicated; break;
                case MetaFeature::sentiment:
                    hit = features::polarity_of(v) != sentiment::Polarity::neutral;
                    break;
                case MetaFeature::emojis: hit = r.emoji_count >= 1; break;
                case MetaFeature::media: hit = r.media != corpus::Media::none; break;
                case MetaFeature::languages: break;
            }
            if (hit) {
                a.counts[m] += 1.0;
            }
        }
        if (r.language_hint) {
            a.languages.insert(*r.language_hint);
        }
        const auto pol = features::polarity_of(v);
        a.positive += pol == sentiment::Polarity::positive;
        a.negative += pol == sentiment::Polarity::negative;
        pos += pol == sentiment::Polarity::positive;
        neg += pol == sentiment::Polarity::negative;

        url += r.urls >= 1;
        media += r.media != corpus::Media::none;
        dup += v.duplicated;
        if (r.emoji_count >= 1) {
            ++emoji;
            emoji_total += static_cast<std::size_t>(r.emoji_count);
        }
        if (!r.hashtags.empty()) {
            ++tagged;
            const std::size_t n = r.hashtags.size();
            tag_min = any_tagged ? std::min(tag_min, n) : n;
            tag_max = any_tagged ? std::max(tag_max, n) : n;
            any_tagged = true;
        }
        s.image_posts += r.media == corpus::Media::image || r.media == corpus::Media::both;
        s.video_posts += r.media == corpus::Media::video || r.media == corpus::Media::both;
    }
    for (std::size_t i = 0; i < corpus.records.size(); ++i) {
        if (tally.count(corpus.records[i].account_id) != 0 &&
            text::normalize_text(corpus.records[i].text).is_empty) {
            ++empty_text;
        }
    }

    s.zero_population = false;
    s.accounts = tally.size();
    const auto n = static_cast<double>(s.tweets);
    s.url_share = ratio(url, n);
    s.hashtag_share = ratio(tagged, n);
    s.media_share = ratio(media, n);
    s.emoji_share = ratio(emoji, n);
    s.duplicated_share = ratio(dup, n);
    s.empty_text_share = ratio(empty_text, n);
    if (s.tweets > 0) {
        s.sentiment.positive = ratio(pos, n);
        s.sentiment.negative = ratio(neg, n);
        s.sentiment.neutral = 1.0 - s.sentiment.positive - s.sentiment.negative;
    }
    s.hashtag_count_range = {tag_min, tag_max};
    s.mean_emojis_per_emoji_post = ratio(static_cast<double>(emoji_total), emoji);

    const auto languages_slot = static_cast<std::size_t>(MetaFeature::languages);
    std::array<std::vector<double>, kMetaFeatures.size()> per_account;
    std::size_t lang_min = 0, lang_max = 0;
    bool first = true;
    std::size_t with_tweets = 0;
    for (auto& [id, a] : tally) {
        a.counts[languages_slot] = static_cast<double>(a.languages.size());
        for (std::size_t m = 0; m < kMetaFeatures.size(); ++m) {
            per_account[m].push_back(a.counts[m]);
        }
        const std::size_t langs = a.languages.size();
        lang_min = first ? langs : std::min(lang_min, langs);
        lang_max = first ? langs : std::max(lang_max, langs);
        first = false;
        if (a.tweets == 0) {
            continue;
        }
        ++with_tweets;
        const auto t = static_cast<double>(a.tweets);
        s.url_share_account_mean += a.counts[static_cast<std::size_t>(MetaFeature::urls)] / t;
        s.hashtag_share_account_mean +=
            a.counts[static_cast<std::size_t>(MetaFeature::hashtags)] / t;
        s.media_share_account_mean += a.counts[static_cast<std::size_t>(MetaFeature::media)] / t;
        s.emoji_share_account_mean += a.counts[static_cast<std::size_t>(MetaFeature::emojis)] / t;
        s.duplicated_share_account_mean +=
            a.counts[static_cast<std::size_t>(MetaFeature::duplicated)] / t;
        s.sentiment_account_mean.positive += static_cast<double>(a.positive) / t;
        s.sentiment_account_mean.negative += static_cast<double>(a.negative) / t;
    }
    if (with_tweets > 0) {
        const auto k = static_cast<double>(with_tweets);
        s.url_share_account_mean /= k;
        s.hashtag_share_account_mean /= k;
        s.media_share_account_mean /= k;
        s.emoji_share_account_mean /= k;
        s.duplicated_share_account_mean /= k;
        s.sentiment_account_mean.positive /= k;
        s.sentiment_account_mean.negative /= k;
        s.sentiment_account_mean.neutral =
            1.0 - s.sentiment_account_mean.positive - s.sentiment_account_mean.negative;
    }
    for (std::size_t m = 0; m < kMetaFeatures.size(); ++m) {
        double sum = 0.0;
        for (double x : per_account[m]) {
            sum += x;
        }
        s.per_account[m].mean = sum / static_cast<double>(per_account[m].size());
        s.per_account[m].median = median(per_account[m]);
    }
    s.mean_languages_per_account = s.per_account[languages_slot].mean;
    s.language_range = {lang_min, lang_max};
    s.top_hashtags = top_hashtags(corpus, scheme, label, top_k);
    return s;
}

ordered_json stat_json(const AccountStat& a) {
    return ordered_json{{"mean", a.mean}, {"median", a.median}};
}

ordered_json shares_json(const SentimentShares& s) {
    return ordered_json{{"neutral", s.neutral}, {"positive", s.positive}, {"negative", s.negative}};
}

ordered_json summary_json(const StratumSummary& s) {
    ordered_json j;
    j["stratum"] = s.stratum;
    j["zero_population"] = s.zero_population;
    j["accounts"] = s.accounts;
    j["tweets"] = s.tweets;
    ordered_json per = ordered_json::object();
    for (std::size_t m = 0; m < kMetaFeatures.size(); ++m) {
        per[std::string(to_string(kMetaFeatures[m]))] = stat_json(s.per_account[m]);
    }
    j["per_account"] = per;
    j["pooled_shares"] = {
        {"url", s.url_share},
        {"hashtag", s.hashtag_share},
        {"media", s.media_share},
        {"emoji", s.emoji_share},
        {"duplicated", s.duplicated_share},
        {"empty_text", s.empty_text_share},
        {"sentiment", shares_json(s.sentiment)},
    };
    j["account_mean_shares"] = {
        {"url", s.url_share_account_mean},
        {"hashtag", s.hashtag_share_account_mean},
        {"media", s.media_share_account_mean},
        {"emoji", s.emoji_share_account_mean},
        {"duplicated", s.duplicated_share_account_mean},
        {"sentiment", shares_json(s.sentiment_account_mean)},
    };
    j["mean_languages_per_account"] = s.mean_languages_per_account;
    j["language_range"] = {s.language_range.first, s.language_range.second};
    j["hashtag_count_range"] = {s.hashtag_count_range.first, s.hashtag_count_range.second};
    j["mean_emojis_per_emoji_post"] = s.mean_emojis_per_emoji_post;
    j["image_posts"] = s.image_posts;
    j["video_posts"] = s.video_posts;
    ordered_json tags = ordered_json::array();
    for (const auto& [tag, count] : s.top_hashtags) {
        tags.push_back({{"tag", tag}, {"count", count}});
    }
    j["top_hashtags"] = tags;
    return j;
}

}  // namespace

std::string_view to_string(Scheme s) noexcept {
    return s == Scheme::generation ? "generation" : "age_class";
}

std::string stratum_of(const corpus::AccountProfile& p, Scheme scheme) {
    return std::string(scheme == Scheme::generation ? corpus::to_string(p.generation)
                                                    : corpus::to_string(p.age_class));
}

std::vector<StratumSummary> summarize_stratum(const corpus::Corpus& corpus,
                                              std::span<const features::FeatureVector> vectors,
                                              Scheme scheme, std::size_t top_k) {
    std::vector<StratumSummary> out;
    if (scheme == Scheme::generation) {
        for (auto g : corpus::kGenerations) {
            out.push_back(summarize_label(corpus, vectors, scheme,
                                          std::string(corpus::to_string(g)), top_k));
        }
    } else {
        for (auto c : corpus::kAgeClasses) {
            out.push_back(summarize_label(corpus, vectors, scheme,
                                          std::string(corpus::to_string(c)), top_k));
        }
    }
    return out;
}

StratumSummary summarize_outside(const corpus::Corpus& corpus,
                                 std::span<const features::FeatureVector> vectors, Scheme scheme,
                                 std::size_t top_k) {
    return summarize_label(corpus, vectors, scheme, "outside", top_k);
}

std::vector<std::pair<std::string, std::size_t>> top_hashtags(const corpus::Corpus& corpus,
                                                              Scheme scheme,
                                                              std::optional<std::string> stratum,
                                                              std::size_t k) {
    if (k == 0) {
        fail(ErrorCode::precondition, "top_hashtags needs k >= 1");
    }
    std::unordered_map<std::string, bool> member;
    std::map<std::string, std::size_t> hist;
    for (const auto& r : corpus.records) {
        if (stratum && !stratum->empty()) {
            auto [it, fresh] = member.try_emplace(r.account_id, false);
            if (fresh) {
                it->second = stratum_of(corpus.profile_of(r), scheme) == *stratum;
            }
            if (!it->second) {
                continue;
            }
        }
        for (const auto& tag : r.hashtags) {
            ++hist[tag];
        }
    }
    std::vector<std::pair<std::string, std::size_t>> out(hist.begin(), hist.end());
    std::stable_sort(out.begin(), out.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    if (out.size() > k) {
        out.resize(k);
    }
    return out;
}

std::string summaries_to_json(Scheme scheme, std::span<const StratumSummary> strata,
                              const StratumSummary& outside) {
    ordered_json doc;
    doc["scheme"] = std::string(to_string(scheme));
    ordered_json arr = ordered_json::array();
    for (const auto& s : strata) {
        arr.push_back(summary_json(s));
    }
    doc["strata"] = arr;
    doc["outside"] = summary_json(outside);
    return doc.dump(2) + "\n";
}

}  // namespace botdrift::tsagg
