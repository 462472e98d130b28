#include "botdrift/features.hpp"

#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <unordered_map>

#include "botdrift/csv.hpp"
#include "botdrift/error.hpp"
#include "botdrift/parallel.hpp"
#include "botdrift/text.hpp"

namespace botdrift::features {

std::string name(Feature f) { return "F" + std::to_string(index(f) + 1); }

std::optional<Feature> parse_feature(std::string_view s) noexcept {
    if (s.size() < 2 || s.size() > 3 || s[0] != 'F') {
        return std::nullopt;
    }
    const auto v = csv::parse_int(s.substr(1));
    if (!v || *v < 1 || *v > static_cast<std::int64_t>(kFeatureCount)) {
        return std::nullopt;
    }
    if (s[1] == '0') {
        return std::nullopt;
    }
    return feature_at(static_cast<std::size_t>(*v - 1));
}

std::size_t family_of(Feature f) noexcept {
    const int i = static_cast<int>(index(f));
    for (std::size_t fam = 0; fam < kFamilies.size(); ++fam) {
        for (int member : kFamilies[fam]) {
            if (member == i) {
                return fam;
            }
        }
    }
    return kFamilies.size();
}

bool structurally_exclusive(Feature a, Feature b) noexcept {
    return a != b && family_of(a) == family_of(b);
}

const std::array<std::pair<Feature, Feature>, kPairCount>& all_pairs() {
    static const auto pairs = [] {
        std::array<std::pair<Feature, Feature>, kPairCount> out{};
        std::size_t k = 0;
        for (std::size_t i = 0; i < kFeatureCount; ++i) {
            for (std::size_t j = i + 1; j < kFeatureCount; ++j) {
                out[k++] = {feature_at(i), feature_at(j)};
            }
        }
        return out;
    }();
    return pairs;
}

bool FeatureVector::exclusive() const noexcept {
    for (const auto& fam : kFamilies) {
        int on = 0;
        for (int member : fam) {
            if (member >= 0 && f.test(static_cast<std::size_t>(member))) {
                ++on;
            }
        }
        if (on != 1) {
            return false;
        }
    }
    return true;
}

sentiment::Polarity polarity_of(const FeatureVector& v) noexcept {
    if (v[Feature::F12]) return sentiment::Polarity::positive;
    if (v[Feature::F13]) return sentiment::Polarity::negative;
    return sentiment::Polarity::neutral;
}

FeatureVector derive_feature_vector(const corpus::TweetRecord& record,
                                    const corpus::AccountProfile& profile, bool duplicated,
                                    topic::TopicClass topic_class, sentiment::Polarity polarity,
                                    double sentiment_score) {
    FeatureVector v;
    auto set = [&](Feature x) { v.f.set(index(x)); };

    // F1-F3 describe the account and are broadcast to each of its tweets.
    switch (profile.action_profile) {
        case corpus::ActionProfile::tweet_only: set(Feature::F1); break;
        case corpus::ActionProfile::retweet_only: set(Feature::F2); break;
        case corpus::ActionProfile::mixed: set(Feature::F3); break;
    }
    switch (topic_class) {
        case topic::TopicClass::single: set(Feature::F4); break;
        case topic::TopicClass::mixed: set(Feature::F5); break;
        case topic::TopicClass::infrequent: set(Feature::F6); break;
    }
    set(record.urls >= 1 ? Feature::F7 : Feature::F8);
    const std::size_t tags = record.hashtags.size();
    set(tags == 1 ? Feature::F9 : tags >= 2 ? Feature::F10 : Feature::F11);
    switch (polarity) {
        case sentiment::Polarity::positive: set(Feature::F12); break;
        case sentiment::Polarity::negative: set(Feature::F13); break;
        case sentiment::Polarity::neutral: set(Feature::F14); break;
    }
    set(record.emoji_count >= 1 ? Feature::F15 : Feature::F16);
    set(record.media != corpus::Media::none ? Feature::F17 : Feature::F18);

    v.sentiment_score = sentiment_score;
    v.topic_class = topic_class;
    v.duplicated = duplicated;
    if (!v.exclusive()) {
        fail(ErrorCode::internal, "feature families not exclusive for tweet " + record.tweet_id);
    }
    return v;
}

std::size_t count_languages(std::span<const corpus::TweetRecord* const> account_year_records) {
    std::set<std::string_view> codes;
    for (const auto* r : account_year_records) {
        if (r->language_hint) {
            codes.insert(*r->language_hint);
        }
    }
    return codes.size();
}

std::vector<FeatureVector> extract_features(const corpus::Corpus& corpus,
                                            const sentiment::Lexicon& lexicon,
                                            const ExtractionConfig& config, std::size_t threads) {
    std::map<std::string_view, std::vector<std::size_t>> by_account;
    for (std::size_t i = 0; i < corpus.records.size(); ++i) {
        by_account[corpus.records[i].account_id].push_back(i);
    }
    std::vector<const std::vector<std::size_t>*> accounts;
    accounts.reserve(by_account.size());
    for (const auto& [id, idx] : by_account) {
        accounts.push_back(&idx);
    }

    std::vector<FeatureVector> out(corpus.records.size());
    parallel_for(
        accounts.size(),
        [&](std::size_t a) {
            const auto& idx = *accounts[a];
            std::vector<text::NormalizedText> texts;
            texts.reserve(idx.size());
            for (std::size_t i : idx) {
                texts.push_back(text::normalize_text(corpus.records[i].text));
            }
            const auto dup = topic::mark_duplicates(texts);
            const auto topics = topic::assign_topic_class(texts, config.topic);
            const auto& profile = corpus.profile_of(corpus.records[idx.front()]);
            for (std::size_t k = 0; k < idx.size(); ++k) {
                const double score = sentiment::score_sentiment(texts[k], lexicon);
                out[idx[k]] = derive_feature_vector(corpus.records[idx[k]], profile, dup[k],
                                                    topics[k],
                                                    sentiment::classify_sentiment(score), score);
            }
        },
        threads);
    return out;
}

std::vector<std::string> dump_header() {
    std::vector<std::string> h{"tweet_id"};
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
        h.push_back(name(feature_at(i)));
    }
    h.insert(h.end(), {"sentiment_score", "topic_class", "duplicated"});
    return h;
}

void write_dump(std::ostream& out, const corpus::Corpus& corpus,
                std::span<const FeatureVector> vectors) {
    if (vectors.size() != corpus.records.size()) {
        fail(ErrorCode::internal, "feature table not aligned with corpus records");
    }
    csv::Writer w(out);
    w.row(dump_header());
    std::vector<std::string> row;
    for (std::size_t r = 0; r < vectors.size(); ++r) {
        row.clear();
        row.push_back(corpus.records[r].tweet_id);
        for (std::size_t i = 0; i < kFeatureCount; ++i) {
            row.push_back(vectors[r].f.test(i) ? "1" : "0");
        }
        row.push_back(csv::format_number(vectors[r].sentiment_score));
        row.emplace_back(topic::to_string(vectors[r].topic_class));
        row.push_back(csv::format_bool(vectors[r].duplicated));
        w.row(row);
    }
}

std::vector<FeatureVector> read_dump(const std::string& path, const corpus::Corpus& corpus) {
    const csv::Table table = csv::read_file(path);
    if (table.header != dump_header()) {
        fail(ErrorCode::schema, path + ": feature dump header mismatch");
    }
    std::unordered_map<std::string_view, std::size_t> position;
    for (std::size_t i = 0; i < corpus.records.size(); ++i) {
        position.emplace(corpus.records[i].tweet_id, i);
    }
    std::vector<FeatureVector> out(corpus.records.size());
    std::vector<bool> filled(corpus.records.size(), false);
    for (const auto& row : table.rows) {
        auto bad = [&](const std::string& why) {
            fail(ErrorCode::schema, path + ":" + std::to_string(row.line) + ": " + why);
        };
        if (row.fields.size() != table.header.size()) {
            bad("wrong column count");
        }
        auto it = position.find(row.fields[0]);
        if (it == position.end()) {
            bad("tweet_id " + row.fields[0] + " not in corpus");
        }
        FeatureVector v;
        for (std::size_t i = 0; i < kFeatureCount; ++i) {
            const auto& cell = row.fields[1 + i];
            if (cell != "0" && cell != "1") {
                bad("feature cell must be 0 or 1");
            }
            v.f.set(i, cell == "1");
        }
        const auto score = csv::parse_double(row.fields[1 + kFeatureCount]);
        if (!score) {
            bad("bad sentiment_score");
        }
        v.sentiment_score = *score;
        const std::string& tc = row.fields[2 + kFeatureCount];
        if (tc == "single") {
            v.topic_class = topic::TopicClass::single;
        } else if (tc == "mixed") {
            v.topic_class = topic::TopicClass::mixed;
        } else if (tc == "infrequent") {
            v.topic_class = topic::TopicClass::infrequent;
        } else {
            bad("bad topic_class");
        }
        const auto dup = csv::parse_bool(row.fields[3 + kFeatureCount]);
        if (!dup) {
            bad("bad duplicated flag");
        }
        v.duplicated = *dup;
        if (!v.exclusive()) {
            bad("feature families not exclusive");
        }
        if (filled[it->second]) {
            bad("duplicate tweet_id");
        }
        filled[it->second] = true;
        out[it->second] = v;
    }
    for (std::size_t i = 0; i < filled.size(); ++i) {
        if (!filled[i]) {
            fail(ErrorCode::schema, path + ": no features for tweet " + corpus.records[i].tweet_id);
        }
    }
    return out;
}

}  // namespace botdrift::features
