#include "botdrift/series.hpp"

#include <map>
#include <ostream>
#include <set>

#include "botdrift/csv.hpp"
#include "botdrift/error.hpp"

namespace botdrift::tsagg {

namespace {

constexpr std::array<std::string_view, kMetaFeatures.size()> kNames = {
    "tweeting", "retweeting", "replying", "urls",   "hashtags",
    "duplicated", "sentiment", "languages", "emojis", "media",
};

void check_inputs(const corpus::Corpus& corpus, std::span<const features::FeatureVector> vectors,
                  corpus::Interval year_range) {
    if (vectors.size() != corpus.records.size()) {
        fail(ErrorCode::precondition, "feature vectors not aligned with corpus records");
    }
    if (year_range.last < year_range.first ||
        static_cast<std::size_t>(year_range.length()) < kMinSeriesLength) {
        fail(ErrorCode::series_too_short,
             "year range " + std::to_string(year_range.first) + "-" +
                 std::to_string(year_range.last) + " is shorter than " +
                 std::to_string(kMinSeriesLength) + " years");
    }
}

YearlySeries empty_series(std::string name, corpus::Interval range) {
    YearlySeries s;
    s.name = std::move(name);
    for (int y = range.first; y <= range.last; ++y) {
        s.years.push_back(y);
    }
    s.counts.assign(s.years.size(), 0.0);
    return s;
}

bool qualifies(MetaFeature meta, const corpus::TweetRecord& r, const features::FeatureVector& v) {
    switch (meta) {
        case MetaFeature::tweeting: return r.action == corpus::Action::original;
        case MetaFeature::retweeting: return r.action == corpus::Action::retweet;
        case MetaFeature::replying: return r.action == corpus::Action::reply;
        case MetaFeature::urls: return r.urls >= 1;
        case MetaFeature::hashtags: return !r.hashtags.empty();
        case MetaFeature::duplicated: return v.duplicated;
        case MetaFeature::sentiment:
            return features::polarity_of(v) != sentiment::Polarity::neutral;
        case MetaFeature::emojis: return r.emoji_count >= 1;
        case MetaFeature::media: return r.media != corpus::Media::none;
        case MetaFeature::languages: break;
    }
    return false;
}

}  // namespace

std::string_view to_string(MetaFeature m) noexcept { return kNames[static_cast<std::size_t>(m)]; }

std::optional<MetaFeature> parse_meta_feature(std::string_view s) noexcept {
    for (std::size_t i = 0; i < kNames.size(); ++i) {
        if (kNames[i] == s) {
            return kMetaFeatures[i];
        }
    }
    return std::nullopt;
}

YearlySeries build_yearly_series(const corpus::Corpus& corpus,
                                 std::span<const features::FeatureVector> vectors,
                                 MetaFeature meta, corpus::Interval year_range) {
    check_inputs(corpus, vectors, year_range);
    YearlySeries s = empty_series(std::string(to_string(meta)), year_range);

    if (meta == MetaFeature::languages) {
        std::map<std::pair<int, std::string_view>, std::set<std::string_view>> codes;
        for (const auto& r : corpus.records) {
            if (r.language_hint && year_range.contains(r.created_at.year)) {
                codes[{r.created_at.year, r.account_id}].insert(*r.language_hint);
            }
        }
        for (const auto& [key, set] : codes) {
            s.counts[static_cast<std::size_t>(key.first - year_range.first)] +=
                static_cast<double>(set.size());
        }
        return s;
    }

    for (std::size_t i = 0; i < corpus.records.size(); ++i) {
        const auto& r = corpus.records[i];
        if (year_range.contains(r.created_at.year) && qualifies(meta, r, vectors[i])) {
            s.counts[static_cast<std::size_t>(r.created_at.year - year_range.first)] += 1.0;
        }
    }
    return s;
}

std::array<YearlySeries, 3> build_sentiment_subseries(
    const corpus::Corpus& corpus, std::span<const features::FeatureVector> vectors,
    corpus::Interval year_range) {
    check_inputs(corpus, vectors, year_range);
    std::array<YearlySeries, 3> out = {empty_series("sentiment_positive", year_range),
                                       empty_series("sentiment_negative", year_range),
                                       empty_series("sentiment_neutral", year_range)};
    for (std::size_t i = 0; i < corpus.records.size(); ++i) {
        const int year = corpus.records[i].created_at.year;
        if (!year_range.contains(year)) {
            continue;
        }
        const auto slot = static_cast<std::size_t>(features::polarity_of(vectors[i]));
        out[slot].counts[static_cast<std::size_t>(year - year_range.first)] += 1.0;
    }
    return out;
}

std::vector<YearlySeries> build_all_series(const corpus::Corpus& corpus,
                                           std::span<const features::FeatureVector> vectors,
                                           corpus::Interval year_range) {
    std::vector<YearlySeries> out;
    for (MetaFeature m : kMetaFeatures) {
        out.push_back(build_yearly_series(corpus, vectors, m, year_range));
    }
    for (auto& s : build_sentiment_subseries(corpus, vectors, year_range)) {
        out.push_back(std::move(s));
    }
    return out;
}

void write_series_csv(std::ostream& out, std::span<const YearlySeries> series) {
    csv::Writer w(out);
    w.row({"meta_feature", "year", "count"});
    for (const auto& s : series) {
        for (std::size_t t = 0; t < s.size(); ++t) {
            w.row({s.name, std::to_string(s.years[t]), csv::format_number(s.counts[t])});
        }
    }
}

std::vector<YearlySeries> read_series_csv(const std::string& path) {
    const csv::Table table = csv::read_file(path);
    if (table.header != std::vector<std::string>{"meta_feature", "year", "count"}) {
        fail(ErrorCode::schema, path + ": series header mismatch");
    }
    std::vector<YearlySeries> out;
    std::map<std::string, std::size_t> slot;
    for (const auto& row : table.rows) {
        auto bad = [&](const std::string& why) {
            fail(ErrorCode::schema, path + ":" + std::to_string(row.line) + ": " + why);
        };
        if (row.fields.size() != 3) {
            bad("wrong column count");
        }
        const auto year = csv::parse_int(row.fields[1]);
        const auto count = csv::parse_double(row.fields[2]);
        if (!year || !count || *count < 0.0) {
            bad("bad year or count");
        }
        auto [it, fresh] = slot.emplace(row.fields[0], out.size());
        if (fresh) {
            out.push_back(YearlySeries{row.fields[0], {}, {}});
        }
        auto& s = out[it->second];
        if (!s.years.empty() && *year != s.years.back() + 1) {
            bad("years of " + s.name + " are not consecutive");
        }
        s.years.push_back(static_cast<int>(*year));
        s.counts.push_back(*count);
    }
    return out;
}

}  // namespace botdrift::tsagg
