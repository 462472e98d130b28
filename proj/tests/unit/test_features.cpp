#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "botdrift/error.hpp"
#include "botdrift/features.hpp"
#include "fixtures.hpp"

using namespace botdrift;
using namespace botdrift::features;
using corpus::AccountProfile;
using corpus::ActionProfile;
using sentiment::Polarity;
using topic::TopicClass;

namespace {

AccountProfile profile(ActionProfile p) {
    AccountProfile a;
    a.account_id = "a";
    a.first_year = 2010;
    a.last_year = 2010;
    a.lifespan_years = 1;
    a.action_profile = p;
    return a;
}

}  // namespace

TEST_SUITE("featurex.vector") {

TEST_CASE("names and families") {
    CHECK(name(Feature::F1) == "F1");
    CHECK(name(Feature::F18) == "F18");
    CHECK(parse_feature("F10") == Feature::F10);
    CHECK_FALSE(parse_feature("F19").has_value());
    CHECK_FALSE(parse_feature("f1").has_value());
    CHECK(structurally_exclusive(Feature::F7, Feature::F8));
    CHECK(structurally_exclusive(Feature::F12, Feature::F14));
    CHECK_FALSE(structurally_exclusive(Feature::F10, Feature::F17));
    CHECK(all_pairs().size() == 153);
    std::set<std::pair<Feature, Feature>> seen(all_pairs().begin(), all_pairs().end());
    CHECK(seen.size() == 153);
    for (const auto& [a, b] : all_pairs()) CHECK(index(a) < index(b));
}

TEST_CASE("hand-mapped original-only tweet") {
    auto r = fixtures::tweet("1", "a", 2010);
    r.urls = 1;
    const auto v = derive_feature_vector(r, profile(ActionProfile::tweet_only), false,
                                         TopicClass::infrequent, Polarity::neutral);
    std::set<Feature> on;
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
        if (v.f.test(i)) on.insert(feature_at(i));
    }
    CHECK(on == std::set<Feature>{Feature::F1, Feature::F6, Feature::F7, Feature::F11,
                                  Feature::F14, Feature::F16, Feature::F18});
    CHECK(v.exclusive());
}

TEST_CASE("two hashtags set F10 only") {
    auto r = fixtures::tweet("1", "a", 2010);
    r.hashtags = {"a", "b"};
    const auto v = derive_feature_vector(r, profile(ActionProfile::mixed), false,
                                         TopicClass::single, Polarity::positive);
    CHECK(v[Feature::F10]);
    CHECK_FALSE(v[Feature::F9]);
    CHECK_FALSE(v[Feature::F11]);
    CHECK(v[Feature::F3]);
    CHECK(v[Feature::F4]);
    CHECK(v[Feature::F12]);
}

TEST_CASE("retweet-only account broadcasts F2 to every tweet") {
    std::vector<corpus::TweetRecord> recs;
    for (int i = 0; i < 5; ++i) {
        recs.push_back(fixtures::tweet("t" + std::to_string(i), "rt", 2011 + i,
                                       corpus::Action::retweet, "RT @x: item " + std::to_string(i)));
    }
    const auto c = corpus::make_corpus(recs);
    const auto vecs = extract_features(c, sentiment::Lexicon::bundled());
    for (const auto& v : vecs) {
        CHECK(v[Feature::F2]);
        CHECK(v.exclusive());
    }
}

TEST_CASE("count_languages") {
    auto mk = [](std::optional<std::string> l) {
        auto r = fixtures::tweet("x", "a", 2010);
        r.language_hint = std::move(l);
        return r;
    };
    std::vector<corpus::TweetRecord> a = {mk("en"), mk("en"), mk("es")};
    std::vector<const corpus::TweetRecord*> pa;
    for (auto& r : a) pa.push_back(&r);
    CHECK(count_languages(pa) == 2);

    std::vector<corpus::TweetRecord> b = {mk(std::nullopt), mk(std::nullopt)};
    std::vector<const corpus::TweetRecord*> pb;
    for (auto& r : b) pb.push_back(&r);
    CHECK(count_languages(pb) == 0);

    std::vector<corpus::TweetRecord> c;
    for (int i = 0; i < 31; ++i) {
        c.push_back(mk(std::string{static_cast<char>('a' + i / 26), static_cast<char>('a' + i % 26)}));
    }
    std::vector<const corpus::TweetRecord*> pc;
    for (auto& r : c) pc.push_back(&r);
    CHECK(count_languages(pc) == 31);
}

TEST_CASE("family exclusivity on generated corpora") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto c = corpus::make_corpus(synth::generate(fixtures::small_spec(seed, 6)));
        const auto vecs = extract_features(c, sentiment::Lexicon::bundled(), {}, 4);
        REQUIRE(vecs.size() == c.records.size());
        for (const auto& v : vecs) {
            for (const auto& fam : kFamilies) {
                int on = 0;
                for (int slot : fam) {
                    if (slot >= 0 && v.f.test(static_cast<std::size_t>(slot))) ++on;
                }
                CHECK(on == 1);
            }
        }
    }
}

TEST_CASE("extraction does not depend on thread count") {
    const auto c = corpus::make_corpus(synth::generate(fixtures::small_spec(9, 8)));
    const auto one = extract_features(c, sentiment::Lexicon::bundled(), {}, 1);
    const auto many = extract_features(c, sentiment::Lexicon::bundled(), {}, 8);
    CHECK(one == many);
}

TEST_CASE("feature dump round-trips") {
    const auto c = corpus::make_corpus(synth::generate(fixtures::small_spec(4, 4)));
    const auto vecs = extract_features(c, sentiment::Lexicon::bundled());
    const auto dir = fixtures::scratch_dir("dump");
    std::ostringstream out;
    write_dump(out, c, vecs);
    fixtures::write_text(dir / "features.csv", out.str());
    const auto back = read_dump((dir / "features.csv").string(), c);
    REQUIRE(back.size() == vecs.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        CHECK(back[i].f == vecs[i].f);
        CHECK(back[i].topic_class == vecs[i].topic_class);
        CHECK(back[i].duplicated == vecs[i].duplicated);
        CHECK(back[i].sentiment_score == vecs[i].sentiment_score);
    }
    fixtures::write_text(dir / "bad.csv", "tweet_id,F1\n");
    CHECK_THROWS_AS(read_dump((dir / "bad.csv").string(), c), Error);
}

}
