#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "botdrift/error.hpp"
#include "botdrift/sentiment.hpp"
#include "botdrift/text.hpp"
#include "botdrift/topic.hpp"

using namespace botdrift;

namespace {

std::string random_text(std::mt19937_64& rng) {
    static const std::vector<std::string> parts = {
        "Buy",  "NOW",   "  ",    "\t",    "http://x.co/a", "www.foo.org", "ÀÉÎ", "ΣΑΣ",
        "Привет", "😀",  " ", "　", "https://t.co",  "#Tag",        "@bob", "a\nb",
        "ẞ",    "end.",  "MiXeD", "  x  "};
    std::uniform_int_distribution<std::size_t> len(0, 12);
    std::uniform_int_distribution<std::size_t> pick(0, parts.size() - 1);
    std::string s;
    for (std::size_t i = len(rng); i > 0; --i) {
        s += parts[pick(rng)];
        if (rng() % 2) s += ' ';
    }
    return s;
}

std::vector<text::NormalizedText> norm_all(const std::vector<std::string>& raw) {
    std::vector<text::NormalizedText> out;
    for (const auto& r : raw) out.push_back(text::normalize_text(r));
    return out;
}

}  // namespace

TEST_SUITE("featurex.text") {

TEST_CASE("normalize_text examples") {
    const auto e = text::normalize_text("");
    CHECK(e.cleaned.empty());
    CHECK(e.is_empty);
    CHECK(text::normalize_text("Buy NOW  http://x.co").cleaned == "buy now");
    CHECK(text::normalize_text("  Héllo WORLD  www.a.b ").cleaned == "héllo world");
    CHECK(text::normalize_text("ΣΑΣ Привет").cleaned == "σασ привет");
    CHECK(text::normalize_text("keep #Tags and @Mentions").cleaned == "keep #tags and @mentions");
}

TEST_CASE("normalize_text is idempotent and URL-free on random input") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 2000; ++i) {
        const std::string raw = random_text(rng);
        const auto once = text::normalize_text(raw);
        CHECK(text::normalize_text(once.cleaned).cleaned == once.cleaned);
        CHECK(once.cleaned.find("http://") == std::string::npos);
        CHECK(once.cleaned.find("https://") == std::string::npos);
        CHECK(once.cleaned.find("www.") == std::string::npos);
        CHECK(once.cleaned.find("  ") == std::string::npos);
        if (!once.cleaned.empty()) {
            CHECK(once.cleaned.front() != ' ');
            CHECK(once.cleaned.back() != ' ');
        }
        CHECK(once.is_empty == once.cleaned.empty());
        CHECK(text::is_valid_utf8(once.cleaned));
    }
}

TEST_CASE("utf8 validation") {
    CHECK(text::is_valid_utf8("plain"));
    CHECK(text::is_valid_utf8("😀"));
    CHECK_FALSE(text::is_valid_utf8("\xC0\xAF"));
    CHECK_FALSE(text::is_valid_utf8("\xED\xA0\x80"));
    CHECK_FALSE(text::is_valid_utf8("\xE2\x82"));
}

TEST_CASE("emoji counting") {
    CHECK(text::count_emoji("no emoji") == 0);
    CHECK(text::count_emoji("😀😀") == 2);
    CHECK(text::count_emoji("👍🏽") == 1);
    CHECK(text::count_emoji("👨‍👩‍👧") == 1);
    CHECK(text::count_emoji("🇫🇷🇩🇪") == 2);
    CHECK(text::count_emoji("❤️ ok") == 1);
}

}

TEST_SUITE("featurex.sentiment") {

TEST_CASE("classify_sentiment examples and boundaries") {
    using sentiment::Polarity;
    CHECK(sentiment::classify_sentiment(-0.5) == Polarity::negative);
    CHECK(sentiment::classify_sentiment(0.2) == Polarity::neutral);
    CHECK(sentiment::classify_sentiment(-0.2) == Polarity::neutral);
    CHECK(sentiment::classify_sentiment(0.21) == Polarity::positive);
    CHECK(sentiment::classify_sentiment(1.0) == Polarity::positive);
    CHECK_THROWS_AS(sentiment::classify_sentiment(1.5), Error);
}

TEST_CASE("classify_sentiment is monotone") {
    auto rank = [](sentiment::Polarity p) {
        return p == sentiment::Polarity::negative ? 0 : p == sentiment::Polarity::neutral ? 1 : 2;
    };
    int prev = 0;
    for (int i = -1000; i <= 1000; ++i) {
        const int r = rank(sentiment::classify_sentiment(i / 1000.0));
        CHECK(r >= prev);
        prev = r;
    }
}

TEST_CASE("score_sentiment rules") {
    sentiment::Lexicon lex;
    lex.add("good", 0.6);
    lex.add("great", 0.8);
    lex.add("bad", -0.4);
    lex.add_negation("not");
    CHECK(sentiment::score_sentiment(text::normalize_text("nothing here"), lex) == 0.0);
    CHECK(sentiment::score_sentiment(text::normalize_text("great"), lex) == doctest::Approx(0.8));
    CHECK(sentiment::score_sentiment(text::normalize_text("not good"), lex) ==
          doctest::Approx(-0.6));
    CHECK(sentiment::score_sentiment(text::normalize_text("good, bad!"), lex) ==
          doctest::Approx(0.1));
    CHECK_THROWS_AS(lex.add("worse", -1.5), Error);
}

TEST_CASE("lexicon text format and bundled lexicon") {
    std::istringstream in("# comment\nhappy 0.5\nsad -0.5\n[negations]\nnever\n");
    const auto lex = sentiment::Lexicon::parse(in);
    CHECK(lex.size() == 2);
    CHECK(lex.is_negation("never"));
    CHECK(*lex.find("sad") == doctest::Approx(-0.5));
    const auto& b = sentiment::Lexicon::bundled();
    CHECK(b.size() > 100);
    CHECK(b.is_negation("not"));
    REQUIRE(b.find("great") != nullptr);
    CHECK(*b.find("great") > 0.2);
}

}

TEST_SUITE("featurex.topic") {

TEST_CASE("mark_duplicates examples") {
    CHECK(topic::mark_duplicates(norm_all({"buy now", "Buy  now", "hello"})) ==
          std::vector<bool>{true, true, false});
    CHECK(topic::mark_duplicates(norm_all({"a", "b", "c"})) == std::vector<bool>(3, false));
    CHECK(topic::mark_duplicates(norm_all({"", "", "http://x.co"})) == std::vector<bool>(3, false));
    const auto five = topic::mark_duplicates(norm_all(std::vector<std::string>(5, "same")));
    CHECK(std::count(five.begin(), five.end(), true) == 5);
}

TEST_CASE("shingles and jaccard") {
    CHECK(topic::shingles("") .empty());
    CHECK(topic::shingles("one") == std::vector<std::string>{"one"});
    CHECK(topic::shingles("a b a b").size() == 2);
    const auto a = topic::shingles("a b c d");
    const auto b = topic::shingles("a b c e");
    CHECK(topic::jaccard(a, b) == doctest::Approx(0.5));
    CHECK(topic::jaccard(a, {}) == 0.0);
}

TEST_CASE("assign_topic_class examples") {
    using topic::TopicClass;
    CHECK(topic::assign_topic_class(norm_all({"solo"})) ==
          std::vector<TopicClass>{TopicClass::infrequent});
    CHECK(topic::assign_topic_class(norm_all(std::vector<std::string>(10, "same words here"))) ==
          std::vector<TopicClass>(10, TopicClass::single));

    // Three near-duplicates, two paraphrases of each other, one outlier.
    const std::vector<std::string> texts = {
        "big sale on shoes today only at our store",
        "big sale on shoes today only at our store now",
        "huge big sale on shoes today only at our store",
        "weather is lovely in the park this morning",
        "weather is lovely in the park this morning friends",
        "completely unrelated words go right here",
    };
    const auto norm = norm_all(texts);
    const auto got = topic::assign_topic_class(norm, {0.7, 3});
    CHECK(got == std::vector<TopicClass>{TopicClass::single, TopicClass::single,
                                          TopicClass::single, TopicClass::mixed,
                                          TopicClass::mixed, TopicClass::infrequent});

    // Brute-force oracle: connected components of the pairwise similarity graph.
    const std::size_t n = norm.size();
    std::vector<std::size_t> comp(n);
    for (std::size_t i = 0; i < n; ++i) comp[i] = i;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const auto si = topic::shingles(norm[i].cleaned);
                const auto sj = topic::shingles(norm[j].cleaned);
                if (topic::jaccard(si, sj) >= 0.7 && comp[j] > comp[i]) {
                    comp[j] = comp[i];
                    changed = true;
                }
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        const auto size = static_cast<std::size_t>(std::count(comp.begin(), comp.end(), comp[i]));
        const TopicClass expect = size >= 3   ? TopicClass::single
                                  : size >= 2 ? TopicClass::mixed
                                              : TopicClass::infrequent;
        CHECK(got[i] == expect);
    }
}

TEST_CASE("assign_topic_class is invariant under permutation") {
    std::mt19937_64 rng(5);
    const std::vector<std::string> vocab = {"alpha", "beta", "gamma", "delta", "eps"};
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::string> texts;
        for (int i = 0; i < 25; ++i) {
            std::string t;
            for (int w = 0; w < 4; ++w) t += vocab[rng() % vocab.size()] + " ";
            texts.push_back(t);
        }
        const auto base = topic::assign_topic_class(norm_all(texts));
        std::vector<std::size_t> perm(texts.size());
        for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<std::string> shuffled;
        for (auto p : perm) shuffled.push_back(texts[p]);
        const auto got = topic::assign_topic_class(norm_all(shuffled));
        for (std::size_t i = 0; i < perm.size(); ++i) {
            CHECK(got[i] == base[perm[i]]);
        }
    }
}

}
