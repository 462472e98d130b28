#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "botdrift/error.hpp"
#include "botdrift/relations.hpp"
#include "fixtures.hpp"

using namespace botdrift;
using namespace botdrift::relations;
using corpus::Generation;

namespace {

std::vector<FeatureVector> vectors_from(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<FeatureVector> v(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        v[i].f.set(features::index(Feature::F10), x[i] > 0.5);
        v[i].f.set(features::index(Feature::F17), y[i] > 0.5);
    }
    return v;
}

ContingencyTable2x2 table(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
    return {a, b, c, d};
}

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::internal;
}

int rank(Category c) { return static_cast<int>(c); }

}  // namespace

TEST_SUITE("relations.chi2") {

TEST_CASE("contingency tables") {
    const std::vector<double> x = {1, 1, 0, 0};
    const std::vector<double> y = {1, 0, 1, 0};
    const auto t = build_contingency(vectors_from(x, y), Feature::F10, Feature::F17);
    CHECK(t.n11 == 1);
    CHECK(t.n10 == 1);
    CHECK(t.n01 == 1);
    CHECK(t.n00 == 1);
    const auto same = build_contingency(vectors_from(x, x), Feature::F10, Feature::F17);
    CHECK(same.n10 == 0);
    CHECK(same.n01 == 0);
    CHECK(code_of([] { build_contingency({}, Feature::F1, Feature::F2); }) ==
          ErrorCode::empty_population);
    CHECK(code_of([&] { build_contingency(vectors_from(x, y), Feature::F1, Feature::F1); }) ==
          ErrorCode::precondition);
}

TEST_CASE("contingency matches a per-tweet tally") {
    std::mt19937_64 rng(5);
    const auto x = fixtures::bernoulli_column(rng, 500, 0.3);
    const auto y = fixtures::bernoulli_column(rng, 500, 0.6);
    const auto t = build_contingency(vectors_from(x, y), Feature::F10, Feature::F17);
    std::uint64_t n11 = 0, n10 = 0, n01 = 0, n00 = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        (x[i] > 0.5 ? (y[i] > 0.5 ? n11 : n10) : (y[i] > 0.5 ? n01 : n00))++;
    }
    CHECK(t.n11 == n11);
    CHECK(t.n10 == n10);
    CHECK(t.n01 == n01);
    CHECK(t.n00 == n00);
    CHECK(t.n() == 500);
}

TEST_CASE("chi-square examples") {
    const auto indep = chi2_test(table(50, 50, 50, 50));
    CHECK(indep.chi2 == 0.0);
    CHECK(indep.p_value == 1.0);
    const auto perfect = chi2_test(table(100, 0, 0, 100));
    CHECK(perfect.chi2 == doctest::Approx(200.0));
    CHECK(perfect.p_value < 1e-40);
    const auto mid = chi2_test(table(20, 10, 10, 20));
    CHECK(std::abs(mid.chi2 - fixtures::chi2_oracle(20, 10, 10, 20)) < 1e-9);
    CHECK(mid.chi2 == doctest::Approx(20.0 / 3.0));
    CHECK(cramers_v(table(20, 10, 10, 20)) == doctest::Approx(std::sqrt(mid.chi2 / 60.0)));
    CHECK(cramers_v(table(50, 50, 50, 50)) == 0.0);
    CHECK(cramers_v(table(100, 0, 0, 100)) == doctest::Approx(1.0));
}

TEST_CASE("yates and low expected counts") {
    const auto plain = chi2_test(table(3, 1, 1, 3));
    const auto corrected = chi2_test(table(3, 1, 1, 3), true);
    CHECK(plain.low_expected_count);
    CHECK(corrected.chi2 < plain.chi2);
    CHECK(plain.chi2 == doctest::Approx(2.0));
    CHECK(corrected.chi2 == doctest::Approx(0.5));
    CHECK_FALSE(chi2_test(table(50, 50, 50, 50)).low_expected_count);
}

TEST_CASE("zero marginal is an undefined test") {
    CHECK(code_of([] { chi2_test(table(5, 5, 0, 0)); }) == ErrorCode::undefined_test);
    CHECK(code_of([] { chi2_test(table(5, 0, 5, 0)); }) == ErrorCode::undefined_test);
}

TEST_CASE("chi-square invariant under transpose and relabeling") {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<std::uint64_t> u(1, 400);
    for (int i = 0; i < 500; ++i) {
        const auto a = u(rng), b = u(rng), c = u(rng), d = u(rng);
        const double base = chi2_test(table(a, b, c, d)).chi2;
        CHECK(chi2_test(table(a, c, b, d)).chi2 == doctest::Approx(base).epsilon(1e-12));
        CHECK(chi2_test(table(d, c, b, a)).chi2 == doctest::Approx(base).epsilon(1e-12));
        CHECK(std::abs(base - fixtures::chi2_oracle(a, b, c, d)) <= 1e-9 * std::max(1.0, base));
    }
}

TEST_CASE("dependency analysis over generated tweets") {
    const auto c = corpus::make_corpus(synth::generate(fixtures::small_spec(8, 8)));
    const auto v = features::extract_features(c, sentiment::Lexicon::bundled());
    const auto cells = dependency_analysis(v, 0.05, false, 4);
    REQUIRE(cells.size() == 153);
    for (const auto& cell : cells) {
        CHECK(cell.structural == features::structurally_exclusive(cell.fi, cell.fj));
        if (cell.test) {
            CHECK(cell.dependent == (cell.test->p_value < 0.05 / 153.0));
            CHECK(cell.cramers_v >= 0.0);
            CHECK(cell.cramers_v <= 1.0 + 1e-12);
        } else {
            CHECK_FALSE(cell.dependent);
        }
    }
    // Members of a two-valued family are complements: perfect association.
    for (const auto& cell : cells) {
        if (cell.fi == Feature::F7 && cell.fj == Feature::F8 && cell.test) {
            CHECK(cell.cramers_v == doctest::Approx(1.0));
        }
    }
    const auto serial = dependency_analysis(v, 0.05, false, 1);
    std::ostringstream a, b;
    write_dependency_csv(a, cells);
    write_dependency_csv(b, serial);
    CHECK(a.str() == b.str());
}

}

TEST_SUITE("relations.spearman") {

TEST_CASE("midranks") {
    const std::vector<double> x = {1, 2, 3, 4, 5};
    const std::vector<double> y = {5, 6, 7, 8, 7};
    CHECK(spearman(x, x) == doctest::Approx(1.0));
    // Ranks of y: 1, 2, 3.5, 5, 3.5.
    CHECK(spearman(x, y) == doctest::Approx(0.8207826816681233));
    const std::vector<double> c = {2, 2, 2, 2, 2};
    CHECK(code_of([&] { spearman(x, c); }) == ErrorCode::undefined_correlation);
}

TEST_CASE("binary Spearman examples") {
    std::mt19937_64 rng(3);
    const auto x = fixtures::bernoulli_column(rng, 100, 0.4);
    std::vector<double> notx(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) notx[i] = 1.0 - x[i];
    const std::vector<Generation> g(x.size(), Generation::G3);
    CHECK(spearman_binary(vectors_from(x, x), g, Feature::F10, Feature::F17, Generation::G3) ==
          doctest::Approx(1.0));
    CHECK(spearman_binary(vectors_from(x, notx), g, Feature::F10, Feature::F17, Generation::G3) ==
          doctest::Approx(-1.0));
}

TEST_CASE("binary Spearman equals phi and is symmetric") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> p(0.05, 0.95);
    for (int i = 0; i < 300; ++i) {
        const std::size_t n = 20 + rng() % 300;
        const auto x = fixtures::bernoulli_column(rng, n, p(rng));
        const auto y = fixtures::bernoulli_column(rng, n, p(rng));
        const double phi = fixtures::phi_oracle(x, y);
        if (!std::isfinite(phi)) continue;
        const auto v = vectors_from(x, y);
        const std::vector<Generation> g(n, Generation::G2);
        const double r = spearman_binary(v, g, Feature::F10, Feature::F17, Generation::G2);
        CHECK(std::abs(r - phi) < 1e-12);
        CHECK(spearman_binary(v, g, Feature::F17, Feature::F10, Generation::G2) == r);
    }
}

TEST_CASE("generation filter") {
    const std::vector<double> x = {1, 0, 1, 0, 1, 1};
    const std::vector<double> y = {1, 0, 0, 1, 1, 0};
    const std::vector<Generation> g = {Generation::G1, Generation::G1, Generation::G2,
                                       Generation::G2, Generation::G1, Generation::G1};
    const auto v = vectors_from(x, y);
    const std::vector<double> x1 = {1, 0, 1, 1}, y1 = {1, 0, 1, 0};
    CHECK(spearman_binary(v, g, Feature::F10, Feature::F17, Generation::G1) ==
          doctest::Approx(fixtures::phi_oracle(x1, y1)));
    CHECK(spearman_binary(v, g, Feature::F10, Feature::F17, Generation::G2) ==
          doctest::Approx(-1.0));
}

}

TEST_SUITE("relations.categories") {

TEST_CASE("categorize examples and boundaries") {
    CHECK(categorize(0.5) == Category::MP);
    CHECK(categorize(-0.75) == Category::SN);
    CHECK(categorize(0.0) == Category::NP);
    CHECK(categorize(0.3) == Category::MP);
    CHECK(categorize(0.7) == Category::SP);
    CHECK(categorize(-0.3) == Category::MN);
    CHECK(categorize(-0.7) == Category::SN);
    CHECK(categorize(0.01) == Category::NP);
    CHECK(categorize(-0.01) == Category::NP);
    CHECK(categorize(0.0101) == Category::WP);
    CHECK(categorize(-0.2) == Category::WN);
    CHECK(categorize(1.0) == Category::SP);
    CHECK(categorize(-1.0) == Category::SN);
    CHECK(code_of([] { categorize(1.01); }) == ErrorCode::domain);
}

TEST_CASE("categorize is a monotone step function") {
    int prev = 0;
    for (int i = -10000; i <= 10000; ++i) {
        const int r = rank(categorize(i / 10000.0));
        CHECK(r >= prev);
        prev = r;
    }
    CHECK(prev == rank(Category::SP));
}

TEST_CASE("category names") {
    for (Category c : kCategories) CHECK(parse_category(to_string(c)) == c);
    CHECK(parse_category("NC") == Category::NP);
    CHECK_FALSE(parse_category("XX").has_value());
}

TEST_CASE("distribution of a complete matrix") {
    CategoryMatrix m("G1");
    CHECK(code_of([&] { category_distribution(m); }) == ErrorCode::missing_pairs);
    for (const auto& [a, b] : features::all_pairs()) m.set(a, b, Category::NP, 0.0, true);
    const auto d = category_distribution(m);
    CHECK(d[3] == 153);
    CHECK(m.missing().empty());
    CHECK(m.at(Feature::F5, Feature::F2) == m.at(Feature::F2, Feature::F5));
    CHECK(code_of([&] { m.set(Feature::F1, Feature::F1, Category::NP, 0.0); }) ==
          ErrorCode::precondition);
}

TEST_CASE("reference per-generation rows sum to 153") {
    const auto m = fixtures::reference_matrices();
    const std::array<std::array<std::size_t, 7>, 3> expect = {{
        {7, 25, 34, 33, 34, 20, 0},
        {8, 44, 33, 0, 28, 40, 0},
        {11, 61, 12, 0, 13, 52, 4},
    }};
    for (std::size_t g = 0; g < 3; ++g) {
        const auto d = category_distribution(m[g]);
        CHECK(d == expect[g]);
        std::size_t total = 0;
        for (auto x : d) total += x;
        CHECK(total == 153);
    }
}

TEST_CASE("category matrices from generated tweets") {
    const auto c = corpus::make_corpus(synth::generate(fixtures::small_spec(12, 8)));
    const auto v = features::extract_features(c, sentiment::Lexicon::bundled());
    const auto gens = tweet_generations(c);
    for (Generation g : corpus::kGenerations) {
        const auto m = build_category_matrix(v, gens, g, {}, 4);
        const auto serial = build_category_matrix(v, gens, g, {}, 1);
        std::size_t total = 0;
        for (auto x : category_distribution(m)) total += x;
        CHECK(total == 153);
        for (const auto& [a, b] : features::all_pairs()) {
            CHECK(m.at(a, b) == m.at(b, a));
            CHECK(m.rho(a, b) == serial.rho(a, b));
            if (!m.degenerate(a, b)) CHECK(*m.at(a, b) == categorize(m.rho(a, b)));
            else CHECK(*m.at(a, b) == Category::NP);
        }
        const auto dir = fixtures::scratch_dir("corr");
        std::ostringstream out;
        write_category_csv(out, m);
        fixtures::write_text(dir / "corr.csv", out.str());
        const auto back = read_category_csv((dir / "corr.csv").string(), "G");
        for (const auto& [a, b] : features::all_pairs()) {
            CHECK(back.at(a, b) == m.at(a, b));
            CHECK(back.degenerate(a, b) == m.degenerate(a, b));
        }
    }
}

}
