#include <doctest.h>

#include <map>
#include <random>
#include <sstream>

#include <json.hpp>

#include "botdrift/error.hpp"
#include "botdrift/transitions.hpp"
#include "fixtures.hpp"

using namespace botdrift;
using namespace botdrift::transitions;
using C = relations::Category;

namespace {

CategoryMatrix uniform_matrix(std::string gen, C c) {
    CategoryMatrix m(std::move(gen));
    for (const auto& [a, b] : features::all_pairs()) m.set(a, b, c, 0.0);
    return m;
}

Dir opposite(Dir d) { return d == Dir::I ? Dir::D : d == Dir::D ? Dir::I : Dir::E; }

}  // namespace

TEST_SUITE("transitions") {

TEST_CASE("ordinals") {
    CHECK(ordinal(C::NP) == 0);
    CHECK(ordinal(C::SP) == 3);
    CHECK(ordinal(C::SN) == -3);
    // Midpoints of each band map to strictly increasing ordinals.
    const double mids[] = {-0.85, -0.5, -0.15, 0.0, 0.15, 0.5, 0.85};
    for (int i = 1; i < 7; ++i) {
        CHECK(ordinal(relations::categorize(mids[i])) > ordinal(relations::categorize(mids[i - 1])));
    }
}

TEST_CASE("local directions") {
    CHECK(direction(C::WP, C::MP) == Dir::I);
    CHECK(direction(C::MP, C::MP) == Dir::E);
    CHECK(direction(C::WP, C::WN) == Dir::D);
    CHECK(direction(C::WP, C::WN, Scale::magnitude) == Dir::E);
    CHECK(direction(C::WN, C::SN, Scale::magnitude) == Dir::I);
    for (C a : relations::kCategories) {
        for (C b : relations::kCategories) {
            CHECK((direction(a, b) == Dir::E) == (a == b));
            CHECK(direction(b, a) == opposite(direction(a, b)));
        }
    }
}

TEST_CASE("local_transition needs both entries") {
    auto a = uniform_matrix("G1", C::WP);
    auto b = uniform_matrix("G2", C::MP);
    const auto t = local_transition(a, b, features::Feature::F1, features::Feature::F9);
    CHECK(t.direction == Dir::I);
    CHECK(t.from_gen == "G1");
    CategoryMatrix empty("G3");
    CHECK_THROWS_AS(local_transition(a, empty, features::Feature::F1, features::Feature::F9), Error);
}

TEST_CASE("global labels") {
    CHECK(global_label(Dir::I, Dir::I) == GlobalLabel::Increased);
    CHECK(global_label(Dir::D, Dir::I) == GlobalLabel::Flipped);
    CHECK(global_label(Dir::I, Dir::D) == GlobalLabel::Flipped);
    CHECK(global_label(Dir::E, Dir::D) == GlobalLabel::MixedStable);
    CHECK(global_label(Dir::D, Dir::E) == GlobalLabel::MixedStable);
    CHECK(global_label(Dir::E, Dir::E) == GlobalLabel::Equal);
    CHECK(global_label(Dir::D, Dir::D) == GlobalLabel::Decreased);
}

TEST_CASE("evolution patterns") {
    using features::Feature;
    auto p = [](C a, C b, C c) {
        return evolution_pattern(make_trajectory(Feature::F1, Feature::F2, {a, b, c}));
    };
    CHECK(p(C::WP, C::WP, C::WP) == Pattern::stable);
    CHECK(p(C::WP, C::MP, C::MP) == Pattern::strengthening_positive);
    CHECK(p(C::WP, C::MP, C::WP) == Pattern::variable);
    CHECK(p(C::WN, C::MN, C::SN) == Pattern::strengthening_negative);
    CHECK(p(C::WP, C::MP, C::WN) == Pattern::sign_reversal);
    CHECK(p(C::NP, C::WP, C::MP) == Pattern::strengthening_positive);
    CHECK(p(C::MP, C::MP, C::WP) == Pattern::other);
    CHECK(p(C::SN, C::SN, C::MN) == Pattern::other);
}

TEST_CASE("every trajectory gets one pattern; stable implies Equal") {
    using features::Feature;
    for (C a : relations::kCategories) {
        for (C b : relations::kCategories) {
            for (C c : relations::kCategories) {
                for (Scale s : {Scale::signed_ordinal, Scale::magnitude}) {
                    const auto t = make_trajectory(Feature::F1, Feature::F2, {a, b, c}, s);
                    const Pattern pat = evolution_pattern(t);
                    CHECK(static_cast<int>(pat) <= static_cast<int>(Pattern::other));
                    if (pat == Pattern::stable) CHECK(t.label == GlobalLabel::Equal);
                    CHECK(t.label == global_label(t.t1, t.t2));
                }
            }
        }
    }
}

TEST_CASE("identical matrices put every pair in (E,E)") {
    const auto m = uniform_matrix("G", C::MN);
    const auto census = transition_census(m, m, m);
    CHECK(census.cell(Dir::E, Dir::E) == 153);
    CHECK(census.total() == 153);
    CHECK(census.labels[static_cast<std::size_t>(GlobalLabel::Equal)] == 153);
}

TEST_CASE("reference nine-cell census") {
    const auto m = fixtures::reference_matrices();
    const auto census = transition_census(m[0], m[1], m[2]);
    CHECK(census.cell(Dir::E, Dir::E) == 29);
    CHECK(census.cell(Dir::D, Dir::D) == 19);
    CHECK(census.cell(Dir::I, Dir::I) == 15);
    CHECK(census.cell(Dir::D, Dir::I) == 12);
    CHECK(census.cell(Dir::I, Dir::D) == 11);
    CHECK(census.cell(Dir::D, Dir::E) == 26);
    CHECK(census.cell(Dir::I, Dir::E) == 22);
    CHECK(census.cell(Dir::E, Dir::I) == 11);
    CHECK(census.cell(Dir::E, Dir::D) == 8);
    CHECK(census.total() == 153);
    CHECK(census.labels[static_cast<std::size_t>(GlobalLabel::Flipped)] == 23);
    CHECK(census.labels[static_cast<std::size_t>(GlobalLabel::MixedStable)] == 67);
}

TEST_CASE("planted trajectories match a hand count") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 20; ++trial) {
        std::array<CategoryMatrix, 3> m = {CategoryMatrix("a"), CategoryMatrix("b"),
                                           CategoryMatrix("c")};
        std::map<std::pair<Dir, Dir>, std::size_t> hand;
        for (const auto& [fi, fj] : features::all_pairs()) {
            std::array<C, 3> cats{};
            for (auto& c : cats) c = relations::kCategories[rng() % 7];
            for (std::size_t g = 0; g < 3; ++g) m[g].set(fi, fj, cats[g], 0.0);
            auto d = [](C x, C y) {
                return ordinal(y) > ordinal(x) ? Dir::I : ordinal(y) < ordinal(x) ? Dir::D : Dir::E;
            };
            ++hand[{d(cats[0], cats[1]), d(cats[1], cats[2])}];
        }
        const auto census = transition_census(m[0], m[1], m[2]);
        std::size_t sum = 0;
        for (Dir a : {Dir::I, Dir::D, Dir::E}) {
            for (Dir b : {Dir::I, Dir::D, Dir::E}) {
                CHECK(census.cell(a, b) == hand[{a, b}]);
                sum += census.cell(a, b);
            }
        }
        CHECK(sum == 153);
        std::size_t labels = 0, patterns = 0;
        for (auto x : census.labels) labels += x;
        for (auto x : census.patterns) patterns += x;
        CHECK(labels == 153);
        CHECK(patterns == 153);

        // Renaming generations while keeping their order changes nothing.
        const auto traj = trajectories(m[0], m[1], m[2]);
        CategoryMatrix r0 = m[0], r1 = m[1], r2 = m[2];
        r0 = CategoryMatrix("2009-2012");
        r1 = CategoryMatrix("2013-2016");
        r2 = CategoryMatrix("2017-2020");
        for (const auto& t : traj) {
            r0.set(t.fi, t.fj, t.categories[0], 0.0);
            r1.set(t.fi, t.fj, t.categories[1], 0.0);
            r2.set(t.fi, t.fj, t.categories[2], 0.0);
        }
        const auto renamed = trajectories(r0, r1, r2);
        for (std::size_t i = 0; i < traj.size(); ++i) CHECK(renamed[i].label == traj[i].label);
    }
}

TEST_CASE("missing pairs are reported") {
    CategoryMatrix partial("G1");
    partial.set(features::Feature::F1, features::Feature::F4, C::WP, 0.1);
    const auto full = uniform_matrix("G2", C::WP);
    try {
        transition_census(partial, full, full);
        FAIL("expected missing_pairs");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::missing_pairs);
    }
}

TEST_CASE("top transitions rank by total ordinal change") {
    const auto m = fixtures::reference_matrices();
    const auto traj = trajectories(m[0], m[1], m[2]);
    const auto all = top_transitions(traj, std::nullopt);
    CHECK(all.size() == 153);
    const auto top = top_transitions(traj, 10);
    REQUIRE(top.size() == 10);
    auto strength = [](const GlobalTrajectory& t) {
        return std::abs(ordinal(t.categories[1]) - ordinal(t.categories[0])) +
               std::abs(ordinal(t.categories[2]) - ordinal(t.categories[1]));
    };
    for (std::size_t i = 1; i < all.size(); ++i) CHECK(strength(all[i - 1]) >= strength(all[i]));
    // SN,WN,WP changes by 4, the largest in the fixture.
    CHECK(strength(top[0]) == 4);
}

TEST_CASE("census json") {
    const auto m = fixtures::reference_matrices();
    const auto doc = nlohmann::json::parse(census_to_json(transition_census(m[0], m[1], m[2])));
    CHECK(doc.at("total") == 153);
    CHECK(doc.at("cells").size() == 9);
    CHECK(doc.at("labels").at("Increased") == 15);
    std::ostringstream out;
    write_report_csv(out, trajectories(m[0], m[1], m[2]));
    std::size_t lines = 0;
    for (char c : out.str()) lines += c == '\n';
    CHECK(lines == 154);
}

}
