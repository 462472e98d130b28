#include "botdrift/transitions.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <ostream>

#include <json.hpp>

#include "botdrift/csv.hpp"
#include "botdrift/error.hpp"

namespace botdrift::transitions {

namespace {

int sign(int v) noexcept { return (v > 0) - (v < 0); }

Category require(const CategoryMatrix& m, Feature fi, Feature fj) {
    const auto c = m.at(fi, fj);
    if (!c) {
        fail(ErrorCode::missing_pairs, "matrix " + m.generation() + " lacks pair " +
                                           features::name(fi) + "-" + features::name(fj));
    }
    return *c;
}

int strength(const GlobalTrajectory& t) noexcept {
    return std::abs(ordinal(t.categories[1]) - ordinal(t.categories[0])) +
           std::abs(ordinal(t.categories[2]) - ordinal(t.categories[1]));
}

constexpr std::array<Dir, 3> kDirs = {Dir::I, Dir::D, Dir::E};
constexpr std::array<GlobalLabel, 5> kLabels = {GlobalLabel::Equal, GlobalLabel::Increased,
                                                GlobalLabel::Decreased, GlobalLabel::Flipped,
                                                GlobalLabel::MixedStable};
constexpr std::array<Pattern, 6> kPatterns = {
    Pattern::stable,        Pattern::strengthening_positive, Pattern::strengthening_negative,
    Pattern::sign_reversal, Pattern::variable,               Pattern::other};

}  // namespace

std::string_view to_string(Dir d) noexcept {
    switch (d) {
        case Dir::I: return "I";
        case Dir::D: return "D";
        case Dir::E: return "E";
    }
    return "E";
}

std::string_view to_string(GlobalLabel g) noexcept {
    switch (g) {
        case GlobalLabel::Equal: return "Equal";
        case GlobalLabel::Increased: return "Increased";
        case GlobalLabel::Decreased: return "Decreased";
        case GlobalLabel::Flipped: return "Flipped";
        case GlobalLabel::MixedStable: return "MixedStable";
    }
    return "Equal";
}

std::string_view to_string(Pattern p) noexcept {
    switch (p) {
        case Pattern::stable: return "stable";
        case Pattern::strengthening_positive: return "strengthening_positive";
        case Pattern::strengthening_negative: return "strengthening_negative";
        case Pattern::sign_reversal: return "sign_reversal";
        case Pattern::variable: return "variable";
        case Pattern::other: return "other";
    }
    return "other";
}

int ordinal(Category c) noexcept { return static_cast<int>(c) - 3; }

Dir direction(Category from, Category to, Scale scale) noexcept {
    int a = ordinal(from);
    int b = ordinal(to);
    if (scale == Scale::magnitude) {
        a = std::abs(a);
        b = std::abs(b);
    }
    return b > a ? Dir::I : b < a ? Dir::D : Dir::E;
}

LocalTransition local_transition(const CategoryMatrix& from, const CategoryMatrix& to, Feature fi,
                                 Feature fj, Scale scale) {
    const Category a = require(from, fi, fj);
    const Category b = require(to, fi, fj);
    return LocalTransition{fi, fj, from.generation(), to.generation(), a, b, direction(a, b, scale)};
}

GlobalLabel global_label(Dir t1, Dir t2) noexcept {
    if (t1 == Dir::E && t2 == Dir::E) return GlobalLabel::Equal;
    if (t1 == Dir::E || t2 == Dir::E) return GlobalLabel::MixedStable;
    if (t1 == t2) return t1 == Dir::I ? GlobalLabel::Increased : GlobalLabel::Decreased;
    return GlobalLabel::Flipped;
}

GlobalTrajectory make_trajectory(Feature fi, Feature fj, std::array<Category, 3> categories,
                                 Scale scale) {
    GlobalTrajectory t{fi, fj, categories, Dir::E, Dir::E, GlobalLabel::Equal};
    t.t1 = direction(categories[0], categories[1], scale);
    t.t2 = direction(categories[1], categories[2], scale);
    t.label = global_label(t.t1, t.t2);
    return t;
}

Pattern evolution_pattern(const GlobalTrajectory& t) noexcept {
    const int o1 = ordinal(t.categories[0]);
    const int o2 = ordinal(t.categories[1]);
    const int o3 = ordinal(t.categories[2]);
    if (t.categories[0] == t.categories[1] && t.categories[1] == t.categories[2]) {
        return Pattern::stable;
    }
    if (sign(o1) != 0 && sign(o3) == -sign(o1)) {
        return Pattern::sign_reversal;
    }
    if (o1 >= 0 && o2 >= 0 && o3 >= 0 && o1 <= o2 && o2 <= o3 && o3 > o1) {
        return Pattern::strengthening_positive;
    }
    if (o1 <= 0 && o2 <= 0 && o3 <= 0 && o1 >= o2 && o2 >= o3 && o3 < o1) {
        return Pattern::strengthening_negative;
    }
    if ((t.t1 == Dir::I && t.t2 == Dir::D) || (t.t1 == Dir::D && t.t2 == Dir::I)) {
        return Pattern::variable;
    }
    return Pattern::other;
}

std::vector<GlobalTrajectory> trajectories(const CategoryMatrix& c1, const CategoryMatrix& c2,
                                           const CategoryMatrix& c3, Scale scale) {
    std::vector<GlobalTrajectory> out;
    out.reserve(features::kPairCount);
    for (const auto& [fi, fj] : features::all_pairs()) {
        out.push_back(make_trajectory(
            fi, fj, {require(c1, fi, fj), require(c2, fi, fj), require(c3, fi, fj)}, scale));
    }
    return out;
}

std::size_t Census::total() const noexcept {
    std::size_t n = 0;
    for (const auto& row : cells) {
        n = std::accumulate(row.begin(), row.end(), n);
    }
    return n;
}

Census transition_census(std::span<const GlobalTrajectory> trajectories) {
    Census c;
    for (const auto& t : trajectories) {
        ++c.cells[static_cast<std::size_t>(t.t1)][static_cast<std::size_t>(t.t2)];
        ++c.labels[static_cast<std::size_t>(global_label(t.t1, t.t2))];
        ++c.patterns[static_cast<std::size_t>(evolution_pattern(t))];
    }
    return c;
}

Census transition_census(const CategoryMatrix& c1, const CategoryMatrix& c2,
                         const CategoryMatrix& c3, Scale scale) {
    const auto all = trajectories(c1, c2, c3, scale);
    return transition_census(all);
}

std::vector<GlobalTrajectory> top_transitions(std::span<const GlobalTrajectory> trajectories,
                                              std::optional<std::size_t> k) {
    std::vector<GlobalTrajectory> out(trajectories.begin(), trajectories.end());
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        const int sa = strength(a);
        const int sb = strength(b);
        if (sa != sb) {
            return sa > sb;
        }
        return std::pair(a.fi, a.fj) < std::pair(b.fi, b.fj);
    });
    if (k && out.size() > *k) {
        out.resize(*k);
    }
    return out;
}

std::vector<std::string> report_header() {
    return {"Fi", "Fj", "C1", "C2", "C3", "t1_dir", "t2_dir", "global_label", "pattern"};
}

void write_report_csv(std::ostream& out, std::span<const GlobalTrajectory> trajectories) {
    csv::Writer w(out);
    w.row(report_header());
    for (const auto& t : trajectories) {
        w.row({features::name(t.fi), features::name(t.fj),
               std::string(relations::to_string(t.categories[0])),
               std::string(relations::to_string(t.categories[1])),
               std::string(relations::to_string(t.categories[2])), std::string(to_string(t.t1)),
               std::string(to_string(t.t2)), std::string(to_string(t.label)),
               std::string(to_string(evolution_pattern(t)))});
    }
}

std::string census_to_json(const Census& census) {
    using nlohmann::ordered_json;
    ordered_json cells = ordered_json::array();
    for (Dir a : kDirs) {
        for (Dir b : kDirs) {
            cells.push_back({{"t1", std::string(to_string(a))},
                             {"t2", std::string(to_string(b))},
                             {"count", census.cell(a, b)},
                             {"global_label", std::string(to_string(global_label(a, b)))}});
        }
    }
    ordered_json labels = ordered_json::object();
    for (GlobalLabel g : kLabels) {
        labels[std::string(to_string(g))] = census.labels[static_cast<std::size_t>(g)];
    }
    ordered_json patterns = ordered_json::object();
    for (Pattern p : kPatterns) {
        patterns[std::string(to_string(p))] = census.patterns[static_cast<std::size_t>(p)];
    }
    ordered_json doc;
    doc["cells"] = cells;
    doc["labels"] = labels;
    doc["patterns"] = patterns;
    doc["total"] = census.total();
    return doc.dump(2) + "\n";
}

}  // namespace botdrift::transitions
