#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "botdrift/relations.hpp"

namespace botdrift::transitions {

using relations::Category;
using relations::CategoryMatrix;
using features::Feature;

enum class Dir : std::uint8_t { I, D, E };
enum class GlobalLabel : std::uint8_t { Equal, Increased, Decreased, Flipped, MixedStable };
enum class Pattern : std::uint8_t {
    stable,
    strengthening_positive,
    strengthening_negative,
    sign_reversal,
    variable,
    other,
};

/// Signed: compare ordinals (WP -> WN is a decrease). Magnitude: compare |ordinal|.
enum class Scale : std::uint8_t { signed_ordinal, magnitude };

std::string_view to_string(Dir d) noexcept;
std::string_view to_string(GlobalLabel g) noexcept;
std::string_view to_string(Pattern p) noexcept;

/// SN -3, MN -2, WN -1, NP 0, WP +1, MP +2, SP +3.
int ordinal(Category c) noexcept;

Dir direction(Category from, Category to, Scale scale = Scale::signed_ordinal) noexcept;

struct LocalTransition {
    Feature fi;
    Feature fj;
    std::string from_gen;
    std::string to_gen;
    Category from_cat;
    Category to_cat;
    Dir direction;
};

/// Throws Error(missing_pairs) if either matrix lacks the pair.
LocalTransition local_transition(const CategoryMatrix& from, const CategoryMatrix& to,
                                 Feature fi, Feature fj, Scale scale = Scale::signed_ordinal);

GlobalLabel global_label(Dir t1, Dir t2) noexcept;

struct GlobalTrajectory {
    Feature fi;
    Feature fj;
    std::array<Category, 3> categories;
    Dir t1;
    Dir t2;
    GlobalLabel label;
};

GlobalTrajectory make_trajectory(Feature fi, Feature fj, std::array<Category, 3> categories,
                                 Scale scale = Scale::signed_ordinal);

/// First match of: stable, sign_reversal, strengthening (positive, then
/// negative), variable, other.
Pattern evolution_pattern(const GlobalTrajectory& trajectory) noexcept;

/// All 153 trajectories in pair order. Throws Error(missing_pairs).
std::vector<GlobalTrajectory> trajectories(const CategoryMatrix& c1, const CategoryMatrix& c2,
                                           const CategoryMatrix& c3,
                                           Scale scale = Scale::signed_ordinal);

struct Census {
    /// cells[t1][t2] indexed by Dir (I, D, E).
    std::array<std::array<std::size_t, 3>, 3> cells{};
    std::array<std::size_t, 5> labels{};    // by GlobalLabel
    std::array<std::size_t, 6> patterns{};  // by Pattern

    [[nodiscard]] std::size_t cell(Dir t1, Dir t2) const noexcept {
        return cells[static_cast<std::size_t>(t1)][static_cast<std::size_t>(t2)];
    }
    [[nodiscard]] std::size_t total() const noexcept;
};

Census transition_census(std::span<const GlobalTrajectory> trajectories);
Census transition_census(const CategoryMatrix& c1, const CategoryMatrix& c2,
                         const CategoryMatrix& c3, Scale scale = Scale::signed_ordinal);

/// Pairs ranked by |Δordinal T1| + |Δordinal T2| descending, then pair order.
/// Returns every trajectory when k is empty.
std::vector<GlobalTrajectory> top_transitions(std::span<const GlobalTrajectory> trajectories,
                                              std::optional<std::size_t> k);

/// CSV: Fi, Fj, C1, C2, C3, t1_dir, t2_dir, global_label, pattern.
std::vector<std::string> report_header();
void write_report_csv(std::ostream& out, std::span<const GlobalTrajectory> trajectories);

std::string census_to_json(const Census& census);

}  // namespace botdrift::transitions
