#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "botdrift/corpus.hpp"
#include "botdrift/features.hpp"

namespace botdrift::relations {

using features::Feature;
using features::FeatureVector;
using features::kFeatureCount;
using features::kPairCount;

struct ContingencyTable2x2 {
    std::uint64_t n11 = 0;  // both present
    std::uint64_t n10 = 0;  // first only
    std::uint64_t n01 = 0;  // second only
    std::uint64_t n00 = 0;  // neither

    [[nodiscard]] std::uint64_t n() const noexcept { return n11 + n10 + n01 + n00; }
};

/// Throws Error(precondition) for fi == fj, Error(empty_population) when empty.
ContingencyTable2x2 build_contingency(std::span<const FeatureVector> vectors, Feature fi,
                                      Feature fj);

struct Chi2Result {
    double chi2 = 0.0;
    double p_value = 1.0;
    bool low_expected_count = false;  // some expected cell below 5
};

/// Pearson chi-square, one degree of freedom. Throws Error(undefined_test)
/// when any row or column marginal is zero.
Chi2Result chi2_test(const ContingencyTable2x2& table, bool yates = false);

/// sqrt(chi2 / n) for a 2x2 table, in [0, 1].
double cramers_v(const ContingencyTable2x2& table, bool yates = false);

struct DependencyCell {
    Feature fi;
    Feature fj;
    std::optional<Chi2Result> test;  // empty when the test is undefined
    double cramers_v = 0.0;
    bool dependent = false;  // p < alpha / 153
    bool structural = false;
};

inline constexpr double kBonferroniFamily = static_cast<double>(kPairCount);

/// Step 1 over all 153 pairs, pooled over every tweet.
std::vector<DependencyCell> dependency_analysis(std::span<const FeatureVector> vectors,
                                                double alpha = 0.05, bool yates = false,
                                                std::size_t threads = 1);

/// CSV: Fi, Fj, chi2, p, cramers_v, dependent, structural, low_expected_count.
std::vector<std::string> dependency_header();
void write_dependency_csv(std::ostream& out, std::span<const DependencyCell> cells);

/// Spearman rank correlation with midranks for ties. Throws
/// Error(undefined_correlation) when either input is constant or n < 2.
double spearman(std::span<const double> x, std::span<const double> y);

/// Spearman over the tweets whose generation equals `generation`.
double spearman_binary(std::span<const FeatureVector> vectors,
                       std::span<const corpus::Generation> generations, Feature fi, Feature fj,
                       corpus::Generation generation);

enum class Category : std::uint8_t { SN, MN, WN, NP, WP, MP, SP };

inline constexpr std::array<Category, 7> kCategories = {
    Category::SN, Category::MN, Category::WN, Category::NP,
    Category::WP, Category::MP, Category::SP};

std::string_view to_string(Category c) noexcept;
std::optional<Category> parse_category(std::string_view s) noexcept;

struct Thresholds {
    double tau_sp = 0.7;
    double tau_mp = 0.3;
    double eps_np = 0.01;
};

/// Signed strength bands; lower bounds inclusive on the positive side, upper
/// bounds inclusive on the negative side, |rho| <= eps_np is NP. Throws
/// Error(domain) for |rho| > 1.
Category categorize(double rho, const Thresholds& thresholds = {});

class CategoryMatrix {
public:
    explicit CategoryMatrix(std::string generation = {}) : generation_(std::move(generation)) {}

    [[nodiscard]] const std::string& generation() const noexcept { return generation_; }

    /// Sets both (i,j) and (j,i). Throws Error(precondition) on the diagonal.
    void set(Feature i, Feature j, Category c, double rho, bool degenerate = false);

    [[nodiscard]] std::optional<Category> at(Feature i, Feature j) const;
    [[nodiscard]] double rho(Feature i, Feature j) const;
    [[nodiscard]] bool degenerate(Feature i, Feature j) const;

    /// Pairs (i < j) without an entry.
    [[nodiscard]] std::vector<std::pair<Feature, Feature>> missing() const;

private:
    static std::size_t slot(Feature i, Feature j) noexcept;

    std::string generation_;
    std::array<std::optional<Category>, kFeatureCount * kFeatureCount> entries_{};
    std::array<double, kFeatureCount * kFeatureCount> rho_{};
    std::array<bool, kFeatureCount * kFeatureCount> degenerate_{};
};

/// Spearman for all 153 pairs within one generation. Constant columns give NP
/// with the degenerate flag set.
CategoryMatrix build_category_matrix(std::span<const FeatureVector> vectors,
                                     std::span<const corpus::Generation> generations,
                                     corpus::Generation generation,
                                     const Thresholds& thresholds = {}, std::size_t threads = 1);

/// Category counts indexed like kCategories. Throws Error(missing_pairs)
/// listing absent pairs.
std::array<std::size_t, 7> category_distribution(const CategoryMatrix& matrix);

/// CSV: Fi, Fj, rho, category, degenerate_flag.
std::vector<std::string> category_header();
void write_category_csv(std::ostream& out, const CategoryMatrix& matrix);
CategoryMatrix read_category_csv(const std::string& path, std::string generation);

/// Generation label of each tweet, aligned with corpus.records.
std::vector<corpus::Generation> tweet_generations(const corpus::Corpus& corpus);

}  // namespace botdrift::relations
