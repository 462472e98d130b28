#include "botdrift/relations.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "botdrift/csv.hpp"
#include "botdrift/error.hpp"
#include "botdrift/parallel.hpp"
#include "botdrift/stats/distributions.hpp"

namespace botdrift::relations {

namespace {

// Midranks (1-based) of x; ties share the mean of their positions.
std::vector<double> midranks(std::span<const double> x) {
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> ranks(x.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) {
            ++j;
        }
        const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) {
            ranks[order[k]] = r;
        }
        i = j + 1;
    }
    return ranks;
}

// Centred copy and its sum of squares; zero means the column is constant.
double centre(std::vector<double>& v) {
    if (v.empty()) {
        return 0.0;
    }
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double ss = 0.0;
    for (double& e : v) {
        e -= mean;
        ss += e * e;
    }
    return ss;
}

double pearson_centred(const std::vector<double>& a, double ssa, const std::vector<double>& b,
                       double ssb) {
    double sab = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += a[i] * b[i];
    }
    return std::clamp(sab / std::sqrt(ssa * ssb), -1.0, 1.0);
}

constexpr std::array<std::string_view, 7> kCategoryNames = {"SN", "MN", "WN", "NP",
                                                            "WP", "MP", "SP"};

}  // namespace

ContingencyTable2x2 build_contingency(std::span<const FeatureVector> vectors, Feature fi,
                                      Feature fj) {
    if (fi == fj) {
        fail(ErrorCode::precondition, "contingency table of a feature with itself");
    }
    if (vectors.empty()) {
        fail(ErrorCode::empty_population, "contingency table over zero tweets");
    }
    ContingencyTable2x2 t;
    for (const auto& v : vectors) {
        const bool a = v[fi];
        const bool b = v[fj];
        if (a && b) {
            ++t.n11;
        } else if (a) {
            ++t.n10;
        } else if (b) {
            ++t.n01;
        } else {
            ++t.n00;
        }
    }
    return t;
}

Chi2Result chi2_test(const ContingencyTable2x2& t, bool yates) {
    const auto n = static_cast<long double>(t.n());
    const auto r1 = static_cast<long double>(t.n11 + t.n10);
    const auto r0 = static_cast<long double>(t.n01 + t.n00);
    const auto c1 = static_cast<long double>(t.n11 + t.n01);
    const auto c0 = static_cast<long double>(t.n10 + t.n00);
    if (r1 == 0 || r0 == 0 || c1 == 0 || c0 == 0) {
        fail(ErrorCode::undefined_test,
             "chi-square undefined: a marginal is zero (table " + std::to_string(t.n11) + "," +
                 std::to_string(t.n10) + "," + std::to_string(t.n01) + "," +
                 std::to_string(t.n00) + ")");
    }
    long double diff = std::fabs(static_cast<long double>(t.n11) * static_cast<long double>(t.n00) -
                                 static_cast<long double>(t.n10) * static_cast<long double>(t.n01));
    if (yates) {
        diff = std::max(0.0L, diff - n / 2.0L);
    }
    Chi2Result r;
    r.chi2 = static_cast<double>(n * diff * diff / (r1 * r0 * c1 * c0));
    r.p_value = stats::chi2_1_sf(r.chi2);
    r.low_expected_count = std::min({r1, r0}) * std::min({c1, c0}) / n < 5.0L;
    return r;
}

double cramers_v(const ContingencyTable2x2& table, bool yates) {
    const Chi2Result r = chi2_test(table, yates);
    return std::clamp(std::sqrt(r.chi2 / static_cast<double>(table.n())), 0.0, 1.0);
}

std::vector<DependencyCell> dependency_analysis(std::span<const FeatureVector> vectors,
                                                double alpha, bool yates, std::size_t threads) {
    if (vectors.empty()) {
        fail(ErrorCode::empty_population, "dependency analysis over zero tweets");
    }
    const auto& pairs = features::all_pairs();
    std::vector<DependencyCell> cells(pairs.size());
    parallel_for(
        pairs.size(),
        [&](std::size_t k) {
            const auto [fi, fj] = pairs[k];
            DependencyCell c{fi, fj, std::nullopt, 0.0, false,
                             features::structurally_exclusive(fi, fj)};
            const ContingencyTable2x2 t = build_contingency(vectors, fi, fj);
            try {
                c.test = chi2_test(t, yates);
                c.cramers_v =
                    std::clamp(std::sqrt(c.test->chi2 / static_cast<double>(t.n())), 0.0, 1.0);
                c.dependent = c.test->p_value < alpha / kBonferroniFamily;
            } catch (const Error& e) {
                if (e.code() != ErrorCode::undefined_test) {
                    throw;
                }
            }
            cells[k] = c;
        },
        threads);
    return cells;
}

std::vector<std::string> dependency_header() {
    return {"Fi", "Fj", "chi2", "p", "cramers_v", "dependent", "structural", "low_expected_count"};
}

void write_dependency_csv(std::ostream& out, std::span<const DependencyCell> cells) {
    csv::Writer w(out);
    w.row(dependency_header());
    for (const auto& c : cells) {
        if (c.test) {
            w.row({features::name(c.fi), features::name(c.fj), csv::format_number(c.test->chi2),
                   csv::format_number(c.test->p_value), csv::format_number(c.cramers_v),
                   csv::format_bool(c.dependent), csv::format_bool(c.structural),
                   csv::format_bool(c.test->low_expected_count)});
        } else {
            w.row({features::name(c.fi), features::name(c.fj), "NA", "NA", "NA",
                   csv::format_bool(false), csv::format_bool(c.structural), "NA"});
        }
    }
}

double spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        fail(ErrorCode::precondition, "spearman inputs differ in length");
    }
    if (x.size() < 2) {
        fail(ErrorCode::undefined_correlation, "spearman needs at least two observations");
    }
    std::vector<double> rx = midranks(x);
    std::vector<double> ry = midranks(y);
    const double sx = centre(rx);
    const double sy = centre(ry);
    if (sx == 0.0 || sy == 0.0) {
        fail(ErrorCode::undefined_correlation, "spearman of a constant column");
    }
    return pearson_centred(rx, sx, ry, sy);
}

double spearman_binary(std::span<const FeatureVector> vectors,
                       std::span<const corpus::Generation> generations, Feature fi, Feature fj,
                       corpus::Generation generation) {
    if (vectors.size() != generations.size()) {
        fail(ErrorCode::precondition, "generation labels not aligned with feature vectors");
    }
    std::vector<double> x;
    std::vector<double> y;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (generations[i] == generation) {
            x.push_back(vectors[i][fi] ? 1.0 : 0.0);
            y.push_back(vectors[i][fj] ? 1.0 : 0.0);
        }
    }
    return spearman(x, y);
}

std::string_view to_string(Category c) noexcept { return kCategoryNames[static_cast<std::size_t>(c)]; }

std::optional<Category> parse_category(std::string_view s) noexcept {
    for (std::size_t i = 0; i < kCategoryNames.size(); ++i) {
        if (kCategoryNames[i] == s) {
            return kCategories[i];
        }
    }
    // The NP band is labelled NC in some tables.
    if (s == "NC") {
        return Category::NP;
    }
    return std::nullopt;
}

Category categorize(double rho, const Thresholds& th) {
    if (!(std::fabs(rho) <= 1.0)) {
        fail(ErrorCode::domain, "correlation outside [-1, 1]: " + csv::format_number(rho));
    }
    if (std::fabs(rho) <= th.eps_np) return Category::NP;
    if (rho >= th.tau_sp) return Category::SP;
    if (rho >= th.tau_mp) return Category::MP;
    if (rho > 0.0) return Category::WP;
    if (rho <= -th.tau_sp) return Category::SN;
    if (rho <= -th.tau_mp) return Category::MN;
    return Category::WN;
}

std::size_t CategoryMatrix::slot(Feature i, Feature j) noexcept {
    return features::index(i) * kFeatureCount + features::index(j);
}

void CategoryMatrix::set(Feature i, Feature j, Category c, double rho, bool degenerate) {
    if (i == j) {
        fail(ErrorCode::precondition, "category matrix diagonal is unset by definition");
    }
    for (std::size_t s : {slot(i, j), slot(j, i)}) {
        entries_[s] = c;
        rho_[s] = rho;
        degenerate_[s] = degenerate;
    }
}

std::optional<Category> CategoryMatrix::at(Feature i, Feature j) const {
    if (i == j) {
        return std::nullopt;
    }
    return entries_[slot(i, j)];
}

double CategoryMatrix::rho(Feature i, Feature j) const { return rho_[slot(i, j)]; }

bool CategoryMatrix::degenerate(Feature i, Feature j) const { return degenerate_[slot(i, j)]; }

std::vector<std::pair<Feature, Feature>> CategoryMatrix::missing() const {
    std::vector<std::pair<Feature, Feature>> out;
    for (const auto& [i, j] : features::all_pairs()) {
        if (!entries_[slot(i, j)]) {
            out.emplace_back(i, j);
        }
    }
    return out;
}

CategoryMatrix build_category_matrix(std::span<const FeatureVector> vectors,
                                     std::span<const corpus::Generation> generations,
                                     corpus::Generation generation, const Thresholds& thresholds,
                                     std::size_t threads) {
    if (vectors.size() != generations.size()) {
        fail(ErrorCode::precondition, "generation labels not aligned with feature vectors");
    }
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (generations[i] == generation) {
            members.push_back(i);
        }
    }

    // Ranks per feature column once; each pair is then a Pearson on ranks.
    std::array<std::vector<double>, kFeatureCount> ranks;
    std::array<double, kFeatureCount> ss{};
    parallel_for(
        kFeatureCount,
        [&](std::size_t f) {
            std::vector<double> col(members.size());
            for (std::size_t k = 0; k < members.size(); ++k) {
                col[k] = vectors[members[k]].f.test(f) ? 1.0 : 0.0;
            }
            ranks[f] = midranks(col);
            ss[f] = members.size() < 2 ? 0.0 : centre(ranks[f]);
        },
        threads);

    const auto& pairs = features::all_pairs();
    std::vector<double> rho(pairs.size(), 0.0);
    std::vector<bool> degenerate(pairs.size(), false);
    parallel_for(
        pairs.size(),
        [&](std::size_t k) {
            const std::size_t i = features::index(pairs[k].first);
            const std::size_t j = features::index(pairs[k].second);
            if (ss[i] == 0.0 || ss[j] == 0.0) {
                degenerate[k] = true;
                return;
            }
            rho[k] = pearson_centred(ranks[i], ss[i], ranks[j], ss[j]);
        },
        threads);

    CategoryMatrix m(std::string(corpus::to_string(generation)));
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const Category c = degenerate[k] ? Category::NP : categorize(rho[k], thresholds);
        m.set(pairs[k].first, pairs[k].second, c, rho[k], degenerate[k]);
    }
    return m;
}

std::array<std::size_t, 7> category_distribution(const CategoryMatrix& matrix) {
    const auto absent = matrix.missing();
    if (!absent.empty()) {
        std::string list;
        for (const auto& [i, j] : absent) {
            list += (list.empty() ? "" : ", ") + features::name(i) + "-" + features::name(j);
        }
        fail(ErrorCode::missing_pairs,
             std::to_string(absent.size()) + " pairs missing from matrix " +
                 matrix.generation() + ": " + list);
    }
    std::array<std::size_t, 7> counts{};
    for (const auto& [i, j] : features::all_pairs()) {
        ++counts[static_cast<std::size_t>(*matrix.at(i, j))];
    }
    return counts;
}

std::vector<std::string> category_header() {
    return {"Fi", "Fj", "rho", "category", "degenerate_flag"};
}

void write_category_csv(std::ostream& out, const CategoryMatrix& matrix) {
    csv::Writer w(out);
    w.row(category_header());
    for (const auto& [i, j] : features::all_pairs()) {
        const auto c = matrix.at(i, j);
        if (!c) {
            continue;
        }
        w.row({features::name(i), features::name(j), csv::format_number(matrix.rho(i, j)),
               std::string(to_string(*c)), csv::format_bool(matrix.degenerate(i, j))});
    }
}

CategoryMatrix read_category_csv(const std::string& path, std::string generation) {
    const csv::Table table = csv::read_file(path);
    if (table.header != category_header()) {
        fail(ErrorCode::schema, path + ": category matrix header mismatch");
    }
    CategoryMatrix m(std::move(generation));
    for (const auto& row : table.rows) {
        auto bad = [&](const std::string& why) {
            fail(ErrorCode::schema, path + ":" + std::to_string(row.line) + ": " + why);
        };
        if (row.fields.size() != 5) {
            bad("wrong column count");
        }
        const auto fi = features::parse_feature(row.fields[0]);
        const auto fj = features::parse_feature(row.fields[1]);
        const auto rho = csv::parse_double(row.fields[2]);
        const auto cat = parse_category(row.fields[3]);
        const auto deg = csv::parse_bool(row.fields[4]);
        if (!fi || !fj || *fi == *fj || !rho || !cat || !deg) {
            bad("malformed category row");
        }
        m.set(*fi, *fj, *cat, *rho, *deg);
    }
    return m;
}

std::vector<corpus::Generation> tweet_generations(const corpus::Corpus& corpus) {
    std::vector<corpus::Generation> out;
    out.reserve(corpus.records.size());
    for (const auto& r : corpus.records) {
        out.push_back(corpus.profile_of(r).generation);
    }
    return out;
}

}  // namespace botdrift::relations
