#pragma once

// Shared builders for unit and acceptance tests.

#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "botdrift/corpus.hpp"
#include "botdrift/features.hpp"
#include "botdrift/relations.hpp"
#include "botdrift/synth.hpp"
#include "botdrift/transitions.hpp"

namespace fixtures {

using botdrift::corpus::Action;
using botdrift::corpus::Media;
using botdrift::corpus::TweetRecord;
using botdrift::relations::Category;

inline TweetRecord tweet(std::string id, std::string account, int year,
                         Action action = Action::original, std::string text = "hello world") {
    TweetRecord r;
    r.tweet_id = std::move(id);
    r.account_id = std::move(account);
    r.created_at = {year, 6, 15};
    r.action = action;
    r.text = std::move(text);
    return r;
}

inline std::filesystem::path scratch_dir(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("botdrift_test_" + name);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

inline void write_text(const std::filesystem::path& p, const std::string& body) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << body;
}

inline std::string read_text(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

/// Random corpus produced by the generator, sized by accounts per generation.
inline botdrift::synth::SynthSpec small_spec(std::uint64_t seed, std::size_t accounts = 10) {
    botdrift::synth::SynthSpec s;
    s.seed = seed;
    s.accounts_per_generation = accounts;
    s.tweeting = {60.0, 4.0, 3.0};
    s.retweeting = {30.0, 2.0, 2.0};
    s.replying = {10.0, 1.0, 1.0};
    return s;
}

/// Category triplets (C1, C2, C3) with multiplicities that realise the
/// reference per-generation distributions and the nine-cell census at once.
struct TripletCount {
    std::array<Category, 3> cats;
    std::size_t count;
};

inline const std::vector<TripletCount>& reference_triplets() {
    using C = Category;
    static const std::vector<TripletCount> t = {
        {{C::SN, C::SN, C::MN}, 6},  {{C::SN, C::WN, C::WP}, 1},  {{C::MN, C::SN, C::MN}, 2},
        {{C::MN, C::MN, C::MN}, 19}, {{C::MN, C::MN, C::WN}, 1},  {{C::MN, C::WN, C::MN}, 3},
        {{C::WN, C::MN, C::SN}, 9},  {{C::WN, C::MN, C::MN}, 15}, {{C::WN, C::WN, C::MN}, 8},
        {{C::WN, C::WP, C::MP}, 2},  {{C::NP, C::WN, C::SN}, 2},  {{C::NP, C::WN, C::MN}, 8},
        {{C::NP, C::WN, C::WN}, 11}, {{C::NP, C::WP, C::MP}, 12}, {{C::WP, C::WP, C::WP}, 4},
        {{C::WP, C::MP, C::WP}, 8},  {{C::WP, C::MP, C::MP}, 22}, {{C::MP, C::WP, C::MP}, 10},
        {{C::MP, C::MP, C::MP}, 6},  {{C::MP, C::MP, C::SP}, 4},
    };
    return t;
}

/// Three matrices assigning the reference triplets to the 153 pairs in order.
inline std::array<botdrift::relations::CategoryMatrix, 3> reference_matrices() {
    std::array<botdrift::relations::CategoryMatrix, 3> m = {
        botdrift::relations::CategoryMatrix("G1"), botdrift::relations::CategoryMatrix("G2"),
        botdrift::relations::CategoryMatrix("G3")};
    const auto& pairs = botdrift::features::all_pairs();
    std::size_t next = 0;
    for (const auto& t : reference_triplets()) {
        for (std::size_t k = 0; k < t.count; ++k, ++next) {
            for (std::size_t g = 0; g < 3; ++g) {
                m[g].set(pairs.at(next).first, pairs.at(next).second, t.cats[g], 0.0);
            }
        }
    }
    return m;
}

/// Random binary columns as feature vectors (only F1/F2 slots are filled).
inline std::vector<double> bernoulli_column(std::mt19937_64& rng, std::size_t n, double p) {
    std::bernoulli_distribution d(p);
    std::vector<double> v(n);
    for (auto& x : v) {
        x = d(rng) ? 1.0 : 0.0;
    }
    return v;
}

inline double phi_oracle(const std::vector<double>& x, const std::vector<double>& y) {
    long double n11 = 0, n10 = 0, n01 = 0, n00 = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] > 0.5 && y[i] > 0.5) ++n11;
        else if (x[i] > 0.5) ++n10;
        else if (y[i] > 0.5) ++n01;
        else ++n00;
    }
    const long double num = n11 * n00 - n10 * n01;
    const long double den = std::sqrt((n11 + n10) * (n01 + n00) * (n11 + n01) * (n10 + n00));
    return static_cast<double>(num / den);
}

/// Textbook Pearson chi-square over expected counts.
inline double chi2_oracle(double a, double b, double c, double d) {
    const double n = a + b + c + d;
    const double obs[2][2] = {{a, b}, {c, d}};
    const double row[2] = {a + b, c + d};
    const double col[2] = {a + c, b + d};
    double x = 0.0;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const double e = row[i] * col[j] / n;
            x += (obs[i][j] - e) * (obs[i][j] - e) / e;
        }
    }
    return x;
}

}  // namespace fixtures
