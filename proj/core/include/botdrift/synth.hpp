#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "botdrift/corpus.hpp"
#include "botdrift/features.hpp"

namespace botdrift::synth {

/// Seeded stream: std::mt19937_64 (fully specified by the standard) with
/// in-house transforms, so draws do not depend on the standard library's
/// distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform in [0, 1) with 53 random bits.
    double uniform();
    /// Uniform integer in [0, bound) by rejection (bound > 0).
    std::uint64_t below(std::uint64_t bound);
    /// Standard normal via Box-Muller (one draw cached).
    double normal();
    bool bernoulli(double p) { return uniform() < p; }

private:
    std::mt19937_64 engine_;
    std::optional<double> spare_;
};

/// count(t) = max(0, round(intercept + slope * t + noise * N(0,1))), t = year - first year.
struct RateFunction {
    double intercept = 0.0;
    double slope = 0.0;
    double noise = 0.0;
};

/// Per-tweet probabilities of the content levers.
struct ContentRates {
    double url = 0.5;
    double single_hashtag = 0.2;
    double multi_hashtag = 0.2;
    double positive = 0.2;
    double negative = 0.1;
    double emoji = 0.15;
    double media = 0.25;
    double template_reuse = 0.5;  // share of tweets copied from an account template
    double language_hint = 0.9;   // share of tweets carrying a language hint
};

struct PlantedCorrelation {
    features::Feature fi;
    features::Feature fj;
    double rho = 0.0;
    corpus::Generation generation = corpus::Generation::G3;
};

struct SynthSpec {
    std::uint64_t seed = 1;
    std::size_t accounts_per_generation = 40;
    corpus::Interval years{2009, 2020};
    corpus::GenerationBounds generations;

    RateFunction tweeting{200.0, 10.0, 0.0};
    RateFunction retweeting{80.0, 5.0, 0.0};
    RateFunction replying{20.0, 2.0, 0.0};

    ContentRates content;
    /// Lever multipliers per generation, keys as in ContentRates ("url", ...).
    std::map<corpus::Generation, std::map<std::string, double>> stratum_multipliers;
    std::vector<PlantedCorrelation> correlations;

    /// tweet_only / retweet_only / mixed shares of account styles.
    std::array<double, 3> action_profile_mix{0.3, 0.1, 0.6};
    std::size_t templates_per_account = 3;
    std::size_t max_languages_per_account = 4;
};

/// Parses the JSON spec file format. Throws Error(config) on bad fields.
SynthSpec parse_spec(const std::string& json_text);
SynthSpec load_spec(const std::string& path);

/// Joint 2x2 probabilities {p11, p10, p01, p00} with the given marginals and
/// phi. Throws Error(infeasible_spec) naming the Fréchet bound when phi is
/// not attainable.
std::array<double, 4> joint_table(double p_i, double p_j, double phi);

/// Attainable phi range [lo, hi] for two binary marginals.
std::pair<double, double> phi_bounds(double p_i, double p_j) noexcept;

/// Generates the records in corpus JSONL order. Same spec, same bytes.
/// Throws Error(infeasible_spec) for unsatisfiable specs.
std::vector<corpus::TweetRecord> generate(const SynthSpec& spec);

void write_corpus(std::ostream& out, const SynthSpec& spec);

}  // namespace botdrift::synth
