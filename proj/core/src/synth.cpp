#include "botdrift/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "botdrift/csv.hpp"
#include "botdrift/error.hpp"
#include "botdrift/text.hpp"

namespace botdrift::synth {

using nlohmann::json;

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) {
        fail(ErrorCode::precondition, "Rng::below needs a positive bound");
    }
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t v = engine_();
    while (v >= limit) {
        v = engine_();
    }
    return v % bound;
}

double Rng::normal() {
    if (spare_) {
        const double v = *spare_;
        spare_.reset();
        return v;
    }
    double u1 = uniform();
    while (u1 <= 0.0) {
        u1 = uniform();
    }
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(a);
    return r * std::cos(a);
}

namespace {

// Content levers a planted correlation can drive, and the feature each sets.
enum class Lever : std::uint8_t { url, multi_hashtag, positive, negative, emoji, media };

struct LeverBinding {
    Lever lever;
    bool complement;  // feature is true when the lever is off
};

std::optional<LeverBinding> binding_of(features::Feature f) {
    using features::Feature;
    switch (f) {
        case Feature::F7: return LeverBinding{Lever::url, false};
        case Feature::F8: return LeverBinding{Lever::url, true};
        case Feature::F10: return LeverBinding{Lever::multi_hashtag, false};
        case Feature::F12: return LeverBinding{Lever::positive, false};
        case Feature::F13: return LeverBinding{Lever::negative, false};
        case Feature::F15: return LeverBinding{Lever::emoji, false};
        case Feature::F16: return LeverBinding{Lever::emoji, true};
        case Feature::F17: return LeverBinding{Lever::media, false};
        case Feature::F18: return LeverBinding{Lever::media, true};
        default: return std::nullopt;
    }
}

constexpr std::array<std::string_view, 9> kContentKeys = {
    "url", "single_hashtag", "multi_hashtag", "positive", "negative",
    "emoji", "media", "template_reuse", "language_hint"};

double& rate_ref(ContentRates& c, std::string_view key) {
    if (key == "url") return c.url;
    if (key == "single_hashtag") return c.single_hashtag;
    if (key == "multi_hashtag") return c.multi_hashtag;
    if (key == "positive") return c.positive;
    if (key == "negative") return c.negative;
    if (key == "emoji") return c.emoji;
    if (key == "media") return c.media;
    if (key == "template_reuse") return c.template_reuse;
    if (key == "language_hint") return c.language_hint;
    fail(ErrorCode::config, "unknown content rate '" + std::string(key) + "'");
}

double lever_rate(const ContentRates& c, Lever l) {
    switch (l) {
        case Lever::url: return c.url;
        case Lever::multi_hashtag: return c.multi_hashtag;
        case Lever::positive: return c.positive;
        case Lever::negative: return c.negative;
        case Lever::emoji: return c.emoji;
        case Lever::media: return c.media;
    }
    return 0.0;
}

void validate_rates(const ContentRates& c, const std::string& where) {
    ContentRates copy = c;
    for (auto key : kContentKeys) {
        const double v = rate_ref(copy, key);
        if (!(v >= 0.0 && v <= 1.0)) {
            fail(ErrorCode::config, where + ": content rate " + std::string(key) +
                                        " must lie in [0, 1]");
        }
    }
    if (c.single_hashtag + c.multi_hashtag > 1.0 + 1e-12) {
        fail(ErrorCode::config, where + ": single_hashtag + multi_hashtag exceeds 1");
    }
    if (c.positive + c.negative > 1.0 + 1e-12) {
        fail(ErrorCode::config, where + ": positive + negative exceeds 1");
    }
}

ContentRates rates_for(const SynthSpec& spec, corpus::Generation g) {
    ContentRates c = spec.content;
    auto it = spec.stratum_multipliers.find(g);
    if (it != spec.stratum_multipliers.end()) {
        for (const auto& [key, mult] : it->second) {
            double& r = rate_ref(c, key);
            r = std::clamp(r * mult, 0.0, 1.0);
        }
    }
    validate_rates(c, "generation " + std::string(corpus::to_string(g)));
    return c;
}

struct PlantedPair {
    LeverBinding a;
    LeverBinding b;
    std::array<double, 4> table;  // p11, p10, p01, p00 over the two levers
};

std::vector<PlantedPair> planted_for(const SynthSpec& spec, corpus::Generation g,
                                     const ContentRates& rates) {
    std::vector<PlantedPair> out;
    std::set<Lever> used;
    for (const auto& pc : spec.correlations) {
        if (pc.generation != g) {
            continue;
        }
        const auto a = binding_of(pc.fi);
        const auto b = binding_of(pc.fj);
        const std::string label = features::name(pc.fi) + "-" + features::name(pc.fj);
        if (!a || !b) {
            fail(ErrorCode::config, "planted pair " + label +
                                        ": only F7, F8, F10, F12, F13, F15-F18 can be planted");
        }
        if (features::structurally_exclusive(pc.fi, pc.fj) || a->lever == b->lever ||
            (a->lever == Lever::positive && b->lever == Lever::negative) ||
            (a->lever == Lever::negative && b->lever == Lever::positive)) {
            fail(ErrorCode::infeasible_spec,
                 "planted pair " + label + " is structurally constrained within one family");
        }
        if (used.count(a->lever) != 0 || used.count(b->lever) != 0) {
            fail(ErrorCode::config, "planted pair " + label + " reuses a lever already planted in " +
                                        std::string(corpus::to_string(g)));
        }
        used.insert(a->lever);
        used.insert(b->lever);
        // Complemented features flip the sign of phi on the lever scale.
        const double phi = pc.rho * (a->complement != b->complement ? -1.0 : 1.0);
        const double pa = lever_rate(rates, a->lever);
        const double pb = lever_rate(rates, b->lever);
        const double fa = a->complement ? 1.0 - pa : pa;
        const double fb = b->complement ? 1.0 - pb : pb;
        try {
            (void)joint_table(fa, fb, pc.rho);
        } catch (const Error& e) {
            fail(ErrorCode::infeasible_spec, "planted pair " + label + " in " +
                                                 std::string(corpus::to_string(g)) + ": " +
                                                 e.what());
        }
        out.push_back(PlantedPair{*a, *b, joint_table(pa, pb, phi)});
    }
    return out;
}

struct PlannedAccount {
    std::string id;
    int first_year = 0;
    int last_year = 0;
    corpus::ActionProfile style = corpus::ActionProfile::mixed;
    std::vector<std::string> templates;
    std::vector<std::string> languages;
};

constexpr std::array<std::string_view, 10> kLanguages = {"en", "es", "fr", "de", "ja",
                                                         "pt", "ar", "tr", "it", "ru"};
constexpr std::array<std::string_view, 2> kPositiveWords = {"great", "awesome"};
constexpr std::array<std::string_view, 2> kNegativeWords = {"terrible", "awful"};
constexpr std::array<std::string_view, 6> kEmojis = {"\U0001F600", "\U0001F525", "\U0001F680",
                                                     "❤️", "\U0001F44D\U0001F3FD",
                                                     "\U0001F1FA\U0001F1F8"};
constexpr std::size_t kVocabulary = 4000;

// Neutral filler: letter-digit tokens that no lexicon entry can match.
std::string filler_token(Rng& rng) { return "qx" + std::to_string(rng.below(kVocabulary)); }

std::string fresh_text(Rng& rng) {
    const std::size_t len = 5 + rng.below(4);
    std::string s;
    for (std::size_t i = 0; i < len; ++i) {
        if (i > 0) {
            s.push_back(' ');
        }
        s += filler_token(rng);
    }
    return s;
}

corpus::ActionProfile pick_style(Rng& rng, const std::array<double, 3>& mix) {
    const double total = mix[0] + mix[1] + mix[2];
    const double u = rng.uniform() * total;
    if (u < mix[0]) return corpus::ActionProfile::tweet_only;
    if (u < mix[0] + mix[1]) return corpus::ActionProfile::retweet_only;
    return corpus::ActionProfile::mixed;
}

bool eligible(corpus::ActionProfile style, corpus::Action a) {
    switch (a) {
        case corpus::Action::original: return style != corpus::ActionProfile::retweet_only;
        case corpus::Action::retweet: return style != corpus::ActionProfile::tweet_only;
        case corpus::Action::reply: return style == corpus::ActionProfile::mixed;
    }
    return false;
}

std::int64_t yearly_count(Rng& rng, const RateFunction& f, int t) {
    double v = f.intercept + f.slope * static_cast<double>(t);
    if (f.noise > 0.0) {
        v += f.noise * rng.normal();
    }
    return std::max<std::int64_t>(0, std::llround(v));
}

int sample_cell(Rng& rng, const std::array<double, 4>& table) {
    const double u = rng.uniform();
    double acc = 0.0;
    for (int k = 0; k < 3; ++k) {
        acc += table[static_cast<std::size_t>(k)];
        if (u < acc) {
            return k;
        }
    }
    return 3;
}

// JSON helpers for the spec format.
double number(const json& j, const std::string& key) {
    if (!j.is_number()) {
        fail(ErrorCode::config, "synth spec: '" + key + "' must be a number");
    }
    return j.get<double>();
}

std::uint64_t count(const json& j, const std::string& key) {
    if (!j.is_number_integer() || j.get<std::int64_t>() < 0) {
        fail(ErrorCode::config, "synth spec: '" + key + "' must be a non-negative integer");
    }
    return j.get<std::uint64_t>();
}

corpus::Interval interval(const json& j, const std::string& key) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() ||
        !j[1].is_number_integer()) {
        fail(ErrorCode::config, "synth spec: '" + key + "' must be [first, last]");
    }
    return {j[0].get<int>(), j[1].get<int>()};
}

RateFunction rate_function(const json& j, const std::string& key) {
    if (!j.is_object()) {
        fail(ErrorCode::config, "synth spec: '" + key + "' must be an object");
    }
    RateFunction f;
    for (const auto& [k, v] : j.items()) {
        if (k == "intercept") f.intercept = number(v, key + ".intercept");
        else if (k == "slope") f.slope = number(v, key + ".slope");
        else if (k == "noise") f.noise = number(v, key + ".noise");
        else fail(ErrorCode::config, "synth spec: unknown field '" + key + "." + k + "'");
    }
    if (f.noise < 0.0) {
        fail(ErrorCode::config, "synth spec: '" + key + ".noise' must be >= 0");
    }
    return f;
}

}  // namespace

std::pair<double, double> phi_bounds(double p_i, double p_j) noexcept {
    const double denom = std::sqrt(p_i * (1.0 - p_i) * p_j * (1.0 - p_j));
    if (denom == 0.0) {
        return {0.0, 0.0};
    }
    const double lo11 = std::max(0.0, p_i + p_j - 1.0);
    const double hi11 = std::min(p_i, p_j);
    return {std::max(-1.0, (lo11 - p_i * p_j) / denom), std::min(1.0, (hi11 - p_i * p_j) / denom)};
}

std::array<double, 4> joint_table(double p_i, double p_j, double phi) {
    if (!(p_i >= 0.0 && p_i <= 1.0 && p_j >= 0.0 && p_j <= 1.0)) {
        fail(ErrorCode::infeasible_spec, "marginals must lie in [0, 1]");
    }
    if (!(std::fabs(phi) <= 1.0)) {
        fail(ErrorCode::infeasible_spec, "target correlation must lie in [-1, 1]");
    }
    const auto [lo, hi] = phi_bounds(p_i, p_j);
    const std::string marg =
        " for marginals " + csv::format_number(p_i) + "/" + csv::format_number(p_j);
    constexpr double slack = 1e-12;
    if (phi > hi + slack) {
        fail(ErrorCode::infeasible_spec, "phi " + csv::format_number(phi) +
                                             " exceeds the Frechet upper bound " +
                                             csv::format_number(hi) + marg);
    }
    if (phi < lo - slack) {
        fail(ErrorCode::infeasible_spec, "phi " + csv::format_number(phi) +
                                             " is below the Frechet lower bound " +
                                             csv::format_number(lo) + marg);
    }
    const double denom = std::sqrt(p_i * (1.0 - p_i) * p_j * (1.0 - p_j));
    const double p11 = std::clamp(p_i * p_j + phi * denom, std::max(0.0, p_i + p_j - 1.0),
                                  std::min(p_i, p_j));
    const double p10 = p_i - p11;
    const double p01 = p_j - p11;
    const double p00 = std::max(0.0, 1.0 - p11 - p10 - p01);
    return {p11, std::max(0.0, p10), std::max(0.0, p01), p00};
}

SynthSpec parse_spec(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        fail(ErrorCode::config, std::string("synth spec is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        fail(ErrorCode::config, "synth spec must be a JSON object");
    }
    SynthSpec spec;
    std::optional<std::array<corpus::Interval, 3>> cohorts;
    for (const auto& [key, v] : doc.items()) {
        if (key == "seed") {
            spec.seed = count(v, key);
        } else if (key == "accounts_per_generation") {
            spec.accounts_per_generation = count(v, key);
        } else if (key == "years") {
            spec.years = interval(v, key);
        } else if (key == "generations") {
            if (!v.is_array() || v.size() != 3) {
                fail(ErrorCode::config, "synth spec: 'generations' needs three intervals");
            }
            cohorts = std::array<corpus::Interval, 3>{interval(v[0], key), interval(v[1], key),
                                                      interval(v[2], key)};
        } else if (key == "rates") {
            if (!v.is_object()) {
                fail(ErrorCode::config, "synth spec: 'rates' must be an object");
            }
            for (const auto& [action, f] : v.items()) {
                if (action == "tweeting") spec.tweeting = rate_function(f, "rates.tweeting");
                else if (action == "retweeting") spec.retweeting = rate_function(f, "rates.retweeting");
                else if (action == "replying") spec.replying = rate_function(f, "rates.replying");
                else fail(ErrorCode::config, "synth spec: unknown rate '" + action + "'");
            }
        } else if (key == "content") {
            if (!v.is_object()) {
                fail(ErrorCode::config, "synth spec: 'content' must be an object");
            }
            for (const auto& [k, r] : v.items()) {
                rate_ref(spec.content, k) = number(r, "content." + k);
            }
        } else if (key == "stratum_multipliers") {
            if (!v.is_object()) {
                fail(ErrorCode::config, "synth spec: 'stratum_multipliers' must be an object");
            }
            for (const auto& [g, m] : v.items()) {
                const auto gen = corpus::parse_generation(g);
                if (!gen || *gen == corpus::Generation::outside || !m.is_object()) {
                    fail(ErrorCode::config, "synth spec: bad stratum multiplier '" + g + "'");
                }
                for (const auto& [k, x] : m.items()) {
                    ContentRates probe;
                    (void)rate_ref(probe, k);
                    const double mult = number(x, "stratum_multipliers." + g + "." + k);
                    if (mult < 0.0) {
                        fail(ErrorCode::config, "synth spec: multipliers must be >= 0");
                    }
                    spec.stratum_multipliers[*gen][k] = mult;
                }
            }
        } else if (key == "correlations") {
            if (!v.is_array()) {
                fail(ErrorCode::config, "synth spec: 'correlations' must be an array");
            }
            for (const auto& c : v) {
                if (!c.is_object() || !c.contains("fi") || !c.contains("fj") ||
                    !c.contains("rho") || !c["fi"].is_string() || !c["fj"].is_string()) {
                    fail(ErrorCode::config, "synth spec: correlation needs fi, fj and rho");
                }
                PlantedCorrelation pc;
                const auto fi = features::parse_feature(c["fi"].get<std::string>());
                const auto fj = features::parse_feature(c["fj"].get<std::string>());
                if (!fi || !fj || *fi == *fj) {
                    fail(ErrorCode::config, "synth spec: bad correlation features");
                }
                pc.fi = *fi;
                pc.fj = *fj;
                pc.rho = number(c["rho"], "correlations.rho");
                if (std::fabs(pc.rho) > 1.0) {
                    fail(ErrorCode::config, "synth spec: |rho| must be <= 1");
                }
                if (c.contains("generation")) {
                    const auto g = c["generation"].is_string()
                                       ? corpus::parse_generation(c["generation"].get<std::string>())
                                       : std::nullopt;
                    if (!g || *g == corpus::Generation::outside) {
                        fail(ErrorCode::config, "synth spec: bad correlation generation");
                    }
                    pc.generation = *g;
                }
                spec.correlations.push_back(pc);
            }
        } else if (key == "action_profile_mix") {
            if (!v.is_object()) {
                fail(ErrorCode::config, "synth spec: 'action_profile_mix' must be an object");
            }
            for (const auto& [k, x] : v.items()) {
                const double share = number(x, "action_profile_mix." + k);
                if (share < 0.0) {
                    fail(ErrorCode::config, "synth spec: action_profile_mix shares must be >= 0");
                }
                if (k == "tweet_only") spec.action_profile_mix[0] = share;
                else if (k == "retweet_only") spec.action_profile_mix[1] = share;
                else if (k == "mixed") spec.action_profile_mix[2] = share;
                else fail(ErrorCode::config, "synth spec: unknown action profile '" + k + "'");
            }
        } else if (key == "templates_per_account") {
            spec.templates_per_account = count(v, key);
        } else if (key == "max_languages_per_account") {
            spec.max_languages_per_account = count(v, key);
        } else {
            fail(ErrorCode::config, "synth spec: unknown field '" + key + "'");
        }
    }
    try {
        if (cohorts) {
            spec.generations = corpus::GenerationBounds(*cohorts);
        }
    } catch (const Error& e) {
        fail(ErrorCode::config, std::string("synth spec: ") + e.what());
    }
    if (spec.years.last < spec.years.first) {
        fail(ErrorCode::config, "synth spec: years must be ordered");
    }
    if (spec.accounts_per_generation == 0) {
        fail(ErrorCode::config, "synth spec: accounts_per_generation must be >= 1");
    }
    const auto& mix = spec.action_profile_mix;
    if (mix[0] + mix[1] + mix[2] <= 0.0) {
        fail(ErrorCode::config, "synth spec: action_profile_mix must have a positive share");
    }
    if (spec.templates_per_account == 0 || spec.max_languages_per_account == 0 ||
        spec.max_languages_per_account > kLanguages.size()) {
        fail(ErrorCode::config, "synth spec: templates_per_account >= 1 and "
                                "max_languages_per_account in [1, 10] required");
    }
    validate_rates(spec.content, "content");
    return spec;
}

SynthSpec load_spec(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(ErrorCode::io, "cannot open synth spec " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec(buf.str());
}

std::vector<corpus::TweetRecord> generate(const SynthSpec& spec) {
    validate_rates(spec.content, "content");
    if (spec.accounts_per_generation == 0) {
        fail(ErrorCode::infeasible_spec, "no accounts to generate");
    }
    Rng rng(spec.seed);

    // Plan accounts: first years round-robin over each cohort inside the range.
    std::vector<PlannedAccount> accounts;
    for (std::size_t g = 0; g < 3; ++g) {
        const corpus::Interval cohort = spec.generations.cohorts()[g];
        const int lo = std::max(cohort.first, spec.years.first);
        const int hi = std::min(cohort.last, spec.years.last);
        if (lo > hi) {
            continue;
        }
        for (std::size_t a = 0; a < spec.accounts_per_generation; ++a) {
            PlannedAccount p;
            std::ostringstream id;
            id << "bot_g" << (g + 1) << "_" << (a + 1);
            p.id = id.str();
            p.first_year = lo + static_cast<int>(a % static_cast<std::size_t>(hi - lo + 1));
            p.last_year =
                p.first_year +
                static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.years.last - p.first_year + 1)));
            p.style = pick_style(rng, spec.action_profile_mix);
            for (std::size_t t = 0; t < spec.templates_per_account; ++t) {
                p.templates.push_back(fresh_text(rng));
            }
            const std::size_t langs = 1 + rng.below(spec.max_languages_per_account);
            std::vector<std::string_view> pool(kLanguages.begin(), kLanguages.end());
            for (std::size_t k = 0; k < langs; ++k) {
                const std::size_t pick = k + rng.below(pool.size() - k);
                std::swap(pool[k], pool[pick]);
                p.languages.emplace_back(pool[k]);
            }
            accounts.push_back(std::move(p));
        }
    }
    if (accounts.empty()) {
        fail(ErrorCode::infeasible_spec, "no generation cohort overlaps the year range");
    }

    // Pass 1: actions, dates and owners.
    std::vector<corpus::TweetRecord> records;
    std::vector<std::size_t> owner;
    for (int year = spec.years.first; year <= spec.years.last; ++year) {
        const int t = year - spec.years.first;
        std::vector<std::size_t> active;
        for (std::size_t a = 0; a < accounts.size(); ++a) {
            if (accounts[a].first_year <= year && year <= accounts[a].last_year) {
                active.push_back(a);
            }
        }
        const std::array<std::pair<corpus::Action, const RateFunction*>, 3> kinds = {{
            {corpus::Action::original, &spec.tweeting},
            {corpus::Action::retweet, &spec.retweeting},
            {corpus::Action::reply, &spec.replying},
        }};
        for (const auto& [action, rate] : kinds) {
            const std::int64_t n = yearly_count(rng, *rate, t);
            if (n == 0) {
                continue;
            }
            if (active.empty()) {
                fail(ErrorCode::infeasible_spec,
                     "no account is active in " + std::to_string(year) + " to carry " +
                         std::to_string(n) + " " + std::string(corpus::to_string(action)) +
                         " actions");
            }
            std::vector<std::size_t> pool;
            for (std::size_t a : active) {
                if (eligible(accounts[a].style, action)) {
                    pool.push_back(a);
                }
            }
            if (pool.empty()) {
                pool = active;
            }
            for (std::int64_t k = 0; k < n; ++k) {
                corpus::TweetRecord r;
                const std::size_t a = pool[rng.below(pool.size())];
                r.account_id = accounts[a].id;
                r.action = action;
                r.created_at = corpus::Date{year, static_cast<unsigned>(1 + rng.below(12)),
                                            static_cast<unsigned>(1 + rng.below(28))};
                records.push_back(std::move(r));
                owner.push_back(a);
            }
        }
    }

    // Pass 2: content, keyed on the generation the pipeline will derive.
    std::vector<int> first_seen(accounts.size(), std::numeric_limits<int>::max());
    for (std::size_t i = 0; i < records.size(); ++i) {
        first_seen[owner[i]] = std::min(first_seen[owner[i]], records[i].created_at.year);
    }
    std::array<ContentRates, 4> rates;
    std::array<std::vector<PlantedPair>, 4> planted;
    for (std::size_t g = 0; g < 4; ++g) {
        const auto gen = static_cast<corpus::Generation>(g);
        rates[g] = gen == corpus::Generation::outside ? spec.content : rates_for(spec, gen);
        if (gen != corpus::Generation::outside) {
            planted[g] = planted_for(spec, gen, rates[g]);
        }
    }

    std::size_t serial = 0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        auto& r = records[i];
        const PlannedAccount& acct = accounts[owner[i]];
        const auto g =
            static_cast<std::size_t>(corpus::assign_generation(first_seen[owner[i]], spec.generations));
        const ContentRates& c = rates[g];

        std::array<std::optional<bool>, 6> lever{};
        for (const auto& pp : planted[g]) {
            const int cell = sample_cell(rng, pp.table);
            lever[static_cast<std::size_t>(pp.a.lever)] = cell == 0 || cell == 1;
            lever[static_cast<std::size_t>(pp.b.lever)] = cell == 0 || cell == 2;
        }
        auto draw = [&](Lever l, double p) {
            auto& slot = lever[static_cast<std::size_t>(l)];
            if (!slot) {
                slot = rng.bernoulli(p);
            }
            return *slot;
        };
        const bool has_url = draw(Lever::url, c.url);
        const bool multi = draw(Lever::multi_hashtag, c.multi_hashtag);
        bool single = false;
        if (!multi && c.multi_hashtag < 1.0) {
            single = rng.bernoulli(c.single_hashtag / (1.0 - c.multi_hashtag));
        }
        bool positive = false;
        bool negative = false;
        if (lever[static_cast<std::size_t>(Lever::negative)]) {
            negative = *lever[static_cast<std::size_t>(Lever::negative)];
            positive = !negative && c.negative < 1.0 &&
                       rng.bernoulli(c.positive / (1.0 - c.negative));
        } else {
            positive = draw(Lever::positive, c.positive);
            negative = !positive && c.positive < 1.0 &&
                       rng.bernoulli(c.negative / (1.0 - c.positive));
        }
        const bool emoji = draw(Lever::emoji, c.emoji);
        const bool media = draw(Lever::media, c.media);

        std::string body = rng.bernoulli(c.template_reuse)
                               ? acct.templates[rng.below(acct.templates.size())]
                               : fresh_text(rng);
        if (r.action == corpus::Action::retweet) {
            body = "RT @user" + std::to_string(rng.below(500)) + ": " + body;
        } else if (r.action == corpus::Action::reply) {
            body = "@user" + std::to_string(rng.below(500)) + " " + body;
        }
        if (positive) {
            body += " ";
            body += kPositiveWords[rng.below(kPositiveWords.size())];
        } else if (negative) {
            body += " ";
            body += kNegativeWords[rng.below(kNegativeWords.size())];
        }
        const std::size_t tags = multi ? 2 + rng.below(3) : single ? 1 : 0;
        for (std::size_t k = 0; k < tags; ++k) {
            // Distinct tags per tweet; a Zipf-ish head keeps rankings stable.
            std::string tag = "topic" + std::to_string(k * 10 + rng.below(rng.bernoulli(0.5) ? 3 : 10));
            r.hashtags.push_back(tag);
            body += " #" + tag;
        }
        if (has_url) {
            r.urls = 1 + static_cast<std::int64_t>(rng.below(2));
            for (std::int64_t k = 0; k < r.urls; ++k) {
                body += " https://example.org/p" + std::to_string(rng.below(100000));
            }
        }
        if (emoji) {
            const std::size_t n = 1 + rng.below(3);
            for (std::size_t k = 0; k < n; ++k) {
                body += " ";
                body += kEmojis[rng.below(kEmojis.size())];
            }
        }
        if (media) {
            const double u = rng.uniform();
            r.media = u < 0.6 ? corpus::Media::image : u < 0.9 ? corpus::Media::video
                                                               : corpus::Media::both;
        }
        if (rng.bernoulli(c.language_hint)) {
            r.language_hint = acct.languages[rng.below(acct.languages.size())];
        }
        r.text = std::move(body);
        r.emoji_count = text::count_emoji(r.text);
        std::ostringstream id;
        id << "s" << spec.seed << "_" << ++serial;
        r.tweet_id = id.str();
    }
    return records;
}

void write_corpus(std::ostream& out, const SynthSpec& spec) {
    const auto records = generate(spec);
    corpus::write_jsonl(out, records);
}

}  // namespace botdrift::synth
