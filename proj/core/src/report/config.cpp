#include "botdrift/report/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "botdrift/error.hpp"

namespace botdrift::report {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& why) { fail(ErrorCode::config, "config: " + why); }

double number(const json& j, const std::string& key) {
    if (!j.is_number()) bad("'" + key + "' must be a number");
    return j.get<double>();
}

std::size_t count(const json& j, const std::string& key) {
    if (!j.is_number_integer() || j.get<std::int64_t>() < 0) {
        bad("'" + key + "' must be a non-negative integer");
    }
    return j.get<std::size_t>();
}

bool flag(const json& j, const std::string& key) {
    if (!j.is_boolean()) bad("'" + key + "' must be true or false");
    return j.get<bool>();
}

std::string text(const json& j, const std::string& key) {
    if (!j.is_string()) bad("'" + key + "' must be a string");
    return j.get<std::string>();
}

corpus::Interval interval(const json& j, const std::string& key) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() ||
        !j[1].is_number_integer()) {
        bad("'" + key + "' must be [first, last]");
    }
    corpus::Interval iv{j[0].get<int>(), j[1].get<int>()};
    if (iv.last < iv.first) bad("'" + key + "' must be ordered");
    return iv;
}

std::array<corpus::Interval, 3> three(const json& j, const std::string& key) {
    if (!j.is_array() || j.size() != 3) bad("'" + key + "' needs three intervals");
    return {interval(j[0], key), interval(j[1], key), interval(j[2], key)};
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() || base.empty() ? path : base / path;
}

}  // namespace

RunConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        bad(std::string("not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) bad("top level must be an object");

    RunConfig c;
    c.source_json = json_text;
    for (const auto& [key, v] : doc.items()) {
        if (key == "input") {
            c.inputs.push_back(resolve(base_dir, text(v, key)));
        } else if (key == "inputs") {
            if (!v.is_array()) bad("'inputs' must be an array of paths");
            for (const auto& p : v) c.inputs.push_back(resolve(base_dir, text(p, key)));
        } else if (key == "format") {
            const auto f = corpus::parse_format(text(v, key));
            if (!f) bad("'format' must be jsonl or csv");
            c.format = *f;
        } else if (key == "year_range") {
            c.corpus.year_range = interval(v, key);
        } else if (key == "generations") {
            try {
                c.corpus.generations = corpus::GenerationBounds(three(v, key));
            } catch (const Error& e) {
                bad(e.what());
            }
        } else if (key == "age_classes") {
            try {
                c.corpus.ages = corpus::AgeBounds(three(v, key));
            } catch (const Error& e) {
                bad(e.what());
            }
        } else if (key == "account_cap") {
            c.corpus.account_cap = count(v, key);
            if (*c.corpus.account_cap == 0) bad("'account_cap' must be >= 1");
        } else if (key == "text_prefix_actions") {
            c.corpus.text_prefix_actions = flag(v, key);
        } else if (key == "alpha") {
            c.alpha = number(v, key);
        } else if (key == "thresholds") {
            if (!v.is_object()) bad("'thresholds' must be an object");
            for (const auto& [k, x] : v.items()) {
                if (k == "tau_sp") c.thresholds.tau_sp = number(x, k);
                else if (k == "tau_mp") c.thresholds.tau_mp = number(x, k);
                else if (k == "eps_np") c.thresholds.eps_np = number(x, k);
                else bad("unknown threshold '" + k + "'");
            }
        } else if (key == "topic") {
            if (!v.is_object()) bad("'topic' must be an object");
            for (const auto& [k, x] : v.items()) {
                if (k == "theta") c.topic.theta = number(x, k);
                else if (k == "k") c.topic.k = count(x, k);
                else bad("unknown topic parameter '" + k + "'");
            }
        } else if (key == "yates") {
            c.yates = flag(v, key);
        } else if (key == "adf_spec") {
            const std::string s = text(v, key);
            if (s == "constant") c.adf_spec = stats::AdfSpec::constant;
            else if (s == "constant_trend") c.adf_spec = stats::AdfSpec::constant_trend;
            else bad("'adf_spec' must be constant or constant_trend");
        } else if (key == "adf_max_lag") {
            c.adf_max_lag = count(v, key);
        } else if (key == "transition_scale") {
            const std::string s = text(v, key);
            if (s == "signed") c.transition_scale = transitions::Scale::signed_ordinal;
            else if (s == "magnitude") c.transition_scale = transitions::Scale::magnitude;
            else bad("'transition_scale' must be signed or magnitude");
        } else if (key == "arrow_top_k") {
            c.arrow_top_k = count(v, key);
            if (*c.arrow_top_k == 0) bad("'arrow_top_k' must be >= 1");
        } else if (key == "top_hashtags") {
            c.top_hashtags = count(v, key);
            if (c.top_hashtags == 0) bad("'top_hashtags' must be >= 1");
        } else if (key == "lexicon") {
            c.lexicon = resolve(base_dir, text(v, key));
        } else if (key == "synth") {
            try {
                if (v.is_string()) {
                    c.synth = synth::load_spec(resolve(base_dir, v.get<std::string>()).string());
                } else {
                    c.synth = synth::parse_spec(v.dump());
                }
            } catch (const Error& e) {
                bad(e.what());
            }
        } else if (key == "out_dir") {
            c.out_dir = resolve(base_dir, text(v, key));
        } else {
            bad("unknown field '" + key + "'");
        }
    }

    if (!(c.alpha > 0.0 && c.alpha < 1.0)) bad("'alpha' must lie in (0, 1)");
    const auto& t = c.thresholds;
    if (!(t.eps_np >= 0.0 && t.eps_np < t.tau_mp && t.tau_mp < t.tau_sp && t.tau_sp <= 1.0)) {
        bad("thresholds need 0 <= eps_np < tau_mp < tau_sp <= 1");
    }
    if (!(c.topic.theta > 0.0 && c.topic.theta <= 1.0)) bad("'topic.theta' must lie in (0, 1]");
    if (c.topic.k < 2) bad("'topic.k' must be >= 2");
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(ErrorCode::config, "config: cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.parent_path());
}

}  // namespace botdrift::report
