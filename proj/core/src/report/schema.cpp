#include "botdrift/report/schema.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "botdrift/csv.hpp"
#include "botdrift/error.hpp"
#include "botdrift/features.hpp"
#include "botdrift/relations.hpp"
#include "botdrift/series.hpp"
#include "botdrift/stats/stationarity.hpp"
#include "botdrift/transitions.hpp"

namespace botdrift::report {

using nlohmann::json;

namespace {

ColumnSchema col(std::string name, ColumnKind kind, std::vector<std::string> allowed = {}) {
    return ColumnSchema{std::move(name), kind, std::move(allowed)};
}

CsvSchema from_header(std::string name, const std::vector<std::string>& header,
                      const std::vector<ColumnSchema>& cols) {
    CsvSchema s{std::move(name), cols};
    if (header.size() != cols.size()) {
        fail(ErrorCode::internal, "schema " + s.name + " does not cover its header");
    }
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] != cols[i].name) {
            fail(ErrorCode::internal, "schema " + s.name + " column mismatch at " + header[i]);
        }
    }
    return s;
}

const std::vector<std::string> kBool = {"true", "false"};
const std::vector<std::string> kDirs = {"I", "D", "E"};

bool cell_ok(const ColumnSchema& c, const std::string& v) {
    switch (c.kind) {
        case ColumnKind::text: return !v.empty();
        case ColumnKind::feature: return features::parse_feature(v).has_value();
        case ColumnKind::integer: return csv::parse_int(v).has_value();
        case ColumnKind::number: return csv::parse_double(v).has_value();
        case ColumnKind::number_or_na: return v == "NA" || csv::parse_double(v).has_value();
        case ColumnKind::boolean: return v == "true" || v == "false";
        case ColumnKind::category:
            return v != "NC" && relations::parse_category(v).has_value();
        case ColumnKind::enumeration:
            return std::find(c.allowed.begin(), c.allowed.end(), v) != c.allowed.end();
    }
    return false;
}

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(ErrorCode::schema, path.string() + ": missing");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return json::parse(buf.str());
    } catch (const json::parse_error& e) {
        fail(ErrorCode::schema, path.string() + ": not valid JSON: " + e.what());
    }
}

void require(bool ok, const std::filesystem::path& path, const std::string& what) {
    if (!ok) {
        fail(ErrorCode::schema, path.string() + ": " + what);
    }
}

bool is_share(const json& j) {
    return j.is_number() && j.get<double>() >= -1e-12 && j.get<double>() <= 1.0 + 1e-12;
}

void check_summary(const json& s, const std::filesystem::path& path) {
    require(s.is_object(), path, "stratum summary must be an object");
    for (const char* k : {"stratum", "zero_population", "accounts", "tweets", "per_account",
                          "pooled_shares", "account_mean_shares", "top_hashtags"}) {
        require(s.contains(k), path, std::string("summary lacks '") + k + "'");
    }
    require(s["stratum"].is_string() && s["zero_population"].is_boolean() &&
                s["accounts"].is_number_unsigned() && s["tweets"].is_number_unsigned(),
            path, "summary header fields have wrong types");
    for (const char* group : {"pooled_shares", "account_mean_shares"}) {
        const json& g = s[group];
        require(g.is_object(), path, std::string(group) + " must be an object");
        for (const auto& [k, v] : g.items()) {
            if (k == "sentiment") {
                require(v.is_object() && v.size() == 3, path, "sentiment shares need 3 entries");
                double sum = 0.0;
                for (const auto& [sk, sv] : v.items()) {
                    require(is_share(sv), path, "sentiment share outside [0, 1]");
                    sum += sv.get<double>();
                }
                require(s["zero_population"].get<bool>() || s["tweets"].get<std::size_t>() == 0 ||
                            std::abs(sum - 1.0) <= 1e-9,
                        path, "sentiment shares of " + s["stratum"].get<std::string>() +
                                  " do not sum to 1");
            } else {
                require(is_share(v), path, std::string(group) + "." + k + " outside [0, 1]");
            }
        }
    }
    require(s["top_hashtags"].is_array(), path, "top_hashtags must be an array");
}

}  // namespace

const CsvSchema& features_schema() {
    static const CsvSchema s = [] {
        std::vector<ColumnSchema> cols{col("tweet_id", ColumnKind::text)};
        for (std::size_t i = 0; i < features::kFeatureCount; ++i) {
            cols.push_back(col(features::name(features::feature_at(i)), ColumnKind::enumeration,
                               {"0", "1"}));
        }
        cols.push_back(col("sentiment_score", ColumnKind::number));
        cols.push_back(col("topic_class", ColumnKind::enumeration, {"single", "mixed", "infrequent"}));
        cols.push_back(col("duplicated", ColumnKind::boolean));
        return from_header("features", features::dump_header(), cols);
    }();
    return s;
}

const CsvSchema& series_schema() {
    static const CsvSchema s = from_header(
        "series", {"meta_feature", "year", "count"},
        {col("meta_feature", ColumnKind::text), col("year", ColumnKind::integer),
         col("count", ColumnKind::number)});
    return s;
}

const CsvSchema& verdict_schema() {
    static const CsvSchema s = [] {
        std::vector<std::string> metas;
        for (auto m : tsagg::kMetaFeatures) {
            metas.emplace_back(tsagg::to_string(m));
        }
        return from_header(
            "stationarity", stats::verdict_header(),
            {col("meta_feature", ColumnKind::enumeration, metas),
             col("adf_stat", ColumnKind::number_or_na),
             col("adf_lag", ColumnKind::number_or_na),
             col("adf_p", ColumnKind::number_or_na),
             col("kpss_level_p", ColumnKind::number_or_na),
             col("kpss_trend_p", ColumnKind::number_or_na),
             col("trend_type", ColumnKind::enumeration,
                 {"stationary", "deterministic", "stochastic", "degenerate"}),
             col("slope", ColumnKind::number_or_na),
             col("direction", ColumnKind::enumeration, {"upward", "downward", "flat", "NA"}),
             col("predictability", ColumnKind::enumeration, {"high", "low", "NA"})});
    }();
    return s;
}

const CsvSchema& dependency_schema() {
    static const CsvSchema s = from_header(
        "dependencies", relations::dependency_header(),
        {col("Fi", ColumnKind::feature), col("Fj", ColumnKind::feature),
         col("chi2", ColumnKind::number_or_na), col("p", ColumnKind::number_or_na),
         col("cramers_v", ColumnKind::number_or_na), col("dependent", ColumnKind::boolean),
         col("structural", ColumnKind::boolean),
         col("low_expected_count", ColumnKind::enumeration, {"true", "false", "NA"})});
    return s;
}

const CsvSchema& category_schema() {
    static const CsvSchema s = from_header(
        "category_matrix", relations::category_header(),
        {col("Fi", ColumnKind::feature), col("Fj", ColumnKind::feature),
         col("rho", ColumnKind::number), col("category", ColumnKind::category),
         col("degenerate_flag", ColumnKind::boolean)});
    return s;
}

const CsvSchema& transitions_schema() {
    static const CsvSchema s = from_header(
        "transitions", transitions::report_header(),
        {col("Fi", ColumnKind::feature), col("Fj", ColumnKind::feature),
         col("C1", ColumnKind::category), col("C2", ColumnKind::category),
         col("C3", ColumnKind::category), col("t1_dir", ColumnKind::enumeration, kDirs),
         col("t2_dir", ColumnKind::enumeration, kDirs),
         col("global_label", ColumnKind::enumeration,
             {"Equal", "Increased", "Decreased", "Flipped", "MixedStable"}),
         col("pattern", ColumnKind::enumeration,
             {"stable", "strengthening_positive", "strengthening_negative", "sign_reversal",
              "variable", "other"})});
    return s;
}

void validate_csv(const std::filesystem::path& path, const CsvSchema& schema) {
    csv::Table table;
    try {
        table = csv::read_file(path.string());
    } catch (const Error& e) {
        fail(ErrorCode::schema, path.string() + ": " + e.what());
    }
    std::vector<std::string> expected;
    for (const auto& c : schema.columns) {
        expected.push_back(c.name);
    }
    require(table.header == expected, path, "header does not match the " + schema.name + " schema");
    for (const auto& row : table.rows) {
        require(row.fields.size() == expected.size(), path,
                "line " + std::to_string(row.line) + ": wrong column count");
        for (std::size_t i = 0; i < expected.size(); ++i) {
            const auto& c = schema.columns[i];
            const std::string& v = row.fields[i];
            require(cell_ok(c, v), path,
                    "line " + std::to_string(row.line) + ", column " + c.name + ": bad value '" +
                        v + "'");
        }
    }
}

void validate_strata_json(const std::filesystem::path& path) {
    const json doc = read_json(path);
    require(doc.is_object() && doc.contains("scheme") && doc.contains("strata") &&
                doc.contains("outside"),
            path, "needs scheme, strata and outside");
    require(doc["scheme"] == "generation" || doc["scheme"] == "age_class", path, "bad scheme");
    require(doc["strata"].is_array() && doc["strata"].size() == 3, path, "needs three strata");
    for (const auto& s : doc["strata"]) {
        check_summary(s, path);
    }
    check_summary(doc["outside"], path);
}

void validate_census_json(const std::filesystem::path& path) {
    const json doc = read_json(path);
    require(doc.is_object() && doc.contains("cells") && doc.contains("labels") &&
                doc.contains("patterns") && doc.contains("total"),
            path, "needs cells, labels, patterns and total");
    require(doc["cells"].is_array() && doc["cells"].size() == 9, path, "needs nine cells");
    std::size_t sum = 0;
    for (const auto& c : doc["cells"]) {
        require(c.is_object() && c.contains("t1") && c.contains("t2") && c.contains("count") &&
                    c["count"].is_number_unsigned(),
                path, "malformed cell");
        sum += c["count"].get<std::size_t>();
    }
    require(doc["total"].is_number_unsigned() && doc["total"].get<std::size_t>() == sum, path,
            "total does not equal the sum of cells");
    for (const char* group : {"labels", "patterns"}) {
        std::size_t g = 0;
        require(doc[group].is_object(), path, std::string(group) + " must be an object");
        for (const auto& [k, v] : doc[group].items()) {
            require(v.is_number_unsigned(), path, std::string(group) + " counts must be integers");
            g += v.get<std::size_t>();
        }
        require(g == sum, path, std::string(group) + " do not partition the pairs");
    }
}

}  // namespace botdrift::report
