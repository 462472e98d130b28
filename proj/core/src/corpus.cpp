#include "botdrift/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "botdrift/csv.hpp"
#include "botdrift/error.hpp"
#include "botdrift/text.hpp"

namespace botdrift::corpus {

using nlohmann::json;

std::string_view to_string(Action a) noexcept {
    switch (a) {
        case Action::original: return "original";
        case Action::retweet: return "retweet";
        case Action::reply: return "reply";
    }
    return "original";
}

std::string_view to_string(Media m) noexcept {
    switch (m) {
        case Media::none: return "none";
        case Media::image: return "image";
        case Media::video: return "video";
        case Media::both: return "both";
    }
    return "none";
}

std::string_view to_string(Generation g) noexcept {
    switch (g) {
        case Generation::G1: return "G1";
        case Generation::G2: return "G2";
        case Generation::G3: return "G3";
        case Generation::outside: return "outside";
    }
    return "outside";
}

std::string_view to_string(AgeClass c) noexcept {
    switch (c) {
        case AgeClass::short_lived: return "short";
        case AgeClass::mid_lived: return "mid";
        case AgeClass::long_lived: return "long";
        case AgeClass::outside: return "outside";
    }
    return "outside";
}

std::string_view to_string(ActionProfile p) noexcept {
    switch (p) {
        case ActionProfile::tweet_only: return "tweet_only";
        case ActionProfile::retweet_only: return "retweet_only";
        case ActionProfile::mixed: return "mixed";
    }
    return "mixed";
}

std::optional<Action> parse_action(std::string_view s) noexcept {
    if (s == "original") return Action::original;
    if (s == "retweet") return Action::retweet;
    if (s == "reply") return Action::reply;
    return std::nullopt;
}

std::optional<Media> parse_media(std::string_view s) noexcept {
    if (s == "none") return Media::none;
    if (s == "image") return Media::image;
    if (s == "video") return Media::video;
    if (s == "both") return Media::both;
    return std::nullopt;
}

std::optional<Generation> parse_generation(std::string_view s) noexcept {
    if (s == "G1") return Generation::G1;
    if (s == "G2") return Generation::G2;
    if (s == "G3") return Generation::G3;
    if (s == "outside") return Generation::outside;
    return std::nullopt;
}

std::optional<InputFormat> parse_format(std::string_view s) noexcept {
    if (s == "jsonl") return InputFormat::jsonl;
    if (s == "csv") return InputFormat::csv;
    return std::nullopt;
}

bool Date::valid() const noexcept {
    const std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{month},
                                          std::chrono::day{day}};
    return year >= 1 && year <= 9999 && ymd.ok();
}

std::string Date::iso() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", year, month, day);
    return buf;
}

std::optional<Date> parse_date(std::string_view iso) noexcept {
    if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-') {
        return std::nullopt;
    }
    auto digits = [&](std::size_t from, std::size_t len) -> std::optional<int> {
        int v = 0;
        for (std::size_t i = from; i < from + len; ++i) {
            if (iso[i] < '0' || iso[i] > '9') {
                return std::nullopt;
            }
            v = v * 10 + (iso[i] - '0');
        }
        return v;
    };
    const auto y = digits(0, 4);
    const auto m = digits(5, 2);
    const auto d = digits(8, 2);
    if (!y || !m || !d) {
        return std::nullopt;
    }
    Date date{*y, static_cast<unsigned>(*m), static_cast<unsigned>(*d)};
    if (!date.valid()) {
        return std::nullopt;
    }
    return date;
}

namespace {

void validate_intervals(const std::array<Interval, 3>& iv, const char* what) {
    for (std::size_t i = 0; i < iv.size(); ++i) {
        if (iv[i].first > iv[i].last) {
            fail(ErrorCode::config, std::string(what) + " interval " + std::to_string(i + 1) +
                                        " is reversed");
        }
        if (i > 0 && iv[i].first <= iv[i - 1].last) {
            fail(ErrorCode::config, std::string(what) + " intervals overlap or are out of order");
        }
    }
}

}  // namespace

GenerationBounds::GenerationBounds(std::array<Interval, 3> cohorts) : cohorts_(cohorts) {
    validate_intervals(cohorts_, "generation");
}

AgeBounds::AgeBounds(std::array<Interval, 3> classes) : classes_(classes) {
    validate_intervals(classes_, "age-class");
    if (classes_[0].first < 1) {
        fail(ErrorCode::config, "age-class lifespans start at 1 year");
    }
}

Generation assign_generation(int first_year, const GenerationBounds& bounds) noexcept {
    for (std::size_t i = 0; i < kGenerations.size(); ++i) {
        if (bounds.cohorts()[i].contains(first_year)) {
            return kGenerations[i];
        }
    }
    return Generation::outside;
}

AgeClass assign_age_class(int lifespan_years, const AgeBounds& bounds) noexcept {
    for (std::size_t i = 0; i < kAgeClasses.size(); ++i) {
        if (bounds.classes()[i].contains(lifespan_years)) {
            return kAgeClasses[i];
        }
    }
    return AgeClass::outside;
}

ActionProfile derive_action_profile(std::span<const Action> actions) {
    if (actions.empty()) {
        fail(ErrorCode::precondition, "action profile of an account without records");
    }
    const bool all_original = std::all_of(actions.begin(), actions.end(),
                                          [](Action a) { return a == Action::original; });
    if (all_original) {
        return ActionProfile::tweet_only;
    }
    const bool all_retweet = std::all_of(actions.begin(), actions.end(),
                                         [](Action a) { return a == Action::retweet; });
    return all_retweet ? ActionProfile::retweet_only : ActionProfile::mixed;
}

std::vector<AccountProfile> derive_profiles(std::span<const TweetRecord> records,
                                            const CorpusConfig& config) {
    struct Acc {
        int first = 0;
        int last = 0;
        std::vector<Action> actions;
    };
    std::map<std::string, Acc> accs;
    for (const auto& r : records) {
        auto [it, inserted] = accs.try_emplace(r.account_id);
        Acc& a = it->second;
        if (inserted) {
            a.first = a.last = r.created_at.year;
        }
        a.first = std::min(a.first, r.created_at.year);
        a.last = std::max(a.last, r.created_at.year);
        a.actions.push_back(r.action);
    }
    std::vector<AccountProfile> out;
    out.reserve(accs.size());
    for (auto& [id, a] : accs) {
        AccountProfile p;
        p.account_id = id;
        p.first_year = a.first;
        p.last_year = a.last;
        p.lifespan_years = a.last - a.first + 1;
        p.generation = assign_generation(a.first, config.generations);
        p.age_class = assign_age_class(p.lifespan_years, config.ages);
        p.action_profile = derive_action_profile(a.actions);
        p.tweet_count = a.actions.size();
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<TweetRecord> apply_account_cap(std::vector<TweetRecord> records, std::size_t cap) {
    std::map<std::string, std::vector<std::size_t>> by_account;
    for (std::size_t i = 0; i < records.size(); ++i) {
        by_account[records[i].account_id].push_back(i);
    }
    std::vector<bool> keep(records.size(), false);
    for (auto& [id, idx] : by_account) {
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            const auto& ra = records[a];
            const auto& rb = records[b];
            if (ra.created_at != rb.created_at) {
                return ra.created_at > rb.created_at;
            }
            return ra.tweet_id > rb.tweet_id;
        });
        for (std::size_t k = 0; k < std::min(cap, idx.size()); ++k) {
            keep[idx[k]] = true;
        }
    }
    std::vector<TweetRecord> out;
    out.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (keep[i]) {
            out.push_back(std::move(records[i]));
        }
    }
    return out;
}

Corpus make_corpus(std::vector<TweetRecord> records, const CorpusConfig& config) {
    if (config.account_cap) {
        records = apply_account_cap(std::move(records), *config.account_cap);
    }
    Corpus c;
    c.year_range = config.year_range;
    for (auto& p : derive_profiles(records, config)) {
        std::string id = p.account_id;
        c.profiles.emplace(std::move(id), std::move(p));
    }
    c.records = std::move(records);
    return c;
}

const AccountProfile& Corpus::profile_of(const TweetRecord& r) const {
    auto it = profiles.find(r.account_id);
    if (it == profiles.end()) {
        fail(ErrorCode::internal, "record " + r.tweet_id + " has no account profile");
    }
    return it->second;
}

namespace {

/// Field-level validation shared by the JSONL and CSV readers. Returns an
/// error reason, or empty on success.
struct RawFields {
    std::optional<std::string> tweet_id;
    std::optional<std::string> account_id;
    std::optional<std::string> created_at;
    std::optional<std::string> action;
    std::optional<std::string> text;
    std::optional<std::int64_t> urls;
    std::optional<std::vector<std::string>> hashtags;
    std::optional<std::int64_t> emoji_count;
    std::optional<std::string> media;
    std::optional<std::string> lang;
};

std::string normalize_tag(std::string tag) {
    if (!tag.empty() && tag.front() == '#') {
        tag.erase(tag.begin());
    }
    return text::normalize_text(tag).cleaned;
}

std::optional<std::string> normalize_lang(const std::string& lang, std::string& reason) {
    std::string code;
    for (char c : lang) {
        code.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    if (code.empty() || code == "und") {
        return std::nullopt;
    }
    const bool ok = (code.size() == 2 || code.size() == 3) &&
                    std::all_of(code.begin(), code.end(), [](char c) { return c >= 'a' && c <= 'z'; });
    if (!ok) {
        reason = "lang is not an ISO-639 code";
        return std::nullopt;
    }
    return code;
}

std::string build_record(RawFields&& raw, const CorpusConfig& config, TweetRecord& out) {
    if (!raw.tweet_id || raw.tweet_id->empty()) return "missing or empty tweet_id";
    if (!raw.account_id || raw.account_id->empty()) return "missing or empty account_id";
    if (!raw.created_at) return "missing created_at";
    const auto date = parse_date(*raw.created_at);
    if (!date) return "created_at is not a valid YYYY-MM-DD date";
    if (!raw.text) return "missing text";
    if (!text::is_valid_utf8(*raw.text)) return "text is not valid UTF-8";

    std::optional<Action> action;
    if (raw.action) {
        action = parse_action(*raw.action);
        if (!action) return "action must be original, retweet or reply";
    } else if (config.text_prefix_actions) {
        const std::string_view t = *raw.text;
        action = t.starts_with("RT @") ? Action::retweet
                 : t.starts_with("@")  ? Action::reply
                                       : Action::original;
    } else {
        return "missing action";
    }

    if (!raw.urls) return "missing urls";
    if (*raw.urls < 0) return "urls must be >= 0";
    if (!raw.hashtags) return "missing hashtags";
    if (raw.emoji_count && *raw.emoji_count < 0) return "emoji_count must be >= 0";
    if (!raw.media) return "missing media";
    const auto media = parse_media(*raw.media);
    if (!media) return "media must be none, image, video or both";

    out.tweet_id = std::move(*raw.tweet_id);
    out.account_id = std::move(*raw.account_id);
    out.created_at = *date;
    out.action = *action;
    out.urls = *raw.urls;
    out.hashtags.clear();
    for (auto& tag : *raw.hashtags) {
        if (!text::is_valid_utf8(tag)) return "hashtag is not valid UTF-8";
        std::string norm = normalize_tag(std::move(tag));
        if (!norm.empty()) {
            out.hashtags.push_back(std::move(norm));
        }
    }
    out.emoji_count = raw.emoji_count ? *raw.emoji_count : text::count_emoji(*raw.text);
    out.text = std::move(*raw.text);
    out.media = *media;
    out.language_hint.reset();
    if (raw.lang) {
        std::string reason;
        out.language_hint = normalize_lang(*raw.lang, reason);
        if (!reason.empty()) return reason;
    }
    return {};
}

std::string parse_json_line(const std::string& line, const CorpusConfig& config,
                            TweetRecord& out) {
    if (!text::is_valid_utf8(line)) {
        return "line is not valid UTF-8";
    }
    json obj;
    try {
        obj = json::parse(line);
    } catch (const json::parse_error&) {
        return "not valid JSON";
    }
    if (!obj.is_object()) {
        return "line is not a JSON object";
    }
    RawFields raw;
    auto str = [&](const char* key, std::optional<std::string>& dst) -> std::string {
        auto it = obj.find(key);
        if (it == obj.end() || it->is_null()) return {};
        if (!it->is_string()) return std::string(key) + " must be a string";
        dst = it->get<std::string>();
        return {};
    };
    auto integer = [&](const char* key, std::optional<std::int64_t>& dst) -> std::string {
        auto it = obj.find(key);
        if (it == obj.end() || it->is_null()) return {};
        if (!it->is_number_integer()) return std::string(key) + " must be an integer";
        dst = it->get<std::int64_t>();
        return {};
    };
    std::string reason;
    if (!(reason = str("tweet_id", raw.tweet_id)).empty()) return reason;
    if (!(reason = str("account_id", raw.account_id)).empty()) return reason;
    if (!(reason = str("created_at", raw.created_at)).empty()) return reason;
    if (!(reason = str("action", raw.action)).empty()) return reason;
    if (!(reason = str("text", raw.text)).empty()) return reason;
    if (!(reason = integer("urls", raw.urls)).empty()) return reason;
    if (!(reason = integer("emoji_count", raw.emoji_count)).empty()) return reason;
    if (!(reason = str("media", raw.media)).empty()) return reason;
    if (!(reason = str("lang", raw.lang)).empty()) return reason;
    if (auto it = obj.find("hashtags"); it != obj.end() && !it->is_null()) {
        if (!it->is_array()) return "hashtags must be an array";
        std::vector<std::string> tags;
        for (const auto& t : *it) {
            if (!t.is_string()) return "hashtags must contain strings";
            tags.push_back(t.get<std::string>());
        }
        raw.hashtags = std::move(tags);
    }
    return build_record(std::move(raw), config, out);
}

const std::vector<std::string>& csv_columns() {
    static const std::vector<std::string> cols = {
        "tweet_id", "account_id", "created_at",  "action", "text",
        "urls",     "hashtags",   "emoji_count", "media",  "lang"};
    return cols;
}

struct CsvLayout {
    std::array<std::optional<std::size_t>, 10> index;
};

std::string parse_csv_row(const std::vector<std::string>& fields, const CsvLayout& layout,
                          const CorpusConfig& config, TweetRecord& out) {
    auto get = [&](std::size_t col) -> std::optional<std::string> {
        const auto& idx = layout.index[col];
        if (!idx || *idx >= fields.size()) return std::nullopt;
        return fields[*idx];
    };
    RawFields raw;
    raw.tweet_id = get(0);
    raw.account_id = get(1);
    raw.created_at = get(2);
    if (auto a = get(3); a && !a->empty()) raw.action = a;
    raw.text = get(4);
    if (auto u = get(5)) {
        const auto v = csv::parse_int(*u);
        if (!v) return "urls must be an integer";
        raw.urls = v;
    }
    if (auto h = get(6)) {
        std::vector<std::string> tags;
        std::string_view rest = *h;
        while (!rest.empty()) {
            const auto bar = rest.find('|');
            tags.emplace_back(rest.substr(0, bar));
            if (bar == std::string_view::npos) break;
            rest.remove_prefix(bar + 1);
        }
        raw.hashtags = std::move(tags);
    }
    if (auto e = get(7); e && !e->empty()) {
        const auto v = csv::parse_int(*e);
        if (!v) return "emoji_count must be an integer";
        raw.emoji_count = v;
    }
    raw.media = get(8);
    if (auto l = get(9); l && !l->empty()) raw.lang = l;
    return build_record(std::move(raw), config, out);
}

IngestResult finish(std::vector<TweetRecord> records, std::vector<LineDiagnostic> diagnostics,
                    std::size_t lines_seen, const CorpusConfig& config) {
    if (lines_seen > 0 && 2 * diagnostics.size() > lines_seen) {
        std::ostringstream msg;
        msg << "corpus rejected: " << diagnostics.size() << " of " << lines_seen
            << " lines malformed";
        std::size_t shown = 0;
        for (const auto& d : diagnostics) {
            if (shown++ == 20) {
                msg << "; ...";
                break;
            }
            msg << "; line " << d.line << ": " << d.reason;
        }
        fail(ErrorCode::corpus_rejected, msg.str());
    }
    IngestResult result;
    result.corpus = make_corpus(std::move(records), config);
    result.diagnostics = std::move(diagnostics);
    result.lines_seen = lines_seen;
    return result;
}

bool blank(std::string_view s) {
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return c == ' ' || c == '\t' || c == '\r'; });
}

}  // namespace

IngestResult ingest(std::istream& source, InputFormat format, const CorpusConfig& config) {
    if (!source.good() && !source.eof()) {
        fail(ErrorCode::io, "input stream is not readable");
    }
    std::vector<TweetRecord> records;
    std::vector<LineDiagnostic> diagnostics;
    std::unordered_set<std::string> ids;
    std::size_t lines_seen = 0;

    auto accept = [&](std::size_t line, std::string reason, TweetRecord&& rec) {
        ++lines_seen;
        if (reason.empty() && !ids.insert(rec.tweet_id).second) {
            reason = "duplicate tweet_id " + rec.tweet_id;
        }
        if (!reason.empty()) {
            diagnostics.push_back({line, std::move(reason)});
            return;
        }
        records.push_back(std::move(rec));
    };

    if (format == InputFormat::jsonl) {
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(source, line)) {
            ++lineno;
            if (blank(line)) {
                continue;
            }
            TweetRecord rec;
            std::string reason = parse_json_line(line, config, rec);
            accept(lineno, std::move(reason), std::move(rec));
        }
    } else {
        csv::Reader reader(source);
        csv::Row row;
        if (reader.next(row)) {
            CsvLayout layout;
            const auto& cols = csv_columns();
            for (std::size_t c = 0; c < cols.size(); ++c) {
                for (std::size_t h = 0; h < row.fields.size(); ++h) {
                    if (row.fields[h] == cols[c]) {
                        layout.index[c] = h;
                    }
                }
            }
            while (reader.next(row)) {
                if (row.fields.size() == 1 && blank(row.fields[0])) {
                    continue;
                }
                TweetRecord rec;
                std::string reason;
                for (auto& f : row.fields) {
                    if (!text::is_valid_utf8(f)) {
                        reason = "field is not valid UTF-8";
                        break;
                    }
                }
                if (reason.empty()) {
                    reason = parse_csv_row(row.fields, layout, config, rec);
                }
                accept(row.line, std::move(reason), std::move(rec));
            }
        }
    }
    if (source.bad()) {
        fail(ErrorCode::io, "read error on input stream");
    }
    return finish(std::move(records), std::move(diagnostics), lines_seen, config);
}

IngestResult ingest_file(const std::string& path, InputFormat format, const CorpusConfig& config) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(ErrorCode::io, "cannot open input " + path);
    }
    return ingest(in, format, config);
}

std::string to_jsonl_line(const TweetRecord& r) {
    nlohmann::ordered_json obj;
    obj["tweet_id"] = r.tweet_id;
    obj["account_id"] = r.account_id;
    obj["created_at"] = r.created_at.iso();
    obj["action"] = std::string(to_string(r.action));
    obj["text"] = r.text;
    obj["urls"] = r.urls;
    obj["hashtags"] = r.hashtags;
    obj["emoji_count"] = r.emoji_count;
    obj["media"] = std::string(to_string(r.media));
    if (r.language_hint) {
        obj["lang"] = *r.language_hint;
    }
    return obj.dump();
}

void write_jsonl(std::ostream& out, std::span<const TweetRecord> records) {
    for (const auto& r : records) {
        out << to_jsonl_line(r) << '\n';
    }
}

}  // namespace botdrift::corpus
