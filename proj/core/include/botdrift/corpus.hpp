#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace botdrift::corpus {

enum class Action : std::uint8_t { original, retweet, reply };
enum class Media : std::uint8_t { none, image, video, both };
enum class Generation : std::uint8_t { G1, G2, G3, outside };
enum class AgeClass : std::uint8_t { short_lived, mid_lived, long_lived, outside };
enum class ActionProfile : std::uint8_t { tweet_only, retweet_only, mixed };
enum class InputFormat : std::uint8_t { jsonl, csv };

inline constexpr std::array<Generation, 3> kGenerations = {Generation::G1, Generation::G2,
                                                           Generation::G3};
inline constexpr std::array<AgeClass, 3> kAgeClasses = {
    AgeClass::short_lived, AgeClass::mid_lived, AgeClass::long_lived};

std::string_view to_string(Action a) noexcept;
std::string_view to_string(Media m) noexcept;
std::string_view to_string(Generation g) noexcept;
std::string_view to_string(AgeClass c) noexcept;
std::string_view to_string(ActionProfile p) noexcept;

std::optional<Action> parse_action(std::string_view s) noexcept;
std::optional<Media> parse_media(std::string_view s) noexcept;
std::optional<Generation> parse_generation(std::string_view s) noexcept;
std::optional<InputFormat> parse_format(std::string_view s) noexcept;

struct Date {
    int year = 0;
    unsigned month = 0;
    unsigned day = 0;

    [[nodiscard]] bool valid() const noexcept;
    [[nodiscard]] std::string iso() const;

    friend auto operator<=>(const Date&, const Date&) = default;
};

std::optional<Date> parse_date(std::string_view iso) noexcept;

struct TweetRecord {
    std::string tweet_id;
    std::string account_id;
    Date created_at;
    Action action = Action::original;
    std::string text;
    std::int64_t urls = 0;
    std::vector<std::string> hashtags;  // lowercase, no leading '#'
    std::int64_t emoji_count = 0;       // resolved from text when absent in the source
    Media media = Media::none;
    std::optional<std::string> language_hint;

    friend bool operator==(const TweetRecord&, const TweetRecord&) = default;
};

struct AccountProfile {
    std::string account_id;
    int first_year = 0;
    int last_year = 0;
    int lifespan_years = 0;
    Generation generation = Generation::outside;
    AgeClass age_class = AgeClass::outside;
    ActionProfile action_profile = ActionProfile::mixed;
    std::size_t tweet_count = 0;

    friend bool operator==(const AccountProfile&, const AccountProfile&) = default;
};

/// Inclusive interval; used for calendar years and for lifespans.
struct Interval {
    int first = 0;
    int last = 0;

    [[nodiscard]] bool contains(int v) const noexcept { return first <= v && v <= last; }
    [[nodiscard]] int length() const noexcept { return last - first + 1; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Three disjoint, ordered, inclusive intervals. Construction validates.
class GenerationBounds {
public:
    GenerationBounds() : GenerationBounds({{{2009, 2012}, {2013, 2016}, {2017, 2020}}}) {}
    explicit GenerationBounds(std::array<Interval, 3> cohorts);

    [[nodiscard]] const std::array<Interval, 3>& cohorts() const noexcept { return cohorts_; }

private:
    std::array<Interval, 3> cohorts_;
};

class AgeBounds {
public:
    AgeBounds() : AgeBounds({{{1, 4}, {5, 8}, {9, 12}}}) {}
    explicit AgeBounds(std::array<Interval, 3> classes);

    [[nodiscard]] const std::array<Interval, 3>& classes() const noexcept { return classes_; }

private:
    std::array<Interval, 3> classes_;
};

struct CorpusConfig {
    GenerationBounds generations;
    AgeBounds ages;
    Interval year_range{2009, 2020};
    /// Keep only the N most recent tweets per account (off when empty).
    std::optional<std::size_t> account_cap;
    /// Infer the action from "RT @" / leading "@" when the source omits it.
    bool text_prefix_actions = false;
};

struct Corpus {
    std::vector<TweetRecord> records;
    std::map<std::string, AccountProfile> profiles;
    Interval year_range{2009, 2020};

    [[nodiscard]] const AccountProfile& profile_of(const TweetRecord& r) const;

    friend bool operator==(const Corpus&, const Corpus&) = default;
};

struct LineDiagnostic {
    std::size_t line = 0;
    std::string reason;
};

struct IngestResult {
    Corpus corpus;
    std::size_t lines_seen = 0;
    std::vector<LineDiagnostic> diagnostics;  // malformed and duplicate lines, in line order
};

/// Parses a JSONL or CSV stream. Blank lines are skipped. Malformed lines and
/// duplicate tweet_ids are reported in diagnostics; more than half rejected
/// throws Error(corpus_rejected). A failing stream throws Error(io).
IngestResult ingest(std::istream& source, InputFormat format, const CorpusConfig& config = {});
IngestResult ingest_file(const std::string& path, InputFormat format,
                         const CorpusConfig& config = {});

/// Builds a corpus from already-validated records (profiles derived here).
Corpus make_corpus(std::vector<TweetRecord> records, const CorpusConfig& config = {});

/// Canonical JSONL encoding used for intermediate artifacts and synthetic output.
std::string to_jsonl_line(const TweetRecord& record);
void write_jsonl(std::ostream& out, std::span<const TweetRecord> records);

Generation assign_generation(int first_year, const GenerationBounds& bounds) noexcept;
AgeClass assign_age_class(int lifespan_years, const AgeBounds& bounds) noexcept;

/// Throws Error(precondition) for an empty set.
ActionProfile derive_action_profile(std::span<const Action> actions);

std::vector<AccountProfile> derive_profiles(std::span<const TweetRecord> records,
                                            const CorpusConfig& config);

/// Keeps the `cap` most recent tweets per account (by date, then tweet_id).
std::vector<TweetRecord> apply_account_cap(std::vector<TweetRecord> records, std::size_t cap);

}  // namespace botdrift::corpus
