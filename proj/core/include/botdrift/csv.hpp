#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace botdrift::csv {

/// One parsed CSV record plus the 1-based physical line it started on.
struct Row {
    std::size_t line = 0;
    std::vector<std::string> fields;
};

/// RFC 4180 reader: quoted fields may contain commas, doubled quotes and newlines.
class Reader {
public:
    explicit Reader(std::istream& in) : in_(in) {}

    /// Returns false at end of input. Throws Error(io) on unterminated quotes.
    bool next(Row& row);

private:
    std::istream& in_;
    std::size_t line_ = 0;
};

/// Reads a whole file; the first row is the header.
struct Table {
    std::vector<std::string> header;
    std::vector<Row> rows;

    [[nodiscard]] std::optional<std::size_t> column(std::string_view name) const;
};

Table read_file(const std::string& path);

std::string escape(std::string_view field);

/// Shortest round-trip decimal representation; "NA" for non-finite values.
std::string format_number(double value);
std::string format_number(std::int64_t value);
std::string format_bool(bool value);

std::optional<double> parse_double(std::string_view text);
std::optional<std::int64_t> parse_int(std::string_view text);
std::optional<bool> parse_bool(std::string_view text);

class Writer {
public:
    explicit Writer(std::ostream& out) : out_(out) {}

    void row(const std::vector<std::string>& fields);

private:
    std::ostream& out_;
};

}  // namespace botdrift::csv
