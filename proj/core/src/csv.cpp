#include "botdrift/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "botdrift/error.hpp"

namespace botdrift::csv {

bool Reader::next(Row& row) {
    row.fields.clear();
    std::string field;
    bool in_quotes = false;
    bool any = false;
    bool field_quoted = false;
    std::size_t start_line = line_ + 1;

    int ch = 0;
    while ((ch = in_.get()) != std::char_traits<char>::eof()) {
        const char c = static_cast<char>(ch);
        if (!any) {
            start_line = line_ + 1;
        }
        any = true;
        if (in_quotes) {
            if (c == '"') {
                if (in_.peek() == '"') {
                    in_.get();
                    field.push_back('"');
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') {
                    ++line_;
                }
                field.push_back(c);
            }
            continue;
        }
        if (c == '"' && field.empty() && !field_quoted) {
            in_quotes = true;
            field_quoted = true;
        } else if (c == ',') {
            row.fields.push_back(std::move(field));
            field.clear();
            field_quoted = false;
        } else if (c == '\n') {
            ++line_;
            if (!field.empty() && field.back() == '\r') {
                field.pop_back();
            }
            row.fields.push_back(std::move(field));
            row.line = start_line;
            return true;
        } else {
            field.push_back(c);
        }
    }
    if (in_.bad()) {
        fail(ErrorCode::io, "read error in CSV stream");
    }
    if (in_quotes) {
        fail(ErrorCode::io, "unterminated quoted field starting on line " +
                                std::to_string(start_line));
    }
    if (!any) {
        return false;
    }
    ++line_;
    if (!field.empty() && field.back() == '\r') {
        field.pop_back();
    }
    row.fields.push_back(std::move(field));
    row.line = start_line;
    return true;
}

std::optional<std::size_t> Table::column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) {
            return i;
        }
    }
    return std::nullopt;
}

Table read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(ErrorCode::io, "cannot open " + path);
    }
    Reader reader(in);
    Table table;
    Row row;
    if (!reader.next(row)) {
        return table;
    }
    table.header = std::move(row.fields);
    while (reader.next(row)) {
        if (row.fields.size() == 1 && row.fields[0].empty()) {
            continue;
        }
        table.rows.push_back(row);
    }
    return table;
}

std::string escape(std::string_view field) {
    const bool needs = field.find_first_of(",\"\n\r") != std::string_view::npos;
    if (!needs) {
        return std::string(field);
    }
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (char c : field) {
        if (c == '"') {
            out.push_back('"');
        }
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string format_number(double value) {
    if (!std::isfinite(value)) {
        return "NA";
    }
    if (value == 0.0) {
        return "0";  // folds -0
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

std::string format_number(std::int64_t value) { return std::to_string(value); }

std::string format_bool(bool value) { return value ? "true" : "false"; }

std::optional<double> parse_double(std::string_view text) {
    if (text.empty()) {
        return std::nullopt;
    }
    double v = 0.0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        return std::nullopt;
    }
    return v;
}

std::optional<std::int64_t> parse_int(std::string_view text) {
    if (text.empty()) {
        return std::nullopt;
    }
    std::int64_t v = 0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        return std::nullopt;
    }
    return v;
}

std::optional<bool> parse_bool(std::string_view text) {
    if (text == "true" || text == "1") {
        return true;
    }
    if (text == "false" || text == "0") {
        return false;
    }
    return std::nullopt;
}

void Writer::row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i != 0) {
            out_ << ',';
        }
        out_ << escape(fields[i]);
    }
    out_ << '\n';
}

}  // namespace botdrift::csv
