#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace botdrift::report {

enum class ColumnKind { text, feature, integer, number, number_or_na, boolean, category, enumeration };

struct ColumnSchema {
    std::string name;
    ColumnKind kind = ColumnKind::text;
    std::vector<std::string> allowed;  // for enumeration
};

struct CsvSchema {
    std::string name;
    std::vector<ColumnSchema> columns;
};

const CsvSchema& features_schema();
const CsvSchema& series_schema();
const CsvSchema& verdict_schema();
const CsvSchema& dependency_schema();
const CsvSchema& category_schema();
const CsvSchema& transitions_schema();

/// Header must match exactly; every cell must parse as its column kind.
/// Throws Error(schema) naming the file, line and column.
void validate_csv(const std::filesystem::path& path, const CsvSchema& schema);

/// Structural checks on the JSON outputs (keys and value types).
void validate_strata_json(const std::filesystem::path& path);
void validate_census_json(const std::filesystem::path& path);

}  // namespace botdrift::report
