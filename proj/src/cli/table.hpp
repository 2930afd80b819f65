#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace ldposc::cli {

/// Schema tag written into every JSON document.
inline constexpr const char* kSchema = "ldp-osc/1";

using Cell = std::variant<std::string, long long, double, bool>;

/// Tabular command output: typed rows, a key/value summary footer and warnings.
struct Table {
    std::string command;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, Cell>> summary;
    std::vector<std::string> warnings;

    void add_row(std::vector<Cell> row);
    const Cell& at(std::size_t row, std::string_view column) const;

    friend bool operator==(const Table&, const Table&) = default;
};

/// Text of a cell as written to CSV: shortest round-trip decimals, "inf" for
/// infinities, true/false for flags.
std::string format_cell(const Cell& cell);

/// CSV layout:
///   # command: <name>
///   <header>
///   <rows>            strings quoted, numbers bare
///   # summary <key>=<value>
///   # warning: <text>
std::string to_csv(const Table& table);
Table parse_csv(const std::string& text);

/// {"schema": "ldp-osc/1", "command", "columns", "rows": [{...}], "summary": {...},
///  "warnings": [...]}; non-finite numbers become the strings "inf", "-inf", "nan".
std::string to_json(const Table& table);

}  // namespace ldposc::cli
