#include "table.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "ldposc/error.hpp"

namespace ldposc::cli {

namespace {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    std::string text(buf.data(), end);
    // Keep doubles distinguishable from integers when read back.
    if (text.find_first_of(".e") == std::string::npos) text += ".0";
    return text;
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

bool all_digits(std::string_view s) {
    if (!s.empty() && s.front() == '-') s.remove_prefix(1);
    if (s.empty()) return false;
    for (char ch : s) {
        if (ch < '0' || ch > '9') return false;
    }
    return true;
}

Cell parse_cell(std::string_view text) {
    if (text == "true") return true;
    if (text == "false") return false;
    if (all_digits(text)) {
        long long v = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec == std::errc() && ptr == text.data() + text.size()) return v;
    }
    if (text == "inf") return std::numeric_limits<double>::infinity();
    if (text == "-inf") return -std::numeric_limits<double>::infinity();
    if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw Error("csv: cannot read cell '" + std::string(text) + "'");
    }
    return v;
}

// Splits one CSV record; quoted fields come back as strings, bare ones typed.
std::vector<Cell> split_record(std::string_view line) {
    std::vector<Cell> cells;
    std::size_t pos = 0;
    for (;;) {
        if (pos < line.size() && line[pos] == '"') {
            std::string value;
            ++pos;
            for (;;) {
                if (pos >= line.size()) throw Error("csv: unterminated quote");
                if (line[pos] == '"') {
                    if (pos + 1 < line.size() && line[pos + 1] == '"') {
                        value += '"';
                        pos += 2;
                        continue;
                    }
                    ++pos;
                    break;
                }
                value += line[pos++];
            }
            cells.emplace_back(std::move(value));
        } else {
            const std::size_t comma = line.find(',', pos);
            const std::string_view field = line.substr(pos, comma == std::string_view::npos ? line.size() - pos : comma - pos);
            cells.push_back(parse_cell(field));
            pos += field.size();
        }
        if (pos >= line.size()) break;
        if (line[pos] != ',') throw Error("csv: expected ','");
        ++pos;
    }
    return cells;
}

nlohmann::ordered_json to_json_value(const Cell& cell) {
    if (const auto* s = std::get_if<std::string>(&cell)) return *s;
    if (const auto* i = std::get_if<long long>(&cell)) return *i;
    if (const auto* b = std::get_if<bool>(&cell)) return *b;
    const double d = std::get<double>(cell);
    if (!std::isfinite(d)) return format_double(d);
    return d;
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw InvariantViolation("table row width mismatch");
    rows.push_back(std::move(row));
}

const Cell& Table::at(std::size_t row, std::string_view column) const {
    for (std::size_t k = 0; k < columns.size(); ++k) {
        if (columns[k] == column) return rows.at(row).at(k);
    }
    throw Error("no column '" + std::string(column) + "'");
}

std::string format_cell(const Cell& cell) {
    if (const auto* s = std::get_if<std::string>(&cell)) return *s;
    if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
    if (const auto* b = std::get_if<bool>(&cell)) return *b ? "true" : "false";
    return format_double(std::get<double>(cell));
}

std::string to_csv(const Table& table) {
    std::ostringstream os;
    os << "# command: " << table.command << "\n";
    for (std::size_t k = 0; k < table.columns.size(); ++k) {
        os << (k ? "," : "") << table.columns[k];
    }
    os << "\n";
    auto write = [&os](const Cell& cell) {
        if (const auto* s = std::get_if<std::string>(&cell)) {
            os << quote(*s);
        } else {
            os << format_cell(cell);
        }
    };
    for (const auto& row : table.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k) os << ",";
            write(row[k]);
        }
        os << "\n";
    }
    for (const auto& [key, value] : table.summary) {
        os << "# summary " << key << "=";
        write(value);
        os << "\n";
    }
    for (const std::string& w : table.warnings) os << "# warning: " << w << "\n";
    return os.str();
}

Table parse_csv(const std::string& text) {
    Table table;
    std::istringstream in(text);
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.rfind("# command: ", 0) == 0) {
            table.command = line.substr(11);
        } else if (line.rfind("# summary ", 0) == 0) {
            const std::string body = line.substr(10);
            const std::size_t eq = body.find('=');
            if (eq == std::string::npos) throw Error("csv: malformed summary line");
            std::vector<Cell> cells = split_record(std::string_view(body).substr(eq + 1));
            if (cells.size() != 1) throw Error("csv: summary value must be one cell");
            table.summary.emplace_back(body.substr(0, eq), std::move(cells.front()));
        } else if (line.rfind("# warning: ", 0) == 0) {
            table.warnings.push_back(line.substr(11));
        } else if (line.empty() || line.front() == '#') {
            continue;
        } else if (!header) {
            std::istringstream cols(line);
            std::string col;
            while (std::getline(cols, col, ',')) table.columns.push_back(col);
            header = true;
        } else {
            table.add_row(split_record(line));
        }
    }
    return table;
}

std::string to_json(const Table& table) {
    nlohmann::ordered_json doc;
    doc["schema"] = kSchema;
    doc["command"] = table.command;
    doc["columns"] = table.columns;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t k = 0; k < row.size(); ++k) obj[table.columns[k]] = to_json_value(row[k]);
        rows.push_back(std::move(obj));
    }
    doc["rows"] = std::move(rows);
    nlohmann::ordered_json summary = nlohmann::ordered_json::object();
    for (const auto& [key, value] : table.summary) summary[key] = to_json_value(value);
    doc["summary"] = std::move(summary);
    doc["warnings"] = table.warnings;
    return doc.dump(2) + "\n";
}

}  // namespace ldposc::cli
