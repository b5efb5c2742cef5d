#include "stratscope/csv.hpp"

#include <stdexcept>

namespace stratscope::csv {

std::optional<std::size_t> Table::column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) {
            return i;
        }
    }
    return std::nullopt;
}

Table parse(std::string_view text) {
    Table table;
    std::vector<std::string> fields;
    std::string field;
    bool in_quotes = false;
    bool row_has_content = false;
    int line = 1;
    int row_start_line = 1;

    auto end_field = [&] {
        fields.push_back(std::move(field));
        field.clear();
    };
    auto end_row = [&] {
        end_field();
        if (table.header.empty() && table.rows.empty()) {
            table.header = std::move(fields);
        } else {
            table.rows.push_back({row_start_line, std::move(fields)});
        }
        fields.clear();
        row_has_content = false;
        row_start_line = line;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') {
                    ++line;
                }
                field += c;
            }
            continue;
        }
        switch (c) {
            case '"':
                in_quotes = true;
                row_has_content = true;
                break;
            case ',':
                end_field();
                row_has_content = true;
                break;
            case '\r':
                break;
            case '\n':
                ++line;
                if (row_has_content || !field.empty() || !fields.empty()) {
                    end_row();
                } else {
                    row_start_line = line;
                }
                break;
            default:
                field += c;
                row_has_content = true;
                break;
        }
    }
    if (in_quotes) {
        throw ParseError(row_start_line, "unterminated quoted field");
    }
    if (row_has_content || !field.empty() || !fields.empty()) {
        end_row();
    }
    if (table.header.empty()) {
        throw ParseError(1, "missing header row");
    }
    return table;
}

std::string escape_field(std::string_view field) {
    bool needs_quotes = false;
    for (char c : field) {
        if (c == ',' || c == '"' || c == '\n' || c == '\r') {
            needs_quotes = true;
            break;
        }
    }
    if (!needs_quotes) {
        return std::string(field);
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') {
            out += "\"\"";
        } else {
            out += c;
        }
    }
    out += '"';
    return out;
}

std::string format_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += escape_field(fields[i]);
    }
    out += '\n';
    return out;
}

}  // namespace stratscope::csv
