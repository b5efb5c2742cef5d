#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

// Minimal strict CSV support: comma delimiter, mandatory header row, UTF-8,
// quoted fields with doubled-quote escapes, LF or CRLF line endings.

namespace stratscope::csv {

struct Row {
    int line = 0;  // 1-based line number of the row's first physical line
    std::vector<std::string> fields;
};

struct Table {
    std::vector<std::string> header;
    std::vector<Row> rows;

    // Column index for a header name, or nullopt if absent.
    std::optional<std::size_t> column(std::string_view name) const;
};

class ParseError : public std::runtime_error {
  public:
    ParseError(int line, const std::string& what)
        : std::runtime_error(what), line_(line) {}
    int line() const { return line_; }

  private:
    int line_;
};

// Parses full CSV text. Throws ParseError on structural problems (unterminated
// quote, missing header). Rows may have ragged width; callers validate.
Table parse(std::string_view text);

// Quotes a field if it contains a delimiter, quote or newline.
std::string escape_field(std::string_view field);

std::string format_row(const std::vector<std::string>& fields);

}  // namespace stratscope::csv
