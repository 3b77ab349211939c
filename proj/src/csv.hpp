#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace econfit::csv {

/// Splits one CSV record. Double-quoted fields may contain commas and "" escapes.
std::vector<std::string> split(std::string_view line, std::size_t line_no);

/// Quotes a field when it contains a comma, quote or leading/trailing space.
std::string escape(std::string_view field);

std::string_view trim(std::string_view s);

double parse_double(std::string_view text, std::size_t line_no, std::string_view what);
long long parse_int(std::string_view text, std::size_t line_no, std::string_view what);

/// Shortest text that parses back to the same double.
std::string format_double(double v);

/// Line reader that strips CR and skips blank and '#' lines, tracking line numbers.
class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}
    bool next(std::string& line);
    std::size_t line_no() const noexcept { return line_no_; }

private:
    std::istream& in_;
    std::size_t line_no_ = 0;
};

/// Reads the header and checks it equals `expected` (after trimming each name).
void expect_header(LineReader& reader, const std::vector<std::string>& expected);

} // namespace econfit::csv
