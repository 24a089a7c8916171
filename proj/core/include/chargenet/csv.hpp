#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace chargenet::csv {

/// Minimal reader for the unquoted, comma-separated data files this project uses.
/// Blank lines and lines starting with '#' are skipped.
class Reader {
public:
    explicit Reader(std::istream& in) : in_(in) {}

    /// Reads the next data row into `fields`. Returns false at end of stream.
    bool next(std::vector<std::string>& fields);
    /// 1-based line number of the row last returned by next().
    std::size_t line() const noexcept { return line_; }

private:
    std::istream& in_;
    std::size_t line_ = 0;
};

std::vector<std::string> split(std::string_view line, char sep = ',');
std::string_view trim(std::string_view s) noexcept;

/// Strict numeric parse; throws ParseError tagged with `line` on trailing junk.
double parse_double(std::string_view text, std::size_t line, std::string_view field);

/// Shortest decimal representation that round-trips.
std::string format_double(double value);

}  // namespace chargenet::csv
