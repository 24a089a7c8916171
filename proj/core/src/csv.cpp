#include "chargenet/csv.hpp"

#include <charconv>
#include <cmath>

#include <fmt/format.h>

#include "chargenet/errors.hpp"

namespace chargenet::csv {

std::string_view trim(std::string_view s) noexcept {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split(std::string_view line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(sep, start);
        out.emplace_back(trim(line.substr(start, pos == std::string_view::npos ? line.npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

bool Reader::next(std::vector<std::string>& fields) {
    std::string raw;
    while (std::getline(in_, raw)) {
        ++line_;
        const std::string_view view = trim(raw);
        if (view.empty() || view.front() == '#') continue;
        fields = split(view);
        return true;
    }
    return false;
}

double parse_double(std::string_view text, std::size_t line, std::string_view field) {
    const std::string_view t = trim(text);
    double value = 0.0;
    const char* begin = t.data();
    const char* end = t.data() + t.size();
    if (!t.empty() && *begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (t.empty() || ec != std::errc{} || ptr != end || !std::isfinite(value)) {
        throw ParseError(line, fmt::format("cannot parse {} from '{}'", field, t));
    }
    return value;
}

std::string format_double(double value) { return fmt::format("{}", value); }

}  // namespace chargenet::csv
