#include "io.h"

#include "arena/errors.h"

#include <charconv>
#include <string_view>

namespace arena::cli {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string_view strip_comment(std::string_view s) {
    const auto hash = s.find('#');
    return trim(hash == std::string_view::npos ? s : s.substr(0, hash));
}

bool parse_int(std::string_view s, int& value) {
    s = trim(s);
    if (s.empty()) return false;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    return ec == std::errc() && ptr == s.data() + s.size();
}

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& what) {
    throw ValidationError(source + ":" + std::to_string(line) + ": " + what);
}

} // namespace

ArenaShape parse_shape(const std::string& text) {
    const auto comma = text.find(',');
    int m = 0;
    int n = 0;
    if (comma == std::string::npos || !parse_int(std::string_view(text).substr(0, comma), m) ||
        !parse_int(std::string_view(text).substr(comma + 1), n)) {
        throw ValidationError("shape must look like 'm,n', got '" + text + "'");
    }
    if (m < 1 || n < 1) throw ValidationError("shape thresholds must be positive, got '" + text + "'");
    return ArenaShape(m, n);
}

ResultCounts read_history(std::istream& in, const ArenaShape& shape, bool fifa,
                          const std::string& source) {
    if (fifa && !(shape == ArenaShape(5, 1))) {
        throw ValidationError("--fifa result codes describe a 5-1 arena, not " + shape.to_string());
    }
    ResultCounts counts;
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string_view text = strip_comment(raw);
        if (text.empty()) continue;
        State s;
        if (fifa) {
            int code = -1;
            if (!parse_int(text, code) || code < 0 || code > 5) {
                fail(source, line, "expected a result code 0..5, got '" + std::string(text) + "'");
            }
            s = code < 5 ? State{code, 1} : State{5, 0};
        } else {
            const auto comma = text.find(',');
            if (comma == std::string_view::npos || !parse_int(text.substr(0, comma), s.wins) ||
                !parse_int(text.substr(comma + 1), s.losses)) {
                fail(source, line, "expected 'wins,losses', got '" + std::string(text) + "'");
            }
            if (!shape.is_boundary(s)) {
                fail(source, line, s.to_string() + " is not a final result of a " +
                                       shape.to_string() + " arena");
            }
        }
        ++counts[s];
    }
    return counts;
}

WinLossMatrix read_matrix(std::istream& in, const std::string& source) {
    std::vector<std::vector<int>> rows;
    std::string raw;
    std::size_t line = 0;
    std::size_t width = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string_view text = strip_comment(raw);
        if (text.empty()) continue;
        std::vector<int> row;
        row.reserve(text.size());
        for (std::size_t k = 0; k < text.size(); ++k) {
            if (text[k] != '0' && text[k] != '1') {
                fail(source, line, "column " + std::to_string(k + 1) + " holds '" +
                                       std::string(1, text[k]) + "', expected 0 or 1");
            }
            row.push_back(text[k] - '0');
        }
        if (rows.empty()) width = row.size();
        if (row.size() != width) {
            fail(source, line, "row has " + std::to_string(row.size()) + " entries, expected " +
                                   std::to_string(width));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ValidationError(source + ": no matrix rows found");
    return WinLossMatrix::from_rows(rows);
}

void write_matrix(std::ostream& out, const WinLossMatrix& matrix) {
    std::string row(matrix.rounds(), '0');
    for (std::size_t l = 0; l < matrix.players(); ++l) {
        for (std::size_t k = 0; k < matrix.rounds(); ++k) row[k] = matrix.at(l, k) ? '1' : '0';
        out << row << '\n';
    }
}

} // namespace arena::cli
