#pragma once

#include "logic.hpp"

#include <cstddef>
#include <string>
#include <string_view>

namespace patsat {

enum class parse_error_kind : std::uint8_t {
    syntax,
    malformed_header,
    literal_out_of_range,
    too_many_literals,
    unterminated_clause,
    empty_clause,
};

inline std::string_view parse_error_kind_name(parse_error_kind kind) {
    switch (kind) {
        case parse_error_kind::syntax: return "syntax";
        case parse_error_kind::malformed_header: return "malformed-header";
        case parse_error_kind::literal_out_of_range: return "literal-out-of-range";
        case parse_error_kind::too_many_literals: return "too-many-literals";
        case parse_error_kind::unterminated_clause: return "unterminated-clause";
        case parse_error_kind::empty_clause: return "empty-clause";
    }
    return "?";
}

/// Input rejected by a parser. line/column are 1-based; column 0 means the
/// position is line-granular only (DIMACS reports lines, the formula parser
/// reports exact columns).
class parse_error : public error {
public:
    parse_error(parse_error_kind kind, std::size_t line, std::size_t column,
                const std::string& message)
        : error(format(line, column, message)), kind_(kind), line_(line), column_(column) {}

    [[nodiscard]] parse_error_kind kind() const { return kind_; }
    [[nodiscard]] std::size_t line() const { return line_; }
    [[nodiscard]] std::size_t column() const { return column_; }

private:
    static std::string format(std::size_t line, std::size_t column, const std::string& message) {
        std::string out = "line " + std::to_string(line);
        if (column > 0) out += ", column " + std::to_string(column);
        return out + ": " + message;
    }

    parse_error_kind kind_;
    std::size_t line_;
    std::size_t column_;
};

}  // namespace patsat
