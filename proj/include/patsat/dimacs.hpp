#pragma once

#include "logic.hpp"
#include "parse_error.hpp"

#include <cctype>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace patsat {

struct dimacs_document {
    patsat::instance instance;
    std::size_t tautologies_dropped = 0;     // vacuously true clauses are dropped, not kept
    bool clause_count_mismatch = false;      // header m vs. stored m after canonicalization
    std::int64_t header_clause_count = 0;
};

namespace detail {

inline bool is_integer_token(std::string_view tok) {
    if (tok.empty()) return false;
    std::size_t i = (tok[0] == '-') ? 1 : 0;
    if (i == tok.size()) return false;
    for (; i < tok.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(tok[i]))) return false;
    }
    return true;
}

}  // namespace detail

/// Standard DIMACS CNF, restricted to width <= 3: comment lines start with
/// 'c', one "p cnf <n> <m>" header, clauses are nonzero integers terminated
/// by 0 and may span lines. Tautological clauses are dropped and counted; a
/// header clause count that disagrees with the canonicalized instance is a
/// warning, not an error (real-world headers are often stale).
inline dimacs_document parse_dimacs(std::istream& in) {
    dimacs_document doc;
    std::string line;
    std::size_t line_no = 0;

    std::int64_t declared_vars = -1;
    bool saw_header = false;

    std::vector<clause> parsed;
    std::vector<literal> current;
    std::size_t clause_line = 0;  // line where the open clause started

    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream tokens(line);
        std::string tok;
        if (!(tokens >> tok)) continue;  // blank line
        if (tok == "c" || tok[0] == 'c') continue;

        if (!saw_header) {
            if (tok != "p") {
                throw parse_error(parse_error_kind::malformed_header, line_no, 0,
                                  "expected 'p cnf <vars> <clauses>' before any clause");
            }
            std::string fmt;
            std::int64_t n = -1, m = -1;
            if (!(tokens >> fmt >> n >> m) || fmt != "cnf" || n < 0 || m < 0) {
                throw parse_error(parse_error_kind::malformed_header, line_no, 0,
                                  "malformed problem line");
            }
            std::string trailing;
            if (tokens >> trailing) {
                throw parse_error(parse_error_kind::malformed_header, line_no, 0,
                                  "unexpected token after problem line: '" + trailing + "'");
            }
            if (n > literal::max_variable_index) {
                throw parse_error(parse_error_kind::malformed_header, line_no, 0,
                                  "variable count out of range");
            }
            declared_vars = n;
            doc.header_clause_count = m;
            saw_header = true;
            continue;
        }

        do {
            if (!detail::is_integer_token(tok)) {
                throw parse_error(parse_error_kind::syntax, line_no, 0,
                                  "expected a literal or 0, got '" + tok + "'");
            }
            std::int64_t value = 0;
            try {
                value = std::stoll(tok);
            } catch (const std::out_of_range&) {
                throw parse_error(parse_error_kind::literal_out_of_range, line_no, 0,
                                  "literal '" + tok + "' does not fit an integer");
            }
            if (value == 0) {
                if (current.empty()) {
                    throw parse_error(parse_error_kind::empty_clause, line_no, 0,
                                      "empty clause");
                }
                auto canon = canonicalize_clause(current);
                switch (canon.status) {
                    case canon_status::ok:
                        parsed.push_back(*canon.value);
                        break;
                    case canon_status::tautology:
                        ++doc.tautologies_dropped;
                        break;
                    case canon_status::too_many_literals:
                        throw parse_error(parse_error_kind::too_many_literals, clause_line, 0,
                                          "clause has more than three distinct variables");
                    case canon_status::empty:
                        throw parse_error(parse_error_kind::empty_clause, line_no, 0,
                                          "empty clause");
                }
                current.clear();
            } else {
                if (value < -declared_vars || value > declared_vars) {
                    throw parse_error(parse_error_kind::literal_out_of_range, line_no, 0,
                                      "literal " + std::to_string(value) +
                                          " outside declared range 1.." +
                                          std::to_string(declared_vars));
                }
                if (current.empty()) clause_line = line_no;
                current.push_back(literal::from_dimacs(static_cast<std::int32_t>(value)));
            }
        } while (tokens >> tok);
    }

    if (!saw_header) {
        throw parse_error(parse_error_kind::malformed_header, line_no, 0,
                          "missing 'p cnf' header");
    }
    if (!current.empty()) {
        throw parse_error(parse_error_kind::unterminated_clause, clause_line, 0,
                          "clause not terminated by 0 before end of input");
    }

    doc.instance = patsat::instance(static_cast<std::int32_t>(declared_vars), std::move(parsed));
    doc.clause_count_mismatch =
        doc.header_clause_count != static_cast<std::int64_t>(doc.instance.num_clauses());
    return doc;
}

inline dimacs_document parse_dimacs(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_dimacs(in);
}

/// Header then clauses in the stored normal order; byte-identical for equal
/// instances, and parse_dimacs(emit_dimacs(I)) == I.
inline void emit_dimacs(std::ostream& out, const instance& inst) {
    out << "p cnf " << inst.num_variables() << ' ' << inst.num_clauses() << '\n';
    for (const clause& c : inst.clauses()) {
        for (literal lit : c.literals()) out << lit.to_dimacs() << ' ';
        out << "0\n";
    }
}

inline std::string emit_dimacs(const instance& inst) {
    std::ostringstream out;
    emit_dimacs(out, inst);
    return out.str();
}

}  // namespace patsat
