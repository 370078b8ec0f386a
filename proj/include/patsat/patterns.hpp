#pragma once

#include "logic.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace patsat {

/// The three syntactic conditions this tool detects. Each one says: some
/// k-tuple of distinct variables occurs with every one of its 2^k sign
/// combinations as a width-k clause. Any such full polarity cube forces
/// unsatisfiability (resolving the cube away eliminates the variables and
/// leaves the empty clause).
enum class pattern_kind : std::uint8_t { pattern1 = 1, pattern2 = 2, pattern3 = 3 };

constexpr int pattern_arity(pattern_kind kind) { return static_cast<int>(kind); }

inline std::string_view pattern_kind_name(pattern_kind kind) {
    switch (kind) {
        case pattern_kind::pattern1: return "pattern1";
        case pattern_kind::pattern2: return "pattern2";
        case pattern_kind::pattern3: return "pattern3";
    }
    return "?";
}

/// The variable tuple instantiating a matched pattern, strictly increasing.
struct pattern_witness {
    pattern_kind kind;
    std::vector<std::int32_t> variables;  // size == pattern_arity(kind)

    friend bool operator==(const pattern_witness&, const pattern_witness&) = default;
};

/// Materializes the 2^k clauses a witness asserts are present, so callers
/// can re-check it against the instance independently.
inline std::vector<clause> pattern_clauses(const pattern_witness& w) {
    const int k = pattern_arity(w.kind);
    std::vector<clause> out;
    out.reserve(std::size_t{1} << k);
    for (std::uint32_t bits = 0; bits < (1u << k); ++bits) {
        std::array<literal, 3> lits{pos(1), pos(1), pos(1)};
        for (int i = 0; i < k; ++i) {
            lits[static_cast<std::size_t>(i)] =
                literal(w.variables[static_cast<std::size_t>(i)], ((bits >> i) & 1u) == 0);
        }
        out.push_back(clause::from_sorted(lits, static_cast<std::uint8_t>(k)));
    }
    return out;
}

struct pattern_report {
    /// At most one witness per kind, in kind order.
    std::vector<pattern_witness> witnesses;

    [[nodiscard]] bool matched() const { return !witnesses.empty(); }

    [[nodiscard]] std::optional<pattern_witness> witness_for(pattern_kind kind) const {
        for (const auto& w : witnesses) {
            if (w.kind == kind) return w;
        }
        return std::nullopt;
    }
};

namespace detail {

struct var_tuple {
    std::array<std::int32_t, 3> v{0, 0, 0};
    friend bool operator==(const var_tuple&, const var_tuple&) = default;
    friend auto operator<=>(const var_tuple&, const var_tuple&) = default;
};

struct var_tuple_hash {
    std::size_t operator()(const var_tuple& t) const {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (std::int32_t x : t.v) {
            h ^= static_cast<std::uint32_t>(x);
            h *= 0x100000001b3ull;
            h ^= h >> 29;
        }
        return static_cast<std::size_t>(h);
    }
};

/// Per variable k-tuple, one bit per sign combination seen among width-k
/// clauses: bit i of the combination index is set when the (i+1)-th smallest
/// variable occurs negated. A tuple whose mask is full is a pattern hit.
/// Hash-keyed, so indexing m clauses is expected O(m).
class polarity_cube_index {
public:
    explicit polarity_cube_index(int width) : width_(width) {}

    void reserve(std::size_t n) { masks_.reserve(n); }

    void add(const clause& c) {
        if (static_cast<int>(c.size()) != width_) return;
        var_tuple key;
        std::uint8_t combo = 0;
        for (int i = 0; i < width_; ++i) {
            const literal lit = c[static_cast<std::size_t>(i)];
            key.v[static_cast<std::size_t>(i)] = lit.variable();
            if (!lit.is_positive()) combo |= static_cast<std::uint8_t>(1u << i);
        }
        masks_[key] |= static_cast<std::uint8_t>(1u << combo);
    }

    /// Lexicographically smallest tuple with all 2^width combinations
    /// present, if any.
    [[nodiscard]] std::optional<var_tuple> smallest_complete() const {
        const std::uint8_t full =
            static_cast<std::uint8_t>((1u << (1u << width_)) - 1u);
        std::optional<var_tuple> best;
        for (const auto& [key, mask] : masks_) {
            if (mask != full) continue;
            if (!best || key < *best) best = key;
        }
        return best;
    }

private:
    int width_;
    std::unordered_map<var_tuple, std::uint8_t, var_tuple_hash> masks_;
};

inline std::optional<pattern_witness> witness_from(pattern_kind kind,
                                                   const std::optional<var_tuple>& tuple) {
    if (!tuple) return std::nullopt;
    pattern_witness w;
    w.kind = kind;
    for (int i = 0; i < pattern_arity(kind); ++i) {
        w.variables.push_back(tuple->v[static_cast<std::size_t>(i)]);
    }
    return w;
}

inline std::optional<pattern_witness> detect_width(const instance& inst, pattern_kind kind) {
    polarity_cube_index index(pattern_arity(kind));
    index.reserve(inst.num_clauses());
    for (const clause& c : inst.clauses()) index.add(c);
    return witness_from(kind, index.smallest_complete());
}

}  // namespace detail

/// Some variable has both unit clauses {x} and {!x}. Returns the smallest
/// such variable.
inline std::optional<pattern_witness> detect_pattern1(const instance& inst) {
    return detail::detect_width(inst, pattern_kind::pattern1);
}

/// Some variable pair has all four sign combinations as 2-literal clauses.
/// Only clauses of canonical width exactly 2 participate; a 3-literal clause
/// that merely implies one of the four does not count.
inline std::optional<pattern_witness> detect_pattern2(const instance& inst) {
    return detail::detect_width(inst, pattern_kind::pattern2);
}

/// Some variable triple has all eight sign combinations as 3-literal clauses.
inline std::optional<pattern_witness> detect_pattern3(const instance& inst) {
    return detail::detect_width(inst, pattern_kind::pattern3);
}

/// Runs all three detectors in one pass over the clause set. Reports one
/// canonical (smallest-tuple) witness per firing kind.
inline pattern_report detect_any(const instance& inst) {
    detail::polarity_cube_index units(1), pairs(2), triples(3);
    units.reserve(16);
    pairs.reserve(inst.num_clauses());
    triples.reserve(inst.num_clauses());
    for (const clause& c : inst.clauses()) {
        switch (c.size()) {
            case 1: units.add(c); break;
            case 2: pairs.add(c); break;
            default: triples.add(c); break;
        }
    }
    pattern_report report;
    if (auto w = detail::witness_from(pattern_kind::pattern1, units.smallest_complete())) {
        report.witnesses.push_back(std::move(*w));
    }
    if (auto w = detail::witness_from(pattern_kind::pattern2, pairs.smallest_complete())) {
        report.witnesses.push_back(std::move(*w));
    }
    if (auto w = detail::witness_from(pattern_kind::pattern3, triples.smallest_complete())) {
        report.witnesses.push_back(std::move(*w));
    }
    return report;
}

}  // namespace patsat
