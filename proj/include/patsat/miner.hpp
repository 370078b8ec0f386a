#pragma once

#include "logic.hpp"
#include "oracle.hpp"
#include "patterns.hpp"
#include "rng.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <sstream>
#include <string_view>
#include <utility>
#include <vector>

namespace patsat {

/// Enumeration bounds beyond the guarded range.
class bounds_too_large : public error {
public:
    using error::error;
};

/// canonical_form is a brute-force orbit minimum over n! * 2^n actions and
/// refuses to run past its variable guard.
class canon_limit_exceeded : public error {
public:
    using error::error;
};

/// A symmetry action's permutation or flip set does not match the
/// instance's variable count.
class dimension_mismatch : public error {
public:
    using error::error;
};

/// A pattern-matching satisfiable instance was observed. The patterns are
/// proved sufficient for unsatisfiability, so this always indicates an
/// implementation bug, never a property of the input.
class soundness_violation : public error {
public:
    using error::error;
};

inline constexpr std::int32_t max_canonical_form_vars = 6;
inline constexpr std::int32_t max_enumeration_vars = 6;

/// An element of the syntactic symmetry group of 3SAT instances: relabel
/// variables by a bijection and invert the polarity of a chosen subset.
/// Clause order contributes no further symmetry; instances are clause sets.
struct symmetry_action {
    std::vector<std::int32_t> permutation;  // permutation[v-1] = image of variable v
    std::vector<bool> flip;                 // flip[v-1]: invert v's polarity (applied before relabeling)

    static symmetry_action identity(std::int32_t num_vars) {
        symmetry_action a;
        a.permutation.resize(static_cast<std::size_t>(num_vars));
        std::iota(a.permutation.begin(), a.permutation.end(), 1);
        a.flip.assign(static_cast<std::size_t>(num_vars), false);
        return a;
    }
};

namespace detail {

// Literal-code lookup table for one symmetry action; index by literal code,
// entries 0 and 1 unused.
using literal_map = std::vector<std::int32_t>;

inline literal_map make_literal_map(std::span<const std::int32_t> perm,
                                    const std::vector<bool>& flip) {
    const auto n = static_cast<std::int32_t>(perm.size());
    literal_map map(2 * static_cast<std::size_t>(n) + 2, 0);
    for (std::int32_t v = 1; v <= n; ++v) {
        const std::int32_t image = perm[static_cast<std::size_t>(v - 1)];
        const bool f = flip[static_cast<std::size_t>(v - 1)];
        map[static_cast<std::size_t>(2 * v)] = 2 * image + (f ? 1 : 0);
        map[static_cast<std::size_t>(2 * v + 1)] = 2 * image + (f ? 0 : 1);
    }
    return map;
}

inline literal_map make_literal_map(std::span<const std::int32_t> perm, std::uint32_t flip_bits) {
    std::vector<bool> flip(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) flip[i] = ((flip_bits >> i) & 1u) != 0;
    return make_literal_map(perm, flip);
}

/// Every non-identity action over n variables, as ready-to-use literal maps.
inline std::vector<literal_map> nonidentity_literal_maps(std::int32_t n) {
    std::vector<literal_map> maps;
    if (n <= 0) return maps;
    std::vector<std::int32_t> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 1);
    const std::uint32_t flip_count = 1u << n;
    bool identity_perm = true;  // next_permutation starts from the identity
    do {
        for (std::uint32_t bits = 0; bits < flip_count; ++bits) {
            if (identity_perm && bits == 0) continue;
            maps.push_back(make_literal_map(perm, bits));
        }
        identity_perm = false;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return maps;
}

inline clause transform_clause(const clause& c, const literal_map& map) {
    std::array<literal, 3> lits{pos(1), pos(1), pos(1)};
    const auto size = static_cast<std::uint8_t>(c.size());
    for (std::size_t i = 0; i < size; ++i) {
        const std::int32_t code = map[static_cast<std::size_t>(c[i].code())];
        lits[i] = literal(code >> 1, (code & 1) == 0);
    }
    if (size > 1 && lits[1] < lits[0]) std::swap(lits[0], lits[1]);
    if (size > 2) {
        if (lits[2] < lits[1]) std::swap(lits[1], lits[2]);
        if (lits[1] < lits[0]) std::swap(lits[0], lits[1]);
    }
    return clause::from_sorted(lits, size);
}

inline void transform_clauses(std::span<const clause> in, const literal_map& map,
                              std::vector<clause>& out) {
    out.clear();
    for (const clause& c : in) out.push_back(transform_clause(c, map));
    std::sort(out.begin(), out.end());
}

inline std::strong_ordering compare_clause_lists(std::span<const clause> a,
                                                 std::span<const clause> b) {
    return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

/// True iff no action produces a lexicographically smaller clause list.
inline bool is_orbit_minimum(std::span<const clause> sorted_clauses,
                             const std::vector<literal_map>& maps,
                             std::vector<clause>& scratch) {
    for (const literal_map& map : maps) {
        transform_clauses(sorted_clauses, map, scratch);
        if (compare_clause_lists(scratch, sorted_clauses) < 0) return false;
    }
    return true;
}

}  // namespace detail

/// Maps every literal through the action and re-sorts. Preserves n and m.
inline instance apply_symmetry(const instance& inst, const symmetry_action& action) {
    const std::int32_t n = inst.num_variables();
    if (static_cast<std::int32_t>(action.permutation.size()) != n ||
        static_cast<std::int32_t>(action.flip.size()) != n) {
        throw dimension_mismatch("symmetry action sized for " +
                                 std::to_string(action.permutation.size()) +
                                 " variables, instance has " + std::to_string(n));
    }
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (const std::int32_t image : action.permutation) {
        if (image < 1 || image > n || seen[static_cast<std::size_t>(image - 1)]) {
            throw std::invalid_argument("symmetry action: permutation is not a bijection on 1..n");
        }
        seen[static_cast<std::size_t>(image - 1)] = true;
    }

    const detail::literal_map map = detail::make_literal_map(action.permutation, action.flip);
    std::vector<clause> out;
    out.reserve(inst.num_clauses());
    for (const clause& c : inst.clauses()) out.push_back(detail::transform_clause(c, map));
    return instance(n, std::move(out));
}

/// The minimum of the instance's orbit under all n! * 2^n symmetry actions,
/// in the instance normal order. Constant on orbits and idempotent.
inline instance canonical_form(const instance& inst) {
    const std::int32_t n = inst.num_variables();
    if (n > max_canonical_form_vars) {
        throw canon_limit_exceeded("canonical_form enumerates n! * 2^n actions and is capped at " +
                                   std::to_string(max_canonical_form_vars) + " variables, got " +
                                   std::to_string(n));
    }
    if (n == 0 || inst.empty()) return inst;

    std::vector<clause> best = inst.clauses();
    std::vector<clause> scratch;
    for (const detail::literal_map& map : detail::nonidentity_literal_maps(n)) {
        detail::transform_clauses(inst.clauses(), map, scratch);
        if (detail::compare_clause_lists(scratch, best) < 0) best.swap(scratch);
    }
    return instance(n, std::move(best));
}

/// All canonical clauses over variables 1..num_vars, in normal order.
/// Grows cubically: 2n + 4*C(n,2) + 8*C(n,3) entries (26 for n = 3).
inline std::vector<clause> clause_universe(std::int32_t num_vars) {
    if (num_vars < 0) throw std::invalid_argument("clause_universe: negative variable count");
    std::vector<clause> out;
    const std::int32_t n = num_vars;
    for (std::int32_t v = 1; v <= n; ++v) {
        out.push_back(clause{pos(v)});
        out.push_back(clause{neg(v)});
    }
    for (std::int32_t a = 1; a <= n; ++a) {
        for (std::int32_t b = a + 1; b <= n; ++b) {
            for (std::uint32_t sign = 0; sign < 4; ++sign) {
                out.push_back(clause{literal(a, (sign & 2) == 0), literal(b, (sign & 1) == 0)});
            }
        }
    }
    for (std::int32_t a = 1; a <= n; ++a) {
        for (std::int32_t b = a + 1; b <= n; ++b) {
            for (std::int32_t c = b + 1; c <= n; ++c) {
                for (std::uint32_t sign = 0; sign < 8; ++sign) {
                    out.push_back(clause{literal(a, (sign & 4) == 0), literal(b, (sign & 2) == 0),
                                         literal(c, (sign & 1) == 0)});
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Visits exactly one representative — the canonical form — of every
/// symmetry class of instances with n <= max_vars, 1 <= m <= max_clauses and
/// clause width <= 3. Classes whose clauses do not use all n variables are
/// visited at their true variable count, so no class appears twice across
/// widths. Deterministic order: n ascending, then m ascending, then
/// lexicographic over the clause universe. The visitor returns false to stop.
inline void for_each_canonical_instance(std::int32_t max_vars, std::int32_t max_clauses,
                                        const std::function<bool(const instance&)>& visit) {
    if (max_vars < 0 || max_clauses < 0) {
        throw std::invalid_argument("enumeration bounds must be non-negative");
    }
    if (max_vars > max_enumeration_vars) {
        throw bounds_too_large("instance enumeration is capped at " +
                               std::to_string(max_enumeration_vars) + " variables, got " +
                               std::to_string(max_vars));
    }

    std::vector<clause> candidate;
    std::vector<clause> scratch;
    for (std::int32_t n = 1; n <= max_vars; ++n) {
        const std::vector<clause> universe = clause_universe(n);
        const std::vector<detail::literal_map> maps = detail::nonidentity_literal_maps(n);
        const std::uint32_t full_support = (1u << n) - 1;

        std::vector<std::uint32_t> support(universe.size(), 0);
        for (std::size_t i = 0; i < universe.size(); ++i) {
            for (literal lit : universe[i].literals()) {
                support[i] |= 1u << (lit.variable() - 1);
            }
        }

        const std::size_t usize = universe.size();
        const std::size_t max_m = std::min<std::size_t>(static_cast<std::size_t>(max_clauses), usize);
        for (std::size_t m = 1; m <= max_m; ++m) {
            std::vector<std::size_t> idx(m);
            std::iota(idx.begin(), idx.end(), std::size_t{0});
            for (;;) {
                std::uint32_t mask = 0;
                for (std::size_t i : idx) mask |= support[i];
                if (mask == full_support) {
                    candidate.clear();
                    for (std::size_t i : idx) candidate.push_back(universe[i]);
                    if (detail::is_orbit_minimum(candidate, maps, scratch)) {
                        if (!visit(instance(n, candidate))) return;
                    }
                }
                // next m-combination of [0, usize)
                std::size_t i = m;
                while (i > 0 && idx[i - 1] == usize - m + (i - 1)) --i;
                if (i == 0) break;
                ++idx[i - 1];
                for (std::size_t j = i; j < m; ++j) idx[j] = idx[j - 1] + 1;
            }
        }
    }
}

inline std::vector<instance> enumerate_instances(std::int32_t max_vars, std::int32_t max_clauses) {
    std::vector<instance> out;
    for_each_canonical_instance(max_vars, max_clauses, [&](const instance& inst) {
        out.push_back(inst);
        return true;
    });
    return out;
}

/// Joint classification of an instance by (pattern matched?, satisfiable?).
enum class quadrant : std::uint8_t {
    sat_pattern_free = 0,
    sat_pattern_matched = 1,   // must never occur: patterns force UNSAT
    unsat_pattern_matched = 2,
    unsat_pattern_free = 3     // refutes "pattern-free implies satisfiable"
};

inline quadrant classify_quadrant(bool pattern_matched, bool satisfiable) {
    if (satisfiable) {
        return pattern_matched ? quadrant::sat_pattern_matched : quadrant::sat_pattern_free;
    }
    return pattern_matched ? quadrant::unsat_pattern_matched : quadrant::unsat_pattern_free;
}

inline std::string_view quadrant_name(quadrant q) {
    switch (q) {
        case quadrant::sat_pattern_free: return "sat-pattern-free";
        case quadrant::sat_pattern_matched: return "sat-pattern-matched";
        case quadrant::unsat_pattern_matched: return "unsat-pattern-matched";
        case quadrant::unsat_pattern_free: return "unsat-pattern-free";
    }
    return "?";
}

inline std::optional<quadrant> quadrant_from_name(std::string_view name) {
    for (quadrant q : {quadrant::sat_pattern_free, quadrant::sat_pattern_matched,
                       quadrant::unsat_pattern_matched, quadrant::unsat_pattern_free}) {
        if (quadrant_name(q) == name) return q;
    }
    return std::nullopt;
}

struct classification_record {
    patsat::instance inst;
    pattern_report patterns;
    bool satisfiable = false;

    [[nodiscard]] patsat::quadrant quad() const {
        return classify_quadrant(patterns.matched(), satisfiable);
    }
};

/// Classifies with the exhaustive oracle; meant for enumeration-scale
/// instances (callers with big inputs build records from dpll_sat instead).
inline classification_record classify(const instance& inst) {
    return {inst, detect_any(inst), brute_force_sat(inst).satisfiable};
}

inline void for_each_classified(std::int32_t max_vars, std::int32_t max_clauses,
                                const std::function<bool(const classification_record&)>& visit) {
    for_each_canonical_instance(max_vars, max_clauses, [&](const instance& inst) {
        return visit(classify(inst));
    });
}

struct sufficiency_report {
    std::uint64_t total = 0;
    std::array<std::uint64_t, 4> quadrant_counts{};

    [[nodiscard]] std::uint64_t count(quadrant q) const {
        return quadrant_counts[static_cast<std::size_t>(q)];
    }
};

/// Classifies every canonical instance within bounds and tallies quadrants.
/// Throws soundness_violation the moment a satisfiable pattern match shows
/// up — that combination is impossible unless the detector or an oracle is
/// broken.
inline sufficiency_report verify_sufficiency(std::int32_t max_vars, std::int32_t max_clauses) {
    sufficiency_report report;
    for_each_classified(max_vars, max_clauses, [&](const classification_record& rec) {
        ++report.total;
        ++report.quadrant_counts[static_cast<std::size_t>(rec.quad())];
        if (rec.quad() == quadrant::sat_pattern_matched) {
            std::ostringstream oss;
            oss << "satisfiable instance matches a pattern: " << rec.inst;
            throw soundness_violation(oss.str());
        }
        return true;
    });
    return report;
}

/// Streams the canonical representatives that are unsatisfiable yet match no
/// pattern. Each one is re-verified by both oracles and the detector before
/// it is handed out.
inline void for_each_counterexample(std::int32_t max_vars, std::int32_t max_clauses,
                                    const std::function<bool(const instance&)>& visit) {
    for_each_classified(max_vars, max_clauses, [&](const classification_record& rec) {
        if (rec.quad() != quadrant::unsat_pattern_free) return true;
        if (brute_force_sat(rec.inst).satisfiable || dpll_sat(rec.inst).satisfiable ||
            detect_any(rec.inst).matched()) {
            std::ostringstream oss;
            oss << "counterexample failed re-verification: " << rec.inst;
            throw soundness_violation(oss.str());
        }
        return visit(rec.inst);
    });
}

inline std::vector<instance> find_counterexamples(std::int32_t max_vars,
                                                  std::int32_t max_clauses) {
    std::vector<instance> out;
    for_each_counterexample(max_vars, max_clauses, [&](const instance& inst) {
        out.push_back(inst);
        return true;
    });
    return out;
}

namespace detail {

inline std::uint64_t comb2(std::uint64_t k) { return k < 2 ? 0 : k * (k - 1) / 2; }
inline std::uint64_t comb3(std::uint64_t k) { return k < 3 ? 0 : k * (k - 1) * (k - 2) / 6; }

inline std::uint64_t clause_universe_size(std::int32_t n) {
    const auto k = static_cast<std::uint64_t>(n);
    return 2 * k + 4 * comb2(k) + 8 * comb3(k);
}

// Pairs (a, b) with 1 <= a < b <= n in lexicographic order.
inline std::pair<std::int32_t, std::int32_t> unrank_pair(std::int32_t n, std::uint64_t rank) {
    const auto nn = static_cast<std::uint64_t>(n);
    auto pairs_through = [nn](std::uint64_t a) { return a * nn - a * (a + 1) / 2; };
    std::int32_t lo = 1, hi = n - 1;
    while (lo < hi) {
        const std::int32_t mid = lo + (hi - lo) / 2;
        if (pairs_through(static_cast<std::uint64_t>(mid)) > rank) hi = mid;
        else lo = mid + 1;
    }
    const std::int32_t a = lo;
    const std::uint64_t before = pairs_through(static_cast<std::uint64_t>(a - 1));
    const std::int32_t b = a + 1 + static_cast<std::int32_t>(rank - before);
    return {a, b};
}

// Triples (a, b, c) with 1 <= a < b < c <= n in lexicographic order.
inline std::array<std::int32_t, 3> unrank_triple(std::int32_t n, std::uint64_t rank) {
    const auto nn = static_cast<std::uint64_t>(n);
    auto triples_through = [nn](std::uint64_t a) { return comb3(nn) - comb3(nn - a); };
    std::int32_t lo = 1, hi = n - 2;
    while (lo < hi) {
        const std::int32_t mid = lo + (hi - lo) / 2;
        if (triples_through(static_cast<std::uint64_t>(mid)) > rank) hi = mid;
        else lo = mid + 1;
    }
    const std::int32_t a = lo;
    const std::uint64_t before = triples_through(static_cast<std::uint64_t>(a - 1));
    const auto [b0, c0] = unrank_pair(n - a, rank - before);
    return {a, a + b0, a + c0};
}

/// Bijection from [0, clause_universe_size(n)) onto the canonical clause
/// universe: units first, then pairs, then triples; sign combinations
/// innermost. Lets random_instance draw uniformly without materializing the
/// (cubically large) universe.
inline clause decode_universe_clause(std::int32_t n, std::uint64_t index) {
    const auto nn = static_cast<std::uint64_t>(n);
    if (index < 2 * nn) {
        const auto v = static_cast<std::int32_t>(index / 2 + 1);
        return clause{literal(v, (index & 1) == 0)};
    }
    index -= 2 * nn;
    const std::uint64_t pair_block = 4 * comb2(nn);
    if (index < pair_block) {
        const auto [a, b] = unrank_pair(n, index >> 2);
        const std::uint64_t sign = index & 3;
        return clause{literal(a, (sign & 2) == 0), literal(b, (sign & 1) == 0)};
    }
    index -= pair_block;
    const auto [a, b, c] = unrank_triple(n, index >> 3);
    const std::uint64_t sign = index & 7;
    return clause{literal(a, (sign & 4) == 0), literal(b, (sign & 2) == 0),
                  literal(c, (sign & 1) == 0)};
}

}  // namespace detail

/// Deterministic function of (num_vars, num_clauses, seed): num_clauses
/// draws, each uniform over the whole canonical clause universe of width
/// 1..3. Duplicate draws collapse, so m can come out below num_clauses.
inline instance random_instance(std::int32_t num_vars, std::int32_t num_clauses,
                                std::uint64_t seed) {
    if (num_vars < 1) {
        throw std::invalid_argument("random_instance: at least one variable required");
    }
    if (num_vars > 1'000'000) {
        throw std::invalid_argument("random_instance: variable count beyond supported range");
    }
    if (num_clauses < 0) {
        throw std::invalid_argument("random_instance: negative clause count");
    }
    splitmix64 rng(seed);
    const std::uint64_t universe = detail::clause_universe_size(num_vars);
    std::vector<clause> cls;
    cls.reserve(static_cast<std::size_t>(num_clauses));
    for (std::int32_t i = 0; i < num_clauses; ++i) {
        cls.push_back(detail::decode_universe_clause(num_vars, rng.bounded(universe)));
    }
    return instance(num_vars, std::move(cls));
}

}  // namespace patsat
