#pragma once

#include "logic.hpp"

#include <cassert>
#include <cstdint>
#include <optional>
#include <vector>

namespace patsat {

/// The instance has more variables than the exhaustive oracle will
/// enumerate (2^n assignments).
class too_many_variables : public error {
public:
    using error::error;
};

inline constexpr std::int32_t default_brute_force_cap = 24;

struct sat_verdict {
    bool satisfiable = false;
    std::optional<assignment> model;  // engaged iff satisfiable; satisfies the instance
};

namespace detail {

inline bool clause_true_under_bits(const clause& c, std::uint64_t bits) {
    for (literal lit : c.literals()) {
        const bool value = ((bits >> (lit.variable() - 1)) & 1u) != 0;
        if (value == lit.is_positive()) return true;
    }
    return false;
}

inline bool instance_true_under_bits(const instance& inst, std::uint64_t bits) {
    for (const clause& c : inst.clauses()) {
        if (!clause_true_under_bits(c, bits)) return false;
    }
    return true;
}

inline void check_brute_cap(const instance& inst, std::int32_t max_variables) {
    const std::int32_t n = inst.num_variables();
    // 62 keeps the 2^n loop counter inside a uint64 no matter the cap.
    if (n > max_variables || n > 62) {
        throw too_many_variables("exhaustive oracle: " + std::to_string(n) +
                                 " variables exceeds cap of " + std::to_string(max_variables));
    }
}

}  // namespace detail

/// Tries all 2^n assignments in ascending binary order (variable 1 is the
/// least significant bit) and returns the first satisfying one, so the
/// model is deterministic and testable.
inline sat_verdict brute_force_sat(const instance& inst,
                                   std::int32_t max_variables = default_brute_force_cap) {
    detail::check_brute_cap(inst, max_variables);
    const std::uint64_t total = std::uint64_t{1} << inst.num_variables();
    for (std::uint64_t bits = 0; bits < total; ++bits) {
        if (detail::instance_true_under_bits(inst, bits)) {
            return {true, assignment::from_bits(inst.num_variables(), bits)};
        }
    }
    return {false, std::nullopt};
}

/// Exact number of satisfying assignments over all 2^n.
inline std::uint64_t count_models(const instance& inst,
                                  std::int32_t max_variables = default_brute_force_cap) {
    detail::check_brute_cap(inst, max_variables);
    const std::uint64_t total = std::uint64_t{1} << inst.num_variables();
    std::uint64_t count = 0;
    for (std::uint64_t bits = 0; bits < total; ++bits) {
        if (detail::instance_true_under_bits(inst, bits)) ++count;
    }
    return count;
}

namespace detail {

// values[v]: -1 unassigned, 0 false, 1 true. Fully deterministic search:
// unit propagation and pure-literal elimination to fixpoint, then branch on
// the lowest-indexed unassigned variable, true first.
inline bool dpll_search(const std::vector<clause>& clauses, std::int32_t num_vars,
                        std::vector<std::int8_t>& values) {
    for (;;) {
        bool changed = false;

        // Unit propagation. Assignments made mid-pass are caught by the
        // rescan, including any conflicts they introduce.
        for (const clause& c : clauses) {
            bool satisfied = false;
            int unassigned = 0;
            literal last = c[0];
            for (literal lit : c.literals()) {
                const std::int8_t v = values[static_cast<std::size_t>(lit.variable())];
                if (v < 0) {
                    ++unassigned;
                    last = lit;
                } else if ((v == 1) == lit.is_positive()) {
                    satisfied = true;
                    break;
                }
            }
            if (satisfied) continue;
            if (unassigned == 0) return false;  // conflict
            if (unassigned == 1) {
                values[static_cast<std::size_t>(last.variable())] = last.is_positive() ? 1 : 0;
                changed = true;
            }
        }
        if (changed) continue;

        // Pure literals: a variable occurring with a single polarity among
        // not-yet-satisfied clauses can only help with that polarity.
        std::vector<std::uint8_t> seen(static_cast<std::size_t>(num_vars) + 1, 0);
        bool all_satisfied = true;
        for (const clause& c : clauses) {
            bool satisfied = false;
            for (literal lit : c.literals()) {
                const std::int8_t v = values[static_cast<std::size_t>(lit.variable())];
                if (v >= 0 && (v == 1) == lit.is_positive()) {
                    satisfied = true;
                    break;
                }
            }
            if (satisfied) continue;
            all_satisfied = false;
            for (literal lit : c.literals()) {
                if (values[static_cast<std::size_t>(lit.variable())] < 0) {
                    seen[static_cast<std::size_t>(lit.variable())] |=
                        lit.is_positive() ? 1u : 2u;
                }
            }
        }
        if (all_satisfied) return true;
        for (std::int32_t v = 1; v <= num_vars; ++v) {
            const std::uint8_t s = seen[static_cast<std::size_t>(v)];
            if (values[static_cast<std::size_t>(v)] < 0 && (s == 1 || s == 2)) {
                values[static_cast<std::size_t>(v)] = (s == 1) ? 1 : 0;
                changed = true;
            }
        }
        if (!changed) break;
    }

    std::int32_t branch = 0;
    for (std::int32_t v = 1; v <= num_vars; ++v) {
        if (values[static_cast<std::size_t>(v)] < 0) {
            branch = v;
            break;
        }
    }
    assert(branch != 0);

    for (std::int8_t value : {std::int8_t{1}, std::int8_t{0}}) {
        std::vector<std::int8_t> trial = values;
        trial[static_cast<std::size_t>(branch)] = value;
        if (dpll_search(clauses, num_vars, trial)) {
            values = std::move(trial);
            return true;
        }
    }
    return false;
}

}  // namespace detail

/// DPLL with unit propagation and pure-literal elimination. Scales past the
/// exhaustive cap; verdicts agree with brute_force_sat wherever both run.
/// Variables left unconstrained by the search come out false in the model.
inline sat_verdict dpll_sat(const instance& inst) {
    const std::int32_t n = inst.num_variables();
    std::vector<std::int8_t> values(static_cast<std::size_t>(n) + 1, -1);
    if (!detail::dpll_search(inst.clauses(), n, values)) return {false, std::nullopt};

    assignment model(n);
    for (std::int32_t v = 1; v <= n; ++v) {
        model.set(v, values[static_cast<std::size_t>(v)] == 1);
    }
    assert(evaluate_instance(inst, model));
    return {true, std::move(model)};
}

}  // namespace patsat
