#pragma once

#include <patsat/logic.hpp>

#include <vector>

namespace patsat::test {

// The running example throughout the suite: three negative units plus all
// three positive pairs over {1,2,3}. Unsatisfiable, yet no variable has both
// units, no pair has all four sign combinations, no triple has all eight.
inline instance units_vs_pairs() {
    return instance(3, {clause{neg(1)}, clause{neg(2)}, clause{neg(3)},
                        clause{pos(1), pos(2)}, clause{pos(1), pos(3)},
                        clause{pos(2), pos(3)}});
}

// Its two-variable sibling found by the miner: (!1) & (!2) & (1|2).
inline instance units_vs_pair_2var() {
    return instance(2, {clause{neg(1)}, clause{neg(2)}, clause{pos(1), pos(2)}});
}

// All 2^k sign combinations over the given distinct variables, as width-k
// clauses. k = vars.size() must be 1..3.
inline std::vector<clause> full_polarity_cube(const std::vector<std::int32_t>& vars) {
    std::vector<clause> out;
    const std::size_t k = vars.size();
    for (std::uint32_t bits = 0; bits < (1u << k); ++bits) {
        std::vector<literal> lits;
        for (std::size_t i = 0; i < k; ++i) {
            lits.push_back(literal(vars[i], ((bits >> i) & 1u) == 0));
        }
        auto r = canonicalize_clause(lits);
        out.push_back(*r.value);
    }
    return out;
}

}  // namespace patsat::test
