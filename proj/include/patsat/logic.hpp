#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace patsat {

class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A clause references a variable above the instance's variable count.
class variable_out_of_range : public error {
public:
    using error::error;
};

/// An evaluation touched a variable the assignment does not cover.
class unassigned_variable : public error {
public:
    using error::error;
};

/// A variable occurrence: 1-based variable index plus a polarity.
///
/// Stored as the single code 2*variable + (negated ? 1 : 0), so plain
/// integer order on codes is (variable ascending, positive before negated) —
/// the normal order used everywhere below.
class literal {
public:
    literal(std::int32_t variable, bool positive) {
        if (variable < 1) {
            throw std::invalid_argument("literal: variable index must be >= 1");
        }
        if (variable > max_variable_index) {
            throw std::invalid_argument("literal: variable index too large");
        }
        code_ = variable * 2 + (positive ? 0 : 1);
    }

    /// DIMACS convention: v > 0 is the positive literal of variable v,
    /// v < 0 the negated literal of variable -v. Zero is not a literal.
    static literal from_dimacs(std::int32_t value) {
        if (value == 0) {
            throw std::invalid_argument("literal: 0 is not a DIMACS literal");
        }
        return value > 0 ? literal(value, true) : literal(-value, false);
    }

    [[nodiscard]] std::int32_t variable() const { return code_ >> 1; }
    [[nodiscard]] bool is_positive() const { return (code_ & 1) == 0; }
    [[nodiscard]] literal negated() const { return literal(code_ ^ 1, raw_tag{}); }
    [[nodiscard]] std::int32_t code() const { return code_; }
    [[nodiscard]] std::int32_t to_dimacs() const { return is_positive() ? variable() : -variable(); }

    friend auto operator<=>(literal, literal) = default;

    static constexpr std::int32_t max_variable_index = (INT32_MAX - 1) / 2;

private:
    struct raw_tag {};
    literal(std::int32_t code, raw_tag) : code_(code) {}

    std::int32_t code_;
};

inline literal pos(std::int32_t variable) { return literal(variable, true); }
inline literal neg(std::int32_t variable) { return literal(variable, false); }

inline std::ostream& operator<<(std::ostream& out, literal lit) {
    return out << lit.to_dimacs();
}

/// A disjunction of 1..3 literals over pairwise distinct variables, kept
/// sorted by literal code. Order between clauses is (width, then literal
/// codes lexicographically); instances store clauses in exactly that order.
class clause {
public:
    /// Convenience constructor for clause expressions written in code.
    /// Throws std::invalid_argument on anything canonicalize_clause rejects.
    clause(std::initializer_list<literal> lits) : clause(checked(lits)) {}

    /// Fast path for callers that already hold sorted, variable-distinct
    /// literals (debug-asserted only). Everyone else goes through
    /// canonicalize_clause.
    static clause from_sorted(const std::array<literal, 3>& lits, std::uint8_t size) {
        return clause(lits, size);
    }

    [[nodiscard]] std::size_t size() const { return size_; }
    [[nodiscard]] std::span<const literal> literals() const { return {lits_.data(), size_}; }
    [[nodiscard]] literal operator[](std::size_t i) const { return lits_[i]; }

    [[nodiscard]] bool contains(literal lit) const {
        for (std::size_t i = 0; i < size_; ++i) {
            if (lits_[i] == lit) return true;
        }
        return false;
    }

    [[nodiscard]] std::int32_t max_variable() const { return lits_[size_ - 1].variable(); }

    friend bool operator==(const clause& a, const clause& b) {
        if (a.size_ != b.size_) return false;
        for (std::size_t i = 0; i < a.size_; ++i) {
            if (a.lits_[i] != b.lits_[i]) return false;
        }
        return true;
    }

    friend std::strong_ordering operator<=>(const clause& a, const clause& b) {
        if (a.size_ != b.size_) return a.size_ <=> b.size_;
        for (std::size_t i = 0; i < a.size_; ++i) {
            if (auto c = a.lits_[i] <=> b.lits_[i]; c != 0) return c;
        }
        return std::strong_ordering::equal;
    }

private:
    clause(const std::array<literal, 3>& lits, std::uint8_t size) : lits_(lits), size_(size) {}

    static clause checked(std::initializer_list<literal> lits);

    std::array<literal, 3> lits_;
    std::uint8_t size_;
};

enum class canon_status : std::uint8_t {
    ok,
    empty,             // no literals at all
    tautology,         // contains x and !x; the clause is vacuously true
    too_many_literals  // more than 3 distinct variables after collapsing
};

struct canon_result {
    canon_status status = canon_status::ok;
    std::optional<clause> value;  // engaged iff status == ok
    [[nodiscard]] bool ok() const { return status == canon_status::ok; }
};

/// Collapses duplicate literals, rejects tautologies and clauses over more
/// than three distinct variables. A clause containing both x and !x reports
/// tautology even when it also spans too many variables: it is no
/// constraint at all, so its width is moot.
inline canon_result canonicalize_clause(std::span<const literal> raw) {
    if (raw.empty()) return {canon_status::empty, std::nullopt};

    std::array<std::int32_t, 16> small;
    std::vector<std::int32_t> big;
    std::span<std::int32_t> codes;
    if (raw.size() <= small.size()) {
        codes = {small.data(), raw.size()};
    } else {
        big.resize(raw.size());
        codes = big;
    }
    for (std::size_t i = 0; i < raw.size(); ++i) codes[i] = raw[i].code();
    std::sort(codes.begin(), codes.end());
    auto last = std::unique(codes.begin(), codes.end());
    codes = codes.subspan(0, static_cast<std::size_t>(last - codes.begin()));

    for (std::size_t i = 0; i + 1 < codes.size(); ++i) {
        if ((codes[i] >> 1) == (codes[i + 1] >> 1)) {
            return {canon_status::tautology, std::nullopt};
        }
    }
    if (codes.size() > 3) return {canon_status::too_many_literals, std::nullopt};

    std::array<literal, 3> lits{pos(1), pos(1), pos(1)};
    for (std::size_t i = 0; i < codes.size(); ++i) {
        lits[i] = literal(codes[i] >> 1, (codes[i] & 1) == 0);
    }
    canon_result result;
    result.value = clause::from_sorted(lits, static_cast<std::uint8_t>(codes.size()));
    return result;
}

inline clause clause::checked(std::initializer_list<literal> lits) {
    auto r = canonicalize_clause(std::span<const literal>(lits.begin(), lits.size()));
    switch (r.status) {
        case canon_status::ok: return *r.value;
        case canon_status::empty: throw std::invalid_argument("clause: no literals");
        case canon_status::tautology: throw std::invalid_argument("clause: tautological");
        case canon_status::too_many_literals:
            throw std::invalid_argument("clause: more than three distinct variables");
    }
    throw std::logic_error("clause: unreachable");
}

inline std::ostream& operator<<(std::ostream& out, const clause& c) {
    out << '{';
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) out << ' ';
        out << c[i];
    }
    return out << '}';
}

/// A 3SAT instance: a variable count n and a set of distinct clauses over
/// variables 1..n. Clauses are a set, not a multiset — duplicates collapse
/// on construction and m counts distinct clauses. The stored order is the
/// deterministic normal order (width, then literal codes), so equal
/// instances are representation-identical.
///
/// n may exceed the highest variable actually mentioned; unused trailing
/// variables are legal, as in DIMACS.
class instance {
public:
    instance() = default;

    instance(std::int32_t num_variables, std::vector<clause> clauses)
        : num_vars_(num_variables), clauses_(std::move(clauses)) {
        if (num_variables < 0) {
            throw std::invalid_argument("instance: negative variable count");
        }
        for (const clause& c : clauses_) {
            if (c.max_variable() > num_vars_) {
                throw variable_out_of_range("instance: clause references variable " +
                                            std::to_string(c.max_variable()) + " but only " +
                                            std::to_string(num_vars_) + " variables declared");
            }
        }
        std::sort(clauses_.begin(), clauses_.end());
        clauses_.erase(std::unique(clauses_.begin(), clauses_.end()), clauses_.end());
    }

    [[nodiscard]] std::int32_t num_variables() const { return num_vars_; }
    [[nodiscard]] std::size_t num_clauses() const { return clauses_.size(); }
    [[nodiscard]] const std::vector<clause>& clauses() const { return clauses_; }
    [[nodiscard]] bool empty() const { return clauses_.empty(); }

    [[nodiscard]] bool contains(const clause& c) const {
        return std::binary_search(clauses_.begin(), clauses_.end(), c);
    }

    friend bool operator==(const instance&, const instance&) = default;

    friend std::strong_ordering operator<=>(const instance& a, const instance& b) {
        if (auto c = a.num_vars_ <=> b.num_vars_; c != 0) return c;
        return std::lexicographical_compare_three_way(a.clauses_.begin(), a.clauses_.end(),
                                                      b.clauses_.begin(), b.clauses_.end());
    }

private:
    std::int32_t num_vars_ = 0;
    std::vector<clause> clauses_;
};

inline std::ostream& operator<<(std::ostream& out, const instance& inst) {
    out << "n=" << inst.num_variables() << " m=" << inst.num_clauses() << " [";
    bool first = true;
    for (const clause& c : inst.clauses()) {
        if (!first) out << ' ';
        out << c;
        first = false;
    }
    return out << ']';
}

/// A total truth assignment for variables 1..n.
class assignment {
public:
    explicit assignment(std::int32_t num_variables, bool initial = false)
        : values_(static_cast<std::size_t>(num_variables < 0 ? 0 : num_variables), initial) {
        if (num_variables < 0) {
            throw std::invalid_argument("assignment: negative variable count");
        }
    }

    /// Variable 1 is the least significant bit.
    static assignment from_bits(std::int32_t num_variables, std::uint64_t bits) {
        assignment a(num_variables);
        for (std::int32_t v = 1; v <= num_variables; ++v) {
            a.values_[static_cast<std::size_t>(v - 1)] = ((bits >> (v - 1)) & 1u) != 0;
        }
        return a;
    }

    [[nodiscard]] std::int32_t num_variables() const {
        return static_cast<std::int32_t>(values_.size());
    }

    [[nodiscard]] bool value(std::int32_t variable) const {
        check(variable);
        return values_[static_cast<std::size_t>(variable - 1)];
    }

    void set(std::int32_t variable, bool v) {
        check(variable);
        values_[static_cast<std::size_t>(variable - 1)] = v;
    }

    [[nodiscard]] bool satisfies(literal lit) const {
        return value(lit.variable()) == lit.is_positive();
    }

    friend bool operator==(const assignment&, const assignment&) = default;

private:
    void check(std::int32_t variable) const {
        if (variable < 1 || static_cast<std::size_t>(variable) > values_.size()) {
            throw unassigned_variable("assignment covers 1.." + std::to_string(values_.size()) +
                                      ", variable " + std::to_string(variable) + " requested");
        }
    }

    std::vector<bool> values_;
};

/// True iff at least one literal of the clause is satisfied.
inline bool evaluate_clause(const clause& c, const assignment& a) {
    for (literal lit : c.literals()) {
        if (a.satisfies(lit)) return true;
    }
    return false;
}

/// True iff every clause is satisfied; the empty conjunction is true.
inline bool evaluate_instance(const instance& inst, const assignment& a) {
    if (a.num_variables() < inst.num_variables()) {
        throw unassigned_variable("assignment covers " + std::to_string(a.num_variables()) +
                                  " variables, instance has " +
                                  std::to_string(inst.num_variables()));
    }
    for (const clause& c : inst.clauses()) {
        if (!evaluate_clause(c, a)) return false;
    }
    return true;
}

}  // namespace patsat
