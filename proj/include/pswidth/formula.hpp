#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "pswidth/bitset.hpp"
#include "pswidth/errors.hpp"

namespace psw {

/// Weights and model counts; both grow beyond any machine word.
using BigInt = mpz_class;

/// Sets of variables are Bitsets of width declared_vars + 1, indexed by
/// variable id (bit 0 is never set).
using VariableSet = Bitset;

struct Literal {
    std::uint32_t variable = 1;
    bool negated = false;

    static Literal from_dimacs(long long lit) {
        return {static_cast<std::uint32_t>(std::llabs(lit)), lit < 0};
    }
    long long to_dimacs() const { return negated ? -static_cast<long long>(variable) : variable; }

    auto operator<=>(const Literal&) const = default;
};

/// A set of literals. `literals` is sorted and duplicate free; a literal and
/// its negation may both appear (tautology).
struct Clause {
    std::size_t id = 0;
    std::vector<Literal> literals;

    bool empty() const noexcept { return literals.empty(); }

    bool has_variable(std::uint32_t v) const {
        return std::any_of(literals.begin(), literals.end(), [v](Literal l) { return l.variable == v; });
    }

    bool operator==(const Clause&) const = default;
};

/// Multiset of clauses with optional clause weights.
///
/// Clauses keep their ids when a subformula is induced, so every formula
/// carries the width of the clause-id universe it lives in. A parsed formula
/// has ids 0..m-1 and universe m.
class Formula {
  public:
    Formula() : Formula(0, {}) {}

    Formula(std::size_t declared_vars, std::vector<Clause> clauses, std::optional<std::size_t> universe = {},
            std::optional<std::vector<BigInt>> weights = {})
        : declared_vars_(declared_vars), clauses_(std::move(clauses)), universe_(universe.value_or(clauses_.size())),
          weights_(std::move(weights)) {
        index_.assign(universe_, npos);
        for (std::size_t i = 0; i < clauses_.size(); ++i) {
            Clause& c = clauses_[i];
            if (c.id >= universe_) throw ValidationError("clause id " + std::to_string(c.id) + " outside universe");
            if (index_[c.id] != npos) throw ValidationError("duplicate clause id " + std::to_string(c.id));
            index_[c.id] = i;
            std::sort(c.literals.begin(), c.literals.end());
            c.literals.erase(std::unique(c.literals.begin(), c.literals.end()), c.literals.end());
            for (Literal l : c.literals)
                if (l.variable == 0 || l.variable > declared_vars_)
                    throw ValidationError("variable " + std::to_string(l.variable) + " in clause " +
                                          std::to_string(c.id) + " exceeds declared count " +
                                          std::to_string(declared_vars_));
        }
        if (weights_ && weights_->size() != universe_) throw ValidationError("weight vector does not match clauses");
        if (weights_)
            for (const BigInt& w : *weights_)
                if (w < 0) throw ValidationError("negative clause weight");

        positive_.assign(declared_vars_ + 1, ClauseSet(universe_));
        negative_.assign(declared_vars_ + 1, ClauseSet(universe_));
        occurring_ = VariableSet(declared_vars_ + 1);
        for (const Clause& c : clauses_) {
            for (Literal l : c.literals) {
                (l.negated ? negative_ : positive_)[l.variable].set(c.id);
                occurring_.set(l.variable);
            }
        }
    }

    /// Builds a formula from DIMACS-style signed literal lists; clause i gets id i.
    static Formula from_dimacs(std::size_t declared_vars, const std::vector<std::vector<long long>>& clauses,
                               std::optional<std::vector<BigInt>> weights = {}) {
        std::vector<Clause> cs;
        cs.reserve(clauses.size());
        for (std::size_t i = 0; i < clauses.size(); ++i) {
            Clause c{i, {}};
            for (long long lit : clauses[i]) {
                if (lit == 0) throw ValidationError("literal 0 is not a variable");
                c.literals.push_back(Literal::from_dimacs(lit));
            }
            cs.push_back(std::move(c));
        }
        return Formula(declared_vars, std::move(cs), std::nullopt, std::move(weights));
    }

    std::size_t declared_vars() const noexcept { return declared_vars_; }
    std::size_t clause_count() const noexcept { return clauses_.size(); }
    std::size_t universe() const noexcept { return universe_; }
    const std::vector<Clause>& clauses() const noexcept { return clauses_; }

    bool contains_clause(std::size_t id) const { return id < universe_ && index_[id] != npos; }
    const Clause& clause(std::size_t id) const {
        if (!contains_clause(id)) throw ValidationError("no clause with id " + std::to_string(id));
        return clauses_[index_[id]];
    }

    /// Ids of the clauses present, as a set over the universe.
    ClauseSet clause_ids() const {
        ClauseSet s(universe_);
        for (const Clause& c : clauses_) s.set(c.id);
        return s;
    }

    /// var(F): variables occurring in some clause.
    const VariableSet& occurring_vars() const noexcept { return occurring_; }
    std::vector<std::uint32_t> variables() const {
        std::vector<std::uint32_t> out;
        occurring_.for_each([&](std::size_t v) { out.push_back(static_cast<std::uint32_t>(v)); });
        return out;
    }

    /// Clauses containing the literal x (resp. not x).
    const ClauseSet& positive_occurrences(std::uint32_t v) const { return positive_[v]; }
    const ClauseSet& negative_occurrences(std::uint32_t v) const { return negative_[v]; }
    /// Clauses the given value of v makes true.
    const ClauseSet& satisfied_by(std::uint32_t v, bool value) const { return value ? positive_[v] : negative_[v]; }

    bool has_weights() const noexcept { return weights_.has_value(); }
    /// w(c); 1 for unweighted formulas.
    BigInt weight(std::size_t id) const { return weights_ ? (*weights_)[id] : BigInt(1); }
    const std::optional<std::vector<BigInt>>& weights() const noexcept { return weights_; }

    /// Copy of this formula with all weights set to 1 explicitly.
    Formula with_unit_weights() const {
        return Formula(declared_vars_, clauses_, universe_, std::vector<BigInt>(universe_, BigInt(1)));
    }
    Formula with_weights(std::vector<BigInt> weights) const {
        return Formula(declared_vars_, clauses_, universe_, std::move(weights));
    }

    /// s = m + sum of clause lengths.
    std::size_t size() const noexcept {
        std::size_t s = clauses_.size();
        for (const Clause& c : clauses_) s += c.literals.size();
        return s;
    }

  private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    std::size_t declared_vars_ = 0;
    std::vector<Clause> clauses_;
    std::size_t universe_ = 0;
    std::optional<std::vector<BigInt>> weights_;
    std::vector<std::size_t> index_;
    std::vector<ClauseSet> positive_;
    std::vector<ClauseSet> negative_;
    VariableSet occurring_;
};

/// Partial truth assignment. Values outside the domain are always 0.
struct Assignment {
    VariableSet domain;
    VariableSet values;

    Assignment() = default;
    explicit Assignment(std::size_t declared_vars) : domain(declared_vars + 1), values(declared_vars + 1) {}
    Assignment(VariableSet domain_, VariableSet values_) : domain(std::move(domain_)), values(std::move(values_)) {
        values &= domain;
    }

    bool defined(std::uint32_t v) const { return v < domain.width() && domain.test(v); }
    bool value(std::uint32_t v) const { return values.test(v); }
    void assign(std::uint32_t v, bool value) {
        domain.set(v);
        values.assign(v, value);
    }

    /// tau(l): true iff var(l) is assigned and its value differs from the sign.
    bool satisfies(Literal l) const { return defined(l.variable) && values.test(l.variable) != l.negated; }

    bool operator==(const Assignment&) const = default;
};

/// C|X: the literals of C whose variable is in X. Keeps the clause id.
inline Clause induce_clause(const Clause& c, const VariableSet& vars) {
    Clause out{c.id, {}};
    for (Literal l : c.literals)
        if (l.variable < vars.width() && vars.test(l.variable)) out.literals.push_back(l);
    return out;
}

/// F_{C,X}: clauses with ids in `clause_ids`, each induced on `vars`.
inline Formula induce_formula(const Formula& f, const ClauseSet& clause_ids, const VariableSet& vars) {
    if (clause_ids.width() != f.universe()) throw ValidationError("clause set width does not match formula");
    if (vars.width() != f.declared_vars() + 1) throw ValidationError("variable set width does not match formula");
    std::vector<Clause> out;
    clause_ids.for_each([&](std::size_t id) { out.push_back(induce_clause(f.clause(id), vars)); });
    return Formula(f.declared_vars(), std::move(out), f.universe(), f.weights());
}

/// sat(F, tau) for a possibly partial tau: clauses with a literal made true.
inline ClauseSet satisfied_clauses(const Formula& f, const Assignment& tau) {
    ClauseSet s(f.universe());
    for (const Clause& c : f.clauses())
        if (std::any_of(c.literals.begin(), c.literals.end(), [&](Literal l) { return tau.satisfies(l); }))
            s.set(c.id);
    return s;
}

/// Sum of w(c) over c in s.
inline BigInt weight_of(const Formula& f, const ClauseSet& s) {
    BigInt total = 0;
    if (!f.has_weights()) return BigInt(static_cast<unsigned long>(s.count()));
    s.for_each([&](std::size_t id) { total += f.weight(id); });
    return total;
}

} // namespace psw
