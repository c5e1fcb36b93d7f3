#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "pswidth/formula.hpp"
#include "pswidth/ps_engine.hpp"

namespace psw::oracle {

/// Enumeration guard: at most this many variables.
inline constexpr std::size_t max_variables = 20;

namespace detail {

inline std::vector<std::uint32_t> guarded_variables(const Formula& f) {
    const auto vars = f.variables();
    if (vars.size() > max_variables)
        throw LimitError("brute force needs " + std::to_string(vars.size()) + " variables, limit is " +
                         std::to_string(max_variables));
    return vars;
}

/// Calls visit(sat) with sat(F, τ) for every full assignment τ of var(F).
/// Clause evaluation is literal by literal, independent of any index.
template <class Visit>
void for_each_assignment(const Formula& f, Visit&& visit) {
    const auto vars = guarded_variables(f);
    std::vector<char> value(f.declared_vars() + 1, 0);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << vars.size()); ++mask) {
        for (std::size_t i = 0; i < vars.size(); ++i) value[vars[i]] = (mask >> i) & 1U;
        ClauseSet sat(f.universe());
        for (const Clause& c : f.clauses()) {
            for (const Literal& l : c.literals) {
                const bool truth = l.negated ? value[l.variable] == 0 : value[l.variable] == 1;
                if (truth) {
                    sat.set(c.id);
                    break;
                }
            }
        }
        visit(sat);
    }
}

} // namespace detail

/// PS(F) by enumerating all 2^|var(F)| assignments.
inline PSFamily brute_ps(const Formula& f) {
    std::vector<ClauseSet> all;
    detail::for_each_assignment(f, [&](const ClauseSet& sat) { all.push_back(sat); });
    return PSFamily::normalize(std::move(all));
}

/// Number of assignments of var(F) satisfying every clause.
inline BigInt brute_count(const Formula& f) {
    const ClauseSet everything = f.clause_ids();
    BigInt n = 0;
    detail::for_each_assignment(f, [&](const ClauseSet& sat) {
        if (sat == everything) ++n;
    });
    return n;
}

/// Maximum of w(sat(F, τ)) over all assignments of var(F).
inline BigInt brute_maxsat(const Formula& f) {
    BigInt best = 0;
    detail::for_each_assignment(f, [&](const ClauseSet& sat) {
        BigInt w = 0;
        for (std::size_t id = 0; id < sat.width(); ++id)
            if (sat.test(id)) w += f.weight(id);
        best = std::max(best, w);
    });
    return best;
}

} // namespace psw::oracle
