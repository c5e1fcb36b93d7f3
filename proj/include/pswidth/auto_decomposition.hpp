#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "pswidth/decomposition.hpp"
#include "pswidth/ps_engine.hpp"

namespace psw {

enum class AutoStrategy {
    /// Clauses in id order, each preceded by its variables not yet placed.
    file_order,
    /// Repeatedly appends the element whose prefix cut has the smallest
    /// ps-value. Heuristic: no width guarantee.
    greedy_ps,
};

inline std::optional<AutoStrategy> parse_strategy(std::string_view name) {
    if (name == "file-order") return AutoStrategy::file_order;
    if (name == "greedy-ps") return AutoStrategy::greedy_ps;
    return std::nullopt;
}

inline std::vector<Element> file_order(const Formula& f) {
    std::vector<Element> order;
    VariableSet placed(f.declared_vars() + 1);
    for (const Clause& c : f.clauses()) {
        for (Literal l : c.literals) {
            if (placed.test(l.variable)) continue;
            placed.set(l.variable);
            order.push_back(Element::variable(l.variable));
        }
        order.push_back(Element::clause(c.id));
    }
    return order;
}

/// Greedy linear order. The prefix side PS(F_v) is maintained incrementally
/// with ps_join; the suffix side PS(F_v̄) is rebuilt per candidate from the
/// remaining variables. Ties go to the smaller suffix family, then to the
/// smaller element (variables before clauses, then by index).
inline std::vector<Element> greedy_ps_order(const Formula& f) {
    std::vector<Element> remaining = elements_of(f);
    std::vector<Element> order;
    order.reserve(remaining.size());

    ClauseSet prefix_clauses(f.universe());
    VariableSet remaining_vars = f.occurring_vars();
    PSFamily inside = PSFamily::empty_set_only(f.universe());

    while (!remaining.empty()) {
        std::size_t best = 0;
        std::tuple<std::size_t, std::size_t> best_score{};
        PSFamily best_inside;
        for (std::size_t i = 0; i < remaining.size(); ++i) {
            const Element e = remaining[i];
            ClauseSet clauses = prefix_clauses;
            VariableSet vars = remaining_vars;
            PSFamily next;
            if (e.is_clause()) {
                clauses.set(e.index);
                next = ps_join(inside, PSFamily::empty_set_only(f.universe()), clauses);
            } else {
                const auto x = static_cast<std::uint32_t>(e.index);
                vars.reset(x);
                next = ps_join(inside, PSFamily::normalize({f.satisfied_by(x, false), f.satisfied_by(x, true)}), clauses);
            }
            const std::size_t out = ps_by_variables(f, clauses, vars).size();
            const std::tuple<std::size_t, std::size_t> score{std::max(next.size(), out), out};
            if (i == 0 || score < best_score) {
                best = i;
                best_score = score;
                best_inside = std::move(next);
            }
        }
        const Element chosen = remaining[best];
        if (chosen.is_clause()) prefix_clauses.set(chosen.index);
        else remaining_vars.reset(chosen.index);
        inside = std::move(best_inside);
        order.push_back(chosen);
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
    }
    return order;
}

/// A linear decomposition chosen without user input. Deterministic.
inline BranchDecomposition auto_decomposition(const Formula& f, AutoStrategy strategy) {
    const std::vector<Element> order = strategy == AutoStrategy::file_order ? file_order(f) : greedy_ps_order(f);
    return linear_decomposition(f, order);
}

} // namespace psw
