#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pswidth/decomposition.hpp"
#include "pswidth/formula.hpp"

namespace psw {

// ---------------------------------------------------------------------------
// Interval orderings
// ---------------------------------------------------------------------------

/// A betweenness failure: `variable` occurs in `clause`, and `witness` sits
/// between them without the required incidence.
struct OrderingViolation {
    std::uint32_t variable = 0;
    std::size_t clause = 0;
    Element witness;

    bool operator==(const OrderingViolation&) const = default;
};

namespace detail {

struct OrderIndex {
    std::vector<std::size_t> var_pos;    // by variable id
    std::vector<std::size_t> clause_pos; // by clause id

    OrderIndex(const Formula& f, std::span<const Element> order)
        : var_pos(f.declared_vars() + 1, 0), clause_pos(f.universe(), 0) {
        for (std::size_t i = 0; i < order.size(); ++i)
            (order[i].is_variable() ? var_pos : clause_pos)[order[i].index] = i;
    }
};

/// First witness (in element order) breaking the condition for the incidence
/// (x, c), looking only at `order[lo+1 .. hi-1]`.
inline std::optional<Element> betweenness_witness(const Formula& f, std::span<const Element> order, std::uint32_t x,
                                                  std::size_t c, std::size_t pos_x, std::size_t pos_c) {
    std::optional<Element> best;
    const Clause& clause = f.clause(c);
    if (pos_x < pos_c) {
        for (std::size_t p = pos_x + 1; p < pos_c; ++p) {
            const Element& y = order[p];
            if (y.is_variable() && !clause.has_variable(static_cast<std::uint32_t>(y.index)) && (!best || y < *best))
                best = y;
        }
    } else {
        for (std::size_t p = pos_c + 1; p < pos_x; ++p) {
            const Element& other = order[p];
            if (other.is_clause() && !f.clause(other.index).has_variable(x) && (!best || other < *best))
                best = other;
        }
    }
    return best;
}

} // namespace detail

/// Checks both betweenness conditions for every incidence (x, C):
/// x before C requires every variable between them to occur in C, and C
/// before x requires x to occur in every clause between them.
/// Returns the first violation ordered by (variable, clause, witness).
inline std::optional<OrderingViolation> verify_interval_ordering(const Formula& f, std::span<const Element> order) {
    require_permutation(f, order);
    const detail::OrderIndex idx(f, order);
    for (std::uint32_t x : f.variables()) {
        std::vector<std::size_t> clauses;
        f.positive_occurrences(x).for_each([&](std::size_t c) { clauses.push_back(c); });
        f.negative_occurrences(x).for_each([&](std::size_t c) { clauses.push_back(c); });
        std::sort(clauses.begin(), clauses.end());
        clauses.erase(std::unique(clauses.begin(), clauses.end()), clauses.end());
        for (std::size_t c : clauses)
            if (auto w = detail::betweenness_witness(f, order, x, c, idx.var_pos[x], idx.clause_pos[c]))
                return OrderingViolation{x, c, *w};
    }
    return std::nullopt;
}

/// Exhaustive search for an interval ordering: the first valid permutation
/// of elements_of(f) in lexicographic element order, or nothing.
/// Throws LimitError when the formula has more than `element_limit` elements.
inline std::optional<std::vector<Element>> find_interval_ordering(const Formula& f, std::size_t element_limit = 10) {
    const std::vector<Element> elements = elements_of(f);
    if (elements.size() > element_limit)
        throw LimitError("formula has " + std::to_string(elements.size()) + " clauses and variables, above the search limit of " +
                         std::to_string(element_limit) + "; supply an ordering instead");

    const std::size_t len = elements.size();
    std::vector<Element> order;
    std::vector<char> used(len, 0);

    // Placing e fixes everything between e and each earlier neighbour, so
    // each incidence is checked exactly once, when its second end is placed.
    auto consistent = [&](const Element& e) {
        const std::size_t pos = order.size() - 1;
        if (e.is_variable()) {
            const auto x = static_cast<std::uint32_t>(e.index);
            for (std::size_t p = 0; p < pos; ++p)
                if (order[p].is_clause() && f.clause(order[p].index).has_variable(x) &&
                    detail::betweenness_witness(f, order, x, order[p].index, pos, p))
                    return false;
        } else {
            const Clause& c = f.clause(e.index);
            for (std::size_t p = 0; p < pos; ++p)
                if (order[p].is_variable() && c.has_variable(static_cast<std::uint32_t>(order[p].index)) &&
                    detail::betweenness_witness(f, order, static_cast<std::uint32_t>(order[p].index), e.index, p, pos))
                    return false;
        }
        return true;
    };

    std::function<bool()> extend = [&]() -> bool {
        if (order.size() == len) return true;
        for (std::size_t i = 0; i < len; ++i) {
            if (used[i]) continue;
            used[i] = 1;
            order.push_back(elements[i]);
            if (consistent(elements[i]) && extend()) return true;
            order.pop_back();
            used[i] = 0;
        }
        return false;
    };
    if (!extend()) return std::nullopt;
    return order;
}

/// Intervals on the real line for the variables and clauses of a formula.
/// x occurs in C exactly when their intervals intersect.
struct IntervalModel {
    struct Interval {
        double left = 0;
        double right = 0;
    };
    std::vector<Interval> variables; ///< entry i is variable i+1
    std::vector<Interval> clauses;   ///< entry j is clause j
};

/// Interval ordering read off a model of f: elements by right endpoint (ties
/// by element order), variables absent from f dropped. For an incidence a
/// before b, any z between them has right(a) <= right(z) <= right(b) and
/// left(b) <= right(a), so z meets b.
inline std::vector<Element> ordering_from_model(const IntervalModel& model, const Formula& f) {
    std::vector<std::pair<double, Element>> keyed;
    for (std::size_t i = 0; i < model.variables.size(); ++i)
        if (i + 1 < f.occurring_vars().width() && f.occurring_vars().test(i + 1))
            keyed.emplace_back(model.variables[i].right, Element::variable(i + 1));
    for (std::size_t j = 0; j < model.clauses.size(); ++j) keyed.emplace_back(model.clauses[j].right, Element::clause(j));
    std::sort(keyed.begin(), keyed.end());
    std::vector<Element> out;
    for (auto& [key, e] : keyed) out.push_back(e);
    return out;
}

/// Linear decomposition with the ordering as leaf order. Every prefix cut
/// crosses at most one induced-matching edge from a left variable to a right
/// clause and at most one from a left clause to a right variable.
inline BranchDecomposition order_to_decomposition(const Formula& f, std::span<const Element> order) {
    if (auto bad = verify_interval_ordering(f, order))
        throw ValidationError("not an interval ordering: v" + std::to_string(bad->variable) + " c" +
                              std::to_string(bad->clause) + " " + bad->witness.token());
    return linear_decomposition(f, order);
}

/// Whitespace-separated `v<i>` / `c<j>` tokens.
inline std::vector<Element> parse_ordering(std::istream& in) {
    std::vector<Element> out;
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        for (std::string_view tok : detail::split_ws(raw)) {
            if (tok.front() == '#') break;
            auto e = Element::from_token(tok);
            if (!e) throw ParseError(lineno, "bad element token '" + std::string(tok) + "'");
            out.push_back(*e);
        }
    }
    return out;
}

inline std::vector<Element> parse_ordering(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_ordering(in);
}

inline std::string emit_ordering(std::span<const Element> order) {
    std::string s;
    for (const Element& e : order) {
        if (!s.empty()) s += ' ';
        s += e.token();
    }
    return s;
}

// ---------------------------------------------------------------------------
// Induced matchings
// ---------------------------------------------------------------------------

/// Bipartite graph between a left and a right vertex class, stored as a
/// symmetric adjacency over all vertices.
struct CutBigraph {
    std::vector<Element> labels;
    std::vector<char> left;
    std::vector<Bitset> adjacency;

    std::size_t vertex_count() const noexcept { return labels.size(); }
    std::size_t edge_count() const {
        std::size_t e = 0;
        for (const Bitset& a : adjacency) e += a.count();
        return e / 2;
    }

    std::size_t add_vertex(Element label, bool on_left) {
        labels.push_back(label);
        left.push_back(on_left ? 1 : 0);
        for (Bitset& a : adjacency) {
            Bitset grown(labels.size());
            a.for_each([&](std::size_t i) { grown.set(i); });
            a = std::move(grown);
        }
        adjacency.emplace_back(labels.size());
        return labels.size() - 1;
    }

    void add_edge(std::size_t a, std::size_t b) {
        if (left[a] == left[b]) throw ValidationError("edge inside one side of a bigraph");
        adjacency[a].set(b);
        adjacency[b].set(a);
    }

    /// G[A, Ā] restricted to I(F): incidences with exactly one end in the cut.
    static CutBigraph crossing(const Formula& f, const Cut& cut) {
        return build(f, [&](const Element& e) {
            return e.is_clause() ? cut.clauses.test(e.index) : cut.variables.test(e.index);
        }, true);
    }

    /// I(F): variables on the left, clauses (including empty ones) on the right.
    static CutBigraph incidence(const Formula& f) {
        return build(f, [](const Element& e) { return e.is_variable(); }, false);
    }

  private:
    template <class Side>
    static CutBigraph build(const Formula& f, Side on_left, bool crossing_only) {
        const std::vector<Element> elems = elements_of(f);
        CutBigraph g;
        const std::size_t n = elems.size();
        g.labels = elems;
        g.left.resize(n);
        g.adjacency.assign(n, Bitset(n));
        std::map<Element, std::size_t> at;
        for (std::size_t i = 0; i < n; ++i) {
            g.left[i] = on_left(elems[i]) ? 1 : 0;
            at[elems[i]] = i;
        }
        for (const Clause& c : f.clauses())
            for (Literal l : c.literals) {
                const std::size_t a = at[Element::variable(l.variable)], b = at[Element::clause(c.id)];
                if (crossing_only && g.left[a] == g.left[b]) continue;
                g.adjacency[a].set(b);
                g.adjacency[b].set(a);
            }
        return g;
    }
};

namespace detail {

class InducedMatchingSearch {
  public:
    explicit InducedMatchingSearch(const std::vector<Bitset>& adj) : adj_(adj) {}

    std::size_t run(Bitset alive) { return solve(std::move(alive)); }

  private:
    std::size_t solve(Bitset alive) {
        // Vertices without a live neighbour can never be matched.
        Bitset active(alive.width());
        std::size_t pick = static_cast<std::size_t>(-1), pick_degree = static_cast<std::size_t>(-1);
        alive.for_each([&](std::size_t v) {
            const std::size_t deg = (adj_[v] & alive).count();
            if (deg == 0) return;
            active.set(v);
            if (deg < pick_degree) {
                pick = v;
                pick_degree = deg;
            }
        });
        if (active.none()) return 0;
        if (auto it = memo_.find(active); it != memo_.end()) return it->second;

        // Either `pick` stays unmatched, or it is matched to one of its
        // neighbours u, which removes N[pick] ∪ N[u].
        Bitset without = active;
        without.reset(pick);
        std::size_t best = solve(without);
        const Bitset neighbours = adj_[pick] & active;
        neighbours.for_each([&](std::size_t u) {
            Bitset rest = active;
            rest -= adj_[pick];
            rest -= adj_[u];
            rest.reset(pick);
            rest.reset(u);
            best = std::max(best, 1 + solve(std::move(rest)));
        });
        memo_.emplace(std::move(active), best);
        return best;
    }

    const std::vector<Bitset>& adj_;
    std::unordered_map<Bitset, std::size_t, BitsetHash> memo_;
};

} // namespace detail

/// Exact size of a maximum induced matching: a set of edges no two of which
/// are joined by a further edge. Exponential in the worst case.
inline std::size_t max_induced_matching_size(const CutBigraph& g) {
    Bitset all(g.vertex_count());
    for (std::size_t i = 0; i < g.vertex_count(); ++i) all.set(i);
    return detail::InducedMatchingSearch(g.adjacency).run(std::move(all));
}

struct NodeMim {
    NodeId node = 0;
    std::size_t inside = 0;  ///< MIM of I(F_v)
    std::size_t outside = 0; ///< MIM of I(F_v̄)
};

struct MimReport {
    std::vector<NodeMim> nodes;
    std::size_t maximum = 0;
};

/// Per node, the maximum induced matching of I(F_v) and of I(F_v̄).
inline MimReport mim_of_decomposition(const Formula& f, const BranchDecomposition& d) {
    if (!d.matches(f)) throw ValidationError("decomposition does not belong to this formula");
    MimReport r;
    for (NodeId v = 0; v < d.size(); ++v) {
        const auto [in, out] = cut_subformulas(f, d.cut(v));
        NodeMim m{v, max_induced_matching_size(CutBigraph::incidence(in)),
                  max_induced_matching_size(CutBigraph::incidence(out))};
        r.maximum = std::max({r.maximum, m.inside, m.outside});
        r.nodes.push_back(m);
    }
    return r;
}

} // namespace psw
