#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "pswidth/decomposition.hpp"
#include "pswidth/formula.hpp"

namespace psw {

/// A family of clause sets, kept sorted ascending and duplicate free.
class PSFamily {
  public:
    PSFamily() = default;

    /// Sorts, then drops duplicates by comparing neighbours.
    static PSFamily normalize(std::vector<ClauseSet> sets) {
        std::sort(sets.begin(), sets.end());
        sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
        PSFamily f;
        f.members_ = std::move(sets);
        return f;
    }

    /// {∅} over a universe of the given width.
    static PSFamily empty_set_only(std::size_t universe) { return normalize({ClauseSet(universe)}); }

    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    const ClauseSet& operator[](std::size_t i) const { return members_[i]; }
    auto begin() const noexcept { return members_.begin(); }
    auto end() const noexcept { return members_.end(); }
    const std::vector<ClauseSet>& members() const noexcept { return members_; }

    std::optional<std::size_t> index_of(const ClauseSet& s) const {
        auto it = std::lower_bound(members_.begin(), members_.end(), s);
        if (it == members_.end() || *it != s) return std::nullopt;
        return static_cast<std::size_t>(it - members_.begin());
    }
    bool contains(const ClauseSet& s) const { return index_of(s).has_value(); }

    bool operator==(const PSFamily&) const = default;

  private:
    std::vector<ClauseSet> members_;
};

/// PS(F_l) for a leaf. A clause leaf has no variables, so {∅}; a variable
/// leaf x yields what x=0 and x=1 satisfy among all clauses.
inline PSFamily ps_leaf(const Formula& f, const BranchDecomposition& d, NodeId leaf) {
    const TreeNode& t = d.node(leaf);
    if (!t.is_leaf()) throw ValidationError("node " + std::to_string(leaf) + " is not a leaf");
    if (t.element->is_clause()) return PSFamily::empty_set_only(f.universe());
    const auto x = static_cast<std::uint32_t>(t.element->index);
    return PSFamily::normalize({f.satisfied_by(x, false), f.satisfied_by(x, true)});
}

/// PS(F_r̄): F_r̄ holds only empty clauses.
inline PSFamily ps_root_complement(const Formula& f) { return PSFamily::empty_set_only(f.universe()); }

/// PS(F_v) from the children's families: {(C1 ∪ C2) \ cla(δ(v))}.
inline PSFamily ps_join(const PSFamily& a, const PSFamily& b, const ClauseSet& cut_clauses,
                        std::uint64_t* pairs = nullptr) {
    std::vector<ClauseSet> out;
    out.reserve(a.size() * b.size());
    for (const ClauseSet& c1 : a)
        for (const ClauseSet& c2 : b) {
            ClauseSet s = c1 | c2;
            s -= cut_clauses;
            out.push_back(std::move(s));
        }
    if (pairs) *pairs += a.size() * b.size();
    return PSFamily::normalize(std::move(out));
}

/// PS(F_v̄) from the sibling's PS(F_s) and the parent's PS(F_p̄):
/// {(C_s ∪ C_p) ∩ cla(F_v̄)}, where cla(F_v̄) is the clause side of δ(v).
inline PSFamily ps_complement_join(const PSFamily& sibling, const PSFamily& parent_outside,
                                   const ClauseSet& cut_clauses, std::uint64_t* pairs = nullptr) {
    std::vector<ClauseSet> out;
    out.reserve(sibling.size() * parent_outside.size());
    for (const ClauseSet& cs : sibling)
        for (const ClauseSet& cp : parent_outside) {
            ClauseSet s = cs | cp;
            s &= cut_clauses;
            out.push_back(std::move(s));
        }
    if (pairs) *pairs += sibling.size() * parent_outside.size();
    return PSFamily::normalize(std::move(out));
}

/// PS(F_v) and PS(F_v̄) for every node, plus the pair-loop counters of the
/// two passes (join_pairs at internal nodes, complement_pairs at non-root
/// nodes; zero elsewhere).
struct PsTables {
    std::vector<PSFamily> inside;
    std::vector<PSFamily> outside;
    std::vector<std::uint64_t> join_pairs;
    std::vector<std::uint64_t> complement_pairs;
};

inline PsTables compute_ps_tables(const Formula& f, const BranchDecomposition& d) {
    if (!d.matches(f)) throw ValidationError("decomposition does not belong to this formula");
    const std::size_t n = d.size();
    PsTables t{std::vector<PSFamily>(n), std::vector<PSFamily>(n), std::vector<std::uint64_t>(n, 0),
               std::vector<std::uint64_t>(n, 0)};
    for (NodeId v : d.post_order()) {
        const TreeNode& node = d.node(v);
        t.inside[v] = node.is_leaf() ? ps_leaf(f, d, v)
                                     : ps_join(t.inside[node.left], t.inside[node.right], d.cut(v).clauses,
                                               &t.join_pairs[v]);
    }
    for (NodeId v : d.bfs_order()) {
        if (v == d.root()) {
            t.outside[v] = ps_root_complement(f);
            continue;
        }
        const NodeId p = d.node(v).parent;
        t.outside[v] = ps_complement_join(t.inside[d.sibling(v)], t.outside[p], d.cut(v).clauses,
                                          &t.complement_pairs[v]);
    }
    return t;
}

struct NodeWidth {
    NodeId node = 0;
    std::size_t inside = 0;  ///< |PS(F_v)|
    std::size_t outside = 0; ///< |PS(F_v̄)|

    std::size_t value() const noexcept { return std::max(inside, outside); }
};

struct WidthReport {
    std::size_t width = 1;
    std::vector<NodeWidth> nodes;
};

inline WidthReport ps_width(const PsTables& t) {
    WidthReport r;
    for (NodeId v = 0; v < t.inside.size(); ++v) {
        r.nodes.push_back({v, t.inside[v].size(), t.outside[v].size()});
        r.width = std::max(r.width, r.nodes.back().value());
    }
    return r;
}

/// psw(T, δ): the largest ps-value over the cuts of the decomposition.
/// An empty decomposition has width 1 (every family is {∅}).
inline WidthReport ps_width(const Formula& f, const BranchDecomposition& d) {
    return ps_width(compute_ps_tables(f, d));
}

/// PS of the clauses in `clauses` induced on `vars`, built as the join of
/// one two-member family per variable. Used by the greedy ordering, which
/// needs PS of the not-yet-placed side without a tree.
inline PSFamily ps_by_variables(const Formula& f, const ClauseSet& clauses, const VariableSet& vars) {
    PSFamily acc = PSFamily::empty_set_only(f.universe());
    const ClauseSet none(f.universe());
    vars.for_each([&](std::size_t x) {
        const auto v = static_cast<std::uint32_t>(x);
        const PSFamily one = PSFamily::normalize({f.satisfied_by(v, false) & clauses, f.satisfied_by(v, true) & clauses});
        acc = ps_join(acc, one, none);
    });
    return acc;
}

} // namespace psw
