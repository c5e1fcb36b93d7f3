#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "pswidth/decomposition.hpp"
#include "pswidth/formula.hpp"
#include "pswidth/ps_engine.hpp"

namespace psw {

/// A maxsat table cell: an assignment over var(δ(v)) and its score
/// w(sat(F, assignment) \ C') for the cell's column C'.
struct MaxEntry {
    bool assigned = false;
    VariableSet values;
    BigInt score;
};

/// Tab_v, indexed by (row, column) = (index in PS(F_v), index in PS(F_v̄)).
template <class Value>
struct DpTable {
    NodeId node = no_node;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Value> entries;

    DpTable() = default;
    DpTable(NodeId v, std::size_t r, std::size_t c) : node(v), rows(r), cols(c), entries(r * c) {}

    Value& at(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
    const Value& at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
};

/// #SAT: cells count assignments τ over var(δ(v)) with sat(F_v, τ) = C and
/// every clause of δ(v) outside C' satisfied by τ.
struct CountMode {
    using value_type = BigInt;
};

/// Weighted MaxSAT: cells hold a maximal assignment of the preorder
/// τ' ≤ τ  iff  w(sat(F, τ') \ C') ≤ w(sat(F, τ) \ C').
struct MaxSatMode {
    using value_type = MaxEntry;
};

template <class Mode>
using TableOf = DpTable<typename Mode::value_type>;

template <class Mode>
TableOf<Mode> leaf_table(const Formula& f, const BranchDecomposition& d, NodeId leaf, const PsTables& ps) {
    const TreeNode& t = d.node(leaf);
    if (!t.is_leaf()) throw ValidationError("node " + std::to_string(leaf) + " is not a leaf");
    const PSFamily& in = ps.inside[leaf];
    const PSFamily& out = ps.outside[leaf];
    TableOf<Mode> tab(leaf, in.size(), out.size());
    const Element e = *t.element;

    if constexpr (std::is_same_v<Mode, CountMode>) {
        for (std::size_t c = 0; c < out.size(); ++c) {
            if (e.is_clause()) {
                // Only the empty assignment; it satisfies nothing, so the
                // clause must be covered from outside.
                tab.at(0, c) = out[c].test(e.index) ? 1 : 0;
                continue;
            }
            const auto x = static_cast<std::uint32_t>(e.index);
            for (bool value : {false, true})
                tab.at(*in.index_of(f.satisfied_by(x, value)), c) += 1;
        }
    } else {
        for (std::size_t c = 0; c < out.size(); ++c) {
            if (e.is_clause()) {
                tab.at(0, c) = MaxEntry{true, VariableSet(f.declared_vars() + 1), BigInt(0)};
                continue;
            }
            const auto x = static_cast<std::uint32_t>(e.index);
            for (bool value : {false, true}) {
                const ClauseSet& sat = f.satisfied_by(x, value);
                MaxEntry& cell = tab.at(*in.index_of(sat), c);
                BigInt score = weight_of(f, sat - out[c]);
                if (cell.assigned && score <= cell.score) continue; // ties keep x = 0
                cell.assigned = true;
                cell.values = VariableSet(f.declared_vars() + 1);
                cell.values.assign(x, value);
                cell.score = std::move(score);
            }
        }
    }
    return tab;
}

/// Per-node member weights w(C) for C in PS(F_v); maxsat merges use them.
inline std::vector<std::vector<BigInt>> inside_weights(const Formula& f, const PsTables& ps) {
    std::vector<std::vector<BigInt>> w(ps.inside.size());
    for (std::size_t v = 0; v < ps.inside.size(); ++v)
        for (const ClauseSet& c : ps.inside[v]) w[v].push_back(weight_of(f, c));
    return w;
}

struct MergeOptions {
    /// Recompute every maxsat score from scratch and compare.
    bool verify_scores = false;
};

/// Tab_v from the children's tables by iterating over
/// PS(F_c1) × PS(F_c2) × PS(F_v̄) and reconstructing the other three indices.
/// `triples`, when given, is incremented once per iteration.
template <class Mode>
TableOf<Mode> merge_tables(const Formula& f, const BranchDecomposition& d, NodeId v, const TableOf<Mode>& tab1,
                           const TableOf<Mode>& tab2, const PsTables& ps,
                           const std::vector<std::vector<BigInt>>* weights = nullptr,
                           std::uint64_t* triples = nullptr, MergeOptions opts = {}) {
    const TreeNode& t = d.node(v);
    if (t.is_leaf()) throw ValidationError("node " + std::to_string(v) + " is a leaf");
    const NodeId c1 = t.left, c2 = t.right;
    const ClauseSet& cut_v = d.cut(v).clauses;
    const ClauseSet& cut1 = d.cut(c1).clauses;
    const ClauseSet& cut2 = d.cut(c2).clauses;
    const PSFamily &in1 = ps.inside[c1], &in2 = ps.inside[c2];
    const PSFamily &out1 = ps.outside[c1], &out2 = ps.outside[c2];
    const PSFamily &in_v = ps.inside[v], &out_v = ps.outside[v];

    std::vector<std::vector<BigInt>> local_weights;
    if constexpr (std::is_same_v<Mode, MaxSatMode>) {
        if (!weights) {
            local_weights = inside_weights(f, ps);
            weights = &local_weights;
        }
    }

    auto locate = [](const PSFamily& fam, const ClauseSet& s, NodeId node, const char* what) {
        auto idx = fam.index_of(s);
        if (!idx)
            throw InternalError("node " + std::to_string(node) + ": reconstructed " + what + " " +
                                s.to_string("c") + " is not in its family");
        return *idx;
    };

    TableOf<Mode> tab(v, in_v.size(), out_v.size());
    std::uint64_t loops = 0;
    for (std::size_t i = 0; i < in1.size(); ++i) {
        const ClauseSet& s1 = in1[i];
        for (std::size_t j = 0; j < in2.size(); ++j) {
            const ClauseSet& s2 = in2[j];
            const ClauseSet joined = s1 | s2;
            const std::size_t row = locate(in_v, joined - cut_v, v, "C_v");
            for (std::size_t k = 0; k < out_v.size(); ++k) {
                ++loops;
                const ClauseSet& expected = out_v[k];
                const std::size_t col1 = locate(out1, (s2 | expected) & cut1, c1, "outside index");
                const std::size_t col2 = locate(out2, (s1 | expected) & cut2, c2, "outside index");
                if constexpr (std::is_same_v<Mode, CountMode>) {
                    const BigInt& a = tab1.at(i, col1);
                    const BigInt& b = tab2.at(j, col2);
                    if (a != 0 && b != 0) tab.at(row, k) += a * b;
                } else {
                    const MaxEntry& e1 = tab1.at(i, col1);
                    const MaxEntry& e2 = tab2.at(j, col2);
                    if (!e1.assigned || !e2.assigned)
                        throw InternalError("node " + std::to_string(v) + ": child entry unassigned");
                    // |sat(F, τ1 ⊎ τ2) \ C'| split by where each clause lives.
                    BigInt score = weight_of(f, joined - cut_v);
                    score += e1.score - (*weights)[c1][i] + weight_of(f, (s2 & cut1) - expected);
                    score += e2.score - (*weights)[c2][j] + weight_of(f, (s1 & cut2) - expected);
                    MaxEntry& cell = tab.at(row, k);
                    if (cell.assigned && score <= cell.score) continue;
                    cell.assigned = true;
                    cell.values = e1.values | e2.values;
                    cell.score = std::move(score);
                    if (opts.verify_scores) {
                        const Assignment tau(d.cut(v).variables, cell.values);
                        if (weight_of(f, satisfied_clauses(f, tau) - expected) != cell.score)
                            throw InternalError("node " + std::to_string(v) + ": incremental score mismatch");
                    }
                }
            }
        }
    }
    if (triples) *triples += loops;
    return tab;
}

struct SolveOptions {
    /// Count over all declared variables instead of var(F).
    bool all_vars = false;
    bool verify_scores = false;
    /// Keep every node's table in the result instead of only the root's.
    bool keep_tables = false;
};

struct SolveStats {
    PsTables families;
    /// Iterations of the triple loop per internal node (0 at leaves).
    std::vector<std::uint64_t> triples;
    std::size_t width = 1;
};

struct CountResult {
    BigInt count;
    SolveStats stats;
    std::vector<DpTable<BigInt>> tables;
};

struct MaxSatResult {
    BigInt weight;
    /// Full assignment of var(F).
    Assignment witness;
    SolveStats stats;
    std::vector<DpTable<MaxEntry>> tables;
};

template <class Mode>
std::vector<TableOf<Mode>> compute_tables(const Formula& f, const BranchDecomposition& d, SolveStats& stats,
                                          const SolveOptions& opts) {
    stats.families = compute_ps_tables(f, d);
    stats.width = ps_width(stats.families).width;
    stats.triples.assign(d.size(), 0);
    std::vector<std::vector<BigInt>> weights;
    if constexpr (std::is_same_v<Mode, MaxSatMode>) weights = inside_weights(f, stats.families);

    std::vector<TableOf<Mode>> tabs(d.size());
    for (NodeId v : d.post_order()) {
        const TreeNode& t = d.node(v);
        if (t.is_leaf()) {
            tabs[v] = leaf_table<Mode>(f, d, v, stats.families);
            continue;
        }
        tabs[v] = merge_tables<Mode>(f, d, v, tabs[t.left], tabs[t.right], stats.families, &weights,
                                     &stats.triples[v], MergeOptions{opts.verify_scores});
        if (!opts.keep_tables) {
            tabs[t.left] = {};
            tabs[t.right] = {};
        }
    }
    return tabs;
}

namespace detail {
inline bool has_empty_clause(const Formula& f) {
    for (const Clause& c : f.clauses())
        if (c.empty()) return true;
    return false;
}

inline void require_decomposition(const Formula& f, const BranchDecomposition& d) {
    if (!d.matches(f)) throw ValidationError("decomposition does not belong to this formula");
}
} // namespace detail

/// Exact number of assignments of var(F) (or of all declared variables with
/// `all_vars`) satisfying every clause.
inline CountResult count_models(const Formula& f, const BranchDecomposition& d, const SolveOptions& opts = {}) {
    detail::require_decomposition(f, d);
    CountResult r;
    if (d.empty()) {
        r.count = detail::has_empty_clause(f) ? 0 : 1;
    } else {
        auto tabs = compute_tables<CountMode>(f, d, r.stats, opts);
        r.count = tabs[d.root()].at(0, 0);
        if (opts.keep_tables) r.tables = std::move(tabs);
    }
    if (opts.all_vars) {
        const auto free_vars = f.declared_vars() - f.occurring_vars().count();
        mpz_mul_2exp(r.count.get_mpz_t(), r.count.get_mpz_t(), free_vars);
    }
    return r;
}

/// Maximum total weight of clauses satisfiable together, with a witness
/// assignment of var(F) reaching it. Unweighted formulas use weight 1.
inline MaxSatResult solve_maxsat(const Formula& f, const BranchDecomposition& d, const SolveOptions& opts = {}) {
    detail::require_decomposition(f, d);
    MaxSatResult r;
    if (d.empty()) {
        r.weight = 0;
        r.witness = Assignment(f.occurring_vars(), VariableSet(f.declared_vars() + 1));
        return r;
    }
    auto tabs = compute_tables<MaxSatMode>(f, d, r.stats, opts);
    const MaxEntry& root = tabs[d.root()].at(0, 0);
    r.weight = root.score;
    r.witness = Assignment(f.occurring_vars(), root.values);
    if (opts.keep_tables) r.tables = std::move(tabs);
    return r;
}

} // namespace psw
