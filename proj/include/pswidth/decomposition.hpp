#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pswidth/dimacs.hpp"
#include "pswidth/formula.hpp"

namespace psw {

/// A clause or a variable of the formula: the ground set decompositions and
/// orderings range over. Variables sort before clauses.
struct Element {
    enum class Kind : std::uint8_t { variable, clause };

    Kind kind = Kind::variable;
    std::size_t index = 0;

    static Element variable(std::size_t v) { return {Kind::variable, v}; }
    static Element clause(std::size_t id) { return {Kind::clause, id}; }

    bool is_variable() const noexcept { return kind == Kind::variable; }
    bool is_clause() const noexcept { return kind == Kind::clause; }

    /// `v<i>` or `c<j>`.
    std::string token() const { return (is_variable() ? "v" : "c") + std::to_string(index); }

    static std::optional<Element> from_token(std::string_view tok) {
        if (tok.size() < 2 || (tok[0] != 'v' && tok[0] != 'c')) return std::nullopt;
        const auto digits = tok.substr(1);
        if (!detail::all_digits(digits) || digits.size() > 18) return std::nullopt;
        const auto idx = static_cast<std::size_t>(std::stoull(std::string(digits)));
        if (tok[0] == 'v' && idx == 0) return std::nullopt;
        return tok[0] == 'v' ? variable(idx) : clause(idx);
    }

    auto operator<=>(const Element&) const = default;
};

/// cla(F) ∪ var(F): occurring variables ascending, then clauses by id.
inline std::vector<Element> elements_of(const Formula& f) {
    std::vector<Element> out;
    for (auto v : f.variables()) out.push_back(Element::variable(v));
    for (const Clause& c : f.clauses()) out.push_back(Element::clause(c.id));
    return out;
}

/// Throws ValidationError unless `order` lists every element of F exactly once.
inline void require_permutation(const Formula& f, std::span<const Element> order) {
    std::vector<Element> expected = elements_of(f);
    std::vector<Element> got(order.begin(), order.end());
    std::sort(got.begin(), got.end());
    std::string missing, duplicate, unknown;
    for (std::size_t i = 1; i < got.size(); ++i)
        if (got[i] == got[i - 1] && (duplicate.empty() || duplicate.find(got[i].token()) == std::string::npos))
            duplicate += " " + got[i].token();
    got.erase(std::unique(got.begin(), got.end()), got.end());
    std::vector<Element> diff;
    std::set_difference(expected.begin(), expected.end(), got.begin(), got.end(), std::back_inserter(diff));
    for (const Element& e : diff) missing += " " + e.token();
    diff.clear();
    std::set_difference(got.begin(), got.end(), expected.begin(), expected.end(), std::back_inserter(diff));
    for (const Element& e : diff) unknown += " " + e.token();
    if (missing.empty() && duplicate.empty() && unknown.empty()) return;
    std::string msg = "not a permutation of the formula's clauses and variables;";
    if (!missing.empty()) msg += " missing:" + missing + ";";
    if (!duplicate.empty()) msg += " duplicate:" + duplicate + ";";
    if (!unknown.empty()) msg += " unknown:" + unknown + ";";
    msg.pop_back();
    throw ValidationError(msg);
}

using NodeId = std::size_t;
inline constexpr NodeId no_node = static_cast<NodeId>(-1);

struct TreeNode {
    NodeId parent = no_node;
    NodeId left = no_node;
    NodeId right = no_node;
    std::optional<Element> element; ///< set exactly on leaves

    bool is_leaf() const noexcept { return left == no_node; }
};

/// delta(v) split into its clauses and its variables.
struct Cut {
    ClauseSet clauses;
    VariableSet variables;

    bool operator==(const Cut&) const = default;
};

/// Rooted binary tree whose leaves are in bijection with cla(F) ∪ var(F).
///
/// Children are ordered (left, right). Construction validates the tree
/// against its formula; afterwards the object is immutable.
///
/// A formula with at most one element has no binary tree. For those the
/// decomposition is empty (`size() == 0`) and solvers answer directly.
class BranchDecomposition {
  public:
    BranchDecomposition() = default;

    BranchDecomposition(const Formula& f, std::vector<TreeNode> nodes, NodeId root)
        : nodes_(std::move(nodes)), root_(root), universe_(f.universe()), vars_(f.occurring_vars()),
          clause_ids_(f.clause_ids()) {
        validate(f);
        compute_cuts();
    }

    /// The empty decomposition of a formula with at most one element.
    static BranchDecomposition trivial(const Formula& f) {
        if (f.occurring_vars().count() + f.clause_count() > 1)
            throw ValidationError("formula has more than one element; a tree is required");
        BranchDecomposition d;
        d.universe_ = f.universe();
        d.vars_ = f.occurring_vars();
        d.clause_ids_ = f.clause_ids();
        d.linear_ = true;
        return d;
    }

    std::size_t size() const noexcept { return nodes_.size(); }
    bool empty() const noexcept { return nodes_.empty(); }
    NodeId root() const noexcept { return root_; }
    const TreeNode& node(NodeId v) const { return nodes_.at(v); }
    const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
    bool is_linear() const noexcept { return linear_; }

    /// The other child of v's parent.
    NodeId sibling(NodeId v) const {
        const NodeId p = nodes_.at(v).parent;
        if (p == no_node) return no_node;
        return nodes_[p].left == v ? nodes_[p].right : nodes_[p].left;
    }

    const Cut& cut(NodeId v) const { return cuts_.at(v); }

    /// Children before parents.
    const std::vector<NodeId>& post_order() const noexcept { return post_order_; }
    /// Breadth-first from the root, left child first.
    const std::vector<NodeId>& bfs_order() const noexcept { return bfs_order_; }

    /// Leaf elements from left to right.
    std::vector<Element> leaf_order() const {
        std::vector<Element> out;
        if (empty()) return out;
        std::vector<NodeId> stack{root_};
        while (!stack.empty()) {
            const NodeId v = stack.back();
            stack.pop_back();
            if (nodes_[v].is_leaf()) {
                out.push_back(*nodes_[v].element);
            } else {
                stack.push_back(nodes_[v].right);
                stack.push_back(nodes_[v].left);
            }
        }
        return out;
    }

    /// True when this decomposition was built for a formula with the same
    /// clause ids and occurring variables as f.
    bool matches(const Formula& f) const {
        return universe_ == f.universe() && vars_ == f.occurring_vars() && clause_ids_ == f.clause_ids();
    }

    bool operator==(const BranchDecomposition& o) const {
        if (nodes_.size() != o.nodes_.size() || root_ != o.root_) return false;
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            const auto &a = nodes_[i], &b = o.nodes_[i];
            if (a.parent != b.parent || a.left != b.left || a.right != b.right || a.element != b.element) return false;
        }
        return true;
    }

  private:
    void fail(NodeId v, const std::string& what) const {
        throw ValidationError("node " + std::to_string(v) + ": " + what);
    }

    void validate(const Formula& f) {
        const std::size_t n = nodes_.size();
        if (n == 0) throw ValidationError("decomposition has no nodes");
        if (root_ >= n) throw ValidationError("root " + std::to_string(root_) + " out of range");
        if (nodes_[root_].parent != no_node) fail(root_, "root has a parent");

        for (NodeId v = 0; v < n; ++v) {
            const TreeNode& t = nodes_[v];
            if ((t.left == no_node) != (t.right == no_node)) fail(v, "internal node must have exactly two children");
            if (t.is_leaf() && !t.element) fail(v, "leaf without element");
            if (!t.is_leaf() && t.element) fail(v, "internal node carries an element");
            for (NodeId c : {t.left, t.right}) {
                if (c == no_node) continue;
                if (c >= n) fail(v, "child " + std::to_string(c) + " out of range");
                if (nodes_[c].parent != v) fail(c, "parent link does not match edge from " + std::to_string(v));
            }
            if (t.left != no_node && t.left == t.right) fail(v, "both children are the same node");
            if (v != root_ && t.parent == no_node) fail(v, "node has no parent");
        }

        // Reachability from the root, which also rules out cycles.
        std::vector<char> seen(n, 0);
        std::deque<NodeId> queue{root_};
        seen[root_] = 1;
        while (!queue.empty()) {
            const NodeId v = queue.front();
            queue.pop_front();
            bfs_order_.push_back(v);
            for (NodeId c : {nodes_[v].left, nodes_[v].right}) {
                if (c == no_node) continue;
                if (seen[c]) fail(c, "reached twice (cycle)");
                seen[c] = 1;
                queue.push_back(c);
            }
        }
        for (NodeId v = 0; v < n; ++v)
            if (!seen[v]) fail(v, "not reachable from the root");
        post_order_.assign(bfs_order_.rbegin(), bfs_order_.rend());

        std::map<Element, NodeId> leaf_of;
        for (NodeId v = 0; v < n; ++v) {
            if (!nodes_[v].is_leaf()) continue;
            const Element e = *nodes_[v].element;
            const bool known = e.is_variable() ? (e.index < vars_.width() && vars_.test(e.index))
                                               : f.contains_clause(e.index);
            if (!known) fail(v, "element " + e.token() + " is not a clause or occurring variable of the formula");
            if (auto [it, fresh] = leaf_of.emplace(e, v); !fresh)
                fail(v, "element " + e.token() + " already mapped by node " + std::to_string(it->second));
        }
        for (const Element& e : elements_of(f))
            if (!leaf_of.contains(e)) throw ValidationError("element " + e.token() + " has no leaf");

        // Internal nodes induce a path iff each has at most two internal
        // neighbours, at most one of them a child unless it is the root.
        linear_ = true;
        for (NodeId v = 0; v < n && linear_; ++v) {
            const TreeNode& t = nodes_[v];
            if (t.is_leaf()) continue;
            const int internal_children = int(!nodes_[t.left].is_leaf()) + int(!nodes_[t.right].is_leaf());
            if (internal_children == 2 && v != root_) linear_ = false;
        }
    }

    void compute_cuts() {
        cuts_.assign(nodes_.size(), Cut{ClauseSet(universe_), VariableSet(vars_.width())});
        for (NodeId v : post_order_) {
            const TreeNode& t = nodes_[v];
            Cut& c = cuts_[v];
            if (t.is_leaf()) {
                if (t.element->is_clause()) c.clauses.set(t.element->index);
                else c.variables.set(t.element->index);
            } else {
                c.clauses = cuts_[t.left].clauses | cuts_[t.right].clauses;
                c.variables = cuts_[t.left].variables | cuts_[t.right].variables;
            }
        }
    }

    std::vector<TreeNode> nodes_;
    NodeId root_ = no_node;
    bool linear_ = false;
    std::size_t universe_ = 0;
    VariableSet vars_;
    ClauseSet clause_ids_;
    std::vector<Cut> cuts_;
    std::vector<NodeId> post_order_;
    std::vector<NodeId> bfs_order_;
};

/// Caterpillar whose leaves read `order` from left to right. Leaves get ids
/// 0..L-1 in order; the internal node joining the first i+1 elements gets
/// id L+i-1, so the root is 2L-2.
inline BranchDecomposition linear_decomposition(const Formula& f, std::span<const Element> order) {
    require_permutation(f, order);
    const std::size_t len = order.size();
    if (len <= 1) return BranchDecomposition::trivial(f);
    std::vector<TreeNode> nodes(2 * len - 1);
    for (std::size_t i = 0; i < len; ++i) nodes[i].element = order[i];
    auto join = [&](NodeId parent, NodeId l, NodeId r) {
        nodes[parent].left = l;
        nodes[parent].right = r;
        nodes[l].parent = parent;
        nodes[r].parent = parent;
    };
    join(len, 0, 1);
    for (std::size_t i = 2; i < len; ++i) join(len + i - 1, len + i - 2, i);
    return BranchDecomposition(f, std::move(nodes), 2 * len - 2);
}

/// Reads the line format
///
///     nodes N
///     root R
///     edge P C      (first edge of P is its left child, second its right)
///     leaf L v<i>|c<j>
///
/// Blank lines and lines starting with '#' are ignored.
inline BranchDecomposition parse_decomposition(std::istream& in, const Formula& f) {
    std::string raw;
    std::size_t lineno = 0;
    std::optional<std::size_t> count;
    std::optional<NodeId> root;
    std::vector<TreeNode> nodes;

    auto node_id = [&](std::string_view tok) -> NodeId {
        const auto id = detail::parse_count(tok, lineno, "node id");
        if (id >= *count) throw ParseError(lineno, "node " + std::string(tok) + " out of range");
        return id;
    };

    while (std::getline(in, raw)) {
        ++lineno;
        const auto toks = detail::split_ws(raw);
        if (toks.empty() || toks.front().front() == '#') continue;
        const std::string_view key = toks.front();
        if (key == "nodes") {
            if (count) throw ParseError(lineno, "duplicate 'nodes' line");
            if (toks.size() != 2) throw ParseError(lineno, "expected 'nodes N'");
            count = detail::parse_count(toks[1], lineno, "node count");
            nodes.assign(*count, TreeNode{});
            continue;
        }
        if (!count) throw ParseError(lineno, "'nodes' line must come first");
        if (key == "root") {
            if (root) throw ParseError(lineno, "duplicate 'root' line");
            if (toks.size() != 2) throw ParseError(lineno, "expected 'root R'");
            root = node_id(toks[1]);
        } else if (key == "edge") {
            if (toks.size() != 3) throw ParseError(lineno, "expected 'edge P C'");
            const NodeId p = node_id(toks[1]), c = node_id(toks[2]);
            if (p == c) throw ParseError(lineno, "node " + std::to_string(p) + ": self loop");
            if (nodes[c].parent != no_node)
                throw ParseError(lineno, "node " + std::to_string(c) + ": second parent");
            if (nodes[p].left == no_node) nodes[p].left = c;
            else if (nodes[p].right == no_node) nodes[p].right = c;
            else throw ParseError(lineno, "node " + std::to_string(p) + ": more than two children");
            nodes[c].parent = p;
        } else if (key == "leaf") {
            if (toks.size() != 3) throw ParseError(lineno, "expected 'leaf L token'");
            const NodeId l = node_id(toks[1]);
            const auto e = Element::from_token(toks[2]);
            if (!e) throw ParseError(lineno, "node " + std::to_string(l) + ": bad element token '" + std::string(toks[2]) + "'");
            if (nodes[l].element) throw ParseError(lineno, "node " + std::to_string(l) + ": second leaf line");
            nodes[l].element = *e;
        } else {
            throw ParseError(lineno, "unknown keyword '" + std::string(key) + "'");
        }
    }
    if (!count) throw ParseError(lineno, "missing 'nodes' line");
    if (*count == 0) return BranchDecomposition::trivial(f);
    if (!root) throw ParseError(lineno, "missing 'root' line");
    return BranchDecomposition(f, std::move(nodes), *root);
}

inline BranchDecomposition parse_decomposition(std::string_view text, const Formula& f) {
    std::istringstream in{std::string(text)};
    return parse_decomposition(in, f);
}

inline std::string emit_decomposition(const BranchDecomposition& d) {
    std::ostringstream out;
    out << "nodes " << d.size() << '\n';
    if (d.empty()) return out.str();
    out << "root " << d.root() << '\n';
    for (NodeId v = 0; v < d.size(); ++v) {
        const TreeNode& t = d.node(v);
        if (!t.is_leaf()) out << "edge " << v << ' ' << t.left << '\n' << "edge " << v << ' ' << t.right << '\n';
    }
    for (NodeId v = 0; v < d.size(); ++v)
        if (d.node(v).is_leaf()) out << "leaf " << v << ' ' << d.node(v).element->token() << '\n';
    return out.str();
}

inline const Cut& cut_of(const BranchDecomposition& d, NodeId v) { return d.cut(v); }

/// (F_v, F_v̄): clauses outside the cut induced on its variables, and clauses
/// inside the cut induced on the remaining variables of F.
inline std::pair<Formula, Formula> cut_subformulas(const Formula& f, const Cut& cut) {
    const ClauseSet outside_clauses = f.clause_ids() - cut.clauses;
    const VariableSet outside_vars = f.occurring_vars() - cut.variables;
    return {induce_formula(f, outside_clauses, cut.variables), induce_formula(f, cut.clauses, outside_vars)};
}

} // namespace psw
