#pragma once

#include <string>

#include "pswidth/pswidth.hpp"

namespace psw::testing {

// Formula with the cut of the worked branch-decomposition example: clauses
// c1..c4 there are ids 0..3 here.
//   c1 = {x1, x2}          id 0
//   c2 = {x1, -x2, x3}     id 1
//   c3 = {-x2, -x4, x5}    id 2
//   c4 = {x2, -x3}         id 3
// Node v covers {c1, c3, x1, x2}.
inline const char* worked_cnf = "c worked cut example\n"
                                "p cnf 5 4\n"
                                "1 2 0\n"
                                "1 -2 3 0\n"
                                "-2 -4 5 0\n"
                                "2 -3 0\n";

inline constexpr NodeId worked_node_v = 1;

// root 0 = (v, w); v = 1 = ((x1, c1), (x2, c3)); w = 2 = ((x3, c2), (x4, (x5, c4)))
inline const char* worked_decomposition = "nodes 17\n"
                                          "root 0\n"
                                          "edge 0 1\nedge 0 2\n"
                                          "edge 1 3\nedge 1 4\n"
                                          "edge 2 5\nedge 2 6\n"
                                          "edge 3 8\nedge 3 9\n"
                                          "edge 4 10\nedge 4 11\n"
                                          "edge 5 12\nedge 5 13\n"
                                          "edge 6 14\nedge 6 7\n"
                                          "edge 7 15\nedge 7 16\n"
                                          "leaf 8 v1\nleaf 9 c0\nleaf 10 v2\nleaf 11 c2\n"
                                          "leaf 12 v3\nleaf 13 c1\nleaf 14 v4\nleaf 15 v5\nleaf 16 c3\n";

inline ClauseSet clauses(std::size_t universe, std::initializer_list<std::size_t> ids) {
    ClauseSet s(universe);
    for (auto id : ids) s.set(id);
    return s;
}

inline VariableSet vars(std::size_t declared, std::initializer_list<std::size_t> ids) {
    VariableSet s(declared + 1);
    for (auto id : ids) s.set(id);
    return s;
}

} // namespace psw::testing
