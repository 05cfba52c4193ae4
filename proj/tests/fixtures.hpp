#pragma once

// Reference instances shared across the test binaries.  Each builder returns
// a validated SymmetricGraph; the comments say what makes the instance
// interesting (fixed-element profile, symmetry case, role in the suite).

#include <vector>

#include "quadrig/construct.hpp"
#include "quadrig/symcore.hpp"

namespace fixtures {

using namespace quadrig;

// Wheel on five vertices: hub 0, rim 4-cycle 1-2-3-4.  Its unique
// fixed-edge-free involution is (1 3)(2 4).
inline Graph wheel5() {
    return Graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {2, 3}, {3, 4}, {1, 4}});
}

inline Perm wheel5_involution() { return {0, 3, 4, 1, 2}; }

inline SymmetricGraph wheel5_preserving() {
    return build_symmetric_graph(wheel5(), GroupCase::CsPreserving, wheel5_involution());
}

inline SymmetricGraph wheel5_half_turn() {
    return build_symmetric_graph(wheel5(), GroupCase::C2, wheel5_involution());
}

// The wheel under the order-four rim rotation 1->2->3->4->1: no fixed edge,
// no square-fixed edge.
inline SymmetricGraph wheel5_quarter_turn() {
    return build_symmetric_graph(wheel5(), GroupCase::C4, {0, 2, 3, 4, 1});
}

// Three mirror pairs, ten edges, no fixed edge; admits a swapped tree pair.
inline SymmetricGraph swapping_pair_6() {
    Graph g(6, {{0, 4}, {0, 2}, {0, 5}, {1, 4}, {1, 3}, {1, 5}, {2, 4}, {2, 5}, {3, 4}, {3, 5}});
    return build_symmetric_graph(g, GroupCase::CsSwapping, {1, 0, 3, 2, 5, 4});
}

// Seven vertices, half turn (0 2)(1 3)(4 5), fixed vertex 6, no fixed edge.
inline SymmetricGraph half_turn_7() {
    Graph g(7, {{0, 1},
                {1, 2},
                {2, 3},
                {0, 3},
                {0, 4},
                {3, 4},
                {1, 5},
                {2, 5},
                {0, 6},
                {1, 6},
                {2, 6},
                {3, 6}});
    return build_symmetric_graph(g, GroupCase::C2, {2, 3, 0, 1, 5, 4, 6});
}

// Six vertices, half turn, exactly two fixed edges (the diagonals 0-2, 1-3).
inline SymmetricGraph half_turn_6_two_fixed() {
    Graph g(6,
            {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 4}, {3, 4}, {1, 5}, {2, 5}, {0, 2}, {1, 3}});
    return build_symmetric_graph(g, GroupCase::C2, {2, 3, 0, 1, 5, 4});
}

// Two concentric 4-cycles plus spokes under a quarter turn; no
// generator-fixed edge, and the two inner diagonals are the square-fixed
// pair.
inline SymmetricGraph quarter_turn_8() {
    Graph g(8, {{0, 1},
                {1, 2},
                {2, 3},
                {0, 3},
                {0, 2},
                {1, 3},
                {4, 5},
                {5, 6},
                {6, 7},
                {4, 7},
                {0, 4},
                {1, 5},
                {2, 6},
                {3, 7}});
    return build_symmetric_graph(g, GroupCase::C4, {1, 2, 3, 0, 5, 6, 7, 4});
}

inline Graph k4() { return Graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }

// K4 under (0 2)(1 3): the two diagonals 0-2 and 1-3 are the fixed edges.
inline SymmetricGraph k4_half_turn() {
    return build_symmetric_graph(k4(), GroupCase::C2, {2, 3, 0, 1});
}

// K4 under the 4-cycle (0 1 2 3): no fixed edge, two square-fixed edges.
inline SymmetricGraph k4_quarter_turn() {
    return build_symmetric_graph(k4(), GroupCase::C4, {1, 2, 3, 0});
}

inline std::vector<SymmetricGraph> all_references() {
    return {wheel5_preserving(), wheel5_half_turn(),      wheel5_quarter_turn(),
            swapping_pair_6(),   half_turn_7(),           half_turn_6_two_fixed(),
            quarter_turn_8(),    k4_half_turn(),          k4_quarter_turn()};
}

}  // namespace fixtures
