// Graphs equipped with a Z2 or Z4 symmetry.  The group element is given by a
// single generator acting as a graph automorphism; the four symmetry cases
// name the geometric isometry the generator is meant to realize:
//
//   CsPreserving  reflection fixing each facet pair of the unit ball
//   CsSwapping    reflection exchanging the facet pairs
//   C2            half turn (central inversion)
//   C4            quarter turn
//
// Everything downstream (packing, reduction, placement) keys off this case
// label plus the generator's combinatorial action.
#pragma once

#include <map>
#include <numeric>
#include <optional>

#include "graph.hpp"

namespace quadrig {

enum class GroupCase { CsPreserving, CsSwapping, C2, C4 };

inline const char* group_case_name(GroupCase c) {
    switch (c) {
        case GroupCase::CsPreserving: return "cs_preserving";
        case GroupCase::CsSwapping: return "cs_swapping";
        case GroupCase::C2: return "c2";
        case GroupCase::C4: return "c4";
    }
    return "?";
}

inline int group_order(GroupCase c) { return c == GroupCase::C4 ? 4 : 2; }

using Perm = std::vector<int>;

inline bool perm_valid(const Perm& p, int n) {
    if (int(p.size()) != n) return false;
    std::vector<char> seen(n, 0);
    for (int x : p) {
        if (x < 0 || x >= n || seen[x]) return false;
        seen[x] = 1;
    }
    return true;
}

inline Perm perm_identity(int n) {
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

inline Perm perm_compose(const Perm& f, const Perm& g) {  // (f o g)(x) = f(g(x))
    Perm r(g.size());
    for (size_t i = 0; i < g.size(); i++) r[i] = f[g[i]];
    return r;
}

inline Perm perm_power(const Perm& p, int k) {
    Perm r = perm_identity(int(p.size()));
    for (int i = 0; i < k; i++) r = perm_compose(p, r);
    return r;
}

inline Perm perm_inverse(const Perm& p) {
    Perm r(p.size());
    for (size_t i = 0; i < p.size(); i++) r[p[i]] = int(i);
    return r;
}

inline bool perm_is_identity(const Perm& p) {
    for (size_t i = 0; i < p.size(); i++)
        if (p[i] != int(i)) return false;
    return true;
}

inline int perm_order(const Perm& p) {
    Perm q = p;
    int k = 1;
    while (!perm_is_identity(q)) {
        q = perm_compose(p, q);
        k++;
        if (k > int(p.size()) * int(p.size()) + 4)
            throw Error(Err::ContractViolation, "perm_order runaway");
    }
    return k;
}

inline Edge perm_apply(const Perm& p, const Edge& e) { return Edge(p[e.u], p[e.v]); }

// Cycle notation like "(0 2)(1 3)"; fixed points omitted.
inline std::string perm_str(const Perm& p) {
    std::string s;
    std::vector<char> seen(p.size(), 0);
    for (size_t i = 0; i < p.size(); i++) {
        if (seen[i] || p[i] == int(i)) continue;
        s += "(";
        size_t j = i;
        bool first = true;
        while (!seen[j]) {
            seen[j] = 1;
            if (!first) s += " ";
            s += std::to_string(j);
            first = false;
            j = size_t(p[j]);
        }
        s += ")";
    }
    return s.empty() ? "()" : s;
}

struct SymmetricGraph {
    Graph graph;
    GroupCase gcase{GroupCase::C2};
    Perm gen;

    int s(int v) const { return gen[v]; }
    Edge s(const Edge& e) const { return perm_apply(gen, e); }
    int n() const { return graph.n(); }

    bool operator==(const SymmetricGraph& o) const {
        return graph == o.graph && gcase == o.gcase && gen == o.gen;
    }
};

// Validates the triple: `gen` must be a permutation of the vertex set, act as
// an automorphism, and satisfy gen^k = id for the case's group order k.
inline SymmetricGraph build_symmetric_graph(Graph graph, GroupCase gcase, Perm gen) {
    int n = graph.n();
    if (!perm_valid(gen, n))
        throw Error(Err::InvalidGraph, "action is not a permutation of the vertex set");
    for (auto& e : graph.edges()) {
        Edge img = perm_apply(gen, e);
        if (!graph.has_edge(img))
            throw Error(Err::NotAutomorphism,
                        "edge " + edge_str(e) + " maps to non-edge " + edge_str(img));
    }
    if (!perm_is_identity(perm_power(gen, group_order(gcase))))
        throw Error(Err::WrongOrder, std::string("action order does not divide ") +
                                         std::to_string(group_order(gcase)));
    return SymmetricGraph{std::move(graph), gcase, std::move(gen)};
}

struct FixedElements {
    std::vector<int> vertices;
    std::vector<Edge> edges;  // setwise fixed (includes pointwise fixed)
};

// Elements fixed by gen^power.
inline FixedElements fixed_elements(const SymmetricGraph& sg, int power = 1) {
    if (power < 1) throw Error(Err::ContractViolation, "fixed_elements power must be >= 1");
    Perm q = perm_power(sg.gen, power);
    FixedElements fe;
    for (int v = 0; v < sg.n(); v++)
        if (q[v] == v) fe.vertices.push_back(v);
    for (auto& e : sg.graph.edges())
        if (perm_apply(q, e) == e) fe.edges.push_back(e);
    return fe;
}

struct OrbitPartition {
    std::vector<std::vector<int>> vertices;
    std::vector<std::vector<Edge>> edges;
};

// Orbits under the cyclic group generated by `gen`.  Each orbit is listed in
// generator-application order starting from its smallest element, and orbits
// are sorted by that smallest element.  This ordering is relied on for
// deterministic search behaviour.
inline OrbitPartition orbit_partition(const SymmetricGraph& sg) {
    OrbitPartition op;
    std::vector<char> vseen(sg.n(), 0);
    for (int v = 0; v < sg.n(); v++) {
        if (vseen[v]) continue;
        std::vector<int> orb;
        int w = v;
        while (!vseen[w]) {
            vseen[w] = 1;
            orb.push_back(w);
            w = sg.s(w);
        }
        op.vertices.push_back(std::move(orb));
    }
    std::set<Edge> eseen;
    for (auto& e : sg.graph.edges()) {
        if (eseen.count(e)) continue;
        std::vector<Edge> orb;
        Edge f = e;
        while (!eseen.count(f)) {
            eseen.insert(f);
            orb.push_back(f);
            f = sg.s(f);
        }
        op.edges.push_back(std::move(orb));
    }
    return op;
}

inline OrbitPartition edge_orbits(const SymmetricGraph& sg) { return orbit_partition(sg); }

struct SubgraphView {
    std::vector<int> vertices;  // original ids, sorted
    std::vector<Edge> edges;    // induced, original ids
};

// Induced subgraph on N(v) u N(s v) u {v, s v}.
inline SubgraphView symmetric_neighborhood(const SymmetricGraph& sg, int v) {
    std::set<int> vs{v, sg.s(v)};
    for (int w : sg.graph.neighbors(v)) vs.insert(w);
    for (int w : sg.graph.neighbors(sg.s(v))) vs.insert(w);
    SubgraphView view;
    view.vertices.assign(vs.begin(), vs.end());
    for (auto& e : sg.graph.edges())
        if (vs.count(e.u) && vs.count(e.v)) view.edges.push_back(e);
    return view;
}

// Size of N(v) n N(s v) for a degree-3 vertex v not fixed by the action.
// The intersection is itself invariant under the action, and for graphs in
// the classes this library reduces, its fixed-point content is pinned down:
// size 1 means the single shared neighbour is fixed, size 2 means neither
// shared neighbour is, size 3 means exactly one is.  Shapes outside that
// table are surfaced as StructureViolation instead of being silently accepted.
inline int neighborhood_intersection(const SymmetricGraph& sg, int v) {
    if (sg.s(v) == v)
        throw Error(Err::StructureViolation, "vertex " + std::to_string(v) + " is fixed");
    if (sg.graph.degree(v) != 3)
        throw Error(Err::StructureViolation, "vertex " + std::to_string(v) + " has degree " +
                                             std::to_string(sg.graph.degree(v)) + ", want 3");
    const auto& nv = sg.graph.neighbors(v);
    const auto& nsv = sg.graph.neighbors(sg.s(v));
    std::vector<int> common;
    std::set_intersection(nv.begin(), nv.end(), nsv.begin(), nsv.end(),
                          std::back_inserter(common));
    int fixed = 0;
    for (int w : common)
        if (sg.s(w) == w) fixed++;
    int t = int(common.size());
    bool ok = (t == 0) || (t == 1 && fixed == 1) || (t == 2 && fixed == 0) ||
              (t == 3 && fixed == 1);
    if (!ok)
        throw Error(Err::StructureViolation, "intersection size " + std::to_string(t) + " with " +
                                             std::to_string(fixed) + " fixed vertices at " +
                                             std::to_string(v));
    return t;
}

}  // namespace quadrig
