// Packing the edge set into two spanning trees that respect the symmetry.
//
//   Invariant mode: the generator maps each tree onto itself.
//   Swapped mode:   the generator exchanges the two trees.
//
// The search assigns whole edge orbits at once: an invariant orbit goes to
// one tree in bulk, a swapped orbit alternates trees along the orbit with one
// free phase bit.  Orbits are processed largest first (ties by smallest edge)
// and a rollback union-find prunes assignments that close a cycle or overfill
// a tree, so both forests stay acyclic with at most n-1 edges throughout.
#pragma once

#include "symcore.hpp"

namespace quadrig {

enum class TreeMode { Invariant, Swapped };

inline const char* tree_mode_name(TreeMode m) {
    return m == TreeMode::Invariant ? "invariant" : "swapped";
}

inline TreeMode mode_for_case(GroupCase c) {
    return (c == GroupCase::CsSwapping || c == GroupCase::C4) ? TreeMode::Swapped
                                                              : TreeMode::Invariant;
}

struct TreePair {
    std::vector<Edge> tree1, tree2;  // each sorted
    TreeMode mode{TreeMode::Invariant};
};

// Validator used by tests and by every consumer of a found pair.  Written
// against the definition only: disjointness, exact cover, both sides spanning
// trees, and the mode law for the generator.
inline bool is_valid_tree_pair(const SymmetricGraph& sg, const TreePair& tp,
                               std::string* why = nullptr) {
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    int n = sg.n();
    std::vector<Edge> all = tp.tree1;
    all.insert(all.end(), tp.tree2.begin(), tp.tree2.end());
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end())
        return fail("trees share an edge");
    if (all != sg.graph.edges()) return fail("trees do not cover the edge set exactly");
    if (!is_spanning_tree(n, tp.tree1)) return fail("first class is not a spanning tree");
    if (!is_spanning_tree(n, tp.tree2)) return fail("second class is not a spanning tree");
    auto image = [&](const std::vector<Edge>& t) {
        std::vector<Edge> img;
        img.reserve(t.size());
        for (auto& e : t) img.push_back(sg.s(e));
        std::sort(img.begin(), img.end());
        return img;
    };
    std::vector<Edge> t1 = sorted_edges(tp.tree1), t2 = sorted_edges(tp.tree2);
    if (tp.mode == TreeMode::Invariant) {
        if (image(t1) != t1 || image(t2) != t2) return fail("trees are not invariant");
    } else {
        if (image(t1) != t2 || image(t2) != t1) return fail("trees are not swapped");
    }
    return true;
}

namespace detail {

struct PackSearch {
    const SymmetricGraph& sg;
    TreeMode mode;
    std::vector<std::vector<Edge>> orbits;  // sorted largest first, ties smallest edge
    RollbackUF uf1, uf2;
    int count1 = 0, count2 = 0;
    std::vector<int> choice;       // per orbit: tree index / phase
    std::vector<Edge> t1, t2;
    bool collect_all;
    std::vector<TreePair>* sink = nullptr;
    std::optional<TreePair> first;

    PackSearch(const SymmetricGraph& g, TreeMode m, bool all)
        : sg(g), mode(m), uf1(g.n()), uf2(g.n()), collect_all(all) {
        orbits = orbit_partition(sg).edges;
        std::stable_sort(orbits.begin(), orbits.end(),
                         [](const std::vector<Edge>& a, const std::vector<Edge>& b) {
                             if (a.size() != b.size()) return a.size() > b.size();
                             return a.front() < b.front();
                         });
    }

    // Adds every edge of `orb` to trees by parity: edges at even positions to
    // tree `first_tree`, odd positions to the other (invariant orbits use a
    // single tree).  Returns false and rolls back on a cycle or overflow.
    bool push_orbit(const std::vector<Edge>& orb, int first_tree, size_t& m1, size_t& m2) {
        m1 = uf1.mark();
        m2 = uf2.mark();
        size_t added1 = 0, added2 = 0;
        int limit = sg.n() - 1;
        for (size_t i = 0; i < orb.size(); i++) {
            int tree = first_tree;
            if (mode == TreeMode::Swapped) tree = (int(i) % 2 == 0) ? first_tree : 1 - first_tree;
            RollbackUF& uf = tree == 0 ? uf1 : uf2;
            int& cnt = tree == 0 ? count1 : count2;
            if (cnt >= limit || !uf.unite(orb[i].u, orb[i].v)) {
                uf1.rollback(m1);
                uf2.rollback(m2);
                count1 -= int(added1);
                count2 -= int(added2);
                t1.resize(t1.size() - added1);
                t2.resize(t2.size() - added2);
                return false;
            }
            cnt++;
            (tree == 0 ? added1 : added2)++;
            (tree == 0 ? t1 : t2).push_back(orb[i]);
        }
        return true;
    }

    void pop_orbit(const std::vector<Edge>& orb, int first_tree, size_t m1, size_t m2) {
        size_t rem1 = 0, rem2 = 0;
        for (size_t i = 0; i < orb.size(); i++) {
            int tree = first_tree;
            if (mode == TreeMode::Swapped) tree = (int(i) % 2 == 0) ? first_tree : 1 - first_tree;
            (tree == 0 ? rem1 : rem2)++;
        }
        t1.resize(t1.size() - rem1);
        t2.resize(t2.size() - rem2);
        count1 -= int(rem1);
        count2 -= int(rem2);
        uf1.rollback(m1);
        uf2.rollback(m2);
    }

    bool run(size_t idx) {
        if (idx == orbits.size()) {
            if (count1 != sg.n() - 1 || count2 != sg.n() - 1) return false;
            TreePair tp{sorted_edges(t1), sorted_edges(t2), mode};
            if (collect_all) {
                sink->push_back(tp);
                return false;  // keep searching
            }
            first = tp;
            return true;
        }
        const auto& orb = orbits[idx];
        if (mode == TreeMode::Swapped && orb.size() % 2 != 0) return false;
        for (int c = 0; c < 2; c++) {
            size_t m1, m2;
            if (!push_orbit(orb, c, m1, m2)) continue;
            if (run(idx + 1)) return true;
            pop_orbit(orb, c, m1, m2);
        }
        return false;
    }
};

}  // namespace detail

// First symmetric tree pair in deterministic search order, or nullopt.  A
// pair of spanning trees needs |E| = 2n - 2 and at least two vertices; both
// are checked up front.
inline std::optional<TreePair> find_tree_pair(const SymmetricGraph& sg, TreeMode mode) {
    if (sg.n() < 2) return std::nullopt;
    if (sg.graph.edge_count() != 2 * sg.n() - 2) return std::nullopt;
    detail::PackSearch ps(sg, mode, false);
    ps.run(0);
    return ps.first;
}

// Enumerates every symmetric tree pair (ordered: tree1/tree2 distinguished).
template <typename Fn>
inline void for_each_tree_pair(const SymmetricGraph& sg, TreeMode mode, Fn&& fn) {
    if (sg.n() < 2) return;
    if (sg.graph.edge_count() != 2 * sg.n() - 2) return;
    std::vector<TreePair> all;
    detail::PackSearch ps(sg, mode, true);
    ps.sink = &all;
    ps.run(0);
    for (auto& tp : all) fn(tp);
}

enum class PackFailure { EdgeCount, FixedEdgeRule, NoPacking, InvalidAction };

inline const char* pack_failure_name(PackFailure f) {
    switch (f) {
        case PackFailure::EdgeCount: return "EdgeCount";
        case PackFailure::FixedEdgeRule: return "FixedEdgeRule";
        case PackFailure::NoPacking: return "NoPacking";
        case PackFailure::InvalidAction: return "InvalidAction";
    }
    return "?";
}

struct AdmissibilityReport {
    bool admissible{false};
    GroupCase gcase{GroupCase::C2};
    TreeMode mode{TreeMode::Invariant};
    int fixed_edge_count{0};  // under the generator; for C4 under its square
    std::optional<TreePair> pair;
    std::optional<PackFailure> failure;
};

namespace detail {

// Structural facts that hold for every admissible instance; violations mean a
// bug in the packing search, not bad input, hence ContractViolation.
inline void assert_admissible_invariants(const SymmetricGraph& sg,
                                         const AdmissibilityReport& rep) {
    if (rep.mode != TreeMode::Invariant) return;
    FixedElements fe = fixed_elements(sg, 1);
    if (rep.fixed_edge_count == 0) {
        // One fixed vertex of even degree >= 4.
        if (fe.vertices.size() != 1)
            throw Error(Err::ContractViolation,
                        "admissible instance without a unique fixed vertex");
        int d = sg.graph.degree(fe.vertices[0]);
        if (d < 4 || d % 2 != 0)
            throw Error(Err::ContractViolation, "fixed vertex degree " + std::to_string(d));
    } else {
        // Two fixed edges: no fixed vertex, edges disjoint, one per tree.
        if (!fe.vertices.empty())
            throw Error(Err::ContractViolation, "fixed vertex alongside fixed edges");
        if (fe.edges.size() != 2) throw Error(Err::ContractViolation, "fixed edge miscount");
        const Edge &e = fe.edges[0], &f = fe.edges[1];
        if (e.touches(f.u) || e.touches(f.v))
            throw Error(Err::ContractViolation, "fixed edges share a vertex");
        auto& t1 = rep.pair->tree1;
        bool e1 = std::binary_search(t1.begin(), t1.end(), e);
        bool f1 = std::binary_search(t1.begin(), t1.end(), f);
        if (e1 == f1)
            throw Error(Err::ContractViolation, "fixed edges packed into one tree");
    }
}

}  // namespace detail

// Full admissibility decision for the instance's symmetry case:
//   edge count 2n - 2, the case's fixed-edge rule, and a symmetric packing.
// Fixed-edge rule per case: CsPreserving and CsSwapping forbid fixed edges;
// C2 allows zero or two; C4 forbids generator-fixed edges and allows zero or
// two fixed under the squared generator.  InvalidAction reports a generator
// whose order differs from the case's group order.
inline AdmissibilityReport check_admissible(const SymmetricGraph& sg) {
    AdmissibilityReport rep;
    rep.gcase = sg.gcase;
    rep.mode = mode_for_case(sg.gcase);
    bool c4 = sg.gcase == GroupCase::C4;
    rep.fixed_edge_count = int(fixed_elements(sg, c4 ? 2 : 1).edges.size());
    if (perm_order(sg.gen) != group_order(sg.gcase)) {
        rep.failure = PackFailure::InvalidAction;
        return rep;
    }
    if (sg.n() < 2 || sg.graph.edge_count() != 2 * sg.n() - 2) {
        rep.failure = PackFailure::EdgeCount;
        return rep;
    }
    bool fixed_ok;
    switch (sg.gcase) {
        case GroupCase::CsPreserving:
        case GroupCase::CsSwapping: fixed_ok = rep.fixed_edge_count == 0; break;
        case GroupCase::C2:
            fixed_ok = rep.fixed_edge_count == 0 || rep.fixed_edge_count == 2;
            break;
        case GroupCase::C4:
        default:
            fixed_ok = fixed_elements(sg, 1).edges.empty() &&
                       (rep.fixed_edge_count == 0 || rep.fixed_edge_count == 2);
            break;
    }
    if (!fixed_ok) {
        rep.failure = PackFailure::FixedEdgeRule;
        return rep;
    }
    rep.pair = find_tree_pair(sg, rep.mode);
    if (!rep.pair) {
        rep.failure = PackFailure::NoPacking;
        return rep;
    }
    rep.admissible = true;
    std::string why;
    if (!is_valid_tree_pair(sg, *rep.pair, &why))
        throw Error(Err::ContractViolation, "packing search returned invalid pair: " + why);
    detail::assert_admissible_invariants(sg, rep);
    return rep;
}

}  // namespace quadrig
