// Inductive construction machinery.  Every admissible invariant-mode instance
// with no fixed edges reduces to the five-vertex wheel through four inverse
// moves; replaying the recorded moves from the wheel reproduces the instance
// exactly (vertex ids included, via the relabelling stored on each move).
//
// Move vocabulary (forward direction, k = symmetry orbit size):
//   ZeroExt          new vertex orbit, each joined to two existing vertices
//   OneExt           new vertex orbit of degree 3, one existing edge orbit
//                    (joining two attachment vertices) removed
//   ModifiedOneExt   like OneExt but the removed orbit joins an attachment to
//                    the image of another attachment under the symmetry
//   FixedVertexToW5  the fixed vertex is expanded into a copy of the wheel;
//                    its old edges re-route equivariantly to the new copy
//
// Reductions are found by target selection (degree-2 vertex first, else
// degree-3 by neighbourhood intersection type preference 2, 0, 1, 3) followed
// by candidate surgery and exact re-verification: a reduction is emitted only
// if the shrunken instance packs into symmetric spanning trees and the move
// replays to the original graph on the nose.
#pragma once

#include <variant>

#include "treepack.hpp"

namespace quadrig {

struct ZeroExt {
    std::vector<int> relabel;  // old id -> new id, order-preserving
    int v1{0}, v2{0};          // attachment vertices (ids before the move)
    std::vector<int> new_ids;  // ids of the new orbit in generator order
};

struct OneExt {
    std::vector<int> relabel;
    int a1{0}, a2{0}, a3{0};  // attachments; removed joins a1 and a2
    Edge removed;
    std::vector<int> new_ids;
};

struct ModifiedOneExt {
    std::vector<int> relabel;
    int a1{0}, a2{0}, a3{0};  // removed joins a1 and the image of a2
    Edge removed;
    std::vector<int> new_ids;
};

struct FixedVertexToW5 {
    std::vector<int> relabel;
    int v0{0};                 // the fixed vertex (id before the move)
    std::array<int, 4> rim;    // new rim ids r1, r2, r3, r4 with s: r1<->r3, r2<->r4
    std::vector<std::pair<int, int>> rerouted;  // old neighbour of v0 -> new id target
};

using ExtensionMove = std::variant<ZeroExt, OneExt, ModifiedOneExt, FixedVertexToW5>;

inline const char* move_name(const ExtensionMove& m) {
    switch (m.index()) {
        case 0: return "zero_ext";
        case 1: return "one_ext";
        case 2: return "modified_one_ext";
        default: return "fixed_vertex_to_w5";
    }
}

// The wheel on five vertices: hub 0, rim cycle 1-2-3-4, with the involution
// exchanging opposite rim vertices.  This is the unique smallest admissible
// invariant-mode instance and the base of every reduction chain.
inline SymmetricGraph w5_base(GroupCase gcase = GroupCase::C2) {
    if (gcase != GroupCase::C2 && gcase != GroupCase::CsPreserving)
        throw Error(Err::ContractViolation, "w5_base wants an invariant-mode case");
    Graph g(5, {{1, 2}, {2, 3}, {3, 4}, {1, 4}, {0, 1}, {0, 2}, {0, 3}, {0, 4}});
    return build_symmetric_graph(std::move(g), gcase, {0, 3, 4, 1, 2});
}

inline Perm w5_theta_star() { return {0, 3, 4, 1, 2}; }

// Reference invariant packing of the wheel.
inline TreePair w5_reference_pair() {
    return TreePair{sorted_edges({{2, 3}, {0, 3}, {0, 1}, {1, 4}}),
                    sorted_edges({{1, 2}, {0, 2}, {0, 4}, {3, 4}}), TreeMode::Invariant};
}

// Quarter-turn analogue of the wheel base: hub fixed, generator rotating the
// rim cycle one step.
inline SymmetricGraph c4_wheel_base() {
    Graph g(5, {{1, 2}, {2, 3}, {3, 4}, {1, 4}, {0, 1}, {0, 2}, {0, 3}, {0, 4}});
    return build_symmetric_graph(std::move(g), GroupCase::C4, {0, 2, 3, 4, 1});
}

struct W5Roles {
    int hub{0};
    std::array<int, 4> rim{};  // cycle order; generator maps rim[i] per case
};

// Role extraction for a wheel-shaped base: hub is the fixed degree-4 vertex,
// rim starts at its smallest neighbour.  For the involution the rim order is
// (r, next(r), s r, s next(r)); for the quarter turn it follows the generator.
inline W5Roles w5_roles(const SymmetricGraph& sg) {
    if (sg.n() != 5 || sg.graph.edge_count() != 8)
        throw Error(Err::ContractViolation, "not wheel-shaped: wrong size");
    auto fe = fixed_elements(sg, 1);
    if (fe.vertices.size() != 1 || sg.graph.degree(fe.vertices[0]) != 4)
        throw Error(Err::ContractViolation, "not wheel-shaped: no degree-4 fixed hub");
    W5Roles roles;
    roles.hub = fe.vertices[0];
    std::vector<int> rim;
    for (int v = 0; v < 5; v++)
        if (v != roles.hub) rim.push_back(v);
    int r1 = rim[0];
    if (sg.gcase == GroupCase::C4) {
        roles.rim = {r1, sg.s(r1), sg.s(sg.s(r1)), sg.s(sg.s(sg.s(r1)))};
    } else {
        int r2 = -1;
        for (int w : sg.graph.neighbors(r1))
            if (w != roles.hub && w != sg.s(r1)) {
                r2 = w;
                break;
            }
        if (r2 < 0) throw Error(Err::ContractViolation, "not wheel-shaped: rim cycle");
        roles.rim = {r1, r2, sg.s(r1), sg.s(r2)};
    }
    // Rim must be a 4-cycle in the stated order with all spokes present.
    for (int i = 0; i < 4; i++) {
        if (!sg.graph.has_edge(roles.rim[i], roles.rim[(i + 1) % 4]))
            throw Error(Err::ContractViolation, "not wheel-shaped: rim cycle broken");
        if (!sg.graph.has_edge(roles.hub, roles.rim[i]))
            throw Error(Err::ContractViolation, "not wheel-shaped: missing spoke");
    }
    return roles;
}

namespace detail {

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw Error(Err::ContractViolation, "move precondition: " + msg);
}

// Checks that `relabel` embeds the old vertex set into [0, n_new) and that the
// complement is exactly `new_ids`.
inline void check_relabel(const std::vector<int>& relabel, const std::vector<int>& new_ids,
                          int n_old, int n_new) {
    require(int(relabel.size()) == n_old, "relabel size");
    std::vector<char> used(n_new, 0);
    for (int x : relabel) {
        require(x >= 0 && x < n_new && !used[x], "relabel not injective into range");
        used[x] = 1;
    }
    for (int x : new_ids) {
        require(x >= 0 && x < n_new && !used[x], "new ids clash with relabel");
        used[x] = 1;
    }
    for (int i = 0; i < n_new; i++) require(used[i], "vertex ids not covered");
}

inline Perm lifted_gen(const SymmetricGraph& h, const std::vector<int>& relabel,
                       const std::vector<int>& new_ids, int n_new) {
    Perm gen(n_new, -1);
    for (int x = 0; x < h.n(); x++) gen[relabel[x]] = relabel[h.s(x)];
    int k = int(new_ids.size());
    for (int i = 0; i < k; i++) gen[new_ids[i]] = new_ids[(i + 1) % k];
    return gen;
}

inline std::vector<Edge> edge_orbit_of(const SymmetricGraph& sg, const Edge& e) {
    std::vector<Edge> orb;
    Edge f = e;
    do {
        orb.push_back(f);
        f = sg.s(f);
    } while (f != e);
    return orb;
}

}  // namespace detail

// Applies a move to `h`, producing the extended symmetric graph.  All move
// prerequisites are checked; the result is re-validated as a symmetric graph.
inline SymmetricGraph apply_move(const SymmetricGraph& h, const ExtensionMove& move) {
    using detail::require;
    int order = group_order(h.gcase);

    if (std::holds_alternative<FixedVertexToW5>(move)) {
        const auto& m = std::get<FixedVertexToW5>(move);
        require(order == 2, "wheel expansion applies to involutive cases");
        int n_new = h.n() + 4;
        std::vector<int> new_ids(m.rim.begin(), m.rim.end());
        detail::check_relabel(m.relabel, new_ids, h.n(), n_new);
        require(h.s(m.v0) == m.v0, "expanded vertex must be fixed");
        Perm gen(n_new, -1);
        for (int x = 0; x < h.n(); x++) gen[m.relabel[x]] = m.relabel[h.s(x)];
        gen[m.rim[0]] = m.rim[2];
        gen[m.rim[2]] = m.rim[0];
        gen[m.rim[1]] = m.rim[3];
        gen[m.rim[3]] = m.rim[1];
        int hub = m.relabel[m.v0];
        // Old neighbours of v0 must be re-routed exactly once each,
        // equivariantly, into the wheel copy.
        std::map<int, int> route(m.rerouted.begin(), m.rerouted.end());
        require(route.size() == m.rerouted.size(), "duplicate reroute source");
        const auto& nbrs = h.graph.neighbors(m.v0);
        require(route.size() == nbrs.size(), "reroute must cover the old neighbourhood");
        for (int w : nbrs) require(route.count(w), "missing reroute for a neighbour");
        auto target_ok = [&](int t) {
            return t == hub || t == m.rim[0] || t == m.rim[1] || t == m.rim[2] || t == m.rim[3];
        };
        for (auto& [w, t] : route) {
            require(target_ok(t), "reroute target outside the wheel copy");
            require(route.at(h.s(w)) == gen[t], "reroute not equivariant");
        }
        std::vector<Edge> edges;
        for (auto& e : h.graph.edges()) {
            if (e.touches(m.v0)) continue;
            edges.emplace_back(m.relabel[e.u], m.relabel[e.v]);
        }
        for (auto& [w, t] : route) edges.emplace_back(m.relabel[w], t);
        for (int i = 0; i < 4; i++) {
            edges.emplace_back(hub, m.rim[i]);
            edges.emplace_back(m.rim[i], m.rim[(i + 1) % 4]);
        }
        return build_symmetric_graph(Graph(n_new, std::move(edges)), h.gcase, std::move(gen));
    }

    // Vertex-orbit additions share their skeleton.
    const std::vector<int>* relabel;
    const std::vector<int>* new_ids;
    std::array<int, 3> att{-1, -1, -1};
    std::optional<Edge> removed;
    if (std::holds_alternative<ZeroExt>(move)) {
        const auto& m = std::get<ZeroExt>(move);
        relabel = &m.relabel;
        new_ids = &m.new_ids;
        att = {m.v1, m.v2, -1};
        require(m.v1 != m.v2, "attachments must differ");
    } else if (std::holds_alternative<OneExt>(move)) {
        const auto& m = std::get<OneExt>(move);
        relabel = &m.relabel;
        new_ids = &m.new_ids;
        att = {m.a1, m.a2, m.a3};
        removed = m.removed;
        require(m.removed == Edge(m.a1, m.a2), "removed edge must join the first attachments");
    } else {
        const auto& m = std::get<ModifiedOneExt>(move);
        relabel = &m.relabel;
        new_ids = &m.new_ids;
        att = {m.a1, m.a2, m.a3};
        removed = m.removed;
        if (order == 2) {
            require(m.removed == Edge(m.a1, h.s(m.a2)),
                    "removed edge must join a1 to the image of a2");
        } else {
            // Quarter-turn chains are experimental: require only that the
            // removed orbit stays inside the attachment orbits.
            auto in_orbits = [&](int x) {
                for (int a : {m.a1, m.a2, m.a3}) {
                    int y = a;
                    for (int i = 0; i < order; i++) {
                        if (x == y) return true;
                        y = h.s(y);
                    }
                }
                return false;
            };
            require(in_orbits(m.removed.u) && in_orbits(m.removed.v),
                    "removed orbit must touch attachment orbits");
            require(m.removed != Edge(m.a1, m.a2), "use the plain move for attachment edges");
        }
    }
    int k = int(new_ids->size());
    require(k == order, "new orbit size must equal the group order");
    int n_new = h.n() + k;
    detail::check_relabel(*relabel, *new_ids, h.n(), n_new);
    int deg = att[2] < 0 ? 2 : 3;
    for (int j = 0; j < deg; j++)
        require(att[j] >= 0 && att[j] < h.n(), "attachment out of range");
    std::vector<Edge> drop;
    if (removed) {
        require(h.graph.has_edge(*removed), "removed edge not present");
        drop = detail::edge_orbit_of(h, *removed);
        require(int(drop.size()) == k, "removed orbit has the wrong size");
    }
    std::vector<Edge> edges;
    for (auto& e : h.graph.edges()) {
        if (std::find(drop.begin(), drop.end(), e) != drop.end()) continue;
        edges.emplace_back((*relabel)[e.u], (*relabel)[e.v]);
    }
    Perm pw = perm_identity(h.n());
    for (int i = 0; i < k; i++) {
        for (int j = 0; j < deg; j++) edges.emplace_back((*new_ids)[i], (*relabel)[pw[att[j]]]);
        pw = perm_compose(h.gen, pw);
    }
    return build_symmetric_graph(Graph(n_new, std::move(edges)), h.gcase,
                                 detail::lifted_gen(h, *relabel, *new_ids, n_new));
}

struct ReduceStep {
    SymmetricGraph h;
    TreePair pair_h;
    ExtensionMove move;
};

namespace detail {

inline std::pair<std::vector<int>, std::vector<int>> compress_ids(int n,
                                                                  const std::set<int>& dropped) {
    std::vector<int> h_to_g, g_to_h(n, -1);
    for (int v = 0; v < n; v++) {
        if (dropped.count(v)) continue;
        g_to_h[v] = int(h_to_g.size());
        h_to_g.push_back(v);
    }
    return {h_to_g, g_to_h};
}

// Builds the reduced instance from surviving edges plus an added orbit and
// packs it; returns nullopt when the packing fails (candidate rejected).
inline std::optional<std::pair<SymmetricGraph, TreePair>> try_reduced(
    const SymmetricGraph& sg, const std::set<int>& dropped, const std::vector<Edge>& added,
    const std::vector<int>& g_to_h, const std::vector<TreePair>* derived = nullptr) {
    int n_h = sg.n() - int(dropped.size());
    std::vector<Edge> edges;
    for (auto& e : sg.graph.edges()) {
        if (dropped.count(e.u) || dropped.count(e.v)) continue;
        edges.emplace_back(g_to_h[e.u], g_to_h[e.v]);
    }
    // Each added edge enters with its whole orbit, deduplicated so a caller
    // may pass any set of orbit members.
    std::set<Edge> add_orbit;
    for (auto& e : added) {
        Edge cur = e;
        do {
            add_orbit.insert(cur);
            cur = sg.s(cur);
        } while (cur != e);
    }
    for (auto& e : add_orbit) edges.emplace_back(g_to_h[e.u], g_to_h[e.v]);
    Perm gen(n_h);
    for (int v = 0; v < sg.n(); v++)
        if (g_to_h[v] >= 0) gen[g_to_h[v]] = g_to_h[sg.s(v)];
    SymmetricGraph h;
    try {
        h = build_symmetric_graph(Graph(n_h, std::move(edges)), sg.gcase, std::move(gen));
    } catch (const Error&) {
        return std::nullopt;
    }
    // Intermediates must themselves be admissible with no fixed edges (chains
    // never pass through the fixed-edge variant of the half-turn case).
    if (!fixed_elements(h, 1).edges.empty()) return std::nullopt;
    AdmissibilityReport rep = check_admissible(h);
    if (!rep.admissible) return std::nullopt;
    if (derived) {
        for (auto& tp : *derived)
            if (is_valid_tree_pair(h, tp)) return std::make_pair(h, tp);
        return std::nullopt;
    }
    return std::make_pair(h, *rep.pair);
}

}  // namespace detail

// One inverse move.  Requires an invariant-mode instance with no fixed edges
// and a valid packing; throws NotReducible at the wheel.
inline ReduceStep reduce_step(const SymmetricGraph& sg, const TreePair& pair) {
    if (mode_for_case(sg.gcase) != TreeMode::Invariant)
        throw Error(Err::NotReducible, "reduction chains exist for invariant-mode cases only");
    std::string why;
    if (!is_valid_tree_pair(sg, pair, &why))
        throw Error(Err::ContractViolation, "reduce_step needs a valid pair: " + why);
    if (!fixed_elements(sg, 1).edges.empty())
        throw Error(Err::NotReducible, "apply the hat transform to instances with fixed edges");
    if (sg.n() <= 5) throw Error(Err::NotReducible, "already at the wheel base");

    auto tree_of = [&](const Edge& e) {
        return std::binary_search(pair.tree1.begin(), pair.tree1.end(), e) ? 0 : 1;
    };

    // Degree-2 targets: inverse ZeroExt always succeeds, with the packing
    // inherited by deleting two leaves from each tree.
    for (int v = 0; v < sg.n(); v++) {
        if (sg.s(v) == v || sg.graph.degree(v) != 2) continue;
        int sv = sg.s(v);
        std::set<int> dropped{v, sv};
        auto [h_to_g, g_to_h] = detail::compress_ids(sg.n(), dropped);
        auto relab = [&](const std::vector<Edge>& t) {
            std::vector<Edge> r;
            for (auto& e : t)
                if (!dropped.count(e.u) && !dropped.count(e.v))
                    r.emplace_back(g_to_h[e.u], g_to_h[e.v]);
            return sorted_edges(r);
        };
        std::vector<TreePair> derived{
            TreePair{relab(pair.tree1), relab(pair.tree2), TreeMode::Invariant}};
        auto res = detail::try_reduced(sg, dropped, {}, g_to_h, &derived);
        if (!res)
            throw Error(Err::ContractViolation, "degree-2 reduction failed unexpectedly");
        int n1 = sg.graph.neighbors(v)[0], n2 = sg.graph.neighbors(v)[1];
        if (tree_of(Edge(v, n1)) != 0) std::swap(n1, n2);
        ZeroExt mv;
        mv.relabel = h_to_g;
        mv.v1 = g_to_h[n1];
        mv.v2 = g_to_h[n2];
        mv.new_ids = {v, sv};
        return ReduceStep{res->first, res->second, ExtensionMove{mv}};
    }

    // Degree-3 targets ordered by intersection type preference 2, 0, 1, 3.
    auto itype = [&](int v) {
        const auto& nv = sg.graph.neighbors(v);
        const auto& nsv = sg.graph.neighbors(sg.s(v));
        std::vector<int> common;
        std::set_intersection(nv.begin(), nv.end(), nsv.begin(), nsv.end(),
                              std::back_inserter(common));
        return int(common.size());
    };
    std::vector<std::pair<int, int>> cands;  // (preference rank, vertex)
    auto pref = [](int t) { return t == 2 ? 0 : t == 0 ? 1 : t == 1 ? 2 : 3; };
    for (int v = 0; v < sg.n(); v++)
        if (sg.s(v) != v && sg.graph.degree(v) == 3) cands.emplace_back(pref(itype(v)), v);
    std::sort(cands.begin(), cands.end());

    for (auto& [rank_, v] : cands) {
        int sv = sg.s(v);
        std::vector<int> nbrs = sg.graph.neighbors(v);
        // Same-tree attachment pair listed first.
        std::vector<std::array<int, 3>> orders;  // (x, y, third)
        for (int a = 0; a < 3; a++)
            for (int b = a + 1; b < 3; b++) {
                int c = 3 - a - b;
                orders.push_back({nbrs[a], nbrs[b], nbrs[c]});
            }
        std::stable_sort(orders.begin(), orders.end(), [&](const auto& p, const auto& q) {
            auto same = [&](const auto& o) {
                return tree_of(Edge(v, o[0])) == tree_of(Edge(v, o[1])) ? 0 : 1;
            };
            return same(p) < same(q);
        });

        if (rank_ == 3) {
            // Type 3: neighbourhood {v0, v1, s v1} with v0 fixed.  When the
            // hub edge v0-v1 is present the symmetric neighbourhood is a
            // wheel; contract it back onto v0 when no outside vertex is
            // doubly attached.  Otherwise fall through to the edge surgery.
            int v0 = -1;
            for (int w : nbrs)
                if (sg.s(w) == w) v0 = w;
            if (v0 < 0) continue;  // outside the membership rule
            int v1 = sg.n();
            for (int w : nbrs)
                if (w != v0) v1 = std::min(v1, w);
            int sv1 = sg.s(v1);
            if (std::find(nbrs.begin(), nbrs.end(), sv1) == nbrs.end()) continue;
            if (sg.graph.has_edge(v0, v1)) {
                std::set<int> dropped{v, sv, v1, sv1};
                bool simple = true;
                std::vector<std::pair<int, int>> rerouted;  // (outside w, target G id)
                for (int w = 0; w < sg.n() && simple; w++) {
                    if (dropped.count(w) || w == v0) continue;
                    int hits = 0;
                    int target = -1;
                    for (int x : {v0, v1, sv1})
                        if (sg.graph.has_edge(w, x)) {
                            hits++;
                            target = x;
                        }
                    if (hits > 1) simple = false;
                    else if (hits == 1) rerouted.emplace_back(w, target);
                }
                if (simple) {
                    auto [h_to_g, g_to_h] = detail::compress_ids(sg.n(), dropped);
                    std::vector<Edge> added;
                    for (auto& [w, t] : rerouted)
                        if (t != v0) added.emplace_back(w, v0);
                    auto res = detail::try_reduced(sg, dropped, added, g_to_h);
                    if (res) {
                        FixedVertexToW5 mv;
                        mv.relabel = h_to_g;
                        mv.v0 = g_to_h[v0];
                        mv.rim = {v, v1, sv, sv1};
                        for (auto& [w, t] : rerouted) mv.rerouted.emplace_back(g_to_h[w], t);
                        // Neighbours of the hub inside H that kept their hub
                        // edge all along must appear in the reroute list too.
                        for (int w : sg.graph.neighbors(v0))
                            if (!dropped.count(w)) {
                                bool listed = false;
                                for (auto& [src, t] : mv.rerouted)
                                    if (src == g_to_h[w]) listed = true;
                                if (!listed) mv.rerouted.emplace_back(g_to_h[w], v0);
                            }
                        std::sort(mv.rerouted.begin(), mv.rerouted.end());
                        return ReduceStep{res->first, res->second, ExtensionMove{mv}};
                    }
                }
                continue;
            }
        }

        std::set<int> dropped{v, sv};
        auto [h_to_g, g_to_h] = detail::compress_ids(sg.n(), dropped);
        for (auto& o : orders) {
            int x = std::min(o[0], o[1]), y = std::max(o[0], o[1]), z = o[2];
            // Plain surgery: insert the orbit of x-y.
            if (x != sg.s(y) && !sg.graph.has_edge(x, y)) {
                auto res = detail::try_reduced(sg, dropped, {Edge(x, y)}, g_to_h);
                if (res) {
                    OneExt mv;
                    mv.relabel = h_to_g;
                    mv.a1 = g_to_h[x];
                    mv.a2 = g_to_h[y];
                    mv.a3 = g_to_h[z];
                    mv.removed = Edge(mv.a1, mv.a2);
                    mv.new_ids = {v, sv};
                    return ReduceStep{res->first, res->second, ExtensionMove{mv}};
                }
            }
            // Modified surgery: insert the orbit of x-s(y).
            int sy = sg.s(y);
            if (x != sy && sg.s(x) != sy && !sg.graph.has_edge(x, sy)) {
                auto res = detail::try_reduced(sg, dropped, {Edge(x, sy)}, g_to_h);
                if (res) {
                    ModifiedOneExt mv;
                    mv.relabel = h_to_g;
                    mv.a1 = g_to_h[x];
                    mv.a2 = g_to_h[y];
                    mv.a3 = g_to_h[z];
                    mv.removed = Edge(g_to_h[x], g_to_h[sy]);
                    mv.new_ids = {v, sv};
                    return ReduceStep{res->first, res->second, ExtensionMove{mv}};
                }
            }
        }
    }
    throw Error(Err::ContractViolation, "no reduction found for an admissible instance");
}

struct ConstructionChain {
    SymmetricGraph base;
    std::vector<ExtensionMove> moves;             // base -> target order
    std::vector<SymmetricGraph> graphs;           // graphs[0] = base, graphs[i] after move i
    std::vector<TreePair> certified;              // packing for each graph
};

// Reduces to the wheel, then replays every move and checks each intermediate
// for exact equality with the recorded graph.
inline ConstructionChain build_chain(const SymmetricGraph& sg) {
    AdmissibilityReport rep = check_admissible(sg);
    if (!rep.admissible)
        throw Error(Err::NotAdmissible,
                    std::string("instance is not admissible: ") + pack_failure_name(*rep.failure));
    if (rep.mode != TreeMode::Invariant)
        throw Error(Err::NotAdmissible, "chains exist for invariant-mode cases");
    if (rep.fixed_edge_count != 0)
        throw Error(Err::NotAdmissible, "reduce the hat graph for instances with fixed edges");

    std::vector<SymmetricGraph> graphs{sg};
    std::vector<TreePair> pairs{*rep.pair};
    std::vector<ExtensionMove> moves;
    while (graphs.back().n() > 5) {
        ReduceStep step = reduce_step(graphs.back(), pairs.back());
        graphs.push_back(step.h);
        pairs.push_back(step.pair_h);
        moves.push_back(step.move);
    }
    std::reverse(graphs.begin(), graphs.end());
    std::reverse(pairs.begin(), pairs.end());
    std::reverse(moves.begin(), moves.end());

    ConstructionChain chain{graphs.front(), moves, graphs, pairs};
    w5_roles(chain.base);  // wheel shape is part of the contract
    for (size_t i = 0; i < moves.size(); i++) {
        SymmetricGraph replayed = apply_move(chain.graphs[i], moves[i]);
        if (!(replayed == chain.graphs[i + 1]))
            throw Error(Err::ChainVerificationFailed,
                        "replay mismatch after move " + std::to_string(i));
    }
    for (size_t i = 0; i < chain.graphs.size(); i++) {
        std::string why;
        if (!is_valid_tree_pair(chain.graphs[i], chain.certified[i], &why))
            throw Error(Err::ChainVerificationFailed,
                        "certificate " + std::to_string(i) + " invalid: " + why);
    }
    return chain;
}

// Half-turn instances with two fixed edges route through this transform: the
// fixed edges are excised and a new fixed vertex w0 = n is joined to their
// four endpoints.  The result has no fixed edges and one fixed vertex, and a
// placement of it restricts to a placement of the original instance.
inline SymmetricGraph hat_graph(const SymmetricGraph& sg) {
    if (sg.gcase != GroupCase::C2)
        throw Error(Err::NotAdmissible, "hat transform applies to half-turn instances");
    auto fe = fixed_elements(sg, 1);
    if (fe.edges.size() != 2)
        throw Error(Err::NotAdmissible, "hat transform wants exactly two fixed edges");
    const Edge &e = fe.edges[0], &f = fe.edges[1];
    if (sg.s(e.u) != e.v || sg.s(f.u) != f.v)
        throw Error(Err::NotAdmissible, "fixed edges must have swapped endpoints");
    if (e.touches(f.u) || e.touches(f.v))
        throw Error(Err::NotAdmissible, "fixed edges must be disjoint");
    int w0 = sg.n();
    std::vector<Edge> edges;
    for (auto& g : sg.graph.edges())
        if (g != e && g != f) edges.push_back(g);
    edges.emplace_back(e.u, w0);
    edges.emplace_back(e.v, w0);
    edges.emplace_back(f.u, w0);
    edges.emplace_back(f.v, w0);
    Perm gen = sg.gen;
    gen.push_back(w0);
    return build_symmetric_graph(Graph(sg.n() + 1, std::move(edges)), GroupCase::C2,
                                 std::move(gen));
}

// Experimental quarter-turn reduction chain: same target selection, orbit
// surgeries of size four, each candidate verified by re-packing.  Returns
// nullopt when no chain down to the quarter-turn wheel is found.
inline std::optional<ConstructionChain> build_chain_c4(const SymmetricGraph& sg) {
    if (sg.gcase != GroupCase::C4) return std::nullopt;
    AdmissibilityReport rep = check_admissible(sg);
    if (!rep.admissible || rep.fixed_edge_count != 0) return std::nullopt;

    std::vector<SymmetricGraph> graphs{sg};
    std::vector<TreePair> pairs{*rep.pair};
    std::vector<ExtensionMove> moves;
    while (graphs.back().n() > 5) {
        const SymmetricGraph& g = graphs.back();
        std::optional<ReduceStep> found;
        for (int deg = 2; deg <= 3 && !found; deg++) {
            for (int v = 0; v < g.n() && !found; v++) {
                if (g.graph.degree(v) != deg) continue;
                std::set<int> orbit{v, g.s(v), g.s(g.s(v)), g.s(g.s(g.s(v)))};
                if (orbit.size() != 4) continue;
                bool internal = false;  // orbit vertices adjacent to each other resist dropping
                for (int w : g.graph.neighbors(v))
                    if (orbit.count(w)) internal = true;
                if (internal) continue;
                auto [h_to_g, g_to_h] = detail::compress_ids(g.n(), orbit);
                std::vector<int> nbrs = g.graph.neighbors(v);
                if (deg == 2) {
                    auto res = detail::try_reduced(g, orbit, {}, g_to_h);
                    if (res) {
                        ZeroExt mv;
                        mv.relabel = h_to_g;
                        mv.v1 = g_to_h[nbrs[0]];
                        mv.v2 = g_to_h[nbrs[1]];
                        mv.new_ids = {v, g.s(v), g.s(g.s(v)), g.s(g.s(g.s(v)))};
                        found = ReduceStep{res->first, res->second, ExtensionMove{mv}};
                    }
                    continue;
                }
                for (int a = 0; a < 3 && !found; a++)
                    for (int b = 0; b < 3 && !found; b++) {
                        if (a == b) continue;
                        int third = 3 - a - b;
                        for (int k = 0; k < 4 && !found; k++) {
                            int x = nbrs[a];
                            int y = nbrs[b];
                            for (int i = 0; i < k; i++) y = g.s(y);
                            if (x == y || g.graph.has_edge(x, y)) continue;
                            Edge d(x, y);
                            if (int(detail::edge_orbit_of(g, d).size()) != 4) continue;
                            auto res = detail::try_reduced(g, orbit, {d}, g_to_h);
                            if (!res) continue;
                            std::vector<int> ids{v, g.s(v), g.s(g.s(v)), g.s(g.s(g.s(v)))};
                            if (k == 0) {
                                OneExt mv;
                                mv.relabel = h_to_g;
                                mv.a1 = g_to_h[nbrs[a]];
                                mv.a2 = g_to_h[nbrs[b]];
                                mv.a3 = g_to_h[nbrs[third]];
                                mv.removed = Edge(mv.a1, mv.a2);
                                mv.new_ids = ids;
                                found = ReduceStep{res->first, res->second, ExtensionMove{mv}};
                            } else {
                                ModifiedOneExt mv;
                                mv.relabel = h_to_g;
                                mv.a1 = g_to_h[nbrs[a]];
                                mv.a2 = g_to_h[nbrs[b]];
                                mv.a3 = g_to_h[nbrs[third]];
                                mv.removed = Edge(g_to_h[d.u], g_to_h[d.v]);
                                mv.new_ids = ids;
                                found = ReduceStep{res->first, res->second, ExtensionMove{mv}};
                            }
                        }
                    }
            }
        }
        if (!found) return std::nullopt;
        graphs.push_back(found->h);
        pairs.push_back(found->pair_h);
        moves.push_back(found->move);
    }
    std::reverse(graphs.begin(), graphs.end());
    std::reverse(pairs.begin(), pairs.end());
    std::reverse(moves.begin(), moves.end());
    ConstructionChain chain{graphs.front(), moves, graphs, pairs};
    try {
        w5_roles(chain.base);
    } catch (const Error&) {
        return std::nullopt;
    }
    for (size_t i = 0; i < moves.size(); i++) {
        SymmetricGraph replayed = apply_move(chain.graphs[i], moves[i]);
        if (!(replayed == chain.graphs[i + 1])) return std::nullopt;
    }
    return chain;
}

}  // namespace quadrig
