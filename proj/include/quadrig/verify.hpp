// Independent verification machinery:
//
//  * two_tree_decomposition   matroid-union oracle for splitting a graph
//                             into two edge-disjoint spanning trees,
//                             independent of the symmetric packing search
//  * enumerate_instances      exhaustive generation of symmetric instances
//                             (connected, |E| = 2|V| - 2, exact-order action)
//                             up to relabelling, via canonical cycle-type
//                             permutations and centralizer-minimal edge sets
//  * equivalence_experiment   checks admissibility <=> existence of a
//                             symmetric isostatic placement on the whole
//                             universe at a given size
//  * fixed_edge_necessity     confirms the fixed-edge counting laws by
//                             exhaustive refutation
//  * rank_tree_agreement      randomized agreement between the exact rank
//                             test and the monochrome spanning tree test
#pragma once

#include <functional>
#include <queue>
#include <random>

#include "placement.hpp"

namespace quadrig {

// Decides whether a graph with exactly 2n-2 edges splits into two
// edge-disjoint spanning trees.  Classical matroid-union augmentation: each
// edge enters one of two forests, displacing blockers along a breadth-first
// exchange path.  The result is re-verified before being returned.
inline std::optional<std::array<std::vector<Edge>, 2>> two_tree_decomposition(const Graph& g) {
    const int n = g.n();
    const int m = g.edge_count();
    if (m != 2 * n - 2) return std::nullopt;
    std::vector<int> owner(size_t(m), -1);
    std::array<std::vector<std::vector<std::pair<int, int>>>, 2> fadj;
    fadj[0].assign(size_t(n), {});
    fadj[1].assign(size_t(n), {});

    auto insert_edge = [&](int f, int ei) {
        const Edge& e = g.edges()[ei];
        owner[ei] = f;
        fadj[f][e.u].push_back({e.v, ei});
        fadj[f][e.v].push_back({e.u, ei});
    };
    auto remove_edge = [&](int ei) {
        int f = owner[ei];
        const Edge& e = g.edges()[ei];
        auto rm = [&](int a, int b) {
            auto& lst = fadj[f][a];
            lst.erase(std::find(lst.begin(), lst.end(), std::make_pair(b, ei)));
        };
        rm(e.u, e.v);
        rm(e.v, e.u);
        owner[ei] = -1;
    };
    // Edge indices along the forest path between two vertices, if connected.
    auto forest_path = [&](int f, int src, int dst) -> std::optional<std::vector<int>> {
        std::vector<int> par_edge(size_t(n), -2), par_v(size_t(n), -1);
        std::queue<int> q;
        q.push(src);
        par_edge[src] = -1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            if (v == dst) break;
            for (auto& [w, ei] : fadj[f][v])
                if (par_edge[w] == -2) {
                    par_edge[w] = ei;
                    par_v[w] = v;
                    q.push(w);
                }
        }
        if (par_edge[dst] == -2) return std::nullopt;
        std::vector<int> path;
        for (int v = dst; v != src; v = par_v[v]) path.push_back(par_edge[v]);
        return path;
    };

    for (int e0 = 0; e0 < m; e0++) {
        std::vector<int> par(size_t(m), -2), enter_f(size_t(m), -1);
        std::queue<int> bfs;
        par[e0] = -1;
        bfs.push(e0);
        int done_elem = -1, done_forest = -1;
        while (!bfs.empty() && done_elem < 0) {
            int z = bfs.front();
            bfs.pop();
            const Edge& ez = g.edges()[z];
            for (int f = 0; f < 2; f++) {
                if (owner[z] == f) continue;
                auto path = forest_path(f, ez.u, ez.v);
                if (!path) {
                    done_elem = z;
                    done_forest = f;
                    break;
                }
                for (int y : *path)
                    if (par[y] == -2) {
                        par[y] = z;
                        enter_f[y] = f;
                        bfs.push(y);
                    }
            }
        }
        if (done_elem < 0) return std::nullopt;
        int z = done_elem, target = done_forest;
        while (true) {
            int p = par[z];
            if (owner[z] >= 0) remove_edge(z);
            insert_edge(target, z);
            if (p == -1) break;
            target = enter_f[z];
            z = p;
        }
    }
    std::array<std::vector<Edge>, 2> out;
    for (int ei = 0; ei < m; ei++) {
        if (owner[ei] < 0)
            throw Error(Err::ContractViolation, "matroid union left an edge unassigned");
        out[owner[ei]].push_back(g.edges()[ei]);
    }
    for (auto& t : out) {
        t = sorted_edges(t);
        if (!is_spanning_tree(n, t))
            throw Error(Err::ContractViolation, "matroid union produced a non-tree");
    }
    return out;
}

// All symmetric tree pairs by direct subset enumeration.  Exponential in the
// edge count; used as a cross-check oracle for the packing search.
inline std::vector<TreePair> all_tree_pairs_brute(const SymmetricGraph& sg, TreeMode mode) {
    std::vector<TreePair> out;
    int n = sg.n();
    int m = sg.graph.edge_count();
    if (n < 2 || m != 2 * n - 2) return out;
    const auto& es = sg.graph.edges();
    std::vector<int> idx(size_t(n - 1));
    for (int i = 0; i < n - 1; i++) idx[i] = i;
    while (true) {
        std::vector<Edge> t1, t2;
        std::vector<char> take(size_t(m), 0);
        for (int i : idx) take[i] = 1;
        for (int i = 0; i < m; i++) (take[i] ? t1 : t2).push_back(es[i]);
        TreePair tp{sorted_edges(t1), sorted_edges(t2), mode};
        if (is_valid_tree_pair(sg, tp)) out.push_back(tp);
        // next combination
        int i = n - 2;
        while (i >= 0 && idx[i] == m - (n - 1) + i) i--;
        if (i < 0) break;
        idx[i]++;
        for (int j = i + 1; j < n - 1; j++) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

namespace detail {

struct CycleType {
    int fixed{0};
    int two_cycles{0};
    int four_cycles{0};
};

inline std::vector<CycleType> cycle_types(int n, GroupCase c) {
    std::vector<CycleType> out;
    if (c == GroupCase::C4) {
        for (int q = 1; 4 * q <= n; q++)
            for (int t = 0; 4 * q + 2 * t <= n; t++) out.push_back({n - 4 * q - 2 * t, t, q});
    } else {
        for (int mm = 1; 2 * mm <= n; mm++) out.push_back({n - 2 * mm, mm, 0});
    }
    return out;
}

inline Perm canonical_perm(const CycleType& ct, int n) {
    Perm p(size_t(n), 0);
    for (int i = 0; i < ct.fixed; i++) p[i] = i;
    int pos = ct.fixed;
    for (int i = 0; i < ct.two_cycles; i++, pos += 2) {
        p[pos] = pos + 1;
        p[pos + 1] = pos;
    }
    for (int i = 0; i < ct.four_cycles; i++, pos += 4) {
        p[pos] = pos + 1;
        p[pos + 1] = pos + 2;
        p[pos + 2] = pos + 3;
        p[pos + 3] = pos;
    }
    return p;
}

// Every relabelling commuting with the canonical permutation: independent
// permutations of the fixed block, of the 2-cycle blocks (with optional
// in-block swaps), and of the 4-cycle blocks (with in-block rotations).
inline std::vector<Perm> centralizer(const CycleType& ct, int n) {
    std::vector<int> fixed_ids(size_t(ct.fixed));
    for (int i = 0; i < ct.fixed; i++) fixed_ids[i] = i;
    int two_base = ct.fixed;
    int four_base = ct.fixed + 2 * ct.two_cycles;

    std::vector<std::vector<int>> fixed_perms;
    {
        std::vector<int> v = fixed_ids;
        do fixed_perms.push_back(v);
        while (std::next_permutation(v.begin(), v.end()));
    }
    std::vector<std::vector<int>> two_orders;
    {
        std::vector<int> v(size_t(ct.two_cycles));
        for (int i = 0; i < ct.two_cycles; i++) v[i] = i;
        do two_orders.push_back(v);
        while (std::next_permutation(v.begin(), v.end()));
    }
    std::vector<std::vector<int>> four_orders;
    {
        std::vector<int> v(size_t(ct.four_cycles));
        for (int i = 0; i < ct.four_cycles; i++) v[i] = i;
        do four_orders.push_back(v);
        while (std::next_permutation(v.begin(), v.end()));
    }

    std::vector<Perm> out;
    for (auto& fp : fixed_perms)
        for (auto& to : two_orders)
            for (int swaps = 0; swaps < (1 << ct.two_cycles); swaps++)
                for (auto& fo : four_orders) {
                    int rot_count = 1;
                    for (int i = 0; i < ct.four_cycles; i++) rot_count *= 4;
                    for (int rots = 0; rots < rot_count; rots++) {
                        Perm s(size_t(n), 0);
                        for (int i = 0; i < ct.fixed; i++) s[i] = fp[i];
                        for (int i = 0; i < ct.two_cycles; i++) {
                            int src = two_base + 2 * i;
                            int dst = two_base + 2 * to[i];
                            int sw = (swaps >> i) & 1;
                            s[src] = dst + sw;
                            s[src + 1] = dst + (1 - sw);
                        }
                        int rr = rots;
                        for (int i = 0; i < ct.four_cycles; i++) {
                            int src = four_base + 4 * i;
                            int dst = four_base + 4 * fo[i];
                            int r = rr % 4;
                            rr /= 4;
                            for (int j = 0; j < 4; j++) s[src + j] = dst + (j + r) % 4;
                        }
                        out.push_back(std::move(s));
                    }
                }
    return out;
}

}  // namespace quadrig::detail

// Exhaustively enumerates symmetric instances with n vertices: connected
// graphs with exactly 2n-2 edges carrying an action of exact group order.
// One representative per relabelling class (the centralizer-minimal edge
// set for the canonical permutation of each cycle type).  With
// admissible_only set, the fixed-edge caps of the case prune the search and
// the full admissibility test filters the output.
inline std::vector<SymmetricGraph> enumerate_instances(int n, GroupCase gcase,
                                                       bool admissible_only) {
    if (n > 11)
        throw Error(Err::BudgetExceeded, "instance enumeration supports at most 11 vertices");
    std::vector<SymmetricGraph> out;
    if (n < 2) return out;
    const int m = 2 * n - 2;
    if (m > n * (n - 1) / 2) return out;

    int max_singletons = 1 << 20, max_two_orbits = 1 << 20;
    if (admissible_only) {
        switch (gcase) {
            case GroupCase::CsPreserving:
            case GroupCase::CsSwapping: max_singletons = 0; break;
            case GroupCase::C2: max_singletons = 2; break;
            case GroupCase::C4:
                max_singletons = 0;
                max_two_orbits = 1;
                break;
        }
    }

    for (auto& ct : detail::cycle_types(n, gcase)) {
        Perm pi = detail::canonical_perm(ct, n);
        std::vector<Perm> cz = detail::centralizer(ct, n);

        // Edge orbits under pi, smallest representative first.
        std::set<Edge> seen;
        std::vector<std::vector<Edge>> orbits;
        for (int u = 0; u < n; u++)
            for (int v = u + 1; v < n; v++) {
                Edge e(u, v);
                if (seen.count(e)) continue;
                std::vector<Edge> orb;
                Edge cur = e;
                do {
                    orb.push_back(cur);
                    seen.insert(cur);
                    cur = perm_apply(pi, cur);
                } while (cur != e);
                orbits.push_back(sorted_edges(orb));
            }
        std::sort(orbits.begin(), orbits.end(),
                  [](const std::vector<Edge>& a, const std::vector<Edge>& b) {
                      return a[0] < b[0];
                  });
        int K = int(orbits.size());
        std::vector<int> suffix(size_t(K) + 1, 0);
        for (int i = K - 1; i >= 0; i--) suffix[i] = suffix[i + 1] + int(orbits[i].size());

        std::vector<int> chosen;
        auto emit = [&]() {
            std::vector<Edge> edges;
            for (int i : chosen)
                edges.insert(edges.end(), orbits[i].begin(), orbits[i].end());
            edges = sorted_edges(edges);
            // degree and connectivity prunes
            std::vector<int> deg(size_t(n), 0);
            for (auto& e : edges) {
                deg[e.u]++;
                deg[e.v]++;
            }
            for (int v = 0; v < n; v++)
                if (deg[v] < 2) return;
            Graph cand(n, edges);
            if (!is_connected(cand)) return;
            // centralizer-minimal representative only
            for (auto& s : cz) {
                std::vector<Edge> mapped;
                mapped.reserve(edges.size());
                for (auto& e : edges) mapped.push_back(Edge(s[e.u], s[e.v]));
                mapped = sorted_edges(mapped);
                if (std::lexicographical_compare(mapped.begin(), mapped.end(), edges.begin(),
                                                 edges.end(),
                                                 [](const Edge& a, const Edge& b) { return a < b; }))
                    return;
            }
            SymmetricGraph sg = build_symmetric_graph(cand, gcase, pi);
            if (admissible_only && !check_admissible(sg).admissible) return;
            out.push_back(std::move(sg));
        };
        std::function<void(int, int, int, int)> dfs = [&](int i, int total, int singles,
                                                          int twos) {
            if (total == m) {
                emit();
                return;
            }
            if (i == K || total + suffix[i] < m) return;
            // skip orbit i
            dfs(i + 1, total, singles, twos);
            // take orbit i
            int sz = int(orbits[i].size());
            if (total + sz > m) return;
            int ns = singles + (sz == 1 ? 1 : 0);
            int nt = twos + (sz == 2 ? 1 : 0);
            if (ns > max_singletons) return;
            if (gcase == GroupCase::C4 && nt > max_two_orbits) return;
            chosen.push_back(i);
            dfs(i + 1, total + sz, ns, nt);
            chosen.pop_back();
        };
        dfs(0, 0, 0, 0);
    }
    return out;
}

inline std::vector<SymmetricGraph> enumerate_admissible(int n, GroupCase gcase) {
    return enumerate_instances(n, gcase, true);
}

inline std::string instance_str(const SymmetricGraph& sg) {
    return "n=" + std::to_string(sg.n()) + " gen=" + perm_str(sg.gen) +
           " edges=" + edge_list_str(sg.graph.edges());
}

// Exhaustive feasibility search over every symmetric tree pair and every
// isometry of the case class.  This is the complete negative-direction test:
// a symmetric well-positioned isostatic placement induces monochrome classes
// forming such a pair, realized by such an isometry.
inline bool any_placement_exists(const SymmetricGraph& sg, const QuadNorm& norm) {
    bool found = false;
    for (auto& tau : isometries_for_case(norm, sg.gcase)) {
        for_each_tree_pair(sg, mode_for_case(sg.gcase), [&](const TreePair& tp) {
            if (found) return;
            if (placement_from_trees(sg, tp, norm, tau)) found = true;
        });
        if (found) break;
    }
    return found;
}

struct ExperimentResult {
    int n_max{0};
    GroupCase gcase{GroupCase::CsPreserving};
    long universe{0};
    long admissible_count{0};
    long placed_count{0};
    std::vector<std::string> counterexamples;
};

// Tests admissibility <=> placeability over the whole universe of symmetric
// instances with up to n_max vertices.  Positive direction: synthesize must
// produce a certified placement.  Negative direction: the exhaustive pair
// and isometry search must come up empty.
inline ExperimentResult equivalence_experiment(int n_max, GroupCase gcase, const QuadNorm& norm) {
    if (n_max > 11)
        throw Error(Err::BudgetExceeded, "equivalence experiment supports at most 11 vertices");
    ExperimentResult res;
    res.n_max = n_max;
    res.gcase = gcase;
    for (int n = 2; n <= n_max; n++) {
        for (auto& sg : enumerate_instances(n, gcase, false)) {
            res.universe++;
            bool adm = check_admissible(sg).admissible;
            if (adm) res.admissible_count++;
            bool placed = false;
            if (adm) {
                try {
                    SymmetricPlacement sp = synthesize(sg, norm);
                    (void)sp;
                    placed = true;
                } catch (const Error& e) {
                    res.counterexamples.push_back("admissible but unplaced (" +
                                                  std::string(e.what()) + "): " +
                                                  instance_str(sg));
                }
            } else {
                placed = any_placement_exists(sg, norm);
                if (placed)
                    res.counterexamples.push_back("inadmissible but placed: " + instance_str(sg));
            }
            if (placed) res.placed_count++;
        }
    }
    return res;
}

struct NecessityResult {
    long checked{0};
    std::vector<std::string> violations;
};

// Fixed-edge counting laws, confirmed by exhaustive refutation: a preserving
// reflection instance with any fixed edge, and a half-turn instance whose
// fixed-edge count is neither 0 nor 2, admit no symmetric isostatic
// placement.
inline NecessityResult fixed_edge_necessity(int n_max, const QuadNorm& norm) {
    NecessityResult res;
    for (int n = 2; n <= n_max; n++) {
        for (auto& sg : enumerate_instances(n, GroupCase::CsPreserving, false)) {
            if (fixed_elements(sg).edges.empty()) continue;
            res.checked++;
            if (any_placement_exists(sg, norm))
                res.violations.push_back("reflection instance with fixed edge placed: " +
                                         instance_str(sg));
        }
        for (auto& sg : enumerate_instances(n, GroupCase::C2, false)) {
            size_t fe = fixed_elements(sg).edges.size();
            if (fe == 0 || fe == 2) continue;
            res.checked++;
            if (any_placement_exists(sg, norm))
                res.violations.push_back("half-turn instance with " + std::to_string(fe) +
                                         " fixed edges placed: " + instance_str(sg));
        }
    }
    return res;
}

struct AgreementResult {
    int trials{0};
    int agreements{0};
    std::vector<std::string> disagreements;
};

// Random well-positioned frameworks on graphs with 2n-2 edges: the exact
// rank route and the monochrome tree route of the isostatic test must agree
// on every one.  Deterministic for a fixed seed.
inline AgreementResult rank_tree_agreement(int trials, int n_max, unsigned seed,
                                           const QuadNorm& norm) {
    std::mt19937 rng(seed);
    AgreementResult res;
    std::uniform_int_distribution<int> nd(4, n_max);
    std::uniform_int_distribution<int> num(-60, 60);
    std::uniform_int_distribution<int> den(1, 7);
    while (res.trials < trials) {
        int n = nd(rng);
        int m = 2 * n - 2;
        std::vector<Edge> all;
        for (int u = 0; u < n; u++)
            for (int v = u + 1; v < n; v++) all.push_back(Edge(u, v));
        std::shuffle(all.begin(), all.end(), rng);
        all.resize(size_t(m));
        Graph g(n, sorted_edges(all));
        // Random distinct points, retried until well-positioned.
        for (int attempt = 0; attempt < 100; attempt++) {
            Placement pts(size_t(n), Vec2{});
            for (auto& p : pts) p = Vec2{Rat(num(rng), den(rng)), Rat(num(rng), den(rng))};
            bool distinct = true;
            for (int u = 0; u < n && distinct; u++)
                for (int v = u + 1; v < n; v++)
                    if (pts[u] == pts[v]) {
                        distinct = false;
                        break;
                    }
            if (!distinct) continue;
            try {
                IsostaticCheck chk = is_isostatic(norm, g, pts);
                res.trials++;
                if (chk.rank_route == chk.tree_route) res.agreements++;
                else
                    res.disagreements.push_back("routes disagree on " +
                                                edge_list_str(g.edges()));
            } catch (const Error& e) {
                if (e.code == Err::NotWellPositioned) continue;  // retry
                res.trials++;
                res.disagreements.push_back(std::string("internal disagreement: ") + e.what());
            }
            break;
        }
    }
    return res;
}

}  // namespace quadrig
