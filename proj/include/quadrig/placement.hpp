// Exact construction of symmetric well-positioned isostatic placements.
//
// The generic engine (placement_from_trees) parametrizes placements that are
// equivariant for a chosen isometry by the coordinates of one representative
// per vertex orbit (a fixed vertex contributes the fixed space of the
// isometry), writes the prescribed facet class of each edge orbit as a pair
// of strict linear inequalities with one free sign, and decides feasibility
// of each sign pattern by exact Fourier-Motzkin elimination.  Strictness is
// encoded with unit slack, which is no loss by homogeneity.  A feasible point
// is nudged off the finitely many coincidence hyperplanes by a deterministic
// perturbation schedule, so the result always has pairwise distinct points.
//
// The chain route places the wheel base by a fixed recipe in functional
// coordinates and extends along recorded moves; every new vertex is found by
// a deterministic grid search in a shrinking ball around the intersection of
// the two steering lines for its target facet classes.  Each candidate is
// accepted only after the full placement re-certifies exactly.
#pragma once

#include "construct.hpp"
#include "polynorm.hpp"

namespace quadrig {

struct SymmetricPlacement {
    Placement points;
    LinearIsometry tau;
    TreePair trees;  // realized monochrome classes, first class F1
    int rank{0};
    bool experimental_chain{false};
};

// Isometry class required by each symmetry case.
inline IsometryClass required_isometry_class(GroupCase c) {
    switch (c) {
        case GroupCase::CsPreserving: return IsometryClass::ReflectionPreserving;
        case GroupCase::CsSwapping: return IsometryClass::ReflectionSwapping;
        case GroupCase::C2: return IsometryClass::HalfTurn;
        case GroupCase::C4:
        default: return IsometryClass::QuarterTurn;
    }
}

inline std::vector<LinearIsometry> isometries_for_case(const QuadNorm& norm, GroupCase c) {
    std::vector<LinearIsometry> out;
    for (auto& iso : isometries(norm))
        if (iso.cls == required_isometry_class(c)) out.push_back(iso);
    return out;
}

// Checks a candidate completely: sizes, pairwise distinct points, exact
// equivariance, well-positioned edges, and the isostatic test (both routes).
// Returns nullopt with the reason instead of throwing, so searches can use it
// as their accept predicate.
inline std::optional<SymmetricPlacement> try_certify(const SymmetricGraph& sg,
                                                     const QuadNorm& norm,
                                                     const LinearIsometry& tau,
                                                     const Placement& pts,
                                                     std::string* why = nullptr) {
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return std::nullopt;
    };
    if (int(pts.size()) != sg.n()) return fail("placement size mismatch");
    for (int u = 0; u < sg.n(); u++)
        for (int w = u + 1; w < sg.n(); w++)
            if (pts[u] == pts[w])
                return fail("coincident points " + std::to_string(u) + "," + std::to_string(w));
    for (int v = 0; v < sg.n(); v++)
        if (pts[sg.s(v)] != tau.mat.apply(pts[v])) return fail("placement not equivariant");
    try {
        IsostaticCheck chk = is_isostatic(norm, sg.graph, pts);
        if (!chk.isostatic) return fail("not isostatic (rank " + std::to_string(chk.rank) + ")");
        TreePair tp{chk.class1, chk.class2, mode_for_case(sg.gcase)};
        std::string tw;
        if (!is_valid_tree_pair(sg, tp, &tw)) return fail("realized classes invalid: " + tw);
        return SymmetricPlacement{pts, tau, tp, chk.rank, false};
    } catch (const Error& e) {
        return fail(e.what());
    }
}

inline SymmetricPlacement certify_placement(const SymmetricGraph& sg, const QuadNorm& norm,
                                            const LinearIsometry& tau, const Placement& pts) {
    std::string why;
    auto sp = try_certify(sg, norm, tau, pts, &why);
    if (!sp) throw Error(Err::ContractViolation, "placement fails certification: " + why);
    return *sp;
}

namespace detail {

using Expr = std::vector<Rat>;  // homogeneous linear form in the unknowns

inline Expr expr_zero(int k) { return Expr(size_t(k), Rat(0)); }

inline Expr expr_sub(const Expr& a, const Expr& b) {
    Expr r(a.size());
    for (size_t i = 0; i < a.size(); i++) r[i] = a[i] - b[i];
    return r;
}

inline bool expr_is_zero(const Expr& a) {
    for (auto& c : a)
        if (c != 0) return false;
    return true;
}

inline Rat expr_eval(const Expr& a, const std::vector<Rat>& x) {
    Rat v = 0;
    for (size_t i = 0; i < a.size(); i++) v += a[i] * x[i];
    return v;
}

struct PointExpr {
    Expr x, y;
};

inline PointExpr point_apply(const Mat2& m, const PointExpr& p) {
    PointExpr r{expr_zero(int(p.x.size())), expr_zero(int(p.x.size()))};
    for (size_t i = 0; i < p.x.size(); i++) {
        r.x[i] = m.a * p.x[i] + m.b * p.y[i];
        r.y[i] = m.c * p.x[i] + m.d * p.y[i];
    }
    return r;
}

// phi functional applied to a point expression.
inline Expr phi_expr(const Vec2& phi, const PointExpr& p) {
    Expr r(p.x.size());
    for (size_t i = 0; i < p.x.size(); i++) r[i] = phi.x * p.x[i] + phi.y * p.y[i];
    return r;
}

struct Ineq {
    Expr a;
    Rat b;       // meaning a . x >= b
    long src{0};  // bitmask of the constraint groups this row descends from
};

// Positive-scale normal form for deduplication.
inline std::vector<Rat> row_key(const Ineq& q) {
    Int l = denominator(q.b);
    for (auto& c : q.a) l = lcm(l, denominator(c));
    Int g = 0;
    auto scaled = [&](const Rat& r) { return numerator(r) * (l / denominator(r)); };
    for (auto& c : q.a) g = gcd(g, scaled(c));
    g = gcd(g, scaled(q.b));
    if (g == 0) g = 1;
    std::vector<Rat> key;
    key.reserve(q.a.size() + 1);
    for (auto& c : q.a) key.push_back(Rat(scaled(c) / g));
    key.push_back(Rat(scaled(q.b) / g));
    return key;
}

// Exact Fourier-Motzkin feasibility with back-substitution.  Variables are
// eliminated from the highest index down; at stage j every surviving row
// involves unknowns 0..j only.  Rows carry provenance bits, so an infeasible
// outcome names a core of constraint groups that already contradict on their
// own; every other sign pattern agreeing on that core is infeasible too.
struct FmOutcome {
    std::optional<std::vector<Rat>> x;  // feasible point, when one exists
    long core{0};                       // on infeasibility: implicated group bits
};

inline FmOutcome fm_solve(std::vector<Ineq> rows, int k) {
    std::vector<std::vector<Ineq>> stages(k);
    for (int j = k - 1; j >= 0; j--) {
        std::vector<Ineq> pos, neg, rest;
        for (auto& q : rows) {
            if (q.a[j] > 0) pos.push_back(q);
            else if (q.a[j] < 0) neg.push_back(q);
            else rest.push_back(q);
        }
        std::set<std::vector<Rat>> seen;
        std::vector<Ineq> next;
        long bad = -1;
        // Constant rows decide on the spot: 0 >= positive is the
        // contradiction, and satisfied constants never constrain again.
        auto push = [&](Ineq q) {
            if (expr_is_zero(q.a)) {
                if (q.b > 0 && bad < 0) bad = q.src;
                return;
            }
            auto key = row_key(q);
            if (seen.insert(key).second) next.push_back(std::move(q));
        };
        for (auto& q : rest) {
            push(std::move(q));
            if (bad >= 0) return {std::nullopt, bad};
        }
        for (auto& p : pos)
            for (auto& n : neg) {
                Rat cp = -n.a[j], cn = p.a[j];  // both positive
                Ineq q;
                q.a.resize(k);
                for (int i = 0; i < k; i++) q.a[i] = cp * p.a[i] + cn * n.a[i];
                q.b = cp * p.b + cn * n.b;
                q.src = p.src | n.src;
                push(std::move(q));
                if (bad >= 0) return {std::nullopt, bad};
            }
        stages[j] = std::move(pos);
        for (auto& n : neg) stages[j].push_back(n);
        rows = std::move(next);
    }
    for (auto& q : rows)
        if (q.b > 0) return {std::nullopt, q.src};  // 0 >= positive, k == 0 case
    std::vector<Rat> x(k, Rat(0));
    for (int j = 0; j < k; j++) {
        bool has_lo = false, has_hi = false;
        Rat lo = 0, hi = 0;
        for (auto& q : stages[j]) {
            Rat rest = q.b;
            for (int i = 0; i < j; i++) rest -= q.a[i] * x[i];
            Rat bound = rest / q.a[j];
            if (q.a[j] > 0) {
                if (!has_lo || bound > lo) lo = bound;
                has_lo = true;
            } else {
                if (!has_hi || bound < hi) hi = bound;
                has_hi = true;
            }
        }
        if (has_lo && has_hi) x[j] = (lo + hi) / 2;
        else if (has_lo) x[j] = lo + 1;
        else if (has_hi) x[j] = hi - 1;
        else x[j] = 0;
    }
    return {std::move(x), 0};
}

struct VarSystem {
    int k{0};
    std::vector<PointExpr> pt;  // per vertex
};

// One-dimensional fixed space of m (eigenvalue 1), when it exists.
inline std::optional<Vec2> fix_direction(const Mat2& m) {
    Mat2 d{m.a - 1, m.b, m.c, m.d - 1};
    if (d.a == 0 && d.b == 0 && d.c == 0 && d.d == 0) return std::nullopt;  // everything fixed
    Vec2 v{-d.b, d.a};
    if (v.is_zero()) v = Vec2{d.d, -d.c};
    if (v.is_zero()) return std::nullopt;
    if (d.apply(v).is_zero()) return v;
    return std::nullopt;  // fixed space is {0}
}

// Equivariant parametrization of placements for the given isometry: each
// vertex's point is a linear expression in the unknowns.
inline VarSystem build_vars(const SymmetricGraph& sg, const LinearIsometry& tau) {
    int order = group_order(sg.gcase);
    std::vector<Mat2> tp(order + 1);
    tp[0] = Mat2::identity();
    for (int i = 1; i <= order; i++) tp[i] = tau.mat.mul(tp[i - 1]);
    auto orbs = orbit_partition(sg).vertices;

    // First pass: count unknowns.
    int k = 0;
    for (auto& orb : orbs) {
        int m = int(orb.size());
        if (m == order) {
            k += 2;
        } else {
            Mat2 f = tp[m];
            if (f.is_identity()) k += 2;
            else if (fix_direction(f)) k += 1;
        }
    }
    VarSystem vs;
    vs.k = k;
    vs.pt.assign(sg.n(), PointExpr{expr_zero(k), expr_zero(k)});
    int next = 0;
    for (auto& orb : orbs) {
        int m = int(orb.size());
        PointExpr rep{expr_zero(k), expr_zero(k)};
        Mat2 f = tp[m];
        if (m == order || f.is_identity()) {
            rep.x[next] = 1;
            rep.y[next + 1] = 1;
            next += 2;
        } else if (auto dir = fix_direction(f)) {
            rep.x[next] = dir->x;
            rep.y[next] = dir->y;
            next += 1;
        }  // else pinned at the origin: zero expression
        for (int i = 0; i < m; i++) vs.pt[orb[i]] = point_apply(tp[i], rep);
    }
    return vs;
}

}  // namespace quadrig::detail

// Decides, exactly and completely, whether some placement equivariant under
// `tau` realizes `pair` as its monochrome classes (first tree = F1), and
// constructs one if so.  Infeasibility of every sign pattern means no such
// placement exists; this function is the negative-direction oracle as well as
// a constructive synthesizer.
inline std::optional<SymmetricPlacement> placement_from_trees(const SymmetricGraph& sg,
                                                              const TreePair& pair,
                                                              const QuadNorm& norm,
                                                              const LinearIsometry& tau) {
    std::string why;
    if (!is_valid_tree_pair(sg, pair, &why))
        throw Error(Err::ContractViolation, "placement_from_trees wants a valid pair: " + why);
    // Mode and facet action must match: an invariant pair needs a
    // facet-preserving isometry, a swapped pair a facet-swapping one.
    if ((pair.mode == TreeMode::Invariant) == tau.swaps_facets) return std::nullopt;
    if (tau.cls == IsometryClass::Identity) return std::nullopt;

    detail::VarSystem vs = detail::build_vars(sg, tau);
    // Coincidences forced by the parametrization itself (e.g. two vertices
    // pinned at the origin) rule out any placement with distinct points.
    for (int u = 0; u < sg.n(); u++)
        for (int w = u + 1; w < sg.n(); w++)
            if (detail::expr_is_zero(detail::expr_sub(vs.pt[u].x, vs.pt[w].x)) &&
                detail::expr_is_zero(detail::expr_sub(vs.pt[u].y, vs.pt[w].y)))
                return std::nullopt;

    auto eorbs = orbit_partition(sg).edges;
    int K = int(eorbs.size());
    if (K > 24) throw Error(Err::BudgetExceeded, "too many edge orbits for sign enumeration");
    auto in_tree1 = [&](const Edge& e) {
        return std::binary_search(pair.tree1.begin(), pair.tree1.end(), e);
    };

    // Per-orbit functional rows for the representative edge.
    std::vector<detail::Expr> row_c(K), row_o(K);
    for (int i = 0; i < K; i++) {
        const Edge& e = eorbs[i][0];
        detail::PointExpr d{detail::expr_sub(vs.pt[e.u].x, vs.pt[e.v].x),
                            detail::expr_sub(vs.pt[e.u].y, vs.pt[e.v].y)};
        bool f1 = in_tree1(e);
        row_c[i] = detail::phi_expr(f1 ? norm.phi1 : norm.phi2, d);
        row_o[i] = detail::phi_expr(f1 ? norm.phi2 : norm.phi1, d);
    }

    // Rows for both sign choices of every orbit, built once.  Sign s encodes
    // the orientation of the dominant functional on the representative edge:
    // s*phi_c(d) - |phi_o(d)| >= 1 as two linear rows.  An orbit is beyond
    // rescue when its dominant row vanishes identically (the two rows then sum
    // to 0 >= 2) or when phi_o(d) == +-phi_c(d) (dominance would need a tie);
    // either kills the pair for every sign pattern at once.
    std::vector<std::array<std::array<detail::Ineq, 2>, 2>> orbit_rows(K);
    for (int i = 0; i < K; i++) {
        bool dead = detail::expr_is_zero(row_c[i]);
        for (int s = 0; s < 2 && !dead; s++) {
            Rat sgn = s ? -1 : 1;
            for (int t = 0; t < 2; t++) {
                detail::Ineq q;
                q.a.resize(vs.k);
                Rat os = t ? 1 : -1;
                for (int v = 0; v < vs.k; v++) q.a[v] = sgn * row_c[i][v] + os * row_o[i][v];
                q.b = 1;
                q.src = 1L << i;
                if (detail::expr_is_zero(q.a)) dead = true;
                orbit_rows[i][s][t] = std::move(q);
            }
        }
        if (dead) return std::nullopt;
    }

    // Sign patterns are pruned by infeasibility cores: whenever elimination
    // refutes a pattern, every pattern agreeing on the core's bits shares the
    // same contradiction and is skipped without another solve.
    struct BlockedPattern {
        long bits, signs;
    };
    std::vector<BlockedPattern> blocked;
    int pairs_total = sg.n() * (sg.n() - 1) / 2;
    for (long mask = 0; mask < (1L << K); mask++) {
        bool skip = false;
        for (auto& bl : blocked)
            if ((mask & bl.bits) == bl.signs) {
                skip = true;
                break;
            }
        if (skip) continue;
        std::vector<detail::Ineq> rows;
        rows.reserve(2 * K);
        for (int i = 0; i < K; i++) {
            int s = int((mask >> i) & 1);
            rows.push_back(orbit_rows[i][s][0]);
            rows.push_back(orbit_rows[i][s][1]);
        }
        auto out = detail::fm_solve(rows, vs.k);
        if (!out.x) {
            blocked.push_back({out.core, mask & out.core});
            continue;
        }
        const std::vector<Rat>& x0 = *out.x;

        // Nudge off coincidence hyperplanes while keeping every inequality
        // at slack >= 1/2.  The direction (1, t, t^2, ...) with enough values
        // of t escapes all finitely many nonzero linear functionals, and the
        // halving of the step escapes the affine zeros.
        auto distinct_at = [&](const std::vector<Rat>& x) {
            for (int u = 0; u < sg.n(); u++)
                for (int w = u + 1; w < sg.n(); w++) {
                    if (detail::expr_eval(vs.pt[u].x, x) == detail::expr_eval(vs.pt[w].x, x) &&
                        detail::expr_eval(vs.pt[u].y, x) == detail::expr_eval(vs.pt[w].y, x))
                        return false;
                }
            return true;
        };
        std::optional<std::vector<Rat>> good;
        if (distinct_at(x0)) {
            good = x0;
        } else {
            int T = vs.k * pairs_total + 2;
            for (int tt = 1; tt <= T && !good; tt++) {
                Rat t(1, tt);
                std::vector<Rat> dir(vs.k);
                Rat pw = 1;
                for (int i = 0; i < vs.k; i++) {
                    dir[i] = pw;
                    pw *= t;
                }
                // Step size keeping all constraints at slack 1/2.
                Rat delta = 1;
                for (auto& q : rows) {
                    Rat shift = detail::expr_eval(q.a, dir);
                    if (shift < 0) {
                        Rat allowed = (detail::expr_eval(q.a, x0) - Rat(1, 2)) / (-shift);
                        if (allowed < delta) delta = allowed;
                    }
                }
                if (delta <= 0) continue;
                for (int half = 0; half <= pairs_total + 1 && !good; half++) {
                    std::vector<Rat> x = x0;
                    for (int i = 0; i < vs.k; i++) x[i] += delta * dir[i];
                    if (distinct_at(x)) good = x;
                    delta /= 2;
                }
            }
        }
        if (!good) continue;
        Placement pts(sg.n());
        for (int v = 0; v < sg.n(); v++)
            pts[v] = Vec2{detail::expr_eval(vs.pt[v].x, *good),
                          detail::expr_eval(vs.pt[v].y, *good)};
        auto sp = try_certify(sg, norm, tau, pts);
        if (sp) {
            // The realized classes must be the requested pair.
            if (sorted_edges(sp->trees.tree1) != sorted_edges(pair.tree1))
                throw Error(Err::ContractViolation, "realized classes differ from request");
            return sp;
        }
    }
    return std::nullopt;
}

namespace detail {

// Deterministic grid offsets ordered by taxicab size.
inline const std::vector<std::pair<int, int>>& grid_offsets() {
    static std::vector<std::pair<int, int>> offs = [] {
        std::vector<std::pair<int, int>> o;
        for (int i = -4; i <= 4; i++)
            for (int j = -4; j <= 4; j++) o.emplace_back(i, j);
        std::stable_sort(o.begin(), o.end(), [](auto& a, auto& b) {
            int sa = std::abs(a.first) + std::abs(a.second);
            int sb = std::abs(b.first) + std::abs(b.second);
            if (sa != sb) return sa < sb;
            return a < b;
        });
        return o;
    }();
    return offs;
}

// Shrinking-ball search around a functional-coordinate centre.  The accept
// predicate sees candidate points in the plane; the first accepted candidate
// wins.  Radius halves 64 times before giving up.
template <typename Pred>
inline bool ball_search(const QuadNorm& norm, const Vec2& center_u, Pred&& accept) {
    Rat r = 1;
    for (int level = 0; level < 64; level++, r /= 2) {
        for (auto& [i, j] : grid_offsets()) {
            Vec2 u{center_u.x + r * Rat(i, 4), center_u.y + r * Rat(j, 4)};
            if (accept(norm.from_phi(u.x, u.y))) return true;
        }
    }
    return false;
}

inline Vec2 line_intersect(const Vec2& q1, const Vec2& d1, const Vec2& q2, const Vec2& d2) {
    // q1 + s d1 = q2 + t d2
    Mat2 m{d1.x, -d2.x, d1.y, -d2.y};
    if (m.det() == 0) return q2 + d2;  // degenerate: any point of line 2
    Vec2 st = m.inverse().apply(q2 - q1);
    return q1 + d1 * st.x;
}

inline Vec2 unit_u(const QuadNorm&, FacetClass c) {
    return c == FacetClass::F1 ? Vec2{1, 0} : Vec2{0, 1};
}

}  // namespace detail

// Wheel placement for the canonical labelling (hub 0, rim 1..4).  Reflection
// and half-turn isometries use the functional-coordinate recipe: the first
// rim vertex sits on a facet midpoint direction, the second near the other
// facet midpoint, displaced so that every edge is strictly inside a cone.
// Quarter turns place the rim as one orbit starting from (3, 1) in
// functional coordinates.  Every candidate is re-certified exactly.
inline SymmetricPlacement place_w5(const QuadNorm& norm, const LinearIsometry& tau) {
    auto finish = [&](const SymmetricGraph& base, const Placement& pts) {
        return try_certify(base, norm, tau, pts);
    };
    if (tau.cls == IsometryClass::ReflectionPreserving || tau.cls == IsometryClass::HalfTurn) {
        SymmetricGraph base = w5_base(
            tau.cls == IsometryClass::HalfTurn ? GroupCase::C2 : GroupCase::CsPreserving);
        int i = 1;
        if (tau.cls == IsometryClass::ReflectionPreserving && tau.dual_signs[0] != -1) i = 2;
        auto mk_u = [&](const Rat& along_i, const Rat& along_j) {
            return i == 1 ? Vec2{along_i, along_j} : Vec2{along_j, along_i};
        };
        // Candidate displacements for the second rim vertex, ordered by
        // denominator.
        std::vector<Rat> disps;
        for (int d = 3; d <= 10; d++) disps.push_back(Rat(1, Int(1) << d));
        disps.insert(disps.begin(), Rat(1, 8));
        for (auto& eps : disps) {
            Placement pts(5);
            pts[0] = Vec2{0, 0};
            pts[1] = norm.from_phi(mk_u(1, 0).x, mk_u(1, 0).y);
            pts[2] = norm.from_phi(mk_u(eps, 1).x, mk_u(eps, 1).y);
            pts[3] = tau.mat.apply(pts[1]);
            pts[4] = tau.mat.apply(pts[2]);
            if (auto sp = finish(base, pts)) return *sp;
        }
        throw Error(Err::ContractViolation, "wheel recipe exhausted");
    }
    if (tau.cls == IsometryClass::QuarterTurn) {
        SymmetricGraph base = c4_wheel_base();
        std::vector<Vec2> seeds{{3, 1}, {1, 3}, {5, 2}, {4, 1}, {5, 1}, {3, 2}};
        for (auto& u : seeds) {
            Placement pts(5);
            pts[0] = Vec2{0, 0};
            pts[1] = norm.from_phi(u.x, u.y);
            pts[2] = tau.mat.apply(pts[1]);
            pts[3] = tau.mat.apply(pts[2]);
            pts[4] = tau.mat.apply(pts[3]);
            if (auto sp = finish(base, pts)) return *sp;
        }
        throw Error(Err::ContractViolation, "quarter-turn wheel recipe exhausted");
    }
    throw Error(Err::ContractViolation,
                std::string("no wheel placement for isometry class ") +
                    isometry_class_name(tau.cls));
}

// Extends a certified placement across one move.  New points come from a
// shrinking-ball search around the intersection of the steering lines; old
// points are untouched (the wheel expansion instead contracts a scaled copy
// of the wheel placement into a ball around the expanded vertex).
inline SymmetricPlacement extend_placement(const SymmetricGraph& h, const SymmetricPlacement& sph,
                                           const ExtensionMove& move, const QuadNorm& norm) {
    SymmetricGraph g = apply_move(h, move);
    const LinearIsometry& tau = sph.tau;
    int order = group_order(h.gcase);
    std::vector<Mat2> tp(order);
    tp[0] = Mat2::identity();
    for (int i = 1; i < order; i++) tp[i] = tau.mat.mul(tp[i - 1]);

    auto colour_of_h_edge = [&](const Edge& e) {
        return std::binary_search(sph.trees.tree1.begin(), sph.trees.tree1.end(), e)
                   ? FacetClass::F1
                   : FacetClass::F2;
    };
    std::optional<SymmetricPlacement> result;

    if (std::holds_alternative<FixedVertexToW5>(move)) {
        const auto& m = std::get<FixedVertexToW5>(move);
        Placement pts(g.n());
        for (int x = 0; x < h.n(); x++) pts[m.relabel[x]] = sph.points[x];
        SymmetricPlacement wheel = place_w5(norm, tau);
        Vec2 hub = sph.points[m.v0];
        Rat lambda = 1;
        for (int step = 0; step < 64; step++, lambda /= 2) {
            for (int k = 0; k < 4; k++) pts[m.rim[k]] = hub + wheel.points[1 + k] * lambda;
            // Re-routed edges must keep the colour they had towards the hub.
            bool ok = true;
            for (auto& [w, t] : m.rerouted) {
                if (t == m.relabel[m.v0]) continue;
                Vec2 d = sph.points[w] - pts[t];
                FacetClass want = colour_of_h_edge(Edge(w, m.v0));
                Rat a = rat_abs(norm.phi(1, d)), b = rat_abs(norm.phi(2, d));
                if (a == b || (a > b ? FacetClass::F1 : FacetClass::F2) != want) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            if (auto sp = try_certify(g, norm, tau, pts)) {
                result = *sp;
                break;
            }
        }
        if (!result)
            throw Error(Err::ChainVerificationFailed, "wheel expansion placement failed");
        result->experimental_chain = sph.experimental_chain;
        return *result;
    }

    // Vertex-orbit additions.
    const std::vector<int>* relabel;
    const std::vector<int>* new_ids;
    struct Attempt {
        Vec2 center;                                  // functional coordinates
        std::vector<std::pair<int, FacetClass>> want;  // (old vertex, colour) for new edges
    };
    std::vector<Attempt> attempts;
    auto uphi = [&](const Vec2& p) { return norm.to_phi(p); };

    if (std::holds_alternative<ZeroExt>(move)) {
        const auto& m = std::get<ZeroExt>(move);
        relabel = &m.relabel;
        new_ids = &m.new_ids;
        Vec2 u1 = uphi(sph.points[m.v1]), u2 = uphi(sph.points[m.v2]);
        for (auto c : {FacetClass::F1, FacetClass::F2}) {
            FacetClass cc = other_class(c);
            Vec2 center = detail::line_intersect(u1, detail::unit_u(norm, c), u2,
                                                 detail::unit_u(norm, cc));
            attempts.push_back({center, {{m.v1, c}, {m.v2, cc}}});
        }
    } else if (std::holds_alternative<OneExt>(move)) {
        const auto& m = std::get<OneExt>(move);
        relabel = &m.relabel;
        new_ids = &m.new_ids;
        FacetClass c = colour_of_h_edge(m.removed);
        FacetClass cc = other_class(c);
        Vec2 u1 = uphi(sph.points[m.a1]), u2 = uphi(sph.points[m.a2]),
             u3 = uphi(sph.points[m.a3]);
        Vec2 center = detail::line_intersect(u1, u1 - u2, u3, detail::unit_u(norm, cc));
        attempts.push_back({center, {{m.a1, c}, {m.a2, c}, {m.a3, cc}}});
        // Fallback centres for degenerate geometry.
        attempts.push_back({u3 + detail::unit_u(norm, cc), {{m.a1, c}, {m.a2, c}, {m.a3, cc}}});
    } else {
        const auto& m = std::get<ModifiedOneExt>(move);
        relabel = &m.relabel;
        new_ids = &m.new_ids;
        FacetClass c = colour_of_h_edge(m.removed);
        FacetClass cc = other_class(c);
        // Which endpoint of the removed edge shares a component with a3 in
        // the monochrome tree decides the preferred steering anchor.
        const auto& tree = c == FacetClass::F1 ? sph.trees.tree1 : sph.trees.tree2;
        UnionFind uf(h.n());
        for (auto& e : tree)
            if (e != m.removed) uf.unite(e.u, e.v);
        bool a3_with_a1 = uf.find(m.a3) == uf.find(m.a1);
        std::vector<int> anchors =
            a3_with_a1 ? std::vector<int>{m.a2, m.a1} : std::vector<int>{m.a1, m.a2};
        for (int anchor : anchors) {
            int other = anchor == m.a1 ? m.a2 : m.a1;
            Vec2 ua = uphi(sph.points[anchor]), u3 = uphi(sph.points[m.a3]);
            for (auto y : {Vec2{1, 1}, Vec2{1, -1}}) {
                Vec2 center = detail::line_intersect(ua, detail::unit_u(norm, c), u3, y);
                attempts.push_back(
                    {center, {{anchor, c}, {other, c}, {m.a3, cc}}});
                attempts.push_back(
                    {center, {{anchor, c}, {other, cc}, {m.a3, c}}});
            }
        }
    }

    Placement base_pts(g.n());
    for (int x = 0; x < h.n(); x++) base_pts[(*relabel)[x]] = sph.points[x];
    int kk = int(new_ids->size());
    for (auto& att : attempts) {
        bool found = detail::ball_search(norm, att.center, [&](const Vec2& cand) {
            // Local steering checks first.
            for (auto& [oldv, col] : att.want) {
                Vec2 d = cand - sph.points[oldv];
                Rat a = rat_abs(norm.phi(1, d)), b = rat_abs(norm.phi(2, d));
                if (a == b) return false;
                if ((a > b ? FacetClass::F1 : FacetClass::F2) != col) return false;
            }
            Placement pts = base_pts;
            for (int i = 0; i < kk; i++) pts[(*new_ids)[i]] = tp[i].apply(cand);
            for (int i = 0; i < kk; i++)
                for (int j = i + 1; j < kk; j++)
                    if (pts[(*new_ids)[i]] == pts[(*new_ids)[j]]) return false;
            if (auto sp = try_certify(g, norm, tau, pts)) {
                result = *sp;
                return true;
            }
            return false;
        });
        if (found) break;
    }
    if (!result) throw Error(Err::ChainVerificationFailed, "extension placement search failed");
    result->experimental_chain = sph.experimental_chain;
    return *result;
}

namespace detail {

inline SymmetricPlacement fold_chain(const ConstructionChain& chain, const QuadNorm& norm,
                                     const LinearIsometry& tau, bool experimental) {
    W5Roles roles = w5_roles(chain.base);
    SymmetricPlacement wheel = place_w5(norm, tau);
    Placement pts(5);
    pts[roles.hub] = wheel.points[0];
    for (int k = 0; k < 4; k++) pts[roles.rim[k]] = wheel.points[1 + k];
    SymmetricPlacement sp = certify_placement(chain.base, norm, tau, pts);
    sp.experimental_chain = experimental;
    for (size_t i = 0; i < chain.moves.size(); i++)
        sp = extend_placement(chain.graphs[i], sp, chain.moves[i], norm);
    return sp;
}

}  // namespace detail

// Constructs a symmetric well-positioned isostatic placement for an
// admissible instance, or reports why none can be built:
//   NotAdmissible        the combinatorial test fails
//   NoSwappingIsometry   quarter-turn case on a ball without one
// Reflection and half-turn instances go through the reduction chain (fixed
// edges via the hat transform); the swapping reflection case and the
// quarter-turn fallback use the cone synthesizer on the packed trees.
inline SymmetricPlacement synthesize(const SymmetricGraph& sg, const QuadNorm& norm) {
    AdmissibilityReport rep = check_admissible(sg);
    if (!rep.admissible)
        throw Error(Err::NotAdmissible,
                    std::string("instance is not admissible: ") + pack_failure_name(*rep.failure));
    std::vector<LinearIsometry> taus = isometries_for_case(norm, sg.gcase);
    if (taus.empty())
        throw Error(Err::NoSwappingIsometry,
                    std::string("the ball admits no ") +
                        isometry_class_name(required_isometry_class(sg.gcase)) + " isometry");

    switch (sg.gcase) {
        case GroupCase::CsPreserving:
        case GroupCase::C2: {
            if (rep.fixed_edge_count == 0) {
                ConstructionChain chain = build_chain(sg);
                std::string last;
                for (auto& tau : taus) {
                    try {
                        return detail::fold_chain(chain, norm, tau, false);
                    } catch (const Error& e) {
                        last = e.what();
                    }
                }
                throw Error(Err::ChainVerificationFailed, "chain placement failed: " + last);
            }
            // Two fixed edges: place the hat graph and restrict.
            SymmetricGraph hat = hat_graph(sg);
            ConstructionChain chain = build_chain(hat);
            std::string last;
            for (auto& tau : taus) {
                try {
                    SymmetricPlacement hat_sp = detail::fold_chain(chain, norm, tau, false);
                    Placement pts(hat_sp.points.begin(), hat_sp.points.begin() + sg.n());
                    return certify_placement(sg, norm, tau, pts);
                } catch (const Error& e) {
                    last = e.what();
                }
            }
            throw Error(Err::ChainVerificationFailed, "hat placement failed: " + last);
        }
        case GroupCase::CsSwapping: {
            for (auto& tau : taus) {
                std::optional<SymmetricPlacement> found;
                for_each_tree_pair(sg, TreeMode::Swapped, [&](const TreePair& tp) {
                    if (found) return;
                    found = placement_from_trees(sg, tp, norm, tau);
                });
                if (found) return *found;
            }
            throw Error(Err::ContractViolation,
                        "admissible swapping instance with no feasible placement");
        }
        case GroupCase::C4:
        default: {
            if (auto chain = build_chain_c4(sg)) {
                for (auto& tau : taus) {
                    try {
                        return detail::fold_chain(*chain, norm, tau, true);
                    } catch (const Error&) {
                        // fall through to the cone synthesizer
                    }
                }
            }
            for (auto& tau : taus) {
                std::optional<SymmetricPlacement> found;
                for_each_tree_pair(sg, TreeMode::Swapped, [&](const TreePair& tp) {
                    if (found) return;
                    found = placement_from_trees(sg, tp, norm, tau);
                });
                if (found) return *found;
            }
            throw Error(Err::ContractViolation,
                        "admissible quarter-turn instance with no feasible placement");
        }
    }
}

}  // namespace quadrig
