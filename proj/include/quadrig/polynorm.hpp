// Norms whose unit ball is a quadrilateral symmetric about the origin
// (a parallelogram).  Such a norm is max(|phi1(x)|, |phi2(x)|) for two
// independent linear functionals; the four facets come in two opposite pairs
// and a direction strictly dominated by phi_i lies in facet class F_i.
//
// The module also carries the placement-side machinery: facet colourings of
// edges, the linear isometries of the ball, the rigidity matrix of a
// well-positioned placement, and the exact rank test for isostaticity.
#pragma once

#include <array>

#include "treepack.hpp"

namespace quadrig {

enum class FacetClass { F1, F2 };

inline FacetClass other_class(FacetClass c) {
    return c == FacetClass::F1 ? FacetClass::F2 : FacetClass::F1;
}

inline const char* facet_name(FacetClass c) { return c == FacetClass::F1 ? "F1" : "F2"; }

struct QuadNorm {
    Vec2 phi1, phi2;  // functional coefficient rows
    Mat2 M;           // rows phi1, phi2
    Mat2 Minv;
    std::array<Vec2, 4> extremes;  // Minv * (1,1), (1,-1), (-1,1), (-1,-1)

    Rat phi(int i, const Vec2& v) const { return dot(i == 1 ? phi1 : phi2, v); }
    // Point with prescribed functional values (u1, u2).
    Vec2 from_phi(const Rat& u1, const Rat& u2) const { return Minv.apply({u1, u2}); }
    Vec2 to_phi(const Vec2& p) const { return M.apply(p); }
};

inline QuadNorm make_quad_norm(const Vec2& phi1, const Vec2& phi2) {
    Mat2 M{phi1.x, phi1.y, phi2.x, phi2.y};
    if (M.det() == 0)
        throw Error(Err::InvalidNorm, "functionals are linearly dependent");
    QuadNorm q;
    q.phi1 = phi1;
    q.phi2 = phi2;
    q.M = M;
    q.Minv = M.inverse();
    q.extremes = {q.from_phi(1, 1), q.from_phi(1, -1), q.from_phi(-1, 1), q.from_phi(-1, -1)};
    return q;
}

inline QuadNorm linf_norm() { return make_quad_norm({1, 0}, {0, 1}); }
inline QuadNorm l1_norm() {
    return make_quad_norm({Rat(1, 2), Rat(1, 2)}, {Rat(1, 2), Rat(-1, 2)});
}

inline Rat norm_value(const QuadNorm& q, const Vec2& v) {
    Rat a = rat_abs(q.phi(1, v)), b = rat_abs(q.phi(2, v));
    return a > b ? a : b;
}

// Facet class of a direction; throws for vectors on the boundary between the
// two classes (that includes the zero vector).
inline FacetClass facet_class(const QuadNorm& q, const Vec2& v) {
    Rat a = rat_abs(q.phi(1, v)), b = rat_abs(q.phi(2, v));
    if (a == b)
        throw Error(Err::NotWellPositioned, "direction " + vec_str(v) + " lies on a cone boundary");
    return a > b ? FacetClass::F1 : FacetClass::F2;
}

enum class IsometryClass {
    Identity,
    ReflectionPreserving,  // involution, det -1, fixes each facet class
    ReflectionSwapping,    // involution, det -1, exchanges the facet classes
    HalfTurn,              // -I
    QuarterTurn,           // the Euclidean rotation by +-90 degrees
    Other,
};

inline const char* isometry_class_name(IsometryClass c) {
    switch (c) {
        case IsometryClass::Identity: return "identity";
        case IsometryClass::ReflectionPreserving: return "reflection_preserving";
        case IsometryClass::ReflectionSwapping: return "reflection_swapping";
        case IsometryClass::HalfTurn: return "half_turn";
        case IsometryClass::QuarterTurn: return "quarter_turn";
        case IsometryClass::Other: return "other";
    }
    return "?";
}

struct LinearIsometry {
    Mat2 mat;
    IsometryClass cls{IsometryClass::Identity};
    bool swaps_facets{false};  // phi_i o mat proportional to phi_{3-i}
    std::array<int, 2> dual_signs{1, 1};  // phi_i o mat = dual_signs[i-1] * phi_(image)

    bool operator<(const LinearIsometry& o) const { return mat < o.mat; }
};

// All linear maps preserving the unit ball, enumerated through the images of
// two independent extreme points (each of the eight assignments of extreme
// points to extreme points yields one isometry).  The list always has exactly
// eight entries; QuarterTurn members appear only when the ball is a Euclidean
// square centred at the origin.
inline std::vector<LinearIsometry> isometries(const QuadNorm& q) {
    Vec2 y1 = q.extremes[0];  // phi-values (1, 1)
    Vec2 y2 = q.extremes[1];  // phi-values (1, -1)
    Mat2 base{y1.x, y2.x, y1.y, y2.y};  // columns y1, y2
    Mat2 base_inv = base.inverse();
    std::vector<LinearIsometry> out;
    std::array<Vec2, 4> pool = {y1, y2, Vec2{0, 0} - y1, Vec2{0, 0} - y2};
    for (int i = 0; i < 4; i++) {
        for (int j = 0; j < 4; j++) {
            // Images must use the two distinct +- pairs.
            if (i % 2 == j % 2) continue;
            const Vec2 &a = pool[i], &b = pool[j];
            Mat2 img{a.x, b.x, a.y, b.y};
            Mat2 T = img.mul(base_inv);
            LinearIsometry iso;
            iso.mat = T;
            // Dual action: row i of M*T equals +-phi_1 or +-phi_2 exactly.
            Mat2 MT = q.M.mul(T);
            Vec2 r1{MT.a, MT.b}, r2{MT.c, MT.d};
            auto ident = [&](const Vec2& row, int& sign) {
                if (row == q.phi1) { sign = 1; return 1; }
                if (row == Vec2{0, 0} - q.phi1) { sign = -1; return 1; }
                if (row == q.phi2) { sign = 1; return 2; }
                if (row == Vec2{0, 0} - q.phi2) { sign = -1; return 2; }
                throw Error(Err::ContractViolation, "isometry dual action not signed-permutation");
            };
            int s1 = 0, s2 = 0;
            int im1 = ident(r1, s1), im2 = ident(r2, s2);
            if (im1 == im2) throw Error(Err::ContractViolation, "dual action not bijective");
            iso.swaps_facets = (im1 == 2);
            iso.dual_signs = {s1, s2};
            if (T.is_identity())
                iso.cls = IsometryClass::Identity;
            else if (T.is_minus_identity())
                iso.cls = IsometryClass::HalfTurn;
            else if ((T.a == 0 && T.d == 0 && T.b == -1 && T.c == 1) ||
                     (T.a == 0 && T.d == 0 && T.b == 1 && T.c == -1))
                iso.cls = IsometryClass::QuarterTurn;
            else if (T.mul(T).is_identity() && T.det() == -1)
                iso.cls = iso.swaps_facets ? IsometryClass::ReflectionSwapping
                                           : IsometryClass::ReflectionPreserving;
            else
                iso.cls = IsometryClass::Other;
            out.push_back(iso);
        }
    }
    std::sort(out.begin(), out.end());
    if (out.size() != 8) throw Error(Err::ContractViolation, "isometry count != 8");
    return out;
}

using Placement = std::vector<Vec2>;

// Facet class per edge, aligned with graph.edges().  Throws NotWellPositioned
// naming the first offending edge.
inline std::vector<FacetClass> coloring(const QuadNorm& q, const Graph& g, const Placement& p) {
    if (int(p.size()) != g.n())
        throw Error(Err::ContractViolation, "placement size mismatch");
    std::vector<FacetClass> cols;
    cols.reserve(g.edges().size());
    for (auto& e : g.edges()) {
        Vec2 d = p[e.u] - p[e.v];
        Rat a = rat_abs(q.phi(1, d)), b = rat_abs(q.phi(2, d));
        if (a == b)
            throw Error(Err::NotWellPositioned, "edge " + edge_str(e) + " direction " + vec_str(d));
        cols.push_back(a > b ? FacetClass::F1 : FacetClass::F2);
    }
    return cols;
}

// The two monochrome edge classes (F1 first).
inline std::pair<std::vector<Edge>, std::vector<Edge>> monochrome_classes(
    const Graph& g, const std::vector<FacetClass>& cols) {
    std::pair<std::vector<Edge>, std::vector<Edge>> out;
    for (size_t i = 0; i < g.edges().size(); i++)
        (cols[i] == FacetClass::F1 ? out.first : out.second).push_back(g.edges()[i]);
    return out;
}

struct RatMatrix {
    int rows{0}, cols{0};
    std::vector<Rat> data;

    RatMatrix() = default;
    RatMatrix(int r, int c) : rows(r), cols(c), data(size_t(r) * size_t(c), Rat(0)) {}
    Rat& at(int r, int c) { return data[size_t(r) * cols + c]; }
    const Rat& at(int r, int c) const { return data[size_t(r) * cols + c]; }
};

// Rigidity matrix of a well-positioned placement: one row per edge carrying
// the active functional of the edge's facet class, signed so the row is the
// derivative of the edge length, at the endpoint coordinate columns.
inline RatMatrix rigidity_matrix(const QuadNorm& q, const Graph& g, const Placement& p) {
    auto cols = coloring(q, g, p);
    RatMatrix m(int(g.edges().size()), 2 * g.n());
    for (size_t i = 0; i < g.edges().size(); i++) {
        const Edge& e = g.edges()[i];
        Vec2 d = p[e.u] - p[e.v];
        const Vec2& f = cols[i] == FacetClass::F1 ? q.phi1 : q.phi2;
        Rat val = dot(f, d);
        Rat sgn = val > 0 ? 1 : -1;
        m.at(int(i), 2 * e.u) = sgn * f.x;
        m.at(int(i), 2 * e.u + 1) = sgn * f.y;
        m.at(int(i), 2 * e.v) = -sgn * f.x;
        m.at(int(i), 2 * e.v + 1) = -sgn * f.y;
    }
    return m;
}

// Exact rank by fraction-free (Bareiss) elimination: rows are scaled to
// integers, and each elimination step divides by the previous pivot, which is
// exact for integer matrices.  Row and column pivoting only permutes, so the
// pivot count is the rank.
inline int rank(const RatMatrix& m) {
    std::vector<std::vector<Int>> a(m.rows, std::vector<Int>(m.cols));
    for (int r = 0; r < m.rows; r++) {
        Int l = 1;
        for (int c = 0; c < m.cols; c++) l = lcm(l, denominator(m.at(r, c)));
        for (int c = 0; c < m.cols; c++) {
            const Rat& v = m.at(r, c);
            a[r][c] = numerator(v) * (l / denominator(v));
        }
    }
    int rk = 0;
    Int prev = 1;
    int row = 0, col = 0;
    while (row < m.rows && col < m.cols) {
        int pr = -1, pc = -1;
        for (int i = row; i < m.rows && pr < 0; i++)
            for (int j = col; j < m.cols; j++)
                if (a[i][j] != 0) {
                    pr = i;
                    pc = j;
                    break;
                }
        if (pr < 0) break;
        std::swap(a[row], a[pr]);
        if (pc != col)
            for (int i = 0; i < m.rows; i++) std::swap(a[i][col], a[i][pc]);
        for (int i = row + 1; i < m.rows; i++) {
            for (int j = col + 1; j < m.cols; j++)
                a[i][j] = (a[row][col] * a[i][j] - a[i][col] * a[row][j]) / prev;
            a[i][col] = 0;
        }
        prev = a[row][col];
        rk++;
        row++;
        col++;
    }
    return rk;
}

struct IsostaticCheck {
    bool isostatic{false};
    int rank{0};
    bool rank_route{false};  // |E| = 2n - 2 and rank = 2n - 2
    bool tree_route{false};  // monochrome classes are two spanning trees
    std::vector<FacetClass> colors;
    std::vector<Edge> class1, class2;
};

// Isostatic test run over both characterizations: full rank with exactly
// 2n - 2 edges (translations are the only trivial flexes, dimension 2), and
// the monochrome classes forming two edge-disjoint spanning trees.  The two
// routes provably agree for well-positioned placements; a disagreement is a
// contract violation, never a result.  Single-vertex placements are rejected
// as degenerate.
inline IsostaticCheck is_isostatic(const QuadNorm& q, const Graph& g, const Placement& p) {
    IsostaticCheck chk;
    chk.colors = coloring(q, g, p);
    std::tie(chk.class1, chk.class2) = monochrome_classes(g, chk.colors);
    RatMatrix m = rigidity_matrix(q, g, p);
    chk.rank = rank(m);
    int target = 2 * g.n() - 2;
    if (g.n() >= 2) {
        chk.rank_route = g.edge_count() == target && chk.rank == target;
        chk.tree_route =
            is_spanning_tree(g.n(), chk.class1) && is_spanning_tree(g.n(), chk.class2);
    }
    if (chk.rank_route != chk.tree_route)
        throw Error(Err::ContractViolation,
                    "rank route and tree route disagree: rank=" + std::to_string(chk.rank) +
                        " classes " + edge_list_str(chk.class1) + " / " +
                        edge_list_str(chk.class2));
    chk.isostatic = chk.rank_route;
    return chk;
}

}  // namespace quadrig
