#pragma once

// Line-oriented document format for instances and placements.  An instance
// document names a graph, a symmetry case, and the generator's action:
//
//   vertices 5
//   edges 0-1 0-2 0-3 0-4 1-2
//   edges 2-3 3-4 1-4
//   group cs_preserving
//   action 0 2 1 4 3
//   norm 1 0 0 1
//
// `edges` lines accumulate.  `norm` gives the two functional coefficient
// pairs (phi1.x phi1.y phi2.x phi2.y) and defaults to the sup norm when
// absent.  Rationals are written "p/q", integers plainly.  A placement
// document is the same schema extended by the realizing isometry, exact
// coordinates, and the certificate (edge colours plus the monochrome trees),
// so every output re-ingests:
//
//   isometry 1 0 0 -1
//   coord 0 3/2 -1/4
//   colour 0-1 F1
//   tree1 0-1 0-2 1-3
//   tree2 0-3 1-2 2-3
//
// '#' starts a comment; blank lines are skipped.

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "placement.hpp"
#include "treepack.hpp"

namespace quadrig {

inline Rat parse_rat(const std::string& tok) {
    // cpp_rational accepts "p" and "p/q"; anything else throws.
    try {
        if (tok.empty()) throw std::runtime_error("empty");
        Rat r(tok);
        return r;
    } catch (const std::exception&) {
        throw Error(Err::ParseError, "not a rational number: '" + tok + "'");
    }
}

namespace detail {

inline int parse_int(const std::string& tok) {
    size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(tok, &used);
    } catch (const std::exception&) {
        throw Error(Err::ParseError, "not an integer: '" + tok + "'");
    }
    if (used != tok.size()) throw Error(Err::ParseError, "not an integer: '" + tok + "'");
    return v;
}

inline Edge parse_edge_token(const std::string& tok) {
    auto dash = tok.find('-');
    if (dash == std::string::npos || dash == 0 || dash + 1 == tok.size())
        throw Error(Err::ParseError, "not an edge 'u-v': '" + tok + "'");
    int u = parse_int(tok.substr(0, dash));
    int v = parse_int(tok.substr(dash + 1));
    if (u < 0 || v < 0) throw Error(Err::ParseError, "negative vertex id in '" + tok + "'");
    return Edge(u, v);
}

inline std::string edge_token(const Edge& e) {
    return std::to_string(e.u) + "-" + std::to_string(e.v);
}

}  // namespace detail

// Parsed document fields, prior to semantic validation.
struct InstanceDoc {
    std::optional<int> vertices;
    std::vector<Edge> edges;
    std::optional<GroupCase> group;
    std::optional<Perm> action;
    std::optional<QuadNorm> norm;
    std::optional<Mat2> isometry;
    std::map<int, Vec2> coords;
    std::map<Edge, FacetClass> colours;
    std::optional<std::vector<Edge>> tree1, tree2;
};

inline std::optional<GroupCase> group_case_from_name(const std::string& name) {
    for (GroupCase c : {GroupCase::CsPreserving, GroupCase::CsSwapping, GroupCase::C2,
                        GroupCase::C4})
        if (name == group_case_name(c)) return c;
    return std::nullopt;
}

inline InstanceDoc parse_instance_text(const std::string& text) {
    InstanceDoc doc;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) -> Error {
        return Error(Err::ParseError, "line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        lineno++;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        std::vector<std::string> toks;
        for (std::string t; ls >> t;) toks.push_back(t);
        if (key == "vertices") {
            if (toks.size() != 1) throw fail("vertices wants one count");
            doc.vertices = detail::parse_int(toks[0]);
        } else if (key == "edges") {
            for (auto& t : toks) doc.edges.push_back(detail::parse_edge_token(t));
        } else if (key == "group") {
            if (toks.size() != 1) throw fail("group wants one case name");
            auto c = group_case_from_name(toks[0]);
            if (!c) throw fail("unknown group case '" + toks[0] + "'");
            doc.group = *c;
        } else if (key == "action") {
            Perm p;
            for (auto& t : toks) p.push_back(detail::parse_int(t));
            doc.action = std::move(p);
        } else if (key == "norm") {
            if (toks.size() != 4) throw fail("norm wants four fractions");
            doc.norm = make_quad_norm({parse_rat(toks[0]), parse_rat(toks[1])},
                                      {parse_rat(toks[2]), parse_rat(toks[3])});
        } else if (key == "isometry") {
            if (toks.size() != 4) throw fail("isometry wants four fractions");
            doc.isometry = Mat2{parse_rat(toks[0]), parse_rat(toks[1]), parse_rat(toks[2]),
                                parse_rat(toks[3])};
        } else if (key == "coord") {
            if (toks.size() != 3) throw fail("coord wants vertex x y");
            int v = detail::parse_int(toks[0]);
            doc.coords[v] = Vec2{parse_rat(toks[1]), parse_rat(toks[2])};
        } else if (key == "colour") {
            if (toks.size() != 2) throw fail("colour wants edge class");
            Edge e = detail::parse_edge_token(toks[0]);
            if (toks[1] == "F1") doc.colours[e] = FacetClass::F1;
            else if (toks[1] == "F2") doc.colours[e] = FacetClass::F2;
            else throw fail("unknown facet class '" + toks[1] + "'");
        } else if (key == "tree1" || key == "tree2") {
            std::vector<Edge> t;
            for (auto& tok : toks) t.push_back(detail::parse_edge_token(tok));
            auto& slot = key == "tree1" ? doc.tree1 : doc.tree2;
            if (slot) slot->insert(slot->end(), t.begin(), t.end());
            else slot = std::move(t);
        } else {
            throw fail("unknown key '" + key + "'");
        }
    }
    return doc;
}

// Semantic assembly.  Field presence errors are parse errors; the symmetry
// validation itself (automorphism, order) reports through build_symmetric_graph.
inline SymmetricGraph doc_graph(const InstanceDoc& doc) {
    if (!doc.vertices) throw Error(Err::ParseError, "missing 'vertices'");
    if (!doc.group) throw Error(Err::ParseError, "missing 'group'");
    if (!doc.action) throw Error(Err::ParseError, "missing 'action'");
    Graph g(*doc.vertices, doc.edges);
    return build_symmetric_graph(g, *doc.group, *doc.action);
}

inline QuadNorm doc_norm(const InstanceDoc& doc) {
    return doc.norm ? *doc.norm : linf_norm();
}

inline Placement doc_placement(const InstanceDoc& doc) {
    if (!doc.vertices) throw Error(Err::ParseError, "missing 'vertices'");
    Placement pts(size_t(*doc.vertices), Vec2{});
    for (int v = 0; v < *doc.vertices; v++) {
        auto it = doc.coords.find(v);
        if (it == doc.coords.end())
            throw Error(Err::ParseError, "missing coord for vertex " + std::to_string(v));
        pts[size_t(v)] = it->second;
    }
    return pts;
}

// The stored matrix must be one of the ball's finitely many linear isometries.
inline LinearIsometry doc_isometry(const InstanceDoc& doc, const QuadNorm& norm) {
    if (!doc.isometry) throw Error(Err::ParseError, "missing 'isometry'");
    for (auto& iso : isometries(norm))
        if (iso.mat == *doc.isometry) return iso;
    throw Error(Err::ParseError, "isometry line is not a linear isometry of this ball");
}

inline std::string instance_text(const SymmetricGraph& sg, const QuadNorm* norm = nullptr) {
    std::ostringstream os;
    os << "vertices " << sg.n() << "\n";
    size_t per_line = 10;
    auto& es = sg.graph.edges();
    for (size_t i = 0; i < es.size(); i += per_line) {
        os << "edges";
        for (size_t j = i; j < es.size() && j < i + per_line; j++)
            os << " " << detail::edge_token(es[j]);
        os << "\n";
    }
    os << "group " << group_case_name(sg.gcase) << "\n";
    os << "action";
    for (int v : sg.gen) os << " " << v;
    os << "\n";
    if (norm)
        os << "norm " << rat_str(norm->phi1.x) << " " << rat_str(norm->phi1.y) << " "
           << rat_str(norm->phi2.x) << " " << rat_str(norm->phi2.y) << "\n";
    return os.str();
}

inline std::string placement_text(const SymmetricGraph& sg, const QuadNorm& norm,
                                  const SymmetricPlacement& sp) {
    std::ostringstream os;
    os << instance_text(sg, &norm);
    os << "isometry " << rat_str(sp.tau.mat.a) << " " << rat_str(sp.tau.mat.b) << " "
       << rat_str(sp.tau.mat.c) << " " << rat_str(sp.tau.mat.d) << "\n";
    for (int v = 0; v < sg.n(); v++)
        os << "coord " << v << " " << rat_str(sp.points[size_t(v)].x) << " "
           << rat_str(sp.points[size_t(v)].y) << "\n";
    os << "# certificate\n";
    auto cols = coloring(norm, sg.graph, sp.points);
    auto& es = sg.graph.edges();
    for (size_t i = 0; i < es.size(); i++)
        os << "colour " << detail::edge_token(es[i]) << " " << facet_name(cols[i]) << "\n";
    for (int t = 1; t <= 2; t++) {
        os << "tree" << t;
        for (auto& e : (t == 1 ? sp.trees.tree1 : sp.trees.tree2))
            os << " " << detail::edge_token(e);
        os << "\n";
    }
    return os.str();
}

}  // namespace quadrig
