#pragma once

// SVG rendering of a placed framework.  The two monochrome classes get the
// two stroke styles (first class solid dark, second dashed gray), vertices
// are labelled dots, and the symmetry element is marked: the mirror line for
// reflections, a centre marker for rotations.  Floating point enters here
// only, for viewport scaling; every point also carries its exact coordinates
// as data attributes.

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <string>

#include "io.hpp"
#include "placement.hpp"

namespace quadrig {

namespace detail {

inline double rat_d(const Rat& r) { return r.convert_to<double>(); }

inline std::string fmt_d(double v) {
    std::ostringstream os;
    os.precision(2);
    os << std::fixed << v;
    return os.str();
}

}  // namespace detail

inline std::string render_svg(const SymmetricGraph& sg, const SymmetricPlacement& sp) {
    const double side = 800.0, margin = 0.05 * side;
    double lox = 0, hix = 0, loy = 0, hiy = 0;
    bool first = true;
    auto see = [&](double x, double y) {
        if (first || x < lox) lox = x;
        if (first || x > hix) hix = x;
        if (first || y < loy) loy = y;
        if (first || y > hiy) hiy = y;
        first = false;
    };
    for (auto& p : sp.points) see(detail::rat_d(p.x), detail::rat_d(p.y));
    see(0, 0);  // the symmetry element passes through the origin
    double span = std::max(hix - lox, hiy - loy);
    if (span <= 0) span = 1;
    double scale = (side - 2 * margin) / span;
    // Svg y grows downward; flip so the plane reads normally.
    auto X = [&](double x) { return margin + (x - lox) * scale; };
    auto Y = [&](double y) { return side - margin - (y - loy) * scale; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
          "viewBox=\"0 0 800 800\">\n";
    os << "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";

    // Symmetry element.
    if (sp.tau.cls == IsometryClass::ReflectionPreserving ||
        sp.tau.cls == IsometryClass::ReflectionSwapping) {
        auto dir = detail::fix_direction(sp.tau.mat);
        if (dir) {
            double dx = detail::rat_d(dir->x), dy = detail::rat_d(dir->y);
            double len = std::max(std::abs(dx), std::abs(dy));
            dx /= len;
            dy /= len;
            double reach = 2 * span;
            os << "<line x1=\"" << detail::fmt_d(X(-reach * dx)) << "\" y1=\""
               << detail::fmt_d(Y(-reach * dy)) << "\" x2=\"" << detail::fmt_d(X(reach * dx))
               << "\" y2=\"" << detail::fmt_d(Y(reach * dy))
               << "\" stroke=\"#bbbbbb\" stroke-width=\"1\" stroke-dasharray=\"2 6\"/>\n";
        }
    } else {
        os << "<circle cx=\"" << detail::fmt_d(X(0)) << "\" cy=\"" << detail::fmt_d(Y(0))
           << "\" r=\"7\" fill=\"none\" stroke=\"#bbbbbb\" stroke-width=\"1.5\"/>\n";
        int spokes = sp.tau.cls == IsometryClass::QuarterTurn ? 4 : 2;
        for (int i = 0; i < spokes; i++) {
            double ang = 3.14159265358979 * (0.25 + 2.0 * i / spokes);
            double mx = 11 * std::cos(ang), my = 11 * std::sin(ang);
            os << "<line x1=\"" << detail::fmt_d(X(0)) << "\" y1=\"" << detail::fmt_d(Y(0))
               << "\" x2=\"" << detail::fmt_d(X(0) + mx) << "\" y2=\""
               << detail::fmt_d(Y(0) + my)
               << "\" stroke=\"#bbbbbb\" stroke-width=\"1.5\"/>\n";
        }
    }

    std::set<Edge> t2(sp.trees.tree2.begin(), sp.trees.tree2.end());
    for (auto& e : sg.graph.edges()) {
        auto& p = sp.points[size_t(e.u)];
        auto& q = sp.points[size_t(e.v)];
        bool second = t2.count(e) != 0;
        os << "<line x1=\"" << detail::fmt_d(X(detail::rat_d(p.x))) << "\" y1=\""
           << detail::fmt_d(Y(detail::rat_d(p.y))) << "\" x2=\""
           << detail::fmt_d(X(detail::rat_d(q.x))) << "\" y2=\""
           << detail::fmt_d(Y(detail::rat_d(q.y))) << "\" stroke=\""
           << (second ? "#777777" : "#1a1a1a") << "\" stroke-width=\"2\""
           << (second ? " stroke-dasharray=\"7 5\"" : "") << "/>\n";
    }

    for (int v = 0; v < sg.n(); v++) {
        auto& p = sp.points[size_t(v)];
        double px = X(detail::rat_d(p.x)), py = Y(detail::rat_d(p.y));
        os << "<circle cx=\"" << detail::fmt_d(px) << "\" cy=\"" << detail::fmt_d(py)
           << "\" r=\"4.5\" fill=\"#1a1a1a\" data-x=\"" << rat_str(p.x) << "\" data-y=\""
           << rat_str(p.y) << "\"/>\n";
        os << "<text x=\"" << detail::fmt_d(px + 7) << "\" y=\"" << detail::fmt_d(py - 7)
           << "\" font-family=\"sans-serif\" font-size=\"14\">" << v << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace quadrig
