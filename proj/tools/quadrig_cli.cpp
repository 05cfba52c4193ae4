// Command-line surface: check admissibility, list reduction chains, place,
// verify, enumerate, and render symmetric isostatic frameworks.
//
// Exit codes: 0 success, 1 negative mathematical answer, 2 input error,
// 3 internal contract violation.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "quadrig/io.hpp"
#include "quadrig/svg.hpp"
#include "quadrig/verify.hpp"

using namespace quadrig;

namespace {

int exit_for(Err code) {
    switch (code) {
        case Err::NotAdmissible:
        case Err::NotReducible:
        case Err::NoSwappingIsometry:
        case Err::NotWellPositioned:
            return 1;
        case Err::InvalidGraph:
        case Err::NotAutomorphism:
        case Err::WrongOrder:
        case Err::InvalidNorm:
        case Err::ParseError:
        case Err::BudgetExceeded:
            return 2;
        default:
            return 3;
    }
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Err::ParseError, "cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spill(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error(Err::ParseError, "cannot open output file: " + path);
    out << text;
}

// Norm flag: "linf" (default), "l1", or four comma-separated fractions
// phi1.x,phi1.y,phi2.x,phi2.y.
QuadNorm norm_from_flag(const std::string& s) {
    if (s.empty() || s == "linf") return linf_norm();
    if (s == "l1") return l1_norm();
    std::vector<std::string> toks;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            toks.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    toks.push_back(cur);
    if (toks.size() != 4)
        throw Error(Err::ParseError,
                    "--norm wants 'linf', 'l1', or four comma-separated fractions");
    return make_quad_norm({parse_rat(toks[0]), parse_rat(toks[1])},
                          {parse_rat(toks[2]), parse_rat(toks[3])});
}

QuadNorm pick_norm(const InstanceDoc& doc, const std::string& flag) {
    if (!flag.empty()) return norm_from_flag(flag);
    return doc_norm(doc);
}

std::string edge_list(const std::vector<Edge>& es) {
    std::string s;
    for (auto& e : es) {
        if (!s.empty()) s += " ";
        s += std::to_string(e.u) + "-" + std::to_string(e.v);
    }
    return s;
}

std::string int_list(const std::vector<int>& vs) {
    std::string s;
    for (int v : vs) {
        if (!s.empty()) s += " ";
        s += std::to_string(v);
    }
    return s;
}

int cmd_check(const std::string& input) {
    auto doc = parse_instance_text(slurp(input));
    SymmetricGraph sg = doc_graph(doc);
    AdmissibilityReport rep = check_admissible(sg);
    std::cout << "instance " << instance_str(sg) << "\n";
    std::cout << "mode " << tree_mode_name(rep.mode) << "\n";
    std::cout << "fixed_edges " << rep.fixed_edge_count << "\n";
    std::cout << "admissible " << (rep.admissible ? "yes" : "no") << "\n";
    if (rep.admissible) {
        std::cout << "tree1 " << edge_list(rep.pair->tree1) << "\n";
        std::cout << "tree2 " << edge_list(rep.pair->tree2) << "\n";
        return 0;
    }
    std::cout << "failure " << pack_failure_name(*rep.failure) << "\n";
    return 1;
}

void print_chain(const ConstructionChain& ch, bool experimental) {
    std::cout << "base " << instance_str(ch.base) << "\n";
    if (experimental) std::cout << "note the quarter-turn chain route is experimental\n";
    for (size_t i = 0; i < ch.moves.size(); i++) {
        const ExtensionMove& m = ch.moves[i];
        std::cout << "step " << (i + 1) << " " << move_name(m) << " ";
        if (auto* z = std::get_if<ZeroExt>(&m)) {
            std::cout << "attach " << z->v1 << " " << z->v2 << " new [" << int_list(z->new_ids)
                      << "]";
        } else if (auto* o = std::get_if<OneExt>(&m)) {
            std::cout << "attach " << o->a1 << " " << o->a2 << " " << o->a3 << " removed "
                      << o->removed.u << "-" << o->removed.v << " new ["
                      << int_list(o->new_ids) << "]";
        } else if (auto* mo = std::get_if<ModifiedOneExt>(&m)) {
            std::cout << "attach " << mo->a1 << " " << mo->a2 << " " << mo->a3 << " removed "
                      << mo->removed.u << "-" << mo->removed.v << " new ["
                      << int_list(mo->new_ids) << "]";
        } else if (auto* f = std::get_if<FixedVertexToW5>(&m)) {
            std::cout << "widen " << f->v0 << " rim [" << f->rim[0] << " " << f->rim[1] << " "
                      << f->rim[2] << " " << f->rim[3] << "]";
            for (auto& [w, t] : f->rerouted) std::cout << " reroute " << w << "->" << t;
        }
        std::cout << "  gives " << instance_str(ch.graphs[i + 1]) << "\n";
    }
    std::cout << "moves " << ch.moves.size() << "\n";
}

int cmd_reduce(const std::string& input) {
    auto doc = parse_instance_text(slurp(input));
    SymmetricGraph sg = doc_graph(doc);
    AdmissibilityReport rep = check_admissible(sg);
    if (!rep.admissible)
        throw Error(Err::NotAdmissible,
                    std::string("not admissible: ") + pack_failure_name(*rep.failure));
    if (rep.mode == TreeMode::Invariant) {
        if (rep.fixed_edge_count == 2) {
            SymmetricGraph hat = hat_graph(sg);
            std::cout << "hat " << instance_str(hat) << "\n";
            print_chain(build_chain(hat), false);
        } else {
            print_chain(build_chain(sg), false);
        }
        return 0;
    }
    if (sg.gcase == GroupCase::C4) {
        if (auto ch = build_chain_c4(sg)) {
            print_chain(*ch, true);
            return 0;
        }
        throw Error(Err::NotReducible, "no experimental quarter-turn chain found");
    }
    throw Error(Err::NotReducible, "reduction chains exist for invariant-mode cases only");
}

int cmd_place(const std::string& input, const std::string& norm_flag,
              const std::string& output) {
    auto doc = parse_instance_text(slurp(input));
    SymmetricGraph sg = doc_graph(doc);
    QuadNorm norm = pick_norm(doc, norm_flag);
    SymmetricPlacement sp = synthesize(sg, norm);
    std::string text = placement_text(sg, norm, sp);
    std::ostringstream sum;
    sum << "placed " << instance_str(sg) << "\n";
    sum << "rank " << sp.rank << " of " << (2 * sg.n() - 2) << "\n";
    sum << "isometry_class " << isometry_class_name(sp.tau.cls) << "\n";
    if (sp.experimental_chain) sum << "route experimental quarter-turn chain\n";
    if (output.empty()) {
        std::cout << text;
        std::istringstream cs(sum.str());
        for (std::string l; std::getline(cs, l);) std::cout << "# " << l << "\n";
    } else {
        spill(output, text);
        std::cout << sum.str();
    }
    return 0;
}

int cmd_verify(const std::string& input, const std::string& norm_flag) {
    auto doc = parse_instance_text(slurp(input));
    SymmetricGraph sg = doc_graph(doc);
    QuadNorm norm = pick_norm(doc, norm_flag);
    Placement pts = doc_placement(doc);
    IsostaticCheck chk = is_isostatic(norm, sg.graph, pts);
    std::cout << "rank " << chk.rank << " of " << (2 * sg.n() - 2) << "\n";
    std::cout << "rank_route " << (chk.rank_route ? "yes" : "no") << "\n";
    std::cout << "tree_route " << (chk.tree_route ? "yes" : "no") << "\n";
    std::cout << "isostatic " << (chk.isostatic ? "yes" : "no") << "\n";
    bool ok = chk.isostatic;
    if (doc.isometry) {
        LinearIsometry tau = doc_isometry(doc, norm);
        std::string why;
        auto sp = try_certify(sg, norm, tau, pts, &why);
        std::cout << "symmetric_certificate " << (sp ? "valid" : ("invalid: " + why)) << "\n";
        ok = ok && bool(sp);
        if (sp && doc.tree1 && doc.tree2) {
            bool match = sorted_edges(*doc.tree1) == sp->trees.tree1 &&
                         sorted_edges(*doc.tree2) == sp->trees.tree2;
            std::cout << "stored_trees " << (match ? "match" : "mismatch") << "\n";
            ok = ok && match;
        }
    }
    return ok ? 0 : 1;
}

int cmd_enumerate(int max_vertices, const std::string& group_flag,
                  const std::string& norm_flag, long seed, bool seed_given) {
    auto gc = group_case_from_name(group_flag);
    if (!gc) throw Error(Err::ParseError, "--group wants one of cs_preserving, cs_swapping, c2, c4");
    QuadNorm norm = norm_from_flag(norm_flag);
    ExperimentResult ex = equivalence_experiment(max_vertices, *gc, norm);
    std::cout << "case " << group_case_name(ex.gcase) << "\n";
    std::cout << "max_vertices " << ex.n_max << "\n";
    if (seed_given) std::cout << "seed " << seed << " (exhaustive run, seed tags the report)\n";
    std::cout << "universe " << ex.universe << "\n";
    std::cout << "admissible " << ex.admissible_count << "\n";
    std::cout << "placed " << ex.placed_count << "\n";
    std::cout << "counterexamples " << ex.counterexamples.size() << "\n";
    for (auto& c : ex.counterexamples) std::cout << "counterexample " << c << "\n";
    return ex.counterexamples.empty() ? 0 : 1;
}

int cmd_render(const std::string& input, const std::string& norm_flag,
               const std::string& output) {
    auto doc = parse_instance_text(slurp(input));
    SymmetricGraph sg = doc_graph(doc);
    QuadNorm norm = pick_norm(doc, norm_flag);
    SymmetricPlacement sp;
    sp.points = doc_placement(doc);
    sp.tau = doc_isometry(doc, norm);
    if (doc.tree1 && doc.tree2) {
        sp.trees = TreePair{sorted_edges(*doc.tree1), sorted_edges(*doc.tree2),
                            mode_for_case(sg.gcase)};
    } else {
        auto cols = coloring(norm, sg.graph, sp.points);
        auto& es = sg.graph.edges();
        for (size_t i = 0; i < es.size(); i++)
            (cols[i] == FacetClass::F1 ? sp.trees.tree1 : sp.trees.tree2).push_back(es[i]);
    }
    std::string svg = render_svg(sg, sp);
    if (output.empty()) std::cout << svg;
    else spill(output, svg);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"symmetric isostatic placements under quadrilateral norms"};
    app.require_subcommand(1);

    std::string input, output, norm_flag, group_flag;
    int max_vertices = 5;
    long seed = 0;

    auto add_input = [&](CLI::App* c) {
        c->add_option("--input", input, "instance or placement file")->required();
    };
    auto add_norm = [&](CLI::App* c) {
        c->add_option("--norm", norm_flag,
                      "'linf', 'l1', or four comma-separated fractions (overrides the file)");
    };

    CLI::App* check = app.add_subcommand("check", "admissibility report for an instance");
    add_input(check);

    CLI::App* reduce = app.add_subcommand("reduce", "reduction chain down to the wheel");
    add_input(reduce);

    CLI::App* place = app.add_subcommand("place", "construct a certified placement");
    add_input(place);
    add_norm(place);
    place->add_option("--output", output, "placement file destination (default stdout)");

    CLI::App* verify = app.add_subcommand("verify", "diagnostics for a stored placement");
    add_input(verify);
    add_norm(verify);

    CLI::App* enumerate = app.add_subcommand("enumerate", "exhaustive equivalence experiment");
    enumerate->add_option("--max-vertices", max_vertices, "largest vertex count")->required();
    enumerate->add_option("--group", group_flag, "symmetry case name")->required();
    add_norm(enumerate);
    CLI::Option* seed_opt =
        enumerate->add_option("--seed", seed, "tag for the report (runs are exhaustive)");

    CLI::App* render = app.add_subcommand("render", "SVG of a stored placement");
    add_input(render);
    add_norm(render);
    render->add_option("--output", output, "svg destination (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) return cmd_check(input);
        if (reduce->parsed()) return cmd_reduce(input);
        if (place->parsed()) return cmd_place(input, norm_flag, output);
        if (verify->parsed()) return cmd_verify(input, norm_flag);
        if (enumerate->parsed())
            return cmd_enumerate(max_vertices, group_flag, norm_flag, seed,
                                 seed_opt->count() > 0);
        if (render->parsed()) return cmd_render(input, norm_flag, output);
    } catch (const Error& e) {
        std::cerr << "error (" << err_name(e.code) << "): " << e.what() << "\n";
        return exit_for(e.code);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
