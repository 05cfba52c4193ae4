// Placement machinery: the exact inequality solver and its infeasibility
// cores, equivariant parametrization, wheel recipes, the tree-pair
// synthesizer, certification, and the end-to-end synthesis entry point.

#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <vector>

#include "quadrig/placement.hpp"
#include "quadrig/verify.hpp"

#include "fixtures.hpp"

using namespace quadrig;

namespace {

detail::Ineq row(std::vector<Rat> a, Rat b, long src) {
    detail::Ineq q;
    q.a = std::move(a);
    q.b = std::move(b);
    q.src = src;
    return q;
}

LinearIsometry iso_of_class(const QuadNorm& norm, IsometryClass cls) {
    for (auto& iso : isometries(norm))
        if (iso.cls == cls) return iso;
    FAIL("no isometry of requested class");
    return isometries(norm)[0];
}

}  // namespace

TEST_CASE("inequality solver finds points and reports cores") {
    SECTION("bounded interval") {
        // x >= 1 and -x >= -3, i.e. x in [1,3].
        auto out = detail::fm_solve({row({Rat(1)}, Rat(1), 1), row({Rat(-1)}, Rat(-3), 2)}, 1);
        REQUIRE(out.x.has_value());
        CHECK((*out.x)[0] >= 1);
        CHECK((*out.x)[0] <= 3);
    }
    SECTION("contradiction names the participating groups") {
        // x >= 2 against x <= 1, with a harmless second variable row.
        auto out = detail::fm_solve({row({Rat(1), Rat(0)}, Rat(2), 1),
                                     row({Rat(-1), Rat(0)}, Rat(-1), 2),
                                     row({Rat(0), Rat(1)}, Rat(0), 4)},
                                    2);
        CHECK_FALSE(out.x.has_value());
        CHECK(out.core == 3);  // bits 1|2, never the bystander 4
    }
    SECTION("two variables, coupled") {
        // x + y >= 2, x - y >= 0, -x >= -2  ->  e.g. (2, 0).
        auto out = detail::fm_solve({row({Rat(1), Rat(1)}, Rat(2), 1),
                                     row({Rat(1), Rat(-1)}, Rat(0), 2),
                                     row({Rat(-1), Rat(0)}, Rat(-2), 4)},
                                    2);
        REQUIRE(out.x.has_value());
        auto& x = *out.x;
        CHECK(x[0] + x[1] >= 2);
        CHECK(x[0] - x[1] >= 0);
        CHECK(x[0] <= 2);
    }
    SECTION("no constraints means the origin") {
        auto out = detail::fm_solve({}, 3);
        REQUIRE(out.x.has_value());
        CHECK(out.x->size() == 3);
    }
    SECTION("constant contradiction with no variables") {
        auto out = detail::fm_solve({row({}, Rat(1), 8)}, 0);
        CHECK_FALSE(out.x.has_value());
        CHECK(out.core == 8);
    }
}

TEST_CASE("fixed direction of an isometry") {
    // The swap reflection fixes the diagonal.
    auto d = detail::fix_direction(Mat2{0, 1, 1, 0});
    REQUIRE(d.has_value());
    CHECK(Mat2{0, 1, 1, 0}.apply(*d) == *d);
    CHECK_FALSE(d->is_zero());

    // Identity fixes everything: reported as nullopt (no unique direction).
    CHECK_FALSE(detail::fix_direction(Mat2::identity()).has_value());

    // The half turn fixes only the origin.
    CHECK_FALSE(detail::fix_direction(Mat2{-1, 0, 0, -1}).has_value());
}

TEST_CASE("equivariant parametrization counts unknowns by orbit type") {
    QuadNorm q = linf_norm();

    // Half turn: hub pinned at the origin, two free rim orbits.
    {
        auto sg = fixtures::wheel5_half_turn();
        auto vs = detail::build_vars(sg, iso_of_class(q, IsometryClass::HalfTurn));
        CHECK(vs.k == 4);
        CHECK(detail::expr_is_zero(vs.pt[0].x));
        CHECK(detail::expr_is_zero(vs.pt[0].y));
    }

    // Preserving reflection: hub slides along the mirror (one unknown).
    {
        auto sg = fixtures::wheel5_preserving();
        auto vs = detail::build_vars(sg, iso_of_class(q, IsometryClass::ReflectionPreserving));
        CHECK(vs.k == 5);
    }

    // Quarter turn on two free orbits of four.
    {
        auto sg = fixtures::quarter_turn_8();
        auto vs = detail::build_vars(sg, iso_of_class(q, IsometryClass::QuarterTurn));
        CHECK(vs.k == 4);
    }
}

TEST_CASE("parametrized points are exactly equivariant") {
    QuadNorm q = linf_norm();
    for (auto& sg : fixtures::all_references()) {
        INFO(instance_str(sg));
        for (auto& tau : isometries_for_case(q, sg.gcase)) {
            auto vs = detail::build_vars(sg, tau);
            for (int v = 0; v < sg.n(); v++) {
                auto img = detail::point_apply(tau.mat, vs.pt[size_t(v)]);
                CHECK(vs.pt[size_t(sg.s(v))].x == img.x);
                CHECK(vs.pt[size_t(sg.s(v))].y == img.y);
            }
        }
    }
}

TEST_CASE("wheel recipes produce certified placements for every class and norm") {
    for (QuadNorm q : {linf_norm(), l1_norm()}) {
        for (IsometryClass cls : {IsometryClass::ReflectionPreserving, IsometryClass::HalfTurn,
                                  IsometryClass::QuarterTurn}) {
            auto tau = iso_of_class(q, cls);
            SymmetricPlacement sp = place_w5(q, tau);
            CHECK(sp.rank == 8);
            CHECK(sp.points.size() == 5);
            // Certification re-checks equivariance and the isostatic rank.
            auto base = cls == IsometryClass::QuarterTurn
                            ? c4_wheel_base()
                            : w5_base(cls == IsometryClass::HalfTurn ? GroupCase::C2
                                                                     : GroupCase::CsPreserving);
            CHECK(try_certify(base, q, tau, sp.points).has_value());
        }
    }
}

TEST_CASE("tree-pair synthesizer realizes a prescribed pair") {
    QuadNorm q = linf_norm();
    auto sg = fixtures::wheel5_half_turn();
    auto rep = check_admissible(sg);
    REQUIRE(rep.pair.has_value());
    bool any = false;
    for (auto& tau : isometries_for_case(q, sg.gcase)) {
        auto sp = placement_from_trees(sg, *rep.pair, q, tau);
        if (sp) {
            any = true;
            // The realized monochrome classes are exactly the requested pair
            // (first class F1).
            CHECK(sorted_edges(sp->trees.tree1) == sorted_edges(rep.pair->tree1));
            CHECK(sorted_edges(sp->trees.tree2) == sorted_edges(rep.pair->tree2));
            CHECK(sp->rank == 8);
        }
    }
    CHECK(any);
}

TEST_CASE("tree-pair synthesizer refuses an unrealizable pair") {
    // The no-packing six-vertex instance has candidate splits only without
    // symmetry; feed a hand split that is not a valid symmetric pair and the
    // synthesizer must reject it by contract (certification would fail), so
    // instead check the complete-search entry: an inadmissible instance has
    // no placement under any isometry.
    QuadNorm q = linf_norm();
    Graph g(6, {{0, 1}, {0, 4}, {0, 5}, {1, 4}, {1, 5}, {2, 4}, {2, 5}, {3, 4}, {3, 5}, {4, 5}});
    auto sg = build_symmetric_graph(g, GroupCase::C2, {0, 1, 2, 3, 5, 4});
    CHECK_FALSE(any_placement_exists(sg, q));
}

TEST_CASE("certification rejects broken placements") {
    QuadNorm q = linf_norm();
    auto sg = fixtures::wheel5_half_turn();
    auto tau = iso_of_class(q, IsometryClass::HalfTurn);
    SymmetricPlacement good = place_w5(q, tau);

    std::string why;
    SECTION("coincident points") {
        Placement pts = good.points;
        pts[1] = pts[2];
        CHECK_FALSE(try_certify(sg, q, tau, pts, &why).has_value());
    }
    SECTION("equivariance broken") {
        Placement pts = good.points;
        pts[3] = pts[3] + Vec2{Rat(1, 7), Rat(0)};
        CHECK_FALSE(try_certify(sg, q, tau, pts, &why).has_value());
        CHECK(why == "placement not equivariant");
    }
    SECTION("wrong size") {
        Placement pts = good.points;
        pts.pop_back();
        CHECK_FALSE(try_certify(sg, q, tau, pts, &why).has_value());
    }
    SECTION("certify_placement throws where try_certify declines") {
        Placement pts = good.points;
        pts[1] = pts[2];
        CHECK_THROWS_AS(certify_placement(sg, q, tau, pts), Error);
    }
}

TEST_CASE("synthesis succeeds on every reference instance under both norms") {
    for (QuadNorm q : {linf_norm(), l1_norm()}) {
        for (auto& sg : fixtures::all_references()) {
            INFO(instance_str(sg));
            SymmetricPlacement sp = synthesize(sg, q);
            CHECK(sp.rank == 2 * sg.n() - 2);
            // Re-certify from scratch.
            CHECK(try_certify(sg, q, sp.tau, sp.points).has_value());
            // The realizing isometry has the class the case demands.
            CHECK(sp.tau.cls == required_isometry_class(sg.gcase));
        }
    }
}

TEST_CASE("synthesis refuses inadmissible input") {
    QuadNorm q = linf_norm();
    Graph g(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    auto sg = build_symmetric_graph(g, GroupCase::C2, {2, 3, 0, 1});
    CHECK_THROWS_MATCHES(synthesize(sg, q), Error,
                         Catch::Matchers::Predicate<Error>(
                             [](const Error& e) { return e.code == Err::NotAdmissible; }));
}

TEST_CASE("extension moves preserve certification") {
    // Grow the wheel by one symmetric vertex pair attached to two existing
    // vertices, then extend the placement across the move.
    QuadNorm q = linf_norm();
    auto base = fixtures::wheel5_half_turn();
    auto tau = iso_of_class(q, IsometryClass::HalfTurn);
    SymmetricPlacement sp = place_w5(q, tau);

    ZeroExt mv;
    mv.relabel = {0, 1, 2, 3, 4};
    mv.v1 = 1;
    mv.v2 = 2;
    mv.new_ids = {5, 6};
    SymmetricGraph grown = apply_move(base, ExtensionMove{mv});
    CHECK(grown.n() == 7);
    SymmetricPlacement sp2 = extend_placement(base, sp, ExtensionMove{mv}, q);
    CHECK(sp2.rank == 12);
    CHECK(try_certify(grown, q, tau, sp2.points).has_value());
}
