// Permutation utilities, symmetric-graph validation, orbits, and fixed
// elements, checked on the reference instances.

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "quadrig/symcore.hpp"

#include "fixtures.hpp"

using namespace quadrig;

TEST_CASE("permutation basics") {
    Perm p{1, 2, 0};  // 3-cycle
    CHECK(perm_order(p) == 3);
    CHECK(perm_is_identity(perm_power(p, 3)));
    CHECK(perm_compose(p, perm_inverse(p)) == perm_identity(3));
    CHECK(perm_apply(p, Edge(0, 2)) == Edge(0, 1));  // 0 -> 1, 2 -> 0

    CHECK(perm_valid({0, 1, 2}, 3));
    CHECK_FALSE(perm_valid({0, 0, 2}, 3));  // not injective
    CHECK_FALSE(perm_valid({0, 1}, 3));     // wrong length
    CHECK_FALSE(perm_valid({0, 3, 1}, 3));  // out of range

    CHECK(perm_str({0, 3, 4, 1, 2}) == "(1 3)(2 4)");
    CHECK(perm_str(perm_identity(3)) == "()");
}

TEST_CASE("symmetric graph construction validates the action") {
    Graph w5 = fixtures::wheel5();

    // Not a permutation.
    CHECK_THROWS_MATCHES(build_symmetric_graph(w5, GroupCase::C2, {0, 0, 1, 2, 3}), Error,
                         Catch::Matchers::Predicate<Error>(
                             [](const Error& e) { return e.code == Err::InvalidGraph; }));

    // A permutation but not an automorphism: swapping hub and a rim vertex.
    CHECK_THROWS_MATCHES(build_symmetric_graph(w5, GroupCase::CsPreserving, {1, 0, 2, 3, 4}),
                         Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                             return e.code == Err::NotAutomorphism;
                         }));

    // An automorphism whose order does not divide the group order: the rim
    // 4-cycle under a claimed involution case.
    CHECK_THROWS_MATCHES(build_symmetric_graph(w5, GroupCase::C2, {0, 2, 3, 4, 1}), Error,
                         Catch::Matchers::Predicate<Error>(
                             [](const Error& e) { return e.code == Err::WrongOrder; }));

    // Order 2 divides 4, so an involution passes construction for the
    // quarter-turn case; the admissibility check rejects it later.
    CHECK_NOTHROW(build_symmetric_graph(fixtures::k4(), GroupCase::C4, {2, 3, 0, 1}));
}

TEST_CASE("fixed elements on the references") {
    auto fe = fixed_elements(fixtures::wheel5_half_turn());
    CHECK(fe.vertices == std::vector<int>{0});
    CHECK(fe.edges.empty());

    auto fe2 = fixed_elements(fixtures::half_turn_6_two_fixed());
    CHECK(fe2.vertices.empty());
    CHECK(fe2.edges == std::vector<Edge>{Edge(0, 2), Edge(1, 3)});

    auto q = fixtures::k4_quarter_turn();
    CHECK(fixed_elements(q, 1).edges.empty());
    CHECK(fixed_elements(q, 2).edges == std::vector<Edge>{Edge(0, 2), Edge(1, 3)});

    auto h7 = fixed_elements(fixtures::half_turn_7());
    CHECK(h7.vertices == std::vector<int>{6});
    CHECK(h7.edges.empty());
}

TEST_CASE("orbit partition structure") {
    auto sg = fixtures::quarter_turn_8();
    auto op = orbit_partition(sg);

    // Vertices split into two free orbits of size four.
    CHECK(op.vertices.size() == 2);
    for (auto& vo : op.vertices) CHECK(vo.size() == 4);

    // 14 edges in orbits of size four except the inner diagonal pair.
    std::multiset<size_t> sizes;
    size_t total = 0;
    for (auto& eo : op.edges) {
        sizes.insert(eo.size());
        total += eo.size();
    }
    CHECK(total == 14);
    CHECK(sizes == std::multiset<size_t>{2, 4, 4, 4});

    // Every orbit is closed under the generator.
    for (auto& eo : op.edges) {
        std::set<Edge> s(eo.begin(), eo.end());
        for (auto& e : eo) CHECK(s.count(sg.s(e)) == 1);
    }
}

TEST_CASE("orbit partition with a fixed vertex") {
    auto sg = fixtures::half_turn_7();
    auto op = orbit_partition(sg);
    size_t singletons = 0;
    for (auto& vo : op.vertices)
        if (vo.size() == 1) singletons++;
    CHECK(singletons == 1);   // the hub
    CHECK(op.vertices.size() == 4);  // 3 swapped pairs + hub
}

TEST_CASE("group case names round trip") {
    for (GroupCase c :
         {GroupCase::CsPreserving, GroupCase::CsSwapping, GroupCase::C2, GroupCase::C4}) {
        CHECK(group_order(c) == (c == GroupCase::C4 ? 4 : 2));
    }
}
