#include <doctest.h>

#include <random>

#include "relalg/catalog.hpp"
#include "relalg/network.hpp"
#include "relalg/representation.hpp"
#include "test_util.hpp"

using namespace relalg;

namespace {

std::set<int> residues(const FiniteRepresentation& rep, Atom a) {
    std::set<int> out;
    for (int v = 0; v < rep.domain_size; ++v)
        if (rep.has(a, 0, v)) out.insert(v);
    return out;
}

bool has_axiom(const RepReport& r, int axiom) {
    for (const auto& v : r.violations)
        if (v.axiom == axiom) return true;
    return false;
}

}  // namespace

TEST_CASE("builtins verify and are square") {
    for (const auto& name : builtin_names()) {
        CAPTURE(name);
        auto nr = builtin_representation(name);
        auto rep = verify_representation(catalog_algebra(nr.algebra), nr.rep);
        CHECK(rep.valid);
        CHECK(rep.square);
    }
}

TEST_CASE("builtin difference sets") {
    auto z7 = builtin_representation("Z7_39_65");
    const Algebra& a39 = catalog_algebra("39_65");
    CHECK(residues(z7.rep, a39.atom("a")) == std::set<int>{1, 6});
    CHECK(residues(z7.rep, a39.atom("c")) == std::set<int>{2, 5});
    CHECK(residues(z7.rep, a39.atom("b")) == std::set<int>{3, 4});
    auto z5 = builtin_representation("Z5_5_7");
    const Algebra& a57 = catalog_algebra("5_7");
    CHECK(residues(z5.rep, a57.atom("a")) == std::set<int>{1, 4});
    CHECK(residues(z5.rep, a57.atom("b")) == std::set<int>{2, 3});
    auto z13 = builtin_representation("Z13_62_65");
    auto again = cyclic_representation(catalog_algebra("62_65"), 13,
                                       {{"a", {1, 5, 8, 12}}, {"b", {2, 3, 10, 11}}, {"c", {4, 6, 7, 9}}});
    CHECK(again.relations == z13.rep.relations);
}

TEST_CASE("perturbed representations fail") {
    const Algebra& a62 = catalog_algebra("62_65");
    auto moved = cyclic_representation(a62, 13, {{"a", {1, 4, 5, 8, 9, 12}}, {"b", {2, 3, 10, 11}}, {"c", {6, 7}}});
    auto r = verify_representation(a62, moved);
    CHECK_FALSE(r.valid);
    CHECK(has_axiom(r, 7));

    // every single-entry change of every builtin is caught
    for (const auto& name : builtin_names()) {
        auto nr = builtin_representation(name);
        const Algebra& ra = catalog_algebra(nr.algebra);
        const int n = nr.rep.domain_size;
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) {
                Atom held = nr.rep.atom_at(u, v);
                for (Atom b = 0; b < ra.atom_count; ++b) {
                    if (held < 0 || b == held) continue;
                    FiniteRepresentation p = nr.rep;
                    p.relations[held][u * n + v] = 0;
                    p.add(b, u, v);
                    CHECK_FALSE(verify_representation(ra, p).valid);
                }
            }
    }
}

TEST_CASE("cycle product and union representations") {
    const Algebra& a57 = catalog_algebra("5_7");
    const Algebra& a12 = catalog_algebra("1_2");
    auto z5 = builtin_representation("Z5_5_7").rep;
    auto k2 = complete_graph_representation(a12, 2);
    Algebra prod = two_cycle_product(a57, a12);
    auto m = match_to_catalog(prod);
    REQUIRE(m.entry != nullptr);
    CHECK(m.entry->name == "9_65");
    auto rep = cycle_product_rep(a57, z5, a12, k2);
    CHECK(rep.domain_size == 10);
    CHECK(verify_representation(prod, rep).valid);

    Algebra swapped = two_cycle_product(a12, a57);
    auto ms = match_to_catalog(swapped);
    REQUIRE(ms.entry != nullptr);
    CHECK(ms.entry->name == "15_65");

    const Algebra& a22 = catalog_algebra("2_2");
    Algebra dp = direct_product(a57, a22);
    auto u = union_rep(a57, z5, a22, complete_graph_representation(a22, 3));
    auto ur = verify_representation(dp, u);
    CHECK(ur.valid);
    CHECK_FALSE(ur.square);
}

TEST_CASE("satisfaction in a finite representation") {
    const Algebra& a57 = catalog_algebra("5_7");
    auto z5 = builtin_representation("Z5_5_7").rep;
    CHECK_FALSE(satisfy_in_rep(a57, z5, evil_square(a57)).has_value());
    Network tri = atomic_network(a57, 3, {{0, 1, "a"}, {1, 2, "a"}, {0, 2, "b"}});
    auto map = satisfy_in_rep(a57, z5, tri);
    REQUIRE(map);
    CHECK(z5.has(a57.atom("a"), (*map)[0], (*map)[1]));
    Network zero = make_network(a57, 2);
    zero.set(a57, 0, 1, 0);
    CHECK_FALSE(satisfy_in_rep(a57, z5, zero).has_value());
}

TEST_CASE("satisfiable in Z5 implies NCP-solvable") {
    const Algebra& a57 = catalog_algebra("5_7");
    auto z5 = builtin_representation("Z5_5_7").rep;
    std::mt19937 rng(21);
    for (int t = 0; t < 300; ++t) {
        std::uniform_int_distribution<int> size(2, 5);
        Network net = testutil::random_network(a57, size(rng), rng);
        if (satisfy_in_rep(a57, z5, net)) CHECK(solve_ncp(a57, net).has_value());
    }
}

TEST_CASE("order models") {
    const Algebra& a51 = catalog_algebra("51_65");
    auto m51 = order_model_51_65(a51);
    CHECK(order_model_converse_consistent(a51, m51));
    for (const auto& f : forbidden_51_65(a51)) {
        CAPTURE(f.name);
        CHECK(is_consistent(a51, f.net));
        CHECK_FALSE(satisfy_in_order_model(a51, m51, f.net).has_value());
    }
    CHECK(satisfy_in_order_model(a51, m51, atomic_network(a51, 2, {{0, 1, "c"}})).has_value());

    const Algebra& a56 = catalog_algebra("56_65");
    auto m56 = order_model_56_65(a56);
    CHECK(order_model_converse_consistent(a56, m56));
    Network abb = atomic_network(a56, 3, {{0, 1, "a"}, {1, 2, "b"}, {0, 2, "b"}});
    CHECK(satisfy_in_order_model(a56, m56, abb).has_value());
}

TEST_CASE("order model grid sampling") {
    for (const char* name : {"51_65", "56_65"}) {
        const Algebra& ra = catalog_algebra(name);
        auto model = std::string(name) == "51_65" ? order_model_51_65(ra) : order_model_56_65(ra);
        auto r = sample_order_model(ra, model, 30);
        CAPTURE(name);
        CHECK(r.partition_ok);
        CHECK(r.forward_ok);
        CHECK(r.backward_ok);
    }
}

TEST_CASE("51_65 characterization on random networks") {
    const Algebra& a51 = catalog_algebra("51_65");
    auto model = order_model_51_65(a51);
    auto lib = forbidden_51_65(a51);
    std::mt19937 rng(22);
    for (int t = 0; t < 200; ++t) {
        std::uniform_int_distribution<int> size(2, 5);
        Network net = testutil::random_network(a51, size(rng), rng, 0.2);
        CHECK(satisfy_in_order_model(a51, model, net).has_value() == solve_ncp(a51, net, lib).has_value());
    }
}

TEST_CASE("Ramsey class bounds") {
    const Algebra& a39 = catalog_algebra("39_65");
    const Algebra& a62 = catalog_algebra("62_65");
    const Algebra& a65 = catalog_algebra("65_65");
    CHECK(ramsey_class_bound(a39, a39.identity) == 16);
    CHECK(ramsey_class_bound(a62, a62.identity) == 16);
    CHECK_FALSE(ramsey_class_bound(a65, a65.identity).has_value());
}

TEST_CASE("square models") {
    CHECK(square_models(catalog_algebra("5_7"), 5).size() == 1);
    auto z7 = builtin_representation("Z7_39_65");
    const Algebra& a39 = catalog_algebra("39_65");
    Network as_net = representation_network(a39, z7.rep);
    CHECK(is_saturated(a39, as_net));
    CHECK(network_representation(a39, as_net).relations == z7.rep.relations);
}

TEST_CASE("representation text round trip") {
    for (const auto& name : builtin_names()) {
        auto nr = builtin_representation(name);
        const Algebra& ra = catalog_algebra(nr.algebra);
        auto back = parse_representation(ra, format_representation(ra, nr.rep));
        CHECK(back.relations == nr.rep.relations);
    }
}
