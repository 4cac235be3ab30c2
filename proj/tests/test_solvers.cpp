#include <doctest.h>

#include <chrono>
#include <random>

#include "relalg/catalog.hpp"
#include "relalg/io.hpp"
#include "relalg/solvers.hpp"
#include "test_util.hpp"

using namespace relalg;

namespace {

// Consecutive vertices joined by the given label, all other pairs distinct.
Network chain(const Algebra& ra, int n, Element label) {
    Network net = make_network(ra, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) net.set(ra, i, j, j == i + 1 ? label : ra.diversity());
    return net;
}

}  // namespace

TEST_CASE("solve_nsp examples") {
    const auto& e1737 = catalog_entry("17_37");
    auto v = solve_nsp(e1737, a_path4(e1737.algebra));
    CHECK(v.status == NspStatus::UNSAT);
    CHECK(v.method == "dc_17_37");

    const auto& e57 = catalog_entry("5_7");
    auto sq = solve_nsp(e57, evil_square(e57.algebra));
    CHECK(sq.status == NspStatus::UNSAT);
    CHECK(sq.method == "satisfy_in_rep(Z5)");
    CHECK_FALSE(path_consistency(e57.algebra, evil_square(e57.algebra)).unsolvable);

    const auto& e1437 = catalog_entry("14_37");
    auto nr = solve_nsp(e1437, make_network(e1437.algebra, 2));
    CHECK(nr.status == NspStatus::UNSAT);
    CHECK(nr.method == "not_representable");

    const auto& e56 = catalog_entry("56_65");
    auto open = solve_nsp(e56, make_network(e56.algebra, 2));
    CHECK(open.status == NspStatus::UNKNOWN);
    CHECK(open.method == "open");

    const auto& e137 = catalog_entry("1_37");
    auto pc = solve_nsp(e137, make_network(e137.algebra, 3));
    CHECK(pc.status == NspStatus::SAT);
    CHECK(pc.method == "path_consistency");
    REQUIRE(pc.solution);
    CHECK(verify_verdict(e137.algebra, make_network(e137.algebra, 3), pc));

    const auto& e65 = catalog_entry("65_65");
    auto csp = solve_nsp(e65, make_network(e65.algebra, 4));
    CHECK(csp.method == "atom_structure_csp");
    CHECK(csp.status == NspStatus::SAT);

    Network empty = make_network(e65.algebra, 3);
    empty.set(e65.algebra, 0, 1, 0);
    CHECK(solve_nsp(e65, empty).method == "empty_label");
    CHECK(to_string(NspStatus::UNKNOWN) == "UNKNOWN");
}

TEST_CASE("solve_nsp rejects foreign labels") {
    const auto& e = catalog_entry("1_2");
    Network net = make_network(e.algebra, 2);
    net.labels[1] = 0b1000;
    CHECK_THROWS_AS(solve_nsp(e, net), AlgebraMismatch);
}

TEST_CASE("divide and conquer rejects raw labels") {
    const Algebra& ra = catalog_algebra("24_65");
    Network net = make_network(ra, 3);
    net.set(ra, 0, 1, ra.element({"a", "b"}));
    CHECK_THROWS_AS(dc_24_65(net), LabelOutsideGeneratorSet);
}

TEST_CASE("divide and conquer agrees with the oracles") {
    std::mt19937 rng(51);
    const Algebra& a24 = catalog_algebra("24_65");
    const Algebra& a17 = catalog_algebra("17_37");
    const PatternLibrary apath{{"a-path-4", a_path4(a17)}};
    auto g24 = generators_24_65(a24);
    auto g17 = generators_17_37(a17);
    for (int n = 3; n <= 6; ++n)
        for (int t = 0; t < 80; ++t) {
            Network n24 = testutil::random_alphabet_network(a24, n, rng, g24);
            auto v24 = dc_24_65(n24);
            CHECK((v24.status == NspStatus::SAT) == solve_ncp(a24, n24).has_value());
            CHECK(verify_verdict(a24, n24, v24));
            Network n17 = testutil::random_alphabet_network(a17, n, rng, g17);
            auto v17 = dc_17_37(n17);
            CHECK((v17.status == NspStatus::SAT) == solve_ncp(a17, n17, apath).has_value());
            CHECK(verify_verdict(a17, n17, v17));
        }
}

TEST_CASE("desugared networks keep their verdict") {
    std::mt19937 rng(52);
    const auto& e24 = catalog_entry("24_65");
    const auto& e17 = catalog_entry("17_37");
    const PatternLibrary apath{{"a-path-4", a_path4(e17.algebra)}};
    for (int t = 0; t < 150; ++t) {
        std::uniform_int_distribution<int> size(2, 5);
        Network n24 = testutil::random_network(e24.algebra, size(rng), rng, 0.4);
        auto v24 = solve_nsp(e24, n24);
        CHECK((v24.status == NspStatus::SAT) == solve_ncp(e24.algebra, n24).has_value());
        CHECK(verify_verdict(e24.algebra, n24, v24));
        Network n17 = testutil::random_network(e17.algebra, size(rng), rng, 0.4);
        auto v17 = solve_nsp(e17, n17);
        CHECK((v17.status == NspStatus::SAT) == solve_ncp(e17.algebra, n17, apath).has_value());
        CHECK(verify_verdict(e17.algebra, n17, v17));
    }
    for (Element l = 1; l <= e24.algebra.full(); ++l) {
        Network net = make_network(e24.algebra, 2);
        net.set(e24.algebra, 0, 1, l);
        CHECK(desugar(e24.algebra, net, generators_24_65(e24.algebra)).has_value());
    }
}

TEST_CASE("every SAT certificate verifies") {
    std::mt19937 rng(53);
    for (const auto& e : catalog()) {
        if (e.name == "39_65" || e.name == "62_65" || e.name == "56_65") continue;
        CAPTURE(e.name);
        for (int t = 0; t < 6; ++t) {
            Network net = testutil::random_network(e.algebra, 4, rng, 0.5);
            auto v = solve_nsp(e, net);
            CHECK(v.status != NspStatus::UNKNOWN);
            CHECK(verify_verdict(e.algebra, net, v));
            if (v.status == NspStatus::SAT && is_fully_universal(e.repr) && v.solution)
                CHECK(solve_ncp(e.algebra, net).has_value());
        }
    }
}

TEST_CASE("atom structure dispatch matches solve_ncp") {
    std::mt19937 rng(54);
    for (const char* name : {"5_37", "12_37", "7_65", "19_65", "53_65"}) {
        const auto& e = catalog_entry(name);
        CAPTURE(name);
        for (int t = 0; t < 60; ++t) {
            std::uniform_int_distribution<int> size(2, 5);
            Network net = testutil::random_network(e.algebra, size(rng), rng, 0.3);
            auto v = solve_nsp(e, net);
            CHECK(v.method == "atom_structure_csp");
            CHECK((v.status == NspStatus::SAT) == solve_ncp(e.algebra, net).has_value());
        }
    }
}

TEST_CASE("products split into factors") {
    const Algebra& a = catalog_algebra("1_2");
    const Algebra& b = catalog_algebra("2_2");
    Algebra prod = direct_product(a, b);
    Network net = make_network(prod, 3);
    auto v = solve_nsp(prod, net);
    CHECK(v.status == NspStatus::SAT);
    CHECK(v.method.rfind("product[", 0) == 0);
    REQUIRE(v.solution);
    CHECK(is_consistent(prod, *v.solution));
    CHECK_THROWS_AS(decompose_product(a, make_network(a, 2)), NotAProduct);
}

TEST_CASE("bounded representation search") {
    const auto& e39 = catalog_entry("39_65");
    Network net = make_network(e39.algebra, 2);
    net.set(e39.algebra, 0, 1, atom_bit(e39.algebra.atom("a")));
    auto v = bounded_rep_search(e39, net);
    CHECK(v.status == NspStatus::SAT);
    REQUIRE(v.assignment);
    CHECK(verify_verdict(e39.algebra, net, v));
    Network bad = make_network(e39.algebra, 2);
    bad.set(e39.algebra, 0, 1, e39.algebra.identity);
    bad.set(e39.algebra, 0, 0, atom_bit(e39.algebra.atom("a")));
    CHECK(bounded_rep_search(e39, bad).status == NspStatus::UNSAT);
}

TEST_CASE("divide and conquer scales polynomially") {
    using clock = std::chrono::steady_clock;
    const Algebra& ra = catalog_algebra("24_65");
    auto run = [&](int n) {
        Network net = chain(ra, n, atom_bit(ra.atom("a")) | ra.identity);
        auto t0 = clock::now();
        auto v = dc_24_65(net);
        CHECK(v.status == solve_nsp(catalog_entry("24_65"), induced(net, {0, 1, 2, 3, 4})).status);
        return std::chrono::duration<double>(clock::now() - t0).count();
    };
    double small = run(40) + 1e-3;
    double large = run(80);
    CHECK(large < 64 * small);
}
