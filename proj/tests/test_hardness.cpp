#include <doctest.h>

#include <algorithm>

#include "relalg/catalog.hpp"
#include "relalg/hardness.hpp"
#include "relalg/io.hpp"

using namespace relalg;

namespace {

const Gadget& gadget(const std::string& name) {
    for (const auto& g : embedded_gadgets())
        if (g.name == name) return g;
    throw std::out_of_range(name);
}

}  // namespace

TEST_CASE("gadget examples") {
    const Gadget& g27 = gadget("27_65_equal");
    const Algebra& a27 = catalog_algebra("27_65");
    REQUIRE(g27.claims.size() == 1);
    CHECK(verify_gadget(a27, g27.claims[0]).pass);

    const Gadget& t31 = gadget("31_65_negative");
    CHECK(verify_gadget(catalog_algebra("31_65"), t31.claims[0]).pass);

    GadgetClaim relaxed = g27.claims[0];
    int z1 = relaxed.net.vertex("z1"), z2 = relaxed.net.vertex("z2");
    relaxed.net.set(a27, z1, z2, a27.full());
    auto v = verify_gadget(a27, relaxed);
    CHECK_FALSE(v.pass);
    REQUIRE(v.counterexample);
    CHECK(is_consistent(a27, *v.counterexample));
    CHECK(v.counterexample->at(0, 3) != v.counterexample->at(2, 5));
}

TEST_CASE("equality gadgets realize both values") {
    for (const auto& g : embedded_gadgets()) {
        const Algebra& ra = catalog_algebra(g.algebra);
        for (const auto& c : g.claims) {
            if (c.kind != GadgetClaim::Kind::EQUAL_ON) continue;
            CAPTURE(g.name);
            auto real = realizability_claims(ra, c);
            CHECK(real.size() == static_cast<size_t>(popcount(c.net.at(c.edges[0].first, c.edges[0].second))));
            for (const auto& r : real) {
                auto v = verify_gadget(ra, r);
                CHECK(v.pass);
                REQUIRE(v.witness);
                CHECK(is_consistent(ra, *v.witness));
            }
        }
    }
}

TEST_CASE("gadget suite") {
    auto report = gadget_suite();
    CHECK(report.size() >= 30);
    for (const auto& e : report) {
        CAPTURE(e.gadget);
        CAPTURE(e.claim);
        CHECK(e.pass);
        CHECK_FALSE(e.budget_exceeded);
    }
    std::vector<std::string> seen;
    for (const auto& e : report) seen.push_back(e.gadget);
    for (const char* name : {"19_37_equal", "27_65_equal", "29_65_equal", "30_37_negative", "31_65_clause",
                             "33_37_nae", "35_37_unequal"})
        CHECK(std::find(seen.begin(), seen.end(), name) != seen.end());

    CHECK(gadget_suite({}).empty());

    std::vector<Gadget> tampered{gadget("27_65_equal")};
    const Algebra& a27 = catalog_algebra("27_65");
    auto& net = tampered[0].claims[0].net;
    net.set(a27, net.vertex("x1"), net.vertex("z1"), a27.full());
    auto bad = gadget_suite(tampered);
    REQUIRE_FALSE(bad.empty());
    CHECK_FALSE(bad[0].pass);
    CHECK(bad[0].counterexample.has_value());

    auto par = gadget_suite(embedded_gadgets(), 4);
    REQUIRE(par.size() == report.size());
    for (size_t i = 0; i < par.size(); ++i) {
        CHECK(par[i].claim == report[i].claim);
        CHECK(par[i].pass == report[i].pass);
    }
}

TEST_CASE("gadget budget") {
    const Gadget& g = gadget("29_65_equal");
    const Algebra& ra = catalog_algebra("29_65");
    auto real = realizability_claims(ra, g.claims[0]);
    REQUIRE_FALSE(real.empty());
    CHECK_THROWS_AS(verify_gadget(ra, real[0], 0), BudgetExceeded);
    auto r = gadget_suite({g}, 1, 0);
    bool over = false;
    for (const auto& e : r) {
        over = over || e.budget_exceeded;
        if (e.budget_exceeded) CHECK_FALSE(e.pass);
    }
    CHECK(over);
}

TEST_CASE("claim parsing") {
    const Algebra& ra = catalog_algebra("30_37");
    Network net = make_network(ra, 4);
    auto eq = parse_claim(ra, net, "equal (0,1) (2,3)");
    CHECK(eq.kind == GadgetClaim::Kind::EQUAL_ON);
    CHECK(eq.edges == std::vector<Edge>{{0, 1}, {2, 3}});
    auto im = parse_claim(ra, net, "implies (0,1) = r -> (2,3) = r~");
    CHECK(im.kind == GadgetClaim::Kind::IMPLIES);
    CHECK(im.atoms == std::vector<Atom>{ra.atom("r"), ra.atom("r~")});
    CHECK_THROWS_AS(parse_claim(ra, net, "equal (0,1)"), ParseError);
    CHECK_THROWS_AS(parse_claim(ra, net, "some (0,9) = r"), ParseError);
    CHECK_THROWS_AS(parse_claim(ra, net, "some (0,1) = q"), ParseError);
    CHECK_THROWS_AS(parse_claim(ra, net, "bogus (0,1)"), ParseError);
    CHECK_THROWS_AS(parse_gadget("vertices: 2\nclaim: equal (0,1) (0,1)\n"), ParseError);
}

TEST_CASE("gadget text round trip") {
    for (const auto& g : embedded_gadgets()) {
        CAPTURE(g.name);
        const Algebra& ra = catalog_algebra(g.algebra);
        Gadget back = parse_gadget(format_gadget(ra, g), g.name);
        CHECK(back.algebra == g.algebra);
        CHECK(back.net == g.net);
        REQUIRE(back.claims.size() == g.claims.size());
        for (size_t i = 0; i < g.claims.size(); ++i) CHECK(back.claims[i].text == g.claims[i].text);
    }
}

TEST_CASE("pcsp condition") {
    auto has = [](const std::vector<std::pair<Atom, Atom>>& v, std::pair<Atom, Atom> p) {
        return std::find(v.begin(), v.end(), p) != v.end();
    };
    for (const char* name : {"51_65", "56_65"}) {
        const Algebra& ra = catalog_algebra(name);
        CHECK(has(pcsp_condition(ra), {ra.atom("a"), ra.atom("c")}));
    }
    CHECK(pcsp_condition(catalog_algebra("65_65")).empty());
    for (const auto& e : catalog()) {
        const Algebra& ra = e.algebra;
        auto got = pcsp_condition(ra);
        for (Atom p = 0; p < ra.atom_count; ++p)
            for (Atom q = 0; q < ra.atom_count; ++q) {
                bool literal = p != q && !ra.is_identity(p) && !ra.is_identity(q) && ra.conv[p] == p &&
                               ra.conv[q] == q && !ra.allowed(p, p, p) && !ra.allowed(q, q, q) && ra.allowed(p, q, q);
                CHECK(has(got, {p, q}) == literal);
            }
    }
}

TEST_CASE("Ramsey boundary") {
    auto r = ramsey_boundary_check();
    CHECK(r.pass());
    CHECK(r.k5_witness.has_value());
    CHECK_FALSE(has_monochromatic_triangle(5, *r.k5_witness));
    CHECK(r.k6_checked == (1u << 15));
    CHECK(has_monochromatic_triangle(3, 0));
    CHECK(has_monochromatic_triangle(3, 0b111));
    CHECK_FALSE(has_monochromatic_triangle(3, 0b001));
}
