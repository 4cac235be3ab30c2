#include <doctest.h>

#include <set>

#include "relalg/catalog.hpp"
#include "relalg/io.hpp"

using namespace relalg;

TEST_CASE("enumeration counts") {
    CHECK(enumerate_integral(2, Signature::ALL_SYMMETRIC).size() == 2);
    CHECK(enumerate_integral(3, Signature::ALL_SYMMETRIC).size() == 7);
    CHECK(enumerate_integral(3, Signature::ONE_ASYMMETRIC_PAIR).size() == 3);
    CHECK(enumerate_integral(4, Signature::ALL_SYMMETRIC).size() == 65);
    CHECK(enumerate_integral(4, Signature::ONE_ASYMMETRIC_PAIR).size() == 37);
}

TEST_CASE("enumeration and catalog are in bijection") {
    std::set<std::string> hit;
    for (int k = 2; k <= 4; ++k)
        for (auto sig : {Signature::ALL_SYMMETRIC, Signature::ONE_ASYMMETRIC_PAIR}) {
            if (k == 2 && sig == Signature::ONE_ASYMMETRIC_PAIR) continue;
            for (const auto& ra : enumerate_integral(k, sig)) {
                auto m = match_to_catalog(ra);
                REQUIRE(m.entry != nullptr);
                CHECK(hit.insert(m.entry->name).second);
            }
        }
    int integral = 0;
    for (const auto& e : catalog())
        if (structural_flags(e.algebra).integral) ++integral;
    CHECK(static_cast<int>(hit.size()) == integral);
    CHECK(integral == 114);
}

TEST_CASE("matching examples") {
    auto three = enumerate_integral(3, Signature::ALL_SYMMETRIC);
    int found = 0;
    for (const auto& ra : three) {
        auto m = match_to_catalog(ra);
        if (m.entry->name == "5_7") ++found;
    }
    CHECK(found == 1);

    // 24_65 with b and c swapped
    const Algebra& a24 = catalog_algebra("24_65");
    std::vector<Triple> cycles;
    auto swap_bc = [&](Atom x) { return x == 2 ? 3 : x == 3 ? 2 : x; };
    for (const auto& t : a24.cycles()) cycles.push_back({swap_bc(t[0]), swap_bc(t[1]), swap_bc(t[2])});
    Algebra swapped = build_algebra_explicit(a24.atom_names, a24.identity, a24.conv, cycles, "swapped");
    auto m = match_to_catalog(swapped);
    REQUIRE(m.entry != nullptr);
    CHECK(m.entry->name == "24_65");
}

TEST_CASE("catalog flag invariants") {
    int none_sym = 0, none_asym = 0;
    for (const auto& e : catalog()) {
        CAPTURE(e.name);
        auto f = structural_flags(e.algebra);
        if (!f.integral) continue;
        CHECK((e.repr == Repr::FLEXIBLE) == (f.flexible_atoms != 0));
        if (e.repr == Repr::NONE) {
            CHECK(e.nsp == Nsp::P_TRIVIAL);
            (f.symmetric ? none_sym : none_asym)++;
        }
    }
    CHECK(none_sym == 20);
    CHECK(none_asym == 11);
}

TEST_CASE("flexible atoms in the small algebras") {
    std::set<std::string> flexible;
    for (const auto& e : catalog())
        if (e.algebra.atom_count <= 3 && structural_flags(e.algebra).flexible_atoms) flexible.insert(e.name);
    CHECK(flexible == std::set<std::string>{"2_2", "3_3", "6_7", "7_7"});
}

TEST_CASE("the simple non-integral algebra") {
    auto list = enumerate_simple_nonintegral(4);
    REQUIRE(list.size() == 1);
    CHECK(isomorphic(list[0], catalog_algebra("nonintegral")));
    CHECK_FALSE(structural_flags(list[0]).integral);
    CHECK(structural_flags(list[0]).simple);
}

TEST_CASE("census rows") {
    auto rows = census();
    REQUIRE(rows.size() >= 3);
    std::vector<std::string> text;
    for (const auto& r : rows) {
        CHECK(r.integral <= r.simple);
        CHECK(r.simple <= r.total);
        text.push_back(format_census_row(r));
    }
    auto row = [&](int k) -> const CensusRow& {
        for (const auto& r : rows)
            if (r.atom_count == k) return r;
        FAIL("missing row");
        return rows[0];
    };
    CHECK(row(2).integral == 2);
    CHECK(row(3).integral == 10);
    CHECK(row(3).signature.sym == 7);
    CHECK(row(3).signature.asym == 3);
    CHECK(row(4).integral == 102);
    CHECK(format_census_row(row(4)).rfind("4: 102 integral (65/37)", 0) == 0);
}

TEST_CASE("algebra text round trip") {
    for (const auto& e : catalog()) {
        Algebra back = parse_algebra(format_algebra(e.algebra));
        CHECK(back.comp == e.algebra.comp);
    }
}

TEST_CASE("malformed algebra text") {
    CHECK_THROWS_AS(parse_algebra("atoms: id a\n"), ParseError);
    CHECK_THROWS_AS(parse_algebra("atoms: id a\nidentity: id\nbogus: 1\n"), ParseError);
}
