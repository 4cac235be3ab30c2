#include <doctest.h>

#include "relalg/algebra.hpp"
#include "relalg/catalog.hpp"

using namespace relalg;

namespace {

Algebra sym(const std::vector<std::string>& names, const std::vector<Triple>& cycles, const std::string& name) {
    return build_algebra(names, 0, identity_converse(), cycles, name);
}

Element el(const Algebra& ra, std::initializer_list<const char*> names) {
    Element e = 0;
    for (const char* n : names) e |= atom_bit(ra.atom(n));
    return e;
}

}  // namespace

TEST_CASE("two-atom algebras from their diversity cycles") {
    Algebra a12 = sym({"id", "a"}, {}, "1_2");
    REQUIRE(a12.valid);
    CHECK(a12.compose(el(a12, {"a"}), el(a12, {"a"})) == el(a12, {"id"}));
    Algebra a22 = sym({"id", "a"}, {{1, 1, 1}}, "2_2");
    REQUIRE(a22.valid);
    CHECK(a22.compose(el(a22, {"a"}), el(a22, {"a"})) == el(a22, {"id", "a"}));
}

TEST_CASE("an associativity failure is flagged, not thrown") {
    // only abb among a,b,c
    Algebra bad = sym({"id", "a", "b", "c"}, {{1, 2, 2}}, "bad");
    CHECK_FALSE(bad.valid);
    CHECK(bad.violated_axiom != 0);
}

TEST_CASE("cycle orbits") {
    auto conv = identity_converse();
    auto o = cycle_orbit(1, 2, 2, conv);
    CHECK(o == std::set<Triple>{{1, 2, 2}, {2, 2, 1}, {2, 1, 2}});
    CHECK(cycle_orbit(1, 1, 1, conv).size() == 1);
    std::array<Atom, kMaxAtoms> c = identity_converse();
    c[1] = 2;
    c[2] = 1;
    auto o2 = cycle_orbit(1, 1, 2, c);
    CHECK(o2.size() <= 6);
    CHECK(o2.count({2, 2, 1}) == 1);
}

TEST_CASE("composition examples") {
    const Algebra& a57 = catalog_algebra("5_7");
    CHECK(a57.compose(el(a57, {"a"}), el(a57, {"a"})) == el(a57, {"id", "b"}));
    const Algebra& a24 = catalog_algebra("24_65");
    CHECK(a24.compose(el(a24, {"a"}), el(a24, {"b"})) == el(a24, {"a", "b"}));
    for (const auto& e : catalog()) {
        const Algebra& ra = e.algebra;
        for (Element x = 0; x <= ra.full(); ++x) CHECK(ra.compose(ra.identity, x) == x);
    }
}

TEST_CASE("cycle law, distributivity and converse over the catalog") {
    for (const auto& e : catalog()) {
        const Algebra& ra = e.algebra;
        CAPTURE(e.name);
        REQUIRE(ra.valid);
        const int n = ra.atom_count;
        for (Atom x = 0; x < n; ++x)
            for (Atom y = 0; y < n; ++y)
                for (Atom z = 0; z < n; ++z) {
                    bool all = true;
                    for (const auto& t : cycle_orbit(x, y, z, ra.conv)) all = all && ra.allowed(t[0], t[1], t[2]);
                    CHECK(ra.allowed(x, y, z) == all);
                }
        for (Element a = 0; a <= ra.full(); ++a)
            for (Element b = 0; b <= ra.full(); ++b) {
                CHECK(ra.converse(ra.compose(a, b)) == ra.compose(ra.converse(b), ra.converse(a)));
                for (Element c = 0; c <= ra.full(); c += 3) {
                    CHECK(ra.compose(a | b, c) == (ra.compose(a, c) | ra.compose(b, c)));
                    CHECK(ra.compose(c, a | b) == (ra.compose(c, a) | ra.compose(c, b)));
                }
            }
    }
}

TEST_CASE("structural flags") {
    auto f = structural_flags(catalog_algebra("65_65"));
    const Algebra& a65 = catalog_algebra("65_65");
    CHECK(f.flexible_atoms == el(a65, {"a", "b", "c"}));
    const Algebra& a51 = catalog_algebra("51_65");
    auto f51 = structural_flags(a51);
    Element bid = el(a51, {"b", "id"});
    CHECK(std::find(f51.equivalence_elements.begin(), f51.equivalence_elements.end(), bid) !=
          f51.equivalence_elements.end());
    auto fn = structural_flags(catalog_algebra("nonintegral"));
    CHECK(fn.simple);
    CHECK_FALSE(fn.integral);
}

TEST_CASE("direct products") {
    Algebra one = trivial_identity_algebra();
    Algebra p = direct_product(one, one);
    REQUIRE(p.valid);
    CHECK(p.atom_count == 2);
    CHECK_FALSE(structural_flags(p).simple);

    const Algebra& a12 = catalog_algebra("1_2");
    const Algebra& a22 = catalog_algebra("2_2");
    Algebra q = direct_product(a12, a22);
    REQUIRE(q.valid);
    CHECK(q.atom_count == 4);
    CHECK_FALSE(structural_flags(q).simple);

    Algebra r = direct_product(a22, degenerate_algebra());
    CHECK(isomorphic(r, a22));
}

TEST_CASE("two-cycle products match the catalog") {
    auto name_of = [](const Algebra& ra) {
        auto m = match_to_catalog(ra);
        return m.entry ? m.entry->name : std::string("none");
    };
    CHECK(name_of(two_cycle_product(catalog_algebra("2_2"), catalog_algebra("5_7"))) == "17_65");
    CHECK(name_of(two_cycle_product(catalog_algebra("1_2"), catalog_algebra("1_3"))) == "1_37");
    CHECK(name_of(two_cycle_product(catalog_algebra("5_7"), catalog_algebra("2_2"))) == "12_65");
    CHECK(name_of(two_cycle_product(catalog_algebra("1_3"), catalog_algebra("1_2"))) == "7_37");
    CHECK(name_of(two_cycle_product(catalog_algebra("2_2"), catalog_algebra("2_2"))) == "4_7");
}

TEST_CASE("two-cycle product restricts to its factors") {
    const Algebra& A = catalog_algebra("5_7");
    const Algebra& B = catalog_algebra("2_2");
    Algebra p = two_cycle_product(A, B);
    REQUIRE(p.valid);
    // identity first, then the diversity atoms of A, then those of B
    const int na = A.atom_count;
    std::vector<Atom> from_a(na), from_b(B.atom_count);
    for (Atom x = 0; x < na; ++x) from_a[x] = x;
    from_b[0] = 0;
    for (Atom x = 1; x < B.atom_count; ++x) from_b[x] = na - 1 + x;
    for (Atom x = 0; x < na; ++x)
        for (Atom y = 0; y < na; ++y)
            for (Atom z = 0; z < na; ++z) CHECK(p.allowed(from_a[x], from_a[y], from_a[z]) == A.allowed(x, y, z));
    for (Atom x = 0; x < B.atom_count; ++x)
        for (Atom y = 0; y < B.atom_count; ++y)
            for (Atom z = 0; z < B.atom_count; ++z)
                CHECK(p.allowed(from_b[x], from_b[y], from_b[z]) == B.allowed(x, y, z));
}
