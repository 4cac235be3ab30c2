#include <doctest.h>

#include <random>

#include "relalg/atom_structure.hpp"
#include "relalg/catalog.hpp"
#include "relalg/io.hpp"
#include "test_util.hpp"

using namespace relalg;

namespace {

OperationTable binary_from_bits(int n, std::uint32_t bits) {
    // bit k picks the second argument for the k-th off-diagonal tuple
    OperationTable op{2, n, std::vector<Atom>(n * n)};
    int k = 0;
    for (Atom x = 0; x < n; ++x)
        for (Atom y = 0; y < n; ++y) op.table[x * n + y] = x == y ? x : ((bits >> k++) & 1u) ? y : x;
    return op;
}

// Any conservative binary polymorphism that is symmetric on {a,b}, by exhaustion.
bool brute_binary(const Algebra& ra, Atom a, Atom b) {
    const int n = ra.atom_count;
    for (std::uint32_t bits = 0; bits < (1u << (n * n - n)); ++bits) {
        auto op = binary_from_bits(n, bits);
        if (restricts_to(op, a, b, PairKind::BINARY_SYMMETRIC) && verify_polymorphism(ra, op)) return true;
    }
    return false;
}

std::optional<std::vector<Atom>> brute_csp(const CspInstance& inst) {
    const size_t n = inst.domains.size();
    std::vector<Atom> cur(n, 0);
    std::function<bool(size_t)> go = [&](size_t i) {
        if (i == n) {
            for (const auto& c : inst.constraints) {
                std::vector<Atom> t;
                for (int v : c.scope) t.push_back(cur[v]);
                const auto& tuples = inst.relations[c.relation].tuples;
                if (std::find(tuples.begin(), tuples.end(), t) == tuples.end()) return false;
            }
            return true;
        }
        for (Atom a : atoms_of(inst.domains[i])) {
            cur[i] = a;
            if (go(i + 1)) return true;
        }
        return false;
    };
    if (go(0)) return cur;
    return std::nullopt;
}

}  // namespace

TEST_CASE("atom structures") {
    auto s12 = build_atom_structure(catalog_algebra("1_2"));
    CHECK(s12.size == 2);
    for (const auto& t : s12.cycles) CHECK((t[0] == 0 || t[1] == 0 || t[2] == 0));
    const Algebra& a65 = catalog_algebra("65_65");
    auto s65 = build_atom_structure(a65);
    for (Atom x = 1; x < 4; ++x)
        for (Atom y = 1; y < 4; ++y)
            for (Atom z = 1; z < 4; ++z)
                CHECK(std::find(s65.cycles.begin(), s65.cycles.end(), Triple{x, y, z}) != s65.cycles.end());
    for (const auto& e : catalog()) {
        if (!structural_flags(e.algebra).symmetric) continue;
        for (auto [x, y] : build_atom_structure(e.algebra).converse_pairs) CHECK(x == y);
    }
}

TEST_CASE("solve_csp edge cases and brute-force agreement") {
    CspInstance empty;
    auto s = solve_csp(empty);
    REQUIRE(s);
    CHECK(s->empty());
    CspInstance dead;
    dead.domains = {0b11, 0};
    CHECK_FALSE(solve_csp(dead).has_value());

    std::mt19937 rng(31);
    const Algebra& ra = catalog_algebra("24_65");
    for (int t = 0; t < 150; ++t) {
        std::uniform_int_distribution<int> size(2, 4);
        auto csp = nsp_to_csp(ra, testutil::random_network(ra, size(rng), rng, 0.2));
        if (csp.trivially_unsat) continue;
        CHECK(solve_csp(csp.instance).has_value() == brute_csp(csp.instance).has_value());
        auto lex = solve_csp(csp.instance, UINT64_MAX, nullptr, true);
        auto brute = brute_csp(csp.instance);
        CHECK(lex == brute);
    }
}

TEST_CASE("nsp_to_csp agrees with solve_ncp") {
    std::mt19937 rng(32);
    for (const char* name : {"7_7", "65_65", "24_65", "30_37"}) {
        const Algebra& ra = catalog_algebra(name);
        CAPTURE(name);
        for (int t = 0; t < 200; ++t) {
            std::uniform_int_distribution<int> size(1, 5);
            Network net = testutil::random_network(ra, size(rng), rng, 0.2);
            auto viacsp = solve_via_atom_structure(ra, net);
            CHECK(viacsp.has_value() == solve_ncp(ra, net).has_value());
            if (viacsp) {
                CHECK(is_consistent(ra, *viacsp));
                for (int i = 0; i < net.n * net.n; ++i) CHECK((viacsp->labels[i] & ~net.labels[i]) == 0);
            }
        }
    }
    const Algebra& a24 = catalog_algebra("24_65");
    CHECK_FALSE(solve_via_atom_structure(a24, atomic_network(a24, 3, {{0, 1, "a"}, {1, 2, "b"}, {0, 2, "c"}})));
    CHECK(solve_via_atom_structure(a24, make_network(a24, 2)).has_value());
    CHECK_THROWS_AS(nsp_to_csp(catalog_algebra("5_7"), make_network(catalog_algebra("5_7"), 2)), NotFullyUniversal);
}

TEST_CASE("embedded polymorphisms verify") {
    auto list = embedded_polymorphisms();
    CHECK(list.size() >= 18);
    for (const auto& p : list) {
        CAPTURE(p.label);
        CAPTURE(p.algebras[0]);
        const Algebra& ra = catalog_algebra(p.algebras[0]);
        CHECK(is_conservative(p.op));
        CHECK(verify_polymorphism(ra, p.op));
        if (p.binary_symmetric)
            CHECK(is_binary_symmetric(p.op));
        else
            CHECK(is_wnu(p.op));
    }
}

TEST_CASE("a broken table is rejected") {
    for (const auto& p : embedded_polymorphisms()) {
        if (p.algebras[0] != "65_65") continue;
        auto op = p.op;
        const Algebra& ra = catalog_algebra("65_65");
        Atom a = ra.atom("a"), b = ra.atom("b"), c = ra.atom("c");
        op.at({a, b}) = c;
        CHECK_FALSE(is_conservative(op));
        CHECK_FALSE(verify_polymorphism(ra, op));
    }
}

TEST_CASE("conservative condition examples") {
    const Algebra& a34 = catalog_algebra("34_65");
    auto r34 = bulatov_condition(a34, 1000000000ULL, true);
    CHECK(r34.status == BulatovStatus::FAIL);
    std::pair<Atom, Atom> bc{a34.atom("b"), a34.atom("c")};
    CHECK(std::find(r34.failing_pairs.begin(), r34.failing_pairs.end(), bc) != r34.failing_pairs.end());
    CHECK(bulatov_condition(catalog_algebra("65_65")).status == BulatovStatus::PASS);
    auto r19 = bulatov_condition(catalog_algebra("19_65"));
    CHECK(r19.status == BulatovStatus::PASS);
    for (const auto& w : r19.witnesses) {
        CHECK(verify_polymorphism(catalog_algebra("19_65"), w.op));
        CHECK(restricts_to(w.op, w.a, w.b, w.kind));
    }
}

TEST_CASE("binary pair search agrees with exhaustion") {
    std::vector<std::string> names;
    for (const auto& e : catalog())
        if (e.algebra.atom_count == 3 && is_representable(e.repr)) names.push_back(e.name);
    for (const char* extra : {"2_2", "1_2", "8_65", "20_65", "34_65", "5_37"}) names.push_back(extra);
    for (const auto& name : names) {
        const Algebra& ra = catalog_algebra(name);
        CAPTURE(name);
        for (Atom a = 0; a < ra.atom_count; ++a)
            for (Atom b = a + 1; b < ra.atom_count; ++b) {
                auto w = search_pair(ra, a, b, 100000000);
                bool binary = w && w->kind == PairKind::BINARY_SYMMETRIC;
                CHECK(binary == brute_binary(ra, a, b));
                if (w) {
                    CHECK(verify_polymorphism(ra, w->op));
                    CHECK(restricts_to(w->op, a, b, w->kind));
                }
            }
    }
}

TEST_CASE("operation text round trip") {
    for (const auto& p : embedded_polymorphisms()) {
        const Algebra& ra = catalog_algebra(p.algebras[0]);
        auto back = parse_operation(ra, format_operation(ra, p.op));
        CHECK(back.table == p.op.table);
    }
    const Algebra& ra = catalog_algebra("2_2");
    CHECK_THROWS_AS(parse_operation(ra, "id a -> a\n"), ParseError);
    CHECK_THROWS_AS(parse_operation(ra, "arity: 2\nid q -> a\n"), ParseError);
}
