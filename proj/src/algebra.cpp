#include "relalg/algebra.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

namespace relalg {

int popcount(Element e) { return std::popcount(e); }

Atom lowest_atom(Element e) { return e == 0 ? -1 : std::countr_zero(e); }

std::vector<Atom> atoms_of(Element e) {
    std::vector<Atom> out;
    while (e) {
        out.push_back(std::countr_zero(e));
        e &= e - 1;
    }
    return out;
}

AxiomViolation::AxiomViolation(int axiom_index, Triple w)
    : std::runtime_error("axiom " + std::to_string(axiom_index) + " violated"),
      axiom(axiom_index), witness(w) {}

Element Algebra::converse(Element e) const {
    Element out = 0;
    for (Atom a : atoms_of(e)) out |= atom_bit(conv[a]);
    return out;
}

Element Algebra::compose(Element e1, Element e2) const {
    Element out = 0;
    for (Element x = e1; x; x &= x - 1) {
        Atom a = std::countr_zero(x);
        for (Element y = e2; y; y &= y - 1) out |= comp[a][std::countr_zero(y)];
    }
    return out;
}

Element compose(const Algebra& ra, Element e1, Element e2) { return ra.compose(e1, e2); }

Atom Algebra::atom(const std::string& atom_name) const {
    for (int i = 0; i < atom_count; ++i)
        if (atom_names[i] == atom_name) return i;
    throw std::invalid_argument("unknown atom '" + atom_name + "' in algebra " + name);
}

Element Algebra::element(const std::vector<std::string>& names) const {
    Element e = 0;
    for (const auto& n : names) {
        if (n == "*") return full();
        e |= atom_bit(atom(n));
    }
    return e;
}

std::string Algebra::element_name(Element e) const {
    if (e == full() && atom_count > 1) return "{*}";
    std::string s = "{";
    bool first = true;
    for (Atom a : atoms_of(e)) {
        if (!first) s += ",";
        s += atom_names[a];
        first = false;
    }
    return s + "}";
}

std::string Algebra::triple_name(const Triple& t) const {
    return atom_names[t[0]] + "." + atom_names[t[1]] + "." + atom_names[t[2]];
}

Atom Algebra::source_identity(Atom x) const {
    for (Atom e : atoms_of(identity))
        if (allowed(e, x, x)) return e;
    return -1;
}

std::vector<Triple> Algebra::cycles() const {
    std::vector<Triple> out;
    for (Atom x = 0; x < atom_count; ++x)
        for (Atom y = 0; y < atom_count; ++y)
            for (Atom z : atoms_of(comp[x][y])) out.push_back({x, y, z});
    return out;
}

void Algebra::require_valid() const {
    if (!valid) throw AxiomViolation(violated_axiom, witness);
}

std::set<Triple> cycle_orbit(Atom x, Atom y, Atom z, const std::array<Atom, kMaxAtoms>& conv) {
    return {Triple{x, y, z},
            Triple{conv[x], z, y},
            Triple{z, conv[y], x},
            Triple{conv[z], x, conv[y]},
            Triple{y, conv[z], conv[x]},
            Triple{conv[y], conv[x], conv[z]}};
}

std::array<Atom, kMaxAtoms> identity_converse() {
    std::array<Atom, kMaxAtoms> c{};
    std::iota(c.begin(), c.end(), 0);
    return c;
}

namespace {

void check_converse(int n, Element identity, const std::array<Atom, kMaxAtoms>& conv) {
    for (Atom x = 0; x < n; ++x) {
        if (conv[x] < 0 || conv[x] >= n || conv[conv[x]] != x)
            throw InvalidConverse("converse is not an involution at atom " + std::to_string(x));
        if (contains(identity, x) && conv[x] != x)
            throw InvalidConverse("converse moves identity atom " + std::to_string(x));
    }
}

void add_orbit(Algebra& ra, const Triple& t) {
    for (const auto& u : cycle_orbit(t[0], t[1], t[2], ra.conv)) ra.comp[u[0]][u[1]] |= atom_bit(u[2]);
}

void fail(Algebra& ra, int axiom, Triple w) {
    ra.valid = false;
    ra.violated_axiom = axiom;
    ra.witness = w;
}

}  // namespace

void check_axioms(Algebra& ra) {
    const int n = ra.atom_count;
    ra.valid = true;
    ra.violated_axiom = 0;
    ra.witness = {0, 0, 0};
    // Axioms 1, 3 and 6 hold by the bitmask construction; the rest are checked on atoms.
    for (Atom x = 0; x < n; ++x)
        for (Atom y = 0; y < n; ++y)
            for (Atom z = 0; z < n; ++z)
                if (ra.compose(ra.comp[x][y], atom_bit(z)) != ra.compose(atom_bit(x), ra.comp[y][z]))
                    return fail(ra, 2, {x, y, z});
    for (Atom x = 0; x < n; ++x)
        if (ra.compose(atom_bit(x), ra.identity) != atom_bit(x))
            return fail(ra, 4, {x, lowest_atom(ra.identity), x});
    for (Atom x = 0; x < n; ++x)
        if (ra.conv[ra.conv[x]] != x) return fail(ra, 5, {x, ra.conv[x], x});
    for (Atom x = 0; x < n; ++x)
        for (Atom y = 0; y < n; ++y)
            if (ra.converse(ra.comp[x][y]) != ra.comp[ra.conv[y]][ra.conv[x]])
                return fail(ra, 7, {x, y, lowest_atom(ra.converse(ra.comp[x][y]) ^
                                                      ra.comp[ra.conv[y]][ra.conv[x]])});
    // ă∘¬(a∘b) must miss b; by monotonicity atoms suffice.
    for (Atom a = 0; a < n; ++a)
        for (Atom b = 0; b < n; ++b) {
            Element rest = ra.full() & ~ra.comp[a][b];
            for (Atom c : atoms_of(rest))
                if (ra.allowed(ra.conv[a], c, b)) return fail(ra, 8, {a, b, c});
        }
}

Algebra build_algebra_explicit(const std::vector<std::string>& atom_names, Element identity,
                               const std::array<Atom, kMaxAtoms>& conv,
                               const std::vector<Triple>& cycles, const std::string& name) {
    const int n = static_cast<int>(atom_names.size());
    if (n > kMaxAtoms) throw std::invalid_argument("more than 8 atoms");
    check_converse(n, identity, conv);
    Algebra ra;
    ra.name = name;
    ra.atom_count = n;
    ra.atom_names = atom_names;
    ra.conv = conv;
    for (int i = n; i < kMaxAtoms; ++i) ra.conv[i] = i;
    ra.identity = identity;
    for (const auto& t : cycles) {
        for (Atom a : t)
            if (a < 0 || a >= n) throw std::invalid_argument("cycle mentions unknown atom");
        add_orbit(ra, t);
    }
    check_axioms(ra);
    return ra;
}

Algebra build_algebra(const std::vector<std::string>& atom_names, Atom identity,
                      const std::array<Atom, kMaxAtoms>& conv,
                      const std::vector<Triple>& diversity_cycles, const std::string& name) {
    const int n = static_cast<int>(atom_names.size());
    if (identity < 0 || identity >= n) throw InvalidConverse("identity atom out of range");
    check_converse(n, atom_bit(identity), conv);
    std::vector<Triple> all;
    for (const auto& t : diversity_cycles) {
        for (Atom a : t)
            if (a == identity) throw std::invalid_argument("diversity cycle mentions the identity");
        all.push_back(t);
    }
    for (Atom x = 0; x < n; ++x) all.push_back({x, conv[x], identity});
    return build_algebra_explicit(atom_names, atom_bit(identity), conv, all, name);
}

StructuralFlags structural_flags(const Algebra& ra) {
    StructuralFlags f;
    const int n = ra.atom_count;
    f.symmetric = true;
    for (Atom x = 0; x < n; ++x) f.symmetric = f.symmetric && ra.conv[x] == x;
    f.integral = n > 0;
    for (Atom x = 0; x < n; ++x)
        for (Atom y = 0; y < n; ++y) f.integral = f.integral && ra.comp[x][y] != 0;
    f.simple = n > 0;
    for (Atom x = 0; x < n; ++x)
        f.simple = f.simple && ra.compose(ra.compose(ra.full(), atom_bit(x)), ra.full()) == ra.full();
    Element div = ra.diversity();
    for (Atom a : atoms_of(div)) {
        bool flexible = true;
        for (Atom x : atoms_of(div))
            for (Atom y : atoms_of(div)) flexible = flexible && ra.allowed(x, y, a);
        if (flexible) f.flexible_atoms |= atom_bit(a);
    }
    for (Element e = 0; e <= ra.full(); ++e) {
        if ((e & ra.identity) != ra.identity) continue;
        if (ra.converse(e) != e) continue;
        if ((ra.compose(e, e) & ~e) != 0) continue;
        f.equivalence_elements.push_back(e);
    }
    return f;
}

Algebra trivial_identity_algebra(const std::string& atom_name) {
    return build_algebra({atom_name}, 0, identity_converse(), {}, "1_1");
}

Algebra degenerate_algebra() {
    Algebra ra;
    ra.name = "0";
    ra.conv = identity_converse();
    check_axioms(ra);
    return ra;
}

namespace {

std::vector<std::string> disjoint_names(const std::vector<std::string>& taken,
                                        const std::vector<std::string>& names,
                                        const std::vector<bool>& skip) {
    std::vector<std::string> out;
    std::vector<std::string> used = taken;
    for (size_t i = 0; i < names.size(); ++i) {
        if (skip[i]) {
            out.emplace_back();
            continue;
        }
        std::string s = names[i];
        while (std::find(used.begin(), used.end(), s) != used.end()) s += "'";
        used.push_back(s);
        out.push_back(s);
    }
    return out;
}

}  // namespace

Algebra direct_product(const Algebra& a, const Algebra& b) {
    a.require_valid();
    b.require_valid();
    const int n = a.atom_count + b.atom_count;
    if (n > kMaxAtoms) throw std::invalid_argument("product exceeds 8 atoms");
    std::vector<std::string> names = a.atom_names;
    auto bn = disjoint_names(a.atom_names, b.atom_names, std::vector<bool>(b.atom_count, false));
    names.insert(names.end(), bn.begin(), bn.end());
    std::array<Atom, kMaxAtoms> conv = identity_converse();
    Element identity = a.identity | (b.identity << a.atom_count);
    std::vector<Triple> cycles;
    auto info = std::make_shared<ProductInfo>();
    info->first = std::make_shared<Algebra>(a);
    info->second = std::make_shared<Algebra>(b);
    for (Atom x = 0; x < a.atom_count; ++x) {
        conv[x] = a.conv[x];
        info->origin.push_back({0, x});
    }
    for (Atom x = 0; x < b.atom_count; ++x) {
        conv[a.atom_count + x] = a.atom_count + b.conv[x];
        info->origin.push_back({1, x});
    }
    for (const auto& t : a.cycles()) cycles.push_back(t);
    for (const auto& t : b.cycles())
        cycles.push_back({t[0] + a.atom_count, t[1] + a.atom_count, t[2] + a.atom_count});
    Algebra out = build_algebra_explicit(names, identity, conv, cycles,
                                         a.name + "x" + b.name);
    if (a.atom_count > 0 && b.atom_count > 0) out.product = info;
    return out;
}

Algebra two_cycle_product(const Algebra& a, const Algebra& b) {
    a.require_valid();
    b.require_valid();
    if (!structural_flags(a).integral || !structural_flags(b).integral)
        throw AxiomViolation(0, {0, 0, 0});
    const Atom ia = lowest_atom(a.identity);
    const Atom ib = lowest_atom(b.identity);
    std::vector<std::string> names{a.atom_names[ia]};
    std::vector<Atom> amap(a.atom_count), bmap(b.atom_count);
    amap[ia] = 0;
    for (Atom x = 0; x < a.atom_count; ++x)
        if (x != ia) {
            amap[x] = static_cast<Atom>(names.size());
            names.push_back(a.atom_names[x]);
        }
    std::vector<bool> skip(b.atom_count, false);
    skip[ib] = true;
    auto bn = disjoint_names(names, b.atom_names, skip);
    bmap[ib] = 0;
    for (Atom x = 0; x < b.atom_count; ++x)
        if (x != ib) {
            bmap[x] = static_cast<Atom>(names.size());
            names.push_back(bn[x]);
        }
    if (names.size() > static_cast<size_t>(kMaxAtoms)) throw std::invalid_argument("product exceeds 8 atoms");
    std::array<Atom, kMaxAtoms> conv = identity_converse();
    for (Atom x = 0; x < a.atom_count; ++x) conv[amap[x]] = amap[a.conv[x]];
    for (Atom x = 0; x < b.atom_count; ++x) conv[bmap[x]] = bmap[b.conv[x]];
    std::vector<Triple> cycles;
    for (const auto& t : a.cycles())
        if (t[0] != ia && t[1] != ia && t[2] != ia) cycles.push_back({amap[t[0]], amap[t[1]], amap[t[2]]});
    for (const auto& t : b.cycles())
        if (t[0] != ib && t[1] != ib && t[2] != ib) cycles.push_back({bmap[t[0]], bmap[t[1]], bmap[t[2]]});
    for (Atom x = 0; x < a.atom_count; ++x)
        for (Atom y = 0; y < b.atom_count; ++y)
            if (x != ia && y != ib) cycles.push_back({amap[x], bmap[y], bmap[y]});
    Algebra out = build_algebra(names, 0, conv, cycles, a.name + "[" + b.name + "]");
    out.require_valid();
    return out;
}

std::vector<std::vector<Atom>> isomorphisms(const Algebra& ra, const Algebra& rb, bool first_only) {
    std::vector<std::vector<Atom>> out;
    if (ra.atom_count != rb.atom_count) return out;
    const int n = ra.atom_count;
    std::vector<Atom> perm(n);
    std::vector<bool> used(n, false);
    // Extend the partial map atom by atom, checking identity, converse and cycles as soon as defined.
    auto rec = [&](auto&& self, int i) -> bool {
        if (i == n) {
            out.push_back(perm);
            return first_only;
        }
        for (Atom t = 0; t < n; ++t) {
            if (used[t]) continue;
            if (ra.is_identity(i) != rb.is_identity(t)) continue;
            Atom ci = ra.conv[i];
            if (ci < i && perm[ci] != rb.conv[t]) continue;
            if (ci == i && rb.conv[t] != t) continue;
            perm[i] = t;
            bool ok = true;
            for (Atom x = 0; x <= i && ok; ++x)
                for (Atom y = 0; y <= i && ok; ++y)
                    for (Atom z = 0; z <= i && ok; ++z)
                        if (x == i || y == i || z == i)
                            ok = ra.allowed(x, y, z) == rb.allowed(perm[x], perm[y], perm[z]);
            if (!ok) continue;
            used[t] = true;
            if (self(self, i + 1)) return true;
            used[t] = false;
        }
        return false;
    };
    rec(rec, 0);
    return out;
}

bool isomorphic(const Algebra& ra, const Algebra& rb) { return !isomorphisms(ra, rb, true).empty(); }

std::vector<std::vector<Atom>> automorphisms(const Algebra& ra) { return isomorphisms(ra, ra, false); }

}  // namespace relalg
