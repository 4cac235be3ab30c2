#include "relalg/atom_structure.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

#include "relalg/catalog.hpp"
#include "relalg/io.hpp"

namespace relalg {

AtomStructure build_atom_structure(const Algebra& ra) {
    AtomStructure s;
    s.size = ra.atom_count;
    for (Atom a = 0; a < ra.atom_count; ++a) s.converse_pairs.push_back({a, ra.conv[a]});
    s.cycles = ra.cycles();
    return s;
}

namespace {

struct Solver {
    const CspInstance& inst;
    std::uint64_t budget;
    bool lex;
    std::uint64_t nodes = 0;
    std::vector<std::vector<int>> by_var;  // constraints per variable
    std::vector<bool> repeated;            // constraint scope repeats a variable

    Solver(const CspInstance& i, std::uint64_t b, bool l) : inst(i), budget(b), lex(l) {
        by_var.resize(inst.domains.size());
        repeated.resize(inst.constraints.size(), false);
        for (size_t c = 0; c < inst.constraints.size(); ++c) {
            const auto& sc = inst.constraints[c].scope;
            for (size_t p = 0; p < sc.size(); ++p) {
                bool first = std::find(sc.begin(), sc.begin() + p, sc[p]) == sc.begin() + p;
                if (first) by_var[sc[p]].push_back(static_cast<int>(c));
                else repeated[c] = true;
            }
        }
    }

    bool tuple_fits(const CspConstraint& con, bool rep, const std::vector<Atom>& t, const std::vector<Element>& dom) const {
        for (size_t j = 0; j < t.size(); ++j) {
            if (!contains(dom[con.scope[j]], t[j])) return false;
            if (rep)
                for (size_t k = 0; k < j; ++k)
                    if (con.scope[k] == con.scope[j] && t[k] != t[j]) return false;
        }
        return true;
    }

    // Shrinks the domains of one constraint's scope to supported values; false on a wipe-out.
    bool revise(int c, std::vector<Element>& dom, std::vector<int>& changed) const {
        const auto& con = inst.constraints[c];
        const auto& rel = inst.relations[con.relation];
        std::vector<Element> support(con.scope.size(), 0);
        for (const auto& t : rel.tuples)
            if (tuple_fits(con, repeated[c], t, dom))
                for (size_t j = 0; j < t.size(); ++j) support[j] |= atom_bit(t[j]);
        for (size_t j = 0; j < con.scope.size(); ++j) {
            const int v = con.scope[j];
            Element nd = dom[v] & support[j];
            if (nd != dom[v]) {
                dom[v] = nd;
                changed.push_back(v);
                if (nd == 0) return false;
            }
        }
        return true;
    }

    bool propagate(std::vector<Element>& dom, std::deque<int> queue) const {
        std::vector<bool> queued(inst.constraints.size(), false);
        for (int c : queue) queued[c] = true;
        std::vector<int> changed;
        while (!queue.empty()) {
            int c = queue.front();
            queue.pop_front();
            queued[c] = false;
            changed.clear();
            if (!revise(c, dom, changed)) return false;
            for (int v : changed)
                for (int c2 : by_var[v])
                    if (!queued[c2] && c2 != c) {
                        queued[c2] = true;
                        queue.push_back(c2);
                    }
        }
        return true;
    }

    std::optional<std::vector<Element>> run(std::vector<Element> dom) {
        if (++nodes > budget) throw BudgetExceeded();
        int best = -1;
        for (size_t v = 0; v < dom.size(); ++v)
            if (popcount(dom[v]) > 1 && (best < 0 || popcount(dom[v]) < popcount(dom[best]))) {
                best = static_cast<int>(v);
                if (lex) break;
            }
        if (best < 0) return dom;
        for (Atom a : atoms_of(dom[best])) {
            std::vector<Element> next = dom;
            next[best] = atom_bit(a);
            std::deque<int> queue(by_var[best].begin(), by_var[best].end());
            if (!propagate(next, queue)) continue;
            if (auto r = run(std::move(next))) return r;
        }
        return std::nullopt;
    }
};

}  // namespace

std::optional<std::vector<Atom>> solve_csp(const CspInstance& inst, std::uint64_t budget, CspStats* stats, bool lex) {
    Solver s(inst, budget, lex);
    std::vector<Element> dom = inst.domains;
    for (Element d : dom)
        if (d == 0) return std::nullopt;
    std::deque<int> all(inst.constraints.size());
    std::iota(all.begin(), all.end(), 0);
    std::optional<std::vector<Element>> res;
    try {
        if (s.propagate(dom, all)) res = s.run(dom);
    } catch (...) {
        if (stats) stats->nodes += s.nodes;
        throw;
    }
    if (stats) stats->nodes += s.nodes;
    if (!res) return std::nullopt;
    std::vector<Atom> out;
    for (Element d : *res) out.push_back(lowest_atom(d));
    return out;
}

namespace {

CspRelation converse_relation(const Algebra& ra) {
    CspRelation e{2, {}};
    for (Atom a = 0; a < ra.atom_count; ++a) e.tuples.push_back({a, ra.conv[a]});
    return e;
}

CspRelation cycle_relation(const Algebra& ra) {
    CspRelation r{3, {}};
    for (const auto& t : ra.cycles()) r.tuples.push_back({t[0], t[1], t[2]});
    return r;
}

}  // namespace

NspCsp nsp_to_csp(const Algebra& ra, const Network& net) {
    const CatalogEntry* entry = nullptr;
    try {
        entry = match_to_catalog(ra).entry;
    } catch (const NotInCatalog&) {
        throw NotFullyUniversal("algebra '" + ra.name + "' is not a catalog entry");
    }
    if (!is_fully_universal(entry->repr))
        throw NotFullyUniversal(entry->name + " has no fully universal representation");
    NspCsp out;
    const int n = net.n;
    // merge vertices forced equal by an identity-only label
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int i = 0; i < n; ++i) {
        if ((net.at(i, i) & ra.identity) == 0) out.trivially_unsat = true;
        for (int j = i + 1; j < n; ++j)
            if (net.at(i, j) != 0 && (net.at(i, j) & ~ra.identity) == 0 && is_singleton(ra.identity))
                parent[find(j)] = find(i);
    }
    out.vertex_class.assign(n, -1);
    int m = 0;
    for (int i = 0; i < n; ++i)
        if (find(i) == i) out.vertex_class[i] = m++;
    for (int i = 0; i < n; ++i) out.vertex_class[i] = out.vertex_class[find(i)];
    // label between merged vertices; the same class must admit the identity
    std::vector<Element> lab(static_cast<size_t>(m) * m, ra.full());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int ci = out.vertex_class[i], cj = out.vertex_class[j];
            if (ci == cj) {
                if ((net.at(i, j) & ra.identity) == 0) out.trivially_unsat = true;
                continue;
            }
            lab[static_cast<size_t>(ci) * m + cj] &= net.at(i, j);
            lab[static_cast<size_t>(cj) * m + ci] &= ra.converse(net.at(i, j));
        }
    auto& inst = out.instance;
    inst.relations.push_back(converse_relation(ra));
    inst.relations.push_back(cycle_relation(ra));
    std::vector<int> var(static_cast<size_t>(m) * m, -1);
    for (int x = 0; x < m; ++x)
        for (int y = x + 1; y < m; ++y) {
            var[static_cast<size_t>(x) * m + y] = static_cast<int>(inst.domains.size());
            inst.domains.push_back(lab[static_cast<size_t>(x) * m + y]);
            out.pairs.push_back({x, y});
        }
    for (int x = 0; x < m; ++x)
        for (int y = x + 1; y < m; ++y)
            for (int z = y + 1; z < m; ++z)
                inst.constraints.push_back({{var[static_cast<size_t>(x) * m + y], var[static_cast<size_t>(y) * m + z],
                                             var[static_cast<size_t>(x) * m + z]},
                                            1});
    return out;
}

Network csp_solution_network(const Algebra& ra, const Network& net, const NspCsp& csp, const std::vector<Atom>& sol) {
    const int n = net.n;
    const Atom id = lowest_atom(ra.identity);
    Network out = net;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int ci = csp.vertex_class[i], cj = csp.vertex_class[j];
            if (ci == cj) {
                out.ref(i, j) = atom_bit(id);
                continue;
            }
            bool flip = ci > cj;
            if (flip) std::swap(ci, cj);
            auto it = std::find(csp.pairs.begin(), csp.pairs.end(), std::make_pair(ci, cj));
            Atom a = sol[it - csp.pairs.begin()];
            out.ref(i, j) = atom_bit(flip ? ra.conv[a] : a);
        }
    return out;
}

std::optional<Network> solve_via_atom_structure(const Algebra& ra, const Network& net) {
    NspCsp csp = nsp_to_csp(ra, net);
    if (csp.trivially_unsat) return std::nullopt;
    auto sol = solve_csp(csp.instance);
    if (!sol) return std::nullopt;
    return csp_solution_network(ra, net, csp, *sol);
}

namespace {

size_t index_of(int size, const std::vector<Atom>& args) {
    size_t idx = 0;
    for (Atom a : args) idx = idx * size + a;
    return idx;
}

std::vector<Atom> tuple_of(int size, int arity, size_t idx) {
    std::vector<Atom> t(arity);
    for (int i = arity - 1; i >= 0; --i) {
        t[i] = static_cast<Atom>(idx % size);
        idx /= size;
    }
    return t;
}

size_t table_size(int size, int arity) {
    size_t s = 1;
    for (int i = 0; i < arity; ++i) s *= size;
    return s;
}

}  // namespace

Atom OperationTable::at(const std::vector<Atom>& args) const { return table[index_of(size, args)]; }
Atom& OperationTable::at(const std::vector<Atom>& args) { return table[index_of(size, args)]; }

bool is_conservative(const OperationTable& op) {
    for (size_t i = 0; i < op.table.size(); ++i) {
        auto t = tuple_of(op.size, op.arity, i);
        if (std::find(t.begin(), t.end(), op.table[i]) == t.end()) return false;
    }
    return true;
}

bool verify_polymorphism(const Algebra& ra, const OperationTable& op) {
    if (op.size != ra.atom_count || op.table.size() != table_size(op.size, op.arity)) return false;
    if (!is_conservative(op)) return false;
    const int k = op.arity;
    for (size_t i = 0; i < op.table.size(); ++i) {
        auto t = tuple_of(op.size, k, i);
        std::vector<Atom> c(k);
        for (int j = 0; j < k; ++j) c[j] = ra.conv[t[j]];
        if (op.at(c) != ra.conv[op.table[i]]) return false;
    }
    const auto cy = ra.cycles();
    std::vector<size_t> pick(k, 0);
    std::vector<Atom> col(k);
    while (true) {
        Triple out;
        for (int p = 0; p < 3; ++p) {
            for (int j = 0; j < k; ++j) col[j] = cy[pick[j]][p];
            out[p] = op.at(col);
        }
        if (!ra.allowed(out[0], out[1], out[2])) return false;
        int j = k - 1;
        while (j >= 0 && ++pick[j] == cy.size()) pick[j--] = 0;
        if (j < 0) break;
    }
    return true;
}

bool is_binary_symmetric(const OperationTable& op) {
    if (op.arity != 2) return false;
    for (Atom x = 0; x < op.size; ++x)
        for (Atom y = 0; y < op.size; ++y)
            if (op.at({x, y}) != op.at({y, x})) return false;
    return true;
}

bool is_wnu(const OperationTable& op) {
    if (op.arity != 3) return false;
    for (Atom x = 0; x < op.size; ++x)
        for (Atom y = 0; y < op.size; ++y) {
            Atom v = op.at({x, x, y});
            if (op.at({x, y, x}) != v || op.at({y, x, x}) != v) return false;
        }
    return true;
}

std::string to_string(PairKind k) {
    switch (k) {
        case PairKind::BINARY_SYMMETRIC: return "binary-symmetric";
        case PairKind::MAJORITY: return "majority";
        case PairKind::MINORITY: return "minority";
    }
    return "?";
}

bool restricts_to(const OperationTable& op, Atom a, Atom b, PairKind kind) {
    if (kind == PairKind::BINARY_SYMMETRIC) return op.arity == 2 && op.at({a, b}) == op.at({b, a});
    if (op.arity != 3) return false;
    for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
        Atom want = kind == PairKind::MAJORITY ? x : y;
        if (op.at({x, x, y}) != want || op.at({x, y, x}) != want || op.at({y, x, x}) != want) return false;
    }
    return true;
}

namespace {

template <class F>
OperationTable from_rule(const Algebra& ra, int arity, F rule) {
    OperationTable op{arity, ra.atom_count, std::vector<Atom>(table_size(ra.atom_count, arity), 0)};
    for (size_t i = 0; i < op.table.size(); ++i) op.table[i] = rule(tuple_of(ra.atom_count, arity, i));
    return op;
}

// Binary operation from a total preorder of atoms with a absorbing element list: output is the larger argument.
OperationTable chain_max(const Algebra& ra, const std::vector<std::string>& chain) {
    std::vector<int> rank(ra.atom_count);
    for (size_t i = 0; i < chain.size(); ++i) rank[ra.atom(chain[i])] = static_cast<int>(i);
    return from_rule(ra, 2, [&](const std::vector<Atom>& t) { return rank[t[0]] >= rank[t[1]] ? t[0] : t[1]; });
}

OperationTable binary_table(const Algebra& ra, const std::vector<std::vector<std::string>>& rows) {
    OperationTable op{2, ra.atom_count, std::vector<Atom>(table_size(ra.atom_count, 2), 0)};
    const auto& header = rows[0];
    for (size_t r = 1; r < rows.size(); ++r)
        for (size_t c = 0; c < header.size(); ++c)
            op.at({ra.atom(header[r - 1]), ra.atom(header[c])}) = ra.atom(rows[r][c]);
    return op;
}

std::vector<Atom> distinct(const std::vector<Atom>& t) {
    std::vector<Atom> d = t;
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
    return d;
}

// value of the minority operation on a tuple over two values; constants map to themselves
Atom minority(const std::vector<Atom>& t) {
    if (t[0] == t[1]) return t[2];
    if (t[0] == t[2]) return t[1];
    return t[0];
}

Atom majority(const std::vector<Atom>& t) { return t[0] == t[1] || t[0] == t[2] ? t[0] : t[1]; }

bool subset_of(const std::vector<Atom>& d, std::initializer_list<Atom> s) {
    for (Atom x : d)
        if (std::find(s.begin(), s.end(), x) == s.end()) return false;
    return true;
}

bool has(const std::vector<Atom>& d, Atom x) { return std::find(d.begin(), d.end(), x) != d.end(); }

// WNU of 3_3 and 37_37: the diversity atom wins against the identity, majority between two diversity
// atoms, the argument after the identity when the three are distinct, and a for the 37_37 permutations.
OperationTable wnu_flexible(const Algebra& ra) {
    const Atom id = lowest_atom(ra.identity);
    return from_rule(ra, 3, [&](const std::vector<Atom>& t) -> Atom {
        auto d = distinct(t);
        if (d.size() == 1) return t[0];
        if (d.size() == 2) return has(d, id) ? (d[0] == id ? d[1] : d[0]) : majority(t);
        if (!has(d, id)) return ra.atom("a");
        for (int p = 0; p < 3; ++p)
            if (t[p] == id) return t[(p + 1) % 3];
        return t[0];
    });
}

// 3_7 and 7_65: the absorbing atoms dominate, minority on {a, id}.
OperationTable near_unanimity_absorbing(const Algebra& ra, const std::vector<std::string>& absorbing) {
    std::vector<Atom> abs;
    for (const auto& s : absorbing) abs.push_back(ra.atom(s));
    return from_rule(ra, 3, [&](const std::vector<Atom>& t) -> Atom {
        for (Atom x : abs)
            if (has(t, x)) return x;
        return minority(t);
    });
}

// 5_37, and with a on the {a, id} edge for 6_37 and 22_37.
OperationTable wnu_5_37(const Algebra& ra, bool a_wins) {
    const Atom id = lowest_atom(ra.identity);
    const Atom a = ra.atom("a"), r = ra.atom("r"), rc = ra.atom("r~");
    return from_rule(ra, 3, [&](const std::vector<Atom>& t) -> Atom {
        auto d = distinct(t);
        if (d.size() == 1) return t[0];
        if (subset_of(d, {a, id})) {
            if (a_wins) {
                int count = static_cast<int>(std::count(t.begin(), t.end(), a));
                if (count == 2) return a;
            }
            return minority(t);
        }
        if (subset_of(d, {r, rc})) return minority(t);
        if (has(d, r) && subset_of(d, {a, r, id})) return r;
        if (has(d, rc) && subset_of(d, {a, rc, id})) return rc;
        // r, r~ and one z in {a, id}: the later of the two orientations decides
        int pr = static_cast<int>(std::find(t.begin(), t.end(), r) - t.begin());
        int pc = static_cast<int>(std::find(t.begin(), t.end(), rc) - t.begin());
        return pc < pr ? r : rc;
    });
}

OperationTable wnu_12_37(const Algebra& ra) {
    const Atom id = lowest_atom(ra.identity);
    const Atom a = ra.atom("a"), r = ra.atom("r"), rc = ra.atom("r~");
    return from_rule(ra, 3, [&](const std::vector<Atom>& t) -> Atom {
        auto d = distinct(t);
        if (has(d, a)) return a;
        if (d.size() == 1) return t[0];
        if (subset_of(d, {r, rc})) return minority(t);
        if (d.size() == 2) return has(d, r) ? r : rc;  // {d, id}
        int pr = static_cast<int>(std::find(t.begin(), t.end(), r) - t.begin());
        int pc = static_cast<int>(std::find(t.begin(), t.end(), rc) - t.begin());
        (void)id;
        return pc < pr ? r : rc;
    });
}

OperationTable wnu_19_65(const Algebra& ra) {
    const Atom id = lowest_atom(ra.identity);
    const Atom a = ra.atom("a"), b = ra.atom("b"), c = ra.atom("c");
    return from_rule(ra, 3, [&](const std::vector<Atom>& t) -> Atom {
        auto d = distinct(t);
        if (has(d, a)) return a;
        if (subset_of(d, {b, id})) return minority(t);
        return c;
    });
}

}  // namespace

std::vector<EmbeddedPolymorphism> embedded_polymorphisms() {
    std::vector<EmbeddedPolymorphism> out;
    auto add = [&](const std::string& label, const std::vector<std::string>& algs, auto make, bool bin) {
        for (const auto& name : algs)
            out.push_back({label, {name}, make(catalog_algebra(name)), bin});
    };
    add("max id<a", {"2_2"}, [](const Algebra& ra) { return chain_max(ra, {"id", "a"}); }, true);
    // a∘a = id in 1_2, so R is the parity relation and max does not preserve it
    add("minority", {"1_2"}, [](const Algebra& ra) { return from_rule(ra, 3, minority); }, false);
    add("max id<a<b", {"4_7", "7_7"}, [](const Algebra& ra) { return chain_max(ra, {"id", "a", "b"}); }, true);
    add("max id<a<b<c", {"8_65", "14_65"}, [](const Algebra& ra) { return chain_max(ra, {"id", "a", "b", "c"}); },
        true);
    auto absorbing_a = [](const Algebra& ra) {
        return binary_table(ra, {{"id", "a", "b", "c"},
                                 {"id", "a", "b", "c"},
                                 {"a", "a", "a", "a"},
                                 {"b", "a", "b", "c"},
                                 {"c", "a", "c", "c"}});
    };
    add("a absorbing, b;c=c", {"20_65", "53_65", "61_65", "65_65"}, absorbing_a, true);
    add("flexible WNU", {"3_3", "37_37"}, [](const Algebra& ra) { return wnu_flexible(ra); }, false);
    add("b absorbing, minority on {a,id}", {"3_7"},
        [](const Algebra& ra) { return near_unanimity_absorbing(ra, {"b"}); }, false);
    add("c and b absorbing, minority on {a,id}", {"7_65"},
        [](const Algebra& ra) { return near_unanimity_absorbing(ra, {"c", "b"}); }, false);
    add("orientation WNU", {"5_37"}, [](const Algebra& ra) { return wnu_5_37(ra, false); }, false);
    add("orientation WNU, a on {a,id}", {"6_37", "22_37"}, [](const Algebra& ra) { return wnu_5_37(ra, true); },
        false);
    add("a absorbing, minority on {r,r~}", {"12_37"}, [](const Algebra& ra) { return wnu_12_37(ra); }, false);
    add("a absorbing, minority on {b,id}, else c", {"19_65"}, [](const Algebra& ra) { return wnu_19_65(ra); },
        false);
    return out;
}

namespace {

// Indicator problem: one variable per argument tuple, E and R preserved, pinned values on {a,b}.
CspInstance indicator(const Algebra& ra, int arity, const std::vector<std::pair<size_t, Atom>>& pins) {
    const int n = ra.atom_count;
    CspInstance inst;
    inst.relations.push_back(converse_relation(ra));
    inst.relations.push_back(cycle_relation(ra));
    const size_t count = table_size(n, arity);
    inst.domains.resize(count);
    for (size_t i = 0; i < count; ++i) {
        Element d = 0;
        for (Atom x : tuple_of(n, arity, i)) d |= atom_bit(x);
        inst.domains[i] = d;
    }
    for (auto [i, v] : pins) inst.domains[i] &= atom_bit(v);
    for (size_t i = 0; i < count; ++i) {
        auto t = tuple_of(n, arity, i);
        std::vector<Atom> c(arity);
        for (int j = 0; j < arity; ++j) c[j] = ra.conv[t[j]];
        size_t ci = index_of(n, c);
        if (ci >= i) inst.constraints.push_back({{static_cast<int>(i), static_cast<int>(ci)}, 0});
    }
    const auto cy = ra.cycles();
    std::vector<size_t> pick(arity, 0);
    std::vector<Atom> col(arity);
    while (true) {
        std::vector<int> scope(3);
        for (int p = 0; p < 3; ++p) {
            for (int j = 0; j < arity; ++j) col[j] = cy[pick[j]][p];
            scope[p] = static_cast<int>(index_of(n, col));
        }
        inst.constraints.push_back({scope, 1});
        int j = arity - 1;
        while (j >= 0 && ++pick[j] == cy.size()) pick[j--] = 0;
        if (j < 0) break;
    }
    return inst;
}

OperationTable table_from(const Algebra& ra, int arity, const std::vector<Atom>& sol) {
    return OperationTable{arity, ra.atom_count, sol};
}

}  // namespace

std::optional<PairWitness> search_pair(const Algebra& ra, Atom a, Atom b, std::uint64_t budget, std::uint64_t* nodes) {
    const int n = ra.atom_count;
    CspStats stats;
    auto finish = [&](std::optional<PairWitness> w) {
        if (nodes) *nodes += stats.nodes;
        return w;
    };
    auto remaining = [&]() { return budget > stats.nodes ? budget - stats.nodes : 0; };
    try {
        for (Atom v : {a, b}) {
            auto sol = solve_csp(indicator(ra, 2, {{index_of(n, {a, b}), v}, {index_of(n, {b, a}), v}}), remaining(),
                                 &stats, true);
            if (sol) return finish(PairWitness{a, b, PairKind::BINARY_SYMMETRIC, table_from(ra, 2, *sol)});
        }
        for (PairKind kind : {PairKind::MAJORITY, PairKind::MINORITY}) {
            std::vector<std::pair<size_t, Atom>> pins;
            for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
                Atom want = kind == PairKind::MAJORITY ? x : y;
                for (const std::vector<Atom>& t : {std::vector<Atom>{x, x, y}, {x, y, x}, {y, x, x}})
                    pins.push_back({index_of(n, t), want});
            }
            auto sol = solve_csp(indicator(ra, 3, pins), remaining(), &stats);
            if (sol) return finish(PairWitness{a, b, kind, table_from(ra, 3, *sol)});
        }
    } catch (const BudgetExceeded&) {
        if (nodes) *nodes += stats.nodes;
        throw;
    }
    return finish(std::nullopt);
}

BulatovResult bulatov_condition(const Algebra& ra, std::uint64_t budget, bool all_pairs) {
    BulatovResult res;
    for (Atom a = 0; a < ra.atom_count; ++a)
        for (Atom b = a + 1; b < ra.atom_count; ++b) {
            std::optional<PairWitness> w;
            try {
                w = search_pair(ra, a, b, budget > res.nodes ? budget - res.nodes : 0, &res.nodes);
            } catch (const BudgetExceeded&) {
                res.status = BulatovStatus::BUDGET;
                return res;
            }
            if (w) {
                res.witnesses.push_back(std::move(*w));
                continue;
            }
            res.status = BulatovStatus::FAIL;
            res.failing_pairs.push_back({a, b});
            if (!all_pairs) return res;
        }
    return res;
}

OperationTable parse_operation(const Algebra& ra, const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    OperationTable op;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.rfind("arity:", 0) == 0) {
            if (op.arity) throw ParseError(lineno, "arity given twice");
            try {
                op.arity = std::stoi(trim(line.substr(6)));
            } catch (const std::exception&) {
                throw ParseError(lineno, "bad arity");
            }
            if (op.arity < 1 || op.arity > 3) throw ParseError(lineno, "arity must be 1..3");
            op.size = ra.atom_count;
            op.table.assign(table_size(op.size, op.arity), 0);
            for (size_t i = 0; i < op.table.size(); ++i) op.table[i] = tuple_of(op.size, op.arity, i)[0];
            continue;
        }
        if (!op.arity) throw ParseError(lineno, "'arity:' must come first");
        auto arrow = line.find("->");
        if (arrow == std::string::npos) throw ParseError(lineno, "expected 'x y [z] -> w'");
        auto args = split_ws(line.substr(0, arrow));
        auto res = split_ws(line.substr(arrow + 2));
        if (static_cast<int>(args.size()) != op.arity || res.size() != 1)
            throw ParseError(lineno, "wrong number of arguments");
        std::vector<Atom> t;
        try {
            for (const auto& s : args) t.push_back(ra.atom(s));
            op.at(t) = ra.atom(res[0]);
        } catch (const std::exception&) {
            throw ParseError(lineno, "unknown atom");
        }
    }
    if (!op.arity) throw ParseError(lineno, "missing 'arity:' line");
    return op;
}

std::string format_operation(const Algebra& ra, const OperationTable& op) {
    std::ostringstream out;
    out << "arity: " << op.arity << "\n";
    for (size_t i = 0; i < op.table.size(); ++i) {
        auto t = tuple_of(op.size, op.arity, i);
        for (Atom x : t) out << ra.atom_names[x] << " ";
        out << "-> " << ra.atom_names[op.table[i]] << "\n";
    }
    return out.str();
}

}  // namespace relalg
