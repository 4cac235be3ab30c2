#include "relalg/representation.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "relalg/amalgamation.hpp"
#include "relalg/catalog.hpp"
#include "relalg/io.hpp"

namespace relalg {

Atom FiniteRepresentation::atom_at(int u, int v) const {
    for (Atom a = 0; a < static_cast<Atom>(relations.size()); ++a)
        if (has(a, u, v)) return a;
    return -1;
}

FiniteRepresentation empty_representation(const Algebra& ra, int n) {
    FiniteRepresentation rep;
    rep.domain_size = n;
    rep.relations.assign(ra.atom_count, std::vector<std::uint8_t>(static_cast<size_t>(n) * n, 0));
    return rep;
}

namespace {

constexpr std::size_t kMaxViolationsPerAxiom = 16;

void push(RepReport& r, int axiom, std::array<int, 3> w, Atom a1, Atom a2, std::string detail) {
    std::size_t same = std::count_if(r.violations.begin(), r.violations.end(),
                                     [&](const RepViolation& v) { return v.axiom == axiom; });
    if (same < kMaxViolationsPerAxiom) r.violations.push_back({axiom, w, a1, a2, std::move(detail)});
}

std::string pair_text(int u, int v) { return "(" + std::to_string(u) + "," + std::to_string(v) + ")"; }

}  // namespace

RepReport verify_representation(const Algebra& ra, const FiniteRepresentation& rep) {
    RepReport r;
    const int n = rep.domain_size;
    const size_t nn = static_cast<size_t>(n) * n;
    if (static_cast<int>(rep.relations.size()) != ra.atom_count) {
        push(r, 2, {-1, -1, -1}, -1, -1, "representation has a different number of atoms than the algebra");
        return r;
    }
    for (const auto& rel : rep.relations)
        if (rel.size() != nn) {
            push(r, 2, {-1, -1, -1}, -1, -1, "relation size does not match the domain");
            return r;
        }
    r.square = true;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            int count = 0;
            for (Atom a = 0; a < ra.atom_count; ++a) count += rep.has(a, u, v);
            if (count == 0) r.square = false;
            if (count > 1)
                push(r, 4, {u, v, -1}, -1, -1, "pair " + pair_text(u, v) + " lies in more than one atom");
        }
    for (int u = 0; u < n; ++u) {
        Atom a = rep.atom_at(u, u);
        if (a < 0 || !ra.is_identity(a)) push(r, 3, {u, u, -1}, a, -1, "diagonal pair " + pair_text(u, u) + " is not in the identity");
    }
    for (Atom a = 0; a < ra.atom_count; ++a)
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) {
                if (!rep.has(a, u, v)) continue;
                if (ra.is_identity(a) && u != v)
                    push(r, 3, {u, v, -1}, a, -1, "identity atom " + ra.atom_names[a] + " holds " + pair_text(u, v));
                if (!rep.has(ra.conv[a], v, u))
                    push(r, 5, {u, v, -1}, a, ra.conv[a],
                         ra.atom_names[a] + " holds " + pair_text(u, v) + " but its converse misses " + pair_text(v, u));
            }
    // atom matrix for composition; -1 where the pair is outside 1^B
    std::vector<Atom> at(nn, -1);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) at[static_cast<size_t>(u) * n + v] = rep.atom_at(u, v);
    for (Atom a = 0; a < ra.atom_count; ++a)
        for (Atom b = 0; b < ra.atom_count; ++b) {
            const Element target = ra.comp[a][b];
            for (int u = 0; u < n; ++u)
                for (int w = 0; w < n; ++w) {
                    int mid = -1;
                    for (int v = 0; v < n && mid < 0; ++v)
                        if (rep.has(a, u, v) && rep.has(b, v, w)) mid = v;
                    Atom c = at[static_cast<size_t>(u) * n + w];
                    bool in_target = c >= 0 && contains(target, c);
                    if (mid >= 0 && !in_target)
                        push(r, 7, {u, mid, w}, a, b,
                             ra.atom_names[a] + " then " + ra.atom_names[b] + " joins " + pair_text(u, w) +
                                 " via " + std::to_string(mid) + " outside the composition");
                    else if (mid < 0 && in_target)
                        push(r, 7, {u, -1, w}, a, b,
                             pair_text(u, w) + " lies in " + ra.atom_names[a] + ";" + ra.atom_names[b] +
                                 " but has no witness");
                }
        }
    r.valid = r.violations.empty();
    return r;
}

FiniteRepresentation cyclic_representation(const Algebra& ra, int modulus,
                                           const std::map<std::string, std::set<int>>& difference_sets) {
    if (modulus < 1) throw InvalidDifferenceSets("modulus must be positive");
    if (!is_singleton(ra.identity)) throw InvalidDifferenceSets("cyclic representations need an integral algebra");
    std::vector<Atom> owner(modulus, -1);
    owner[0] = lowest_atom(ra.identity);
    for (const auto& [name, residues] : difference_sets) {
        Atom a = -1;
        try {
            a = ra.atom(name);
        } catch (const std::exception&) {
            throw InvalidDifferenceSets("unknown atom '" + name + "'");
        }
        if (ra.is_identity(a)) throw InvalidDifferenceSets("the identity takes the zero residue only");
        for (int d : residues) {
            if (d <= 0 || d >= modulus) throw InvalidDifferenceSets("residue " + std::to_string(d) + " out of range");
            if (owner[d] >= 0) throw InvalidDifferenceSets("residue " + std::to_string(d) + " is listed twice");
            owner[d] = a;
        }
    }
    for (int d = 1; d < modulus; ++d) {
        if (owner[d] < 0) throw InvalidDifferenceSets("residue " + std::to_string(d) + " is not covered");
        if (owner[modulus - d] != ra.conv[owner[d]])
            throw InvalidDifferenceSets("residue " + std::to_string(modulus - d) + " must belong to the converse of " +
                                        ra.atom_names[owner[d]]);
    }
    FiniteRepresentation rep = empty_representation(ra, modulus);
    for (int x = 0; x < modulus; ++x)
        for (int d = 0; d < modulus; ++d) rep.add(owner[d], x, (x + d) % modulus);
    return rep;
}

std::vector<std::string> builtin_names() { return {"Z5_5_7", "Z7_39_65", "Z13_62_65", "TWO_POINT_NONINTEGRAL"}; }

NamedRepresentation builtin_representation(const std::string& name) {
    if (name == "Z5_5_7")
        return {"5_7", cyclic_representation(catalog_algebra("5_7"), 5, {{"a", {1, 4}}, {"b", {2, 3}}})};
    if (name == "Z7_39_65")
        return {"39_65",
                cyclic_representation(catalog_algebra("39_65"), 7, {{"a", {1, 6}}, {"c", {2, 5}}, {"b", {3, 4}}})};
    if (name == "Z13_62_65")
        return {"62_65", cyclic_representation(catalog_algebra("62_65"), 13,
                                               {{"a", {1, 5, 8, 12}}, {"b", {2, 3, 10, 11}}, {"c", {4, 6, 7, 9}}})};
    if (name == "TWO_POINT_NONINTEGRAL") {
        const Algebra& ra = catalog_algebra("nonintegral");
        FiniteRepresentation rep = empty_representation(ra, 2);
        rep.add(ra.atom("a"), 0, 0);
        rep.add(ra.atom("b"), 1, 1);
        // c runs from the b point to the a point, as b;c = c and c;a = c require
        rep.add(ra.atom("c"), 1, 0);
        rep.add(ra.atom("d"), 0, 1);
        return {"nonintegral", rep};
    }
    throw std::invalid_argument("unknown builtin representation '" + name + "'");
}

FiniteRepresentation complete_graph_representation(const Algebra& ra, int n) {
    if (ra.atom_count != 2 || !is_singleton(ra.identity))
        throw PreconditionViolation("complete graphs represent two-atom integral algebras only");
    const Atom id = lowest_atom(ra.identity);
    const Atom d = 1 - id;
    FiniteRepresentation rep = empty_representation(ra, n);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) rep.add(u == v ? id : d, u, v);
    return rep;
}

namespace {

bool is_square(const FiniteRepresentation& rep) {
    for (int u = 0; u < rep.domain_size; ++u)
        for (int v = 0; v < rep.domain_size; ++v)
            if (rep.atom_at(u, v) < 0) return false;
    return true;
}

}  // namespace

FiniteRepresentation cycle_product_rep(const Algebra& a, const FiniteRepresentation& repC, const Algebra& b,
                                       const FiniteRepresentation& repD) {
    if (!is_singleton(a.identity) || !is_singleton(b.identity))
        throw PreconditionViolation("cycle products need integral factors");
    if (a.atom_count < 2 || b.atom_count < 2) throw PreconditionViolation("cycle product factors need a diversity atom");
    if (!is_square(repC) || !is_square(repD)) throw PreconditionViolation("cycle products need square representations");
    const Algebra prod = two_cycle_product(a, b);
    // same atom layout as two_cycle_product: identity, diversity atoms of a, diversity atoms of b
    std::vector<Atom> amap(a.atom_count, 0), bmap(b.atom_count, 0);
    Atom next = 1;
    for (Atom x = 0; x < a.atom_count; ++x)
        if (!a.is_identity(x)) amap[x] = next++;
    for (Atom x = 0; x < b.atom_count; ++x)
        if (!b.is_identity(x)) bmap[x] = next++;
    const int nc = repC.domain_size;
    const int nd = repD.domain_size;
    FiniteRepresentation rep = empty_representation(prod, nc * nd);
    for (int u0 = 0; u0 < nd; ++u0)
        for (int v0 = 0; v0 < nc; ++v0)
            for (int u1 = 0; u1 < nd; ++u1)
                for (int v1 = 0; v1 < nc; ++v1) {
                    Atom t = u0 == u1 ? amap[repC.atom_at(v0, v1)] : bmap[repD.atom_at(u0, u1)];
                    rep.add(t, u0 * nc + v0, u1 * nc + v1);
                }
    return rep;
}

FiniteRepresentation union_rep(const Algebra& a, const FiniteRepresentation& rep1, const Algebra& b,
                               const FiniteRepresentation& rep2) {
    const Algebra prod = direct_product(a, b);
    const int n1 = rep1.domain_size;
    FiniteRepresentation rep = empty_representation(prod, n1 + rep2.domain_size);
    for (Atom x = 0; x < a.atom_count; ++x)
        for (int u = 0; u < n1; ++u)
            for (int v = 0; v < n1; ++v)
                if (rep1.has(x, u, v)) rep.add(x, u, v);
    for (Atom x = 0; x < b.atom_count; ++x)
        for (int u = 0; u < rep2.domain_size; ++u)
            for (int v = 0; v < rep2.domain_size; ++v)
                if (rep2.has(x, u, v)) rep.add(a.atom_count + x, n1 + u, n1 + v);
    return rep;
}

std::optional<std::vector<int>> satisfy_in_rep(const Algebra& ra, const FiniteRepresentation& rep,
                                               const Network& net) {
    const int n = net.n;
    const int d = rep.domain_size;
    if (static_cast<int>(rep.relations.size()) != ra.atom_count)
        throw std::invalid_argument("representation does not match the algebra");
    std::vector<Element> at(static_cast<size_t>(d) * d, 0);
    for (int u = 0; u < d; ++u)
        for (int v = 0; v < d; ++v) {
            Atom a = rep.atom_at(u, v);
            at[static_cast<size_t>(u) * d + v] = a < 0 ? 0 : atom_bit(a);
        }
    auto rel = [&](int u, int v) { return at[static_cast<size_t>(u) * d + v]; };
    // candidate domain values per vertex, filtered as neighbours get assigned
    std::vector<std::vector<int>> cand(n);
    for (int i = 0; i < n; ++i)
        for (int u = 0; u < d; ++u)
            if (rel(u, u) & net.at(i, i)) cand[i].push_back(u);
    std::vector<int> assign(n, -1);
    auto rec = [&](auto&& self, int placed) -> bool {
        if (placed == n) return true;
        int best = -1;
        for (int i = 0; i < n; ++i)
            if (assign[i] < 0 && (best < 0 || cand[i].size() < cand[best].size())) best = i;
        std::vector<int> options = cand[best];
        for (int u : options) {
            assign[best] = u;
            std::vector<std::pair<int, std::vector<int>>> saved;
            bool ok = true;
            for (int j = 0; j < n && ok; ++j) {
                if (assign[j] >= 0) continue;
                std::vector<int> kept;
                for (int w : cand[j])
                    if ((rel(u, w) & net.at(best, j)) && (rel(w, u) & net.at(j, best))) kept.push_back(w);
                saved.emplace_back(j, std::move(cand[j]));
                cand[j] = std::move(kept);
                ok = !cand[j].empty();
            }
            if (ok && self(self, placed + 1)) return true;
            for (auto& [j, c] : saved) cand[j] = std::move(c);
            assign[best] = -1;
        }
        return false;
    };
    if (!rec(rec, 0)) return std::nullopt;
    return assign;
}

Atom OrderClassModel::rule(int ci, int cj, int order) const {
    if (order == 0) return ci == cj ? identity : -1;
    if (order < 0) return less[ci * class_count + cj];
    return converse_of_less[cj * class_count + ci];
}

namespace {

OrderClassModel make_model(const Algebra& ra, const std::string& name, int classes,
                           const std::vector<std::string>& by_difference) {
    OrderClassModel m;
    m.algebra = name;
    m.class_count = classes;
    m.identity = lowest_atom(ra.identity);
    m.less.resize(static_cast<size_t>(classes) * classes);
    m.converse_of_less.resize(m.less.size());
    for (int i = 0; i < classes; ++i)
        for (int j = 0; j < classes; ++j) {
            Atom a = ra.atom(by_difference[((j - i) % classes + classes) % classes]);
            m.less[i * classes + j] = a;
            m.converse_of_less[i * classes + j] = ra.conv[a];
        }
    return m;
}

}  // namespace

OrderClassModel order_model_51_65(const Algebra& ra) { return make_model(ra, "51_65", 3, {"b", "a", "c"}); }

OrderClassModel order_model_56_65(const Algebra& ra) {
    return make_model(ra, "56_65", 6, {"b", "b", "a", "c", "c", "a"});
}

bool order_model_converse_consistent(const Algebra& ra, const OrderClassModel& model) {
    for (int i = 0; i < model.class_count; ++i)
        for (int j = 0; j < model.class_count; ++j)
            for (int o : {-1, 0, 1}) {
                Atom x = model.rule(i, j, o);
                Atom y = model.rule(j, i, -o);
                if ((x < 0) != (y < 0)) return false;
                if (x >= 0 && ra.conv[x] != y) return false;
            }
    return true;
}

std::optional<OrderAssignment> satisfy_in_order_model(const Algebra& ra, const OrderClassModel& model,
                                                      const Network& net, std::uint64_t budget) {
    const int n = net.n;
    const int c = model.class_count;
    for (int i = 0; i < n; ++i)
        if (!contains(net.at(i, i), model.identity)) return std::nullopt;
    (void)ra;
    OrderAssignment cur{std::vector<int>(n, -1), std::vector<int>(n, -1)};
    std::vector<int> point_class;  // class of each realized point, in increasing order
    std::uint64_t nodes = 0;
    // label check of vertex v at (cls, rank) against every placed vertex
    auto fits = [&](int v, int cls, int rank) {
        for (int u = 0; u < n; ++u) {
            if (cur.rank[u] < 0) continue;
            int order = rank == cur.rank[u] ? 0 : (cur.rank[u] < rank ? -1 : 1);
            Atom a = model.rule(cur.cls[u], cls, order);
            if (a < 0 || !contains(net.at(u, v), a)) return false;
        }
        return true;
    };
    auto rec = [&](auto&& self, int placed) -> bool {
        if (++nodes > budget) throw BudgetExceeded();
        if (placed == n) return true;
        for (int v = 0; v < n; ++v) {
            if (cur.rank[v] >= 0) continue;
            // join an existing point
            for (int p = 0; p < static_cast<int>(point_class.size()); ++p) {
                if (!fits(v, point_class[p], p)) continue;
                cur.cls[v] = point_class[p];
                cur.rank[v] = p;
                if (self(self, placed + 1)) return true;
                cur.rank[v] = -1;
            }
            // a new point above all placed ones
            const int p = static_cast<int>(point_class.size());
            for (int k = 0; k < c; ++k) {
                if (!fits(v, k, p)) continue;
                cur.cls[v] = k;
                cur.rank[v] = p;
                point_class.push_back(k);
                if (self(self, placed + 1)) return true;
                point_class.pop_back();
                cur.rank[v] = -1;
            }
        }
        return false;
    };
    if (!rec(rec, 0)) return std::nullopt;
    return cur;
}

OrderSampleReport sample_order_model(const Algebra& ra, const OrderClassModel& model, int grid) {
    OrderSampleReport r;
    const int c = model.class_count;
    auto cls = [&](int p) { return p % c; };
    auto sgn = [](int x, int y) { return x < y ? -1 : (x > y ? 1 : 0); };
    auto atom = [&](int p, int q) { return model.rule(cls(p), cls(q), sgn(p, q)); };
    r.partition_ok = order_model_converse_consistent(ra, model);
    for (int p = 0; p < grid; ++p)
        for (int q = 0; q < grid; ++q) {
            Atom a = atom(p, q);
            if (a < 0 || (p == q) != ra.is_identity(a)) {
                r.partition_ok = false;
                r.problems.push_back("pair (" + std::to_string(p) + "," + std::to_string(q) + ") has no proper atom");
            }
        }
    if (!r.partition_ok) return r;
    r.forward_ok = true;
    for (int p = 0; p < grid; ++p)
        for (int q = 0; q < grid; ++q)
            for (int s = 0; s < grid; ++s)
                if (!ra.allowed(atom(p, q), atom(q, s), atom(p, s))) {
                    r.forward_ok = false;
                    if (r.problems.size() < 16)
                        r.problems.push_back("triangle " + std::to_string(p) + "," + std::to_string(q) + "," +
                                             std::to_string(s) + " is forbidden");
                }
    // witnesses: a point of any class below, between or above the pair, or one of the pair itself
    r.backward_ok = true;
    for (int p = 0; p < grid; ++p)
        for (int q = 0; q < grid; ++q) {
            const Atom target = atom(p, q);
            for (Atom s = 0; s < ra.atom_count; ++s)
                for (Atom t = 0; t < ra.atom_count; ++t) {
                    if (!ra.allowed(s, t, target)) continue;
                    bool found = (atom(p, p) == s && atom(p, q) == t) || (atom(p, q) == s && atom(q, q) == t);
                    const int lo = std::min(p, q), hi = std::max(p, q);
                    for (int k = 0; k < c && !found; ++k) {
                        // slot positions relative to lo and hi: below, between, above
                        for (int slot = 0; slot < 3 && !found; ++slot) {
                            if (slot == 1 && lo == hi) continue;
                            int op = slot == 0 ? 1 : (slot == 2 ? -1 : (p == lo ? -1 : 1));
                            int oq = slot == 0 ? 1 : (slot == 2 ? -1 : (q == lo ? -1 : 1));
                            Atom xs = model.rule(cls(p), k, op);
                            Atom sq = model.rule(k, cls(q), -oq);
                            found = xs == s && sq == t;
                        }
                    }
                    if (!found) {
                        r.backward_ok = false;
                        if (r.problems.size() < 16)
                            r.problems.push_back("pair (" + std::to_string(p) + "," + std::to_string(q) +
                                                 ") lacks a witness for " + ra.atom_names[s] + ";" + ra.atom_names[t]);
                    }
                }
        }
    return r;
}

std::optional<int> ramsey_class_bound(const Algebra& ra, Element e) {
    if ((e & ra.identity) != ra.identity || ra.converse(e) != e || (ra.compose(e, e) & ~e) != 0)
        throw std::invalid_argument("element is not an equivalence element");
    const Element ee = ra.compose(e, e);
    std::vector<Atom> s;
    for (Atom a = 0; a < ra.atom_count; ++a)
        if (!contains(ee, a)) s.push_back(a);
    if (s.empty()) return std::nullopt;
    for (Atom a : s)
        if (ra.allowed(a, a, a)) return std::nullopt;
    // R(3)=3, R(3,3)=6, R(3,3,3)=17 (Greenwood and Gleason)
    static constexpr int kRamsey[] = {0, 3, 6, 17};
    if (s.size() > 3) throw UnsupportedRamseyArity("no stored Ramsey number for " + std::to_string(s.size()) + " colours");
    return kRamsey[s.size()] - 1;
}

namespace {

// first unwitnessed demand: pair (x,z) and diversity atoms (s,t) with f(x,z) in s;t
struct Demand {
    int x = -1, z = -1;
    Atom s = -1, t = -1;
};

std::optional<Demand> first_demand(const Algebra& ra, const Network& net) {
    const int n = net.n;
    for (int x = 0; x < n; ++x)
        for (int z = 0; z < n; ++z) {
            const Atom f = lowest_atom(net.at(x, z));
            for (Atom s = 0; s < ra.atom_count; ++s) {
                if (ra.is_identity(s)) continue;
                for (Atom t = 0; t < ra.atom_count; ++t) {
                    if (ra.is_identity(t) || !ra.allowed(s, t, f)) continue;
                    bool seen = false;
                    for (int y = 0; y < n && !seen; ++y)
                        seen = net.at(x, y) == atom_bit(s) && net.at(y, z) == atom_bit(t);
                    if (!seen) return Demand{x, z, s, t};
                }
            }
        }
    return std::nullopt;
}

Network grow(const Network& net) {
    Network out;
    out.n = net.n + 1;
    out.labels.assign(static_cast<size_t>(out.n) * out.n, 0);
    for (int i = 0; i < net.n; ++i)
        for (int j = 0; j < net.n; ++j) out.ref(i, j) = net.at(i, j);
    return out;
}

}  // namespace

bool is_saturated(const Algebra& ra, const Network& atomic) { return !first_demand(ra, atomic).has_value(); }

std::optional<Network> extend_to_square_model(const Algebra& ra, const Network& atomic, int max_n,
                                              std::uint64_t budget) {
    if (!is_singleton(ra.identity)) throw PreconditionViolation("square model search needs an integral algebra");
    if (!is_consistent(ra, atomic) || !is_reduced(ra, atomic) || atomic.n > max_n) return std::nullopt;
    const Atom id = lowest_atom(ra.identity);
    std::uint64_t nodes = 0;
    std::optional<Network> found;
    auto rec = [&](auto&& self, const Network& net) -> bool {
        if (++nodes > budget) throw BudgetExceeded();
        auto d = first_demand(ra, net);
        if (!d) {
            found = net;
            return true;
        }
        if (net.n == max_n) return false;
        // the witness is a new vertex y; label its edges to the old vertices one at a time
        Network next = grow(net);
        const int y = net.n;
        next.ref(y, y) = atom_bit(id);
        std::vector<int> order{d->x};
        if (d->z != d->x) order.push_back(d->z);
        for (int w = 0; w < net.n; ++w)
            if (w != d->x && w != d->z) order.push_back(w);
        auto label = [&](auto&& lself, size_t k) -> bool {
            if (k == order.size()) return self(self, next);
            const int w = order[k];
            for (Atom a = 0; a < ra.atom_count; ++a) {
                if (ra.is_identity(a)) continue;
                if (w == d->x && a != ra.conv[d->s]) continue;
                if (w == d->z && a != d->t) continue;
                // triangles y,w,u for every already labelled u
                bool ok = true;
                for (size_t i = 0; i < k && ok; ++i) {
                    const int u = order[i];
                    ok = ra.allowed(lowest_atom(next.at(y, u)), lowest_atom(net.at(u, w)), a);
                }
                if (!ok) continue;
                if (++nodes > budget) throw BudgetExceeded();
                next.ref(y, w) = atom_bit(a);
                next.ref(w, y) = atom_bit(ra.conv[a]);
                if (lself(lself, k + 1)) return true;
            }
            next.ref(y, w) = 0;
            next.ref(w, y) = 0;
            return false;
        };
        return label(label, 0);
    };
    if (!rec(rec, atomic)) return std::nullopt;
    return found;
}

std::vector<FiniteRepresentation> square_models(const Algebra& ra, int max_n) {
    std::vector<FiniteRepresentation> out;
    for (int n = 1; n <= max_n; ++n)
        for (const auto& net : canonical_networks(ra, n))
            if (is_saturated(ra, net)) out.push_back(network_representation(ra, net));
    return out;
}

FiniteRepresentation network_representation(const Algebra& ra, const Network& atomic) {
    FiniteRepresentation rep = empty_representation(ra, atomic.n);
    for (int u = 0; u < atomic.n; ++u)
        for (int v = 0; v < atomic.n; ++v)
            if (is_singleton(atomic.at(u, v))) rep.add(lowest_atom(atomic.at(u, v)), u, v);
    return rep;
}

Network representation_network(const Algebra& ra, const FiniteRepresentation& rep) {
    Network net;
    net.n = rep.domain_size;
    net.labels.assign(static_cast<size_t>(net.n) * net.n, 0);
    for (int u = 0; u < net.n; ++u)
        for (int v = 0; v < net.n; ++v) {
            Element e = 0;
            for (Atom a = 0; a < ra.atom_count; ++a)
                if (rep.has(a, u, v)) e |= atom_bit(a);
            net.ref(u, v) = e;
        }
    return net;
}

FiniteRepresentation parse_representation(const Algebra& ra, const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    int n = -1;
    FiniteRepresentation rep;
    bool identity_listed = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.rfind("domain:", 0) == 0) {
            if (n >= 0) throw ParseError(lineno, "domain given twice");
            try {
                n = std::stoi(trim(line.substr(7)));
            } catch (const std::exception&) {
                throw ParseError(lineno, "bad domain size");
            }
            if (n < 0) throw ParseError(lineno, "negative domain size");
            rep = empty_representation(ra, n);
            continue;
        }
        if (line.rfind("atom ", 0) != 0) throw ParseError(lineno, "expected 'domain:' or 'atom NAME: pairs'");
        if (n < 0) throw ParseError(lineno, "'domain:' must come first");
        auto colon = line.find(':');
        if (colon == std::string::npos) throw ParseError(lineno, "missing ':' after the atom name");
        const std::string name = trim(line.substr(5, colon - 5));
        Atom a = -1;
        try {
            a = ra.atom(name);
        } catch (const std::exception&) {
            throw ParseError(lineno, "unknown atom '" + name + "'");
        }
        if (ra.is_identity(a)) identity_listed = true;
        std::string rest = line.substr(colon + 1);
        for (char& ch : rest)
            if (ch == '(' || ch == ')' || ch == ',') ch = ' ';
        auto nums = split_ws(rest);
        if (nums.size() % 2) throw ParseError(lineno, "pairs need two coordinates");
        for (size_t i = 0; i < nums.size(); i += 2) {
            int u = 0, v = 0;
            try {
                u = std::stoi(nums[i]);
                v = std::stoi(nums[i + 1]);
            } catch (const std::exception&) {
                throw ParseError(lineno, "bad coordinate");
            }
            if (u < 0 || v < 0 || u >= n || v >= n) throw ParseError(lineno, "coordinate outside the domain");
            rep.add(a, u, v);
        }
    }
    if (n < 0) throw ParseError(lineno, "missing 'domain:' line");
    if (!identity_listed && is_singleton(ra.identity))
        for (int u = 0; u < n; ++u) rep.add(lowest_atom(ra.identity), u, u);
    return rep;
}

std::string format_representation(const Algebra& ra, const FiniteRepresentation& rep) {
    std::ostringstream out;
    out << "domain: " << rep.domain_size << "\n";
    for (Atom a = 0; a < ra.atom_count; ++a) {
        out << "atom " << ra.atom_names[a] << ":";
        for (int u = 0; u < rep.domain_size; ++u)
            for (int v = 0; v < rep.domain_size; ++v)
                if (rep.has(a, u, v)) out << " (" << u << "," << v << ")";
        out << "\n";
    }
    return out.str();
}

}  // namespace relalg
