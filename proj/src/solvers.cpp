#include "relalg/solvers.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>

#include "relalg/atom_structure.hpp"

namespace relalg {

std::string to_string(NspStatus s) {
    switch (s) {
        case NspStatus::SAT: return "SAT";
        case NspStatus::UNSAT: return "UNSAT";
        case NspStatus::UNKNOWN: return "UNKNOWN";
    }
    return "?";
}

std::string to_string(CutDecomposition::Kind k) {
    switch (k) {
        case CutDecomposition::Kind::D_CUT: return "d-cut";
        case CutDecomposition::Kind::A_CUT: return "a-cut";
        case CutDecomposition::Kind::S_CUT: return "s-cut";
        case CutDecomposition::Kind::P_CUT: return "p-cut";
    }
    return "?";
}

namespace {

NspVerdict verdict(NspStatus s, const std::string& method) {
    NspVerdict v;
    v.status = s;
    v.method = method;
    return v;
}

// Intersects every label with the converse of its mirror.
Network normalized(const Algebra& ra, const Network& net) {
    Network out = net;
    for (int i = 0; i < net.n; ++i)
        for (int j = 0; j < net.n; ++j) out.ref(i, j) = net.at(i, j) & ra.converse(net.at(j, i));
    return out;
}

bool has_empty_label(const Algebra& ra, const Network& net) {
    for (int i = 0; i < net.n; ++i) {
        if ((net.at(i, i) & ra.identity) == 0) return true;
        for (int j = 0; j < net.n; ++j)
            if (net.at(i, j) == 0) return true;
    }
    return false;
}

bool refines(const Network& sol, const Network& net) {
    if (sol.n != net.n) return false;
    for (size_t i = 0; i < sol.labels.size(); ++i)
        if ((sol.labels[i] & ~net.labels[i]) != 0) return false;
    return true;
}

std::vector<int> all_vertices(int n) {
    std::vector<int> vs(n);
    std::iota(vs.begin(), vs.end(), 0);
    return vs;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

// Groups of vs by union-find root, ordered by their smallest member.
std::vector<std::vector<int>> groups(const std::vector<int>& vs, UnionFind& uf, const std::vector<int>& local) {
    std::map<int, std::vector<int>> by_root;
    for (int v : vs) by_root[uf.find(local[v])].push_back(v);
    std::vector<std::vector<int>> out;
    for (auto& [root, g] : by_root) out.push_back(std::move(g));
    std::sort(out.begin(), out.end());
    return out;
}

// Merge loop: joins the first pair of parts whose common cross labels meet no allowed atom.
// cross[i][j] is the intersection of labels from part i to part j.
struct MergeResult {
    std::vector<std::vector<int>> parts;
    std::vector<Element> cross;
};

std::optional<MergeResult> merge_until_valid(const Network& net, std::vector<std::vector<int>> parts, Element allowed) {
    const int k0 = static_cast<int>(parts.size());
    std::vector<std::vector<Element>> m(k0, std::vector<Element>(k0, ~Element{0}));
    for (int i = 0; i < k0; ++i)
        for (int j = 0; j < k0; ++j)
            if (i != j)
                for (int x : parts[i])
                    for (int y : parts[j]) m[i][j] &= net.at(x, y);
    std::vector<int> alive(k0);
    std::iota(alive.begin(), alive.end(), 0);
    while (alive.size() >= 2) {
        bool merged = false;
        for (size_t p = 0; p < alive.size() && !merged; ++p)
            for (size_t q = p + 1; q < alive.size() && !merged; ++q) {
                int i = alive[p], j = alive[q];
                if ((m[i][j] & allowed) && (m[j][i] & allowed)) continue;
                for (int t = 0; t < k0; ++t) {
                    m[i][t] &= m[j][t];
                    m[t][i] &= m[t][j];
                }
                parts[i].insert(parts[i].end(), parts[j].begin(), parts[j].end());
                std::sort(parts[i].begin(), parts[i].end());
                alive.erase(alive.begin() + static_cast<long>(q));
                merged = true;
            }
        if (!merged) break;
    }
    if (alive.size() < 2) return std::nullopt;
    MergeResult r;
    const size_t k = alive.size();
    r.cross.assign(k * k, 0);
    for (size_t p = 0; p < k; ++p) {
        r.parts.push_back(parts[alive[p]]);
        for (size_t q = 0; q < k; ++q)
            if (p != q) r.cross[p * k + q] = m[alive[p]][alive[q]];
    }
    return r;
}

std::vector<int> local_index(const Network& net, const std::vector<int>& vs) {
    std::vector<int> local(net.n, -1);
    for (size_t i = 0; i < vs.size(); ++i) local[vs[i]] = static_cast<int>(i);
    return local;
}

}  // namespace

std::vector<Element> generators_24_65(const Algebra& ra) {
    std::vector<Element> g;
    for (const char* d : {"a", "b", "c"}) g.push_back(atom_bit(ra.atom(d)) | ra.identity);
    g.push_back(ra.diversity());
    g.push_back(ra.identity);
    g.push_back(ra.full());
    return g;
}

std::vector<Element> generators_17_37(const Algebra& ra) {
    return {atom_bit(ra.atom("r")) | ra.identity, atom_bit(ra.atom("r~")) | ra.identity,
            atom_bit(ra.atom("a")) | ra.identity, ra.diversity(), ra.identity, ra.full()};
}

std::optional<CutDecomposition> find_d_cut(const Algebra& ra, const Network& net, const std::vector<int>& vs, Atom d) {
    const Element rd = atom_bit(d) | ra.identity;
    auto local = local_index(net, vs);
    UnionFind uf(static_cast<int>(vs.size()));
    for (int x : vs)
        for (int y : vs)
            if (x != y && (net.at(x, y) == rd || net.at(x, y) == ra.identity)) uf.unite(local[x], local[y]);
    auto merged = merge_until_valid(net, groups(vs, uf, local), ra.diversity() & ~atom_bit(d));
    if (!merged) return std::nullopt;
    CutDecomposition cut;
    cut.kind = CutDecomposition::Kind::D_CUT;
    cut.d = d;
    cut.parts = merged->parts;
    const size_t k = cut.parts.size();
    cut.cross_atoms.assign(k * k, -1);
    for (size_t i = 0; i < k; ++i)
        for (size_t j = i + 1; j < k; ++j) {
            Atom e = lowest_atom(merged->cross[i * k + j] & ra.diversity() & ~atom_bit(d) &
                                 ra.converse(merged->cross[j * k + i]));
            cut.cross_atoms[i * k + j] = e;
            cut.cross_atoms[j * k + i] = ra.conv[e];
        }
    return cut;
}

std::optional<CutDecomposition> find_a_cut(const Algebra& ra, const Network& net, const std::vector<int>& vs) {
    const Element ra_lab = atom_bit(ra.atom("a")) | ra.identity;
    const Atom r = ra.atom("r");
    auto local = local_index(net, vs);
    UnionFind uf(static_cast<int>(vs.size()));
    for (int x : vs)
        for (int y : vs)
            if (x != y && (net.at(x, y) == ra_lab || net.at(x, y) == ra.identity)) uf.unite(local[x], local[y]);
    const Element orient = atom_bit(r) | atom_bit(ra.conv[r]);
    auto merged = merge_until_valid(net, groups(vs, uf, local), orient);
    if (!merged) return std::nullopt;
    CutDecomposition cut;
    cut.kind = CutDecomposition::Kind::A_CUT;
    cut.parts = merged->parts;
    const size_t k = cut.parts.size();
    cut.cross_atoms.assign(k * k, -1);
    for (size_t i = 0; i < k; ++i)
        for (size_t j = i + 1; j < k; ++j) {
            Atom e = lowest_atom(merged->cross[i * k + j] & orient & ra.converse(merged->cross[j * k + i]));
            cut.cross_atoms[i * k + j] = e;
            cut.cross_atoms[j * k + i] = ra.conv[e];
        }
    return cut;
}

namespace {

// Strongly connected components of G (x->y when the label is R_r or id), as component index per local vertex.
std::vector<int> scc_of_g(const Algebra& ra, const Network& net, const std::vector<int>& vs, int& count) {
    const Element rr = atom_bit(ra.atom("r")) | ra.identity;
    const int n = static_cast<int>(vs.size());
    auto edge = [&](int i, int j) {
        Element l = net.at(vs[i], vs[j]);
        return i != j && (l == rr || l == ra.identity);
    };
    // Kosaraju: finishing order on G, then components on the reverse graph in decreasing finish time.
    std::vector<int> order;
    std::vector<bool> seen(n, false);
    std::function<void(int)> dfs1 = [&](int u) {
        seen[u] = true;
        for (int v = 0; v < n; ++v)
            if (!seen[v] && edge(u, v)) dfs1(v);
        order.push_back(u);
    };
    for (int u = 0; u < n; ++u)
        if (!seen[u]) dfs1(u);
    std::vector<int> comp(n, -1);
    count = 0;
    std::function<void(int)> dfs2 = [&](int u) {
        comp[u] = count;
        for (int v = 0; v < n; ++v)
            if (comp[v] < 0 && edge(v, u)) dfs2(v);
    };
    for (auto it = order.rbegin(); it != order.rend(); ++it)
        if (comp[*it] < 0) {
            dfs2(*it);
            ++count;
        }
    // renumber by smallest member for determinism
    std::vector<int> first(count, n);
    for (int u = 0; u < n; ++u) first[comp[u]] = std::min(first[comp[u]], u);
    std::vector<int> idx(count);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return first[a] < first[b]; });
    std::vector<int> rename(count);
    for (int i = 0; i < count; ++i) rename[idx[i]] = i;
    for (int& c : comp) c = rename[c];
    return comp;
}

std::optional<CutDecomposition> two_part_cut(const Algebra& ra, const Network& net, const std::vector<int>& vs,
                                             const std::vector<bool>& in_c, CutDecomposition::Kind kind, Atom d) {
    CutDecomposition cut;
    cut.kind = kind;
    cut.parts.resize(2);
    for (size_t i = 0; i < vs.size(); ++i) cut.parts[in_c[i] ? 0 : 1].push_back(vs[i]);
    if (cut.parts[0].empty() || cut.parts[1].empty()) return std::nullopt;
    for (int x : cut.parts[0])
        for (int y : cut.parts[1])
            if (!contains(net.at(x, y), d)) return std::nullopt;
    cut.cross_atoms = {-1, d, ra.conv[d], -1};
    return cut;
}

}  // namespace

std::optional<CutDecomposition> find_s_cut(const Algebra& ra, const Network& net, const std::vector<int>& vs) {
    const int n = static_cast<int>(vs.size());
    const Element rr = atom_bit(ra.atom("r")) | ra.identity;
    const Element ra_lab = atom_bit(ra.atom("a")) | ra.identity;
    int count = 0;
    auto comp = scc_of_g(ra, net, vs, count);
    auto g_edge = [&](int i, int j) {
        Element l = net.at(vs[i], vs[j]);
        return i != j && (l == rr || l == ra.identity);
    };
    auto h_edge = [&](int i, int j) {
        Element l = net.at(vs[i], vs[j]);
        return i != j && (l == ra_lab || l == ra.identity);
    };
    std::vector<bool> source(count, true);
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x)
            if (comp[x] != comp[y] && g_edge(y, x)) source[comp[x]] = false;
    std::vector<bool> in_comp(count, false);
    for (int c = 0; c < count; ++c) in_comp[c] = source[c];
    bool grew = true;
    while (grew) {
        grew = false;
        for (int x = 0; x < n && !grew; ++x) {
            if (!in_comp[comp[x]]) continue;
            for (int y = 0; y < n && !grew; ++y)
                if (!in_comp[comp[y]] && (g_edge(y, x) || h_edge(x, y))) {
                    in_comp[comp[y]] = true;
                    grew = true;
                }
        }
    }
    std::vector<bool> in_c(n);
    for (int i = 0; i < n; ++i) in_c[i] = in_comp[comp[i]];
    return two_part_cut(ra, net, vs, in_c, CutDecomposition::Kind::S_CUT, ra.atom("r"));
}

std::optional<CutDecomposition> find_p_cut(const Algebra& ra, const Network& net, const std::vector<int>& vs) {
    const int n = static_cast<int>(vs.size());
    const Element rr = atom_bit(ra.atom("r")) | ra.identity;
    int count = 0;
    auto comp = scc_of_g(ra, net, vs, count);
    auto g_edge = [&](int i, int j) {
        Element l = net.at(vs[i], vs[j]);
        return i != j && (l == rr || l == ra.identity);
    };
    std::vector<bool> in_comp(count, false);
    in_comp[0] = true;
    bool grew = true;
    while (grew) {
        grew = false;
        for (int x = 0; x < n && !grew; ++x) {
            if (!in_comp[comp[x]]) continue;
            for (int y = 0; y < n && !grew; ++y)
                if (!in_comp[comp[y]] && (g_edge(x, y) || g_edge(y, x))) {
                    in_comp[comp[y]] = true;
                    grew = true;
                }
        }
    }
    std::vector<bool> in_c(n);
    for (int i = 0; i < n; ++i) in_c[i] = in_comp[comp[i]];
    return two_part_cut(ra, net, vs, in_c, CutDecomposition::Kind::P_CUT, ra.atom("a"));
}

namespace {

void check_generators(const Algebra& ra, const Network& net, const std::vector<Element>& gens, const char* name) {
    for (int i = 0; i < net.n; ++i)
        for (int j = 0; j < net.n; ++j) {
            if (i == j) continue;
            Element l = net.at(i, j);
            if (std::find(gens.begin(), gens.end(), l) == gens.end())
                throw LabelOutsideGeneratorSet(std::string(name) + ": label " + ra.element_name(l) + " on (" +
                                               net.vertex_name(i) + "," + net.vertex_name(j) +
                                               ") is outside the generator set");
        }
}

using CutFinder = std::function<std::optional<CutDecomposition>(const std::vector<int>&)>;

// The shared recursion: all-identity when no pair is labelled not-id, otherwise split along the first cut found.
bool divide_and_conquer(const Algebra& ra, const Network& net, const std::vector<int>& vs,
                        const std::vector<CutFinder>& finders, Network& sol) {
    bool needs_split = false;
    for (int x : vs)
        for (int y : vs)
            if (x != y && net.at(x, y) == ra.diversity()) needs_split = true;
    const Atom id = lowest_atom(ra.identity);
    if (!needs_split) {
        for (int x : vs)
            for (int y : vs) sol.ref(x, y) = atom_bit(id);
        return true;
    }
    for (const auto& find : finders) {
        auto cut = find(vs);
        if (!cut) continue;
        for (const auto& part : cut->parts)
            if (!divide_and_conquer(ra, net, part, finders, sol)) return false;
        const size_t k = cut->parts.size();
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j)
                if (i != j)
                    for (int x : cut->parts[i])
                        for (int y : cut->parts[j]) sol.ref(x, y) = atom_bit(cut->cross_atoms[i * k + j]);
        return true;
    }
    return false;
}

NspVerdict run_dc(const Algebra& ra, const Network& input, const std::vector<Element>& gens,
                  const std::vector<CutFinder>& finders, const char* name) {
    if (has_empty_label(ra, input)) return verdict(NspStatus::UNSAT, name);
    Network net = normalized(ra, input);
    check_generators(ra, net, gens, name);
    Network sol = net;
    if (!divide_and_conquer(ra, net, all_vertices(net.n), finders, sol)) return verdict(NspStatus::UNSAT, name);
    NspVerdict v = verdict(NspStatus::SAT, name);
    v.solution = sol;
    return v;
}

}  // namespace

NspVerdict dc_24_65(const Network& net) {
    const Algebra& ra = catalog_algebra("24_65");
    // the finders read the normalized labels that run_dc validates
    Network norm = has_empty_label(ra, net) ? net : normalized(ra, net);
    std::vector<CutFinder> finders;
    for (const char* d : {"a", "b", "c"}) {
        Atom atom = ra.atom(d);
        finders.push_back([&ra, &norm, atom](const std::vector<int>& vs) { return find_d_cut(ra, norm, vs, atom); });
    }
    return run_dc(ra, net, generators_24_65(ra), finders, "dc_24_65");
}

NspVerdict dc_17_37(const Network& net) {
    const Algebra& ra = catalog_algebra("17_37");
    Network norm = has_empty_label(ra, net) ? net : normalized(ra, net);
    std::vector<CutFinder> finders = {
        [&](const std::vector<int>& vs) { return find_a_cut(ra, norm, vs); },
        [&](const std::vector<int>& vs) { return find_s_cut(ra, norm, vs); },
        [&](const std::vector<int>& vs) { return find_p_cut(ra, norm, vs); },
    };
    return run_dc(ra, net, generators_17_37(ra), finders, "dc_17_37");
}

namespace {

struct Chain {
    std::vector<Element> steps;
    Element value = 0;
};

// Chains of up to three generators, shortest first.
std::vector<Chain> generator_chains(const Algebra& ra, const std::vector<Element>& gens) {
    std::vector<Element> base;
    for (Element g : gens) {
        if (g == ra.full() || g == ra.identity) continue;
        for (Element h : {g, ra.converse(g)})
            if (std::find(base.begin(), base.end(), h) == base.end()) base.push_back(h);
    }
    std::vector<Chain> out;
    for (Element g : gens) out.push_back({{g}, g});
    for (Element g : base)
        if (std::find(gens.begin(), gens.end(), g) == gens.end()) out.push_back({{g}, g});
    size_t level_start = 0;
    for (int len = 2; len <= 3; ++len) {
        size_t level_end = out.size();
        for (size_t i = level_start; i < level_end; ++i) {
            if (out[i].steps.size() != static_cast<size_t>(len - 1)) continue;
            for (Element g : base) {
                Chain c = out[i];
                c.steps.push_back(g);
                c.value = ra.compose(c.value, g);
                out.push_back(c);
            }
        }
        level_start = level_end;
    }
    return out;
}

}  // namespace

std::optional<Network> desugar(const Algebra& ra, const Network& input, const std::vector<Element>& gens) {
    if (has_empty_label(ra, input)) return std::nullopt;
    Network net = normalized(ra, input);
    if (has_empty_label(ra, net)) return std::nullopt;
    const auto chains = generator_chains(ra, gens);
    auto is_gen = [&](Element e) {
        return std::find(gens.begin(), gens.end(), e) != gens.end() ||
               std::find(gens.begin(), gens.end(), ra.converse(e)) != gens.end();
    };
    struct Edge {
        int u, v;
        Element label;
    };
    std::vector<Edge> edges;
    int next = net.n;
    std::vector<std::pair<int, int>> plain;
    for (int x = 0; x < net.n; ++x)
        for (int y = x + 1; y < net.n; ++y) {
            const Element t = net.at(x, y);
            if (is_gen(t)) {
                edges.push_back({x, y, t});
                continue;
            }
            // greedy intersection of chains above t
            std::vector<const Chain*> terms;
            Element acc = ra.full();
            for (const auto& c : chains)
                if ((c.value & t) == t && (acc & c.value) != acc) {
                    terms.push_back(&c);
                    acc &= c.value;
                    if (acc == t) break;
                }
            if (acc != t)
                throw LabelOutsideGeneratorSet("label " + ra.element_name(t) + " is not expressible from the generators");
            for (size_t i = 0; i < terms.size(); ++i) {
                int src = x;
                if (i > 0) {
                    src = next++;
                    edges.push_back({x, src, ra.identity});
                }
                const auto& steps = terms[i]->steps;
                int cur = src;
                for (size_t s = 0; s < steps.size(); ++s) {
                    int to = s + 1 == steps.size() ? y : next++;
                    edges.push_back({cur, to, steps[s]});
                    cur = to;
                }
            }
        }
    Network out = make_network(ra, next);
    for (int i = 0; i < net.n; ++i) out.names.push_back(net.vertex_name(i));
    for (int i = net.n; i < next; ++i) out.names.push_back("_z" + std::to_string(i - net.n));
    for (const auto& e : edges) out.set(ra, e.u, e.v, out.at(e.u, e.v) & e.label);
    return out;
}

std::pair<Network, Network> decompose_product(const Algebra& product, const Network& net) {
    if (!product.product) throw NotAProduct("algebra '" + product.name + "' has no product factorization");
    const auto& info = *product.product;
    const Algebra* factor[2] = {info.first.get(), info.second.get()};
    Network out[2] = {make_network(*factor[0], net.n), make_network(*factor[1], net.n)};
    for (int f = 0; f < 2; ++f) out[f].names = net.names;
    for (int i = 0; i < net.n; ++i)
        for (int j = 0; j < net.n; ++j) {
            Element proj[2] = {0, 0};
            for (Atom x : atoms_of(net.at(i, j))) proj[info.origin[x].first] |= atom_bit(info.origin[x].second);
            for (int f = 0; f < 2; ++f) out[f].ref(i, j) = proj[f];
        }
    return {out[0], out[1]};
}

int forced_distinct_points(const Algebra& ra, const Network& net) {
    // greedy clique in the graph of pairs whose label excludes the identity, highest degree first
    const int n = net.n;
    std::vector<int> deg(n, 0);
    auto apart = [&](int i, int j) { return i != j && (net.at(i, j) & ra.identity) == 0; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) deg[i] += apart(i, j);
    std::vector<int> order = all_vertices(n);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return deg[a] > deg[b]; });
    std::vector<int> clique;
    for (int v : order)
        if (std::all_of(clique.begin(), clique.end(), [&](int u) { return apart(u, v); })) clique.push_back(v);
    return static_cast<int>(clique.size());
}

namespace {

std::mutex model_mutex;

std::vector<NamedRepresentation>& model_cache(const std::string& name) {
    static std::map<std::string, std::vector<NamedRepresentation>> cache;
    auto it = cache.find(name);
    if (it == cache.end()) {
        std::vector<NamedRepresentation> seed;
        for (const auto& b : builtin_names()) {
            auto rep = builtin_representation(b);
            if (rep.algebra == name) seed.push_back({b, rep.rep});
        }
        it = cache.emplace(name, std::move(seed)).first;
    }
    return it->second;
}

std::optional<RepCertificate> satisfy_in_models(const Algebra& ra, const std::vector<NamedRepresentation>& models,
                                                const Network& net) {
    for (const auto& m : models)
        if (auto map = satisfy_in_rep(ra, m.rep, net)) return RepCertificate{m.algebra, m.rep, *map};
    return std::nullopt;
}

}  // namespace

NspVerdict bounded_rep_search(const CatalogEntry& entry, const Network& input, std::uint64_t budget) {
    const Algebra& ra = entry.algebra;
    const char* method = "bounded_rep_search";
    if (has_empty_label(ra, input)) return verdict(NspStatus::UNSAT, method);
    PcResult pc = path_consistency(ra, normalized(ra, input));
    if (pc.unsolvable) return verdict(NspStatus::UNSAT, method);
    auto bound = ramsey_class_bound(ra, ra.identity);
    const int max_points = bound ? *bound : 16;
    if (forced_distinct_points(ra, pc.net) > max_points) return verdict(NspStatus::UNSAT, method);
    std::vector<NamedRepresentation> models;
    {
        std::lock_guard<std::mutex> lock(model_mutex);
        models = model_cache(entry.name);
    }
    if (auto cert = satisfy_in_models(ra, models, input)) {
        NspVerdict v = verdict(NspStatus::SAT, method);
        v.assignment = cert;
        return v;
    }
    std::optional<Network> found;
    std::uint64_t used = 0;
    try {
        used = for_each_solution(
            ra, pc.net, {},
            [&](const Network& sol) {
                std::vector<int> map;
                Network reduced = reduce_atomic(ra, sol, map);
                if (reduced.n > max_points) return true;
                if (auto model = extend_to_square_model(ra, reduced, max_points, budget)) {
                    found = *model;
                    return false;
                }
                return true;
            },
            budget);
    } catch (const BudgetExceeded&) {
        return verdict(NspStatus::UNKNOWN, method);
    }
    (void)used;
    if (!found) return verdict(NspStatus::UNSAT, method);
    NamedRepresentation model{"square_model_" + std::to_string(found->n), network_representation(ra, *found)};
    {
        std::lock_guard<std::mutex> lock(model_mutex);
        model_cache(entry.name).push_back(model);
    }
    NspVerdict v = verdict(NspStatus::SAT, method);
    auto map = satisfy_in_rep(ra, model.rep, input);
    if (map) v.assignment = RepCertificate{model.algebra, model.rep, *map};
    return v;
}

namespace {

const std::vector<std::string> kPcComplete = {"1_37", "2_37", "8_37", "3_3", "37_37", "nonintegral"};

bool bulatov_pass(const CatalogEntry& entry) {
    static std::mutex m;
    static std::map<std::string, bool> cache;
    std::lock_guard<std::mutex> lock(m);
    auto it = cache.find(entry.name);
    if (it != cache.end()) return it->second;
    bool pass = bulatov_condition(entry.algebra).status == BulatovStatus::PASS;
    cache[entry.name] = pass;
    return pass;
}

// The 2-cycle products of 5_7 with 1_2 and 2_2 have a representation built from Z5 and a complete graph.
std::optional<std::pair<FiniteRepresentation, std::string>> five_seven_product_rep(const CatalogEntry& entry, int n) {
    const Algebra& r57 = catalog_algebra("5_7");
    const auto z5 = builtin_representation("Z5_5_7").rep;
    for (const char* other : {"1_2", "2_2"}) {
        const Algebra& k = catalog_algebra(other);
        const int points = std::string(other) == "1_2" ? 2 : std::max(3, n);
        const auto kn = complete_graph_representation(k, points);
        for (int inner = 0; inner < 2; ++inner) {
            Algebra prod = inner == 0 ? two_cycle_product(r57, k) : two_cycle_product(k, r57);
            auto iso = isomorphisms(prod, entry.algebra, true);
            if (iso.empty()) continue;
            FiniteRepresentation rep = inner == 0 ? cycle_product_rep(r57, z5, k, kn) : cycle_product_rep(k, kn, r57, z5);
            FiniteRepresentation out = empty_representation(entry.algebra, rep.domain_size);
            for (Atom x = 0; x < prod.atom_count; ++x) out.relations[iso[0][x]] = rep.relations[x];
            std::string label = inner == 0 ? std::string("Z5[K") + std::to_string(points) + "]"
                                           : std::string("K") + std::to_string(points) + "[Z5]";
            return std::make_pair(out, label);
        }
    }
    return std::nullopt;
}

NspVerdict certify_by_search(const Algebra& ra, const Network& net, NspVerdict v) {
    if (v.status != NspStatus::SAT) return v;
    auto sol = solve_ncp(ra, net);
    if (!sol) throw std::logic_error(v.method + " accepted a network without a consistent atomic refinement");
    v.solution = sol;
    return v;
}

}  // namespace

NspVerdict solve_nsp(const CatalogEntry& entry, const Network& input, const SolveOptions& opts) {
    const Algebra& ra = entry.algebra;
    for (Element l : input.labels)
        if ((l & ~ra.full()) != 0) throw AlgebraMismatch("network label outside the atoms of " + entry.name);
    if (static_cast<int>(input.labels.size()) != input.n * input.n) throw AlgebraMismatch("malformed network");
    if (!is_representable(entry.repr)) return verdict(NspStatus::UNSAT, "not_representable");
    if (ra.product) return solve_nsp(ra, input, opts);
    if (has_empty_label(ra, input)) return verdict(NspStatus::UNSAT, "empty_label");
    const Network net = normalized(ra, input);
    if (has_empty_label(ra, net)) return verdict(NspStatus::UNSAT, "empty_label");
    const std::string& name = entry.name;
    if (std::find(kPcComplete.begin(), kPcComplete.end(), name) != kPcComplete.end()) {
        PcResult pc = path_consistency(ra, net);
        NspVerdict v = verdict(pc.unsolvable ? NspStatus::UNSAT : NspStatus::SAT, "path_consistency");
        return opts.certify ? certify_by_search(ra, net, v) : v;
    }
    if (is_fully_universal(entry.repr) && bulatov_pass(entry)) {
        auto sol = solve_via_atom_structure(ra, net);
        NspVerdict v = verdict(sol ? NspStatus::SAT : NspStatus::UNSAT, "atom_structure_csp");
        v.solution = sol;
        return v;
    }
    auto desugared = [&](const std::vector<Element>& gens) { return desugar(ra, net, gens); };
    auto restrict_solution = [&](NspVerdict v) {
        if (v.solution) v.solution = induced(*v.solution, all_vertices(net.n));
        if (v.solution) v.solution->names = input.names;
        return v;
    };
    if (name == "24_65") {
        auto d = desugared(generators_24_65(ra));
        if (!d) return verdict(NspStatus::UNSAT, "dc_24_65");
        return restrict_solution(dc_24_65(*d));
    }
    if (name == "17_37") {
        auto d = desugared(generators_17_37(ra));
        if (!d) return verdict(NspStatus::UNSAT, "dc_17_37");
        return restrict_solution(dc_17_37(*d));
    }
    if (name == "51_65") {
        auto sol = solve_ncp(ra, net, forbidden_51_65(ra));
        NspVerdict v = verdict(sol ? NspStatus::SAT : NspStatus::UNSAT, "ncp_forbidden_f1_f4");
        v.solution = sol;
        return v;
    }
    if (name == "5_7") {
        auto z5 = builtin_representation("Z5_5_7");
        auto map = satisfy_in_rep(ra, z5.rep, net);
        NspVerdict v = verdict(map ? NspStatus::SAT : NspStatus::UNSAT, "satisfy_in_rep(Z5)");
        if (map) v.assignment = RepCertificate{"Z5_5_7", z5.rep, *map};
        return v;
    }
    if (auto rep = five_seven_product_rep(entry, net.n)) {
        auto map = satisfy_in_rep(ra, rep->first, net);
        NspVerdict v = verdict(map ? NspStatus::SAT : NspStatus::UNSAT, "satisfy_in_rep(" + rep->second + ")");
        if (map) v.assignment = RepCertificate{rep->second, rep->first, *map};
        return v;
    }
    if (is_fully_universal(entry.repr)) {
        auto sol = solve_ncp(ra, net);
        NspVerdict v = verdict(sol ? NspStatus::SAT : NspStatus::UNSAT, "ncp");
        v.solution = sol;
        return v;
    }
    if (name == "39_65" || name == "62_65") return bounded_rep_search(entry, net, opts.budget);
    return verdict(NspStatus::UNKNOWN, name == "56_65" ? "open" : "no_method");
}

NspVerdict solve_nsp(const Algebra& ra, const Network& net, const SolveOptions& opts) {
    if (!ra.product) {
        auto match = match_to_catalog(ra);
        // rename atoms into the entry's numbering and back
        const auto& ren = match.renaming;
        auto rename = [&](const Network& src, const std::vector<Atom>& map) {
            Network out = src;
            for (auto& l : out.labels) {
                Element e = 0;
                for (Atom x : atoms_of(l)) e |= atom_bit(map[x]);
                l = e;
            }
            return out;
        };
        std::vector<Atom> back(ren.size());
        for (size_t x = 0; x < ren.size(); ++x) back[ren[x]] = static_cast<Atom>(x);
        NspVerdict v = solve_nsp(*match.entry, rename(net, ren), opts);
        if (v.solution) v.solution = rename(*v.solution, back);
        if (v.assignment) {
            FiniteRepresentation rep = empty_representation(ra, v.assignment->rep.domain_size);
            for (size_t x = 0; x < ren.size(); ++x) rep.relations[x] = v.assignment->rep.relations[ren[x]];
            v.assignment->rep = rep;
        }
        return v;
    }
    auto [n1, n2] = decompose_product(ra, net);
    const auto& info = *ra.product;
    auto lift = [&](const Network& sol, int factor) {
        Network out = sol;
        for (auto& l : out.labels) {
            Element e = 0;
            for (Atom x : atoms_of(l))
                for (Atom p = 0; p < ra.atom_count; ++p)
                    if (info.origin[p] == std::make_pair(factor, x)) e |= atom_bit(p);
            l = e;
        }
        return out;
    };
    NspVerdict best;
    best.status = NspStatus::UNSAT;
    for (int f = 0; f < 2; ++f) {
        const Algebra& fa = f == 0 ? *info.first : *info.second;
        NspVerdict v = solve_nsp(fa, f == 0 ? n1 : n2, opts);
        if (v.status == NspStatus::SAT) {
            NspVerdict out = verdict(NspStatus::SAT, "product[" + std::to_string(f + 1) + "]:" + v.method);
            if (v.solution) out.solution = lift(*v.solution, f);
            return out;
        }
        if (v.status == NspStatus::UNKNOWN) best.status = NspStatus::UNKNOWN;
    }
    best.method = "product";
    return best;
}

bool verify_verdict(const Algebra& ra, const Network& net, const NspVerdict& v) {
    if (v.status != NspStatus::SAT) return true;
    if (!v.solution && !v.assignment) return false;
    if (v.solution) {
        if (!is_consistent(ra, *v.solution) || !refines(*v.solution, net)) return false;
        std::vector<int> map;
        Network reduced = reduce_atomic(ra, *v.solution, map);
        if (v.method == "dc_17_37" && embeds(a_path4(ra), reduced)) return false;
        if (v.method == "ncp_forbidden_f1_f4")
            for (const auto& p : forbidden_51_65(ra))
                if (embeds(p.net, reduced)) return false;
    }
    if (v.assignment) {
        const auto& a = *v.assignment;
        if (static_cast<int>(a.map.size()) != net.n) return false;
        for (int i = 0; i < net.n; ++i)
            for (int j = 0; j < net.n; ++j) {
                Atom x = a.rep.atom_at(a.map[i], a.map[j]);
                if (x < 0 || !contains(net.at(i, j), x)) return false;
            }
    }
    return true;
}

}  // namespace relalg
