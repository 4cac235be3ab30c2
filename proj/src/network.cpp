#include "relalg/network.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace relalg {

void Network::set(const Algebra& ra, int i, int j, Element e) {
    labels[i * n + j] = e;
    labels[j * n + i] = ra.converse(e);
}

std::string Network::vertex_name(int i) const {
    if (i < static_cast<int>(names.size()) && !names[i].empty()) return names[i];
    return std::to_string(i);
}

int Network::vertex(const std::string& name) const {
    for (int i = 0; i < static_cast<int>(names.size()); ++i)
        if (names[i] == name) return i;
    throw std::invalid_argument("unknown vertex '" + name + "'");
}

Network make_network(const Algebra& ra, int n) {
    Network net;
    net.n = n;
    net.labels.assign(static_cast<size_t>(n) * n, ra.full());
    for (int i = 0; i < n; ++i) net.ref(i, i) = ra.identity;
    return net;
}

bool converse_consistent(const Algebra& ra, const Network& net) {
    for (int i = 0; i < net.n; ++i)
        for (int j = 0; j < net.n; ++j)
            if (net.at(j, i) != ra.converse(net.at(i, j))) return false;
    return true;
}

bool is_atomic(const Network& net) {
    return std::all_of(net.labels.begin(), net.labels.end(), is_singleton);
}

bool is_consistent(const Algebra& ra, const Network& net) {
    if (!is_atomic(net) || !converse_consistent(ra, net)) return false;
    for (int x = 0; x < net.n; ++x)
        if ((net.at(x, x) & ~ra.identity) != 0) return false;
    for (int x = 0; x < net.n; ++x)
        for (int y = 0; y < net.n; ++y)
            for (int z = 0; z < net.n; ++z)
                if ((net.at(x, z) & ~ra.compose(net.at(x, y), net.at(y, z))) != 0) return false;
    return true;
}

bool is_reduced(const Algebra& ra, const Network& net) {
    for (int x = 0; x < net.n; ++x)
        for (int y = 0; y < net.n; ++y)
            if (x != y && (net.at(x, y) & ra.identity) != 0) return false;
    return true;
}

Network induced(const Network& net, const std::vector<int>& vertices) {
    Network out;
    out.n = static_cast<int>(vertices.size());
    out.labels.resize(static_cast<size_t>(out.n) * out.n);
    for (int i = 0; i < out.n; ++i)
        for (int j = 0; j < out.n; ++j) out.ref(i, j) = net.at(vertices[i], vertices[j]);
    if (!net.names.empty())
        for (int v : vertices) out.names.push_back(net.vertex_name(v));
    return out;
}

Network reduce_atomic(const Algebra& ra, const Network& net, std::vector<int>& map) {
    std::vector<int> reps;
    map.assign(net.n, -1);
    for (int i = 0; i < net.n; ++i) {
        for (size_t r = 0; r < reps.size() && map[i] < 0; ++r)
            if (net.at(reps[r], i) & ra.identity) map[i] = static_cast<int>(r);
        if (map[i] < 0) {
            map[i] = static_cast<int>(reps.size());
            reps.push_back(i);
        }
    }
    return induced(net, reps);
}

namespace {

// Narrow (x,y) to c; returns false when the label becomes empty.
bool revise(const Algebra& ra, Network& net, int x, int y, Element c, std::deque<std::pair<int, int>>& queue) {
    Element old = net.at(x, y);
    Element nl = old & c;
    if (nl == old) return true;
    net.set(ra, x, y, nl);
    if (nl == 0) return false;
    queue.emplace_back(x, y);
    return true;
}

bool propagate(const Algebra& ra, Network& net, std::deque<std::pair<int, int>>& queue) {
    const int n = net.n;
    while (!queue.empty()) {
        auto [i, j] = queue.front();
        queue.pop_front();
        for (int k = 0; k < n; ++k) {
            if (!revise(ra, net, i, k, ra.compose(net.at(i, j), net.at(j, k)), queue)) return false;
            if (!revise(ra, net, k, j, ra.compose(net.at(k, i), net.at(i, j)), queue)) return false;
        }
    }
    return true;
}

bool has_empty(const Network& net) {
    return std::any_of(net.labels.begin(), net.labels.end(), [](Element e) { return e == 0; });
}

}  // namespace

PcResult path_consistency(const Algebra& ra, const Network& net) {
    PcResult r{false, net};
    Network& g = r.net;
    for (int i = 0; i < g.n; ++i) g.ref(i, i) &= ra.identity;
    if (has_empty(g)) {
        r.unsolvable = true;
        return r;
    }
    std::deque<std::pair<int, int>> queue;
    for (int i = 0; i < g.n; ++i)
        for (int j = i; j < g.n; ++j) queue.emplace_back(i, j);
    r.unsolvable = !propagate(ra, g, queue) || has_empty(g);
    return r;
}

PcResult path_consistency_naive(const Algebra& ra, const Network& net) {
    PcResult r{false, net};
    Network& g = r.net;
    for (int i = 0; i < g.n; ++i) g.ref(i, i) &= ra.identity;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int x = 0; x < g.n; ++x)
            for (int y = 0; y < g.n; ++y)
                for (int z = 0; z < g.n; ++z) {
                    Element nl = g.at(x, y) & ra.compose(g.at(x, z), g.at(z, y));
                    if (nl != g.at(x, y)) {
                        g.set(ra, x, y, nl);
                        changed = true;
                    }
                }
    }
    r.unsolvable = has_empty(g);
    return r;
}

namespace {

bool embeds_partial(const Network& pattern, const Network& host, bool singleton_only) {
    const int p = pattern.n;
    const int h = host.n;
    if (p > h) return false;
    std::vector<int> map(p, -1);
    std::vector<bool> used(h, false);
    auto rec = [&](auto&& self, int i) -> bool {
        if (i == p) return true;
        for (int v = 0; v < h; ++v) {
            if (used[v]) continue;
            bool ok = pattern.at(i, i) == host.at(v, v) || singleton_only;
            for (int j = 0; j < i && ok; ++j) {
                Element hl = host.at(map[j], v);
                ok = hl == pattern.at(j, i) && (!singleton_only || is_singleton(hl));
            }
            if (!ok) continue;
            used[v] = true;
            map[i] = v;
            if (self(self, i + 1)) return true;
            used[v] = false;
        }
        return false;
    };
    return rec(rec, 0);
}

struct Searcher {
    const Algebra& ra;
    const PatternLibrary& forbidden;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    const std::function<bool(const Network&)>& visit;

    bool hits_forbidden(const Network& net) const {
        for (const auto& pat : forbidden)
            if (embeds_partial(pat.net, net, true)) return true;
        return false;
    }

    // Returns false when the visitor asked to stop.
    bool run(Network& net) {
        if (++nodes > budget) throw BudgetExceeded();
        if (hits_forbidden(net)) return true;
        int bi = -1, bj = -1, best = 1 << 20;
        for (int i = 0; i < net.n; ++i)
            for (int j = i; j < net.n; ++j) {
                int c = popcount(net.at(i, j));
                if (c > 1 && c < best) {
                    best = c;
                    bi = i;
                    bj = j;
                }
            }
        if (bi < 0) return visit(net);
        for (Atom t : atoms_of(net.at(bi, bj))) {
            Network next = net;
            next.set(ra, bi, bj, atom_bit(t));
            std::deque<std::pair<int, int>> queue{{bi, bj}};
            if (!propagate(ra, next, queue)) continue;
            if (!run(next)) return false;
        }
        return true;
    }
};

}  // namespace

bool embeds(const Network& pattern, const Network& host) { return embeds_partial(pattern, host, false); }

std::uint64_t for_each_solution(const Algebra& ra, const Network& net, const PatternLibrary& forbidden,
                                const std::function<bool(const Network&)>& visit, std::uint64_t budget) {
    PcResult pc = path_consistency(ra, net);
    if (pc.unsolvable) return 0;
    Searcher s{ra, forbidden, budget, 0, visit};
    s.run(pc.net);
    return s.nodes;
}

Enumeration enumerate_solutions(const Algebra& ra, const Network& net, const PatternLibrary& forbidden,
                                std::size_t limit, std::uint64_t budget) {
    Enumeration out;
    std::function<bool(const Network&)> visit = [&](const Network& sol) {
        if (out.solutions.size() >= limit) {
            out.truncated = true;
            return false;
        }
        out.solutions.push_back(sol);
        return true;
    };
    out.nodes = for_each_solution(ra, net, forbidden, visit, budget);
    return out;
}

std::optional<Network> solve_ncp(const Algebra& ra, const Network& net, const PatternLibrary& forbidden) {
    const int n = net.n;
    if (n == 0) return net;
    for (int i = 0; i < n; ++i)
        if ((net.at(i, i) & ra.identity) == 0) return std::nullopt;
    // Merge vertices whose label is exactly the identity atom.
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    if (is_singleton(ra.identity))
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (net.at(i, j) == ra.identity) parent[find(j)] = find(i);
    std::vector<int> cls(n, -1), reps;
    for (int i = 0; i < n; ++i) {
        int r = find(i);
        if (cls[r] < 0) {
            cls[r] = static_cast<int>(reps.size());
            reps.push_back(r);
        }
        cls[i] = cls[r];
    }
    const int m = static_cast<int>(reps.size());
    Network merged;
    merged.n = m;
    merged.labels.assign(static_cast<size_t>(m) * m, ra.full());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Element l = net.at(i, j);
            if (i != j && cls[i] == cls[j]) {
                if ((l & ra.identity) == 0) return std::nullopt;
                continue;
            }
            merged.ref(cls[i], cls[j]) &= l;
        }
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            merged.ref(i, j) &= ra.converse(merged.at(j, i));
    std::optional<Network> found;
    std::function<bool(const Network&)> visit = [&](const Network& sol) {
        found = sol;
        return false;
    };
    for_each_solution(ra, merged, forbidden, visit, UINT64_MAX);
    if (!found) return std::nullopt;
    Network out = net;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.ref(i, j) = found->at(cls[i], cls[j]);
    return out;
}

Network atomic_network(const Algebra& ra, int n, const std::vector<std::tuple<int, int, std::string>>& edges) {
    Network net = make_network(ra, n);
    for (const auto& [i, j, a] : edges) net.set(ra, i, j, atom_bit(ra.atom(a)));
    return net;
}

Network evil_square(const Algebra& ra) {
    return atomic_network(ra, 4, {{0, 1, "a"}, {1, 2, "a"}, {2, 3, "a"}, {3, 0, "a"}, {0, 2, "b"}, {1, 3, "b"}});
}

Network a_path4(const Algebra& ra) {
    return atomic_network(ra, 4, {{0, 1, "a"}, {1, 2, "a"}, {2, 3, "a"}, {0, 2, "r"}, {0, 3, "r"}, {1, 3, "r"}});
}

PatternLibrary forbidden_51_65(const Algebra& ra) {
    PatternLibrary lib;
    lib.push_back({"f1", atomic_network(ra, 4, {{0, 1, "a"}, {1, 2, "a"}, {2, 3, "a"}, {3, 0, "a"},
                                                {0, 2, "c"}, {1, 3, "c"}})});
    lib.push_back({"f2", atomic_network(ra, 4, {{0, 1, "c"}, {1, 2, "c"}, {2, 3, "c"}, {3, 0, "c"},
                                                {0, 2, "a"}, {1, 3, "a"}})});
    lib.push_back({"f3", atomic_network(ra, 4, {{0, 1, "a"}, {1, 2, "a"}, {2, 3, "a"}, {0, 2, "c"},
                                                {0, 3, "c"}, {1, 3, "c"}})});
    lib.push_back({"f4", atomic_network(ra, 4, {{0, 1, "b"}, {2, 3, "b"}, {0, 2, "a"}, {1, 3, "a"},
                                                {0, 3, "c"}, {1, 2, "c"}})});
    return lib;
}

}  // namespace relalg
