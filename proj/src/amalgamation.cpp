#include "relalg/amalgamation.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <thread>

namespace relalg {

Network ApWitness::partial_union() const {
    const int l = base.n, k = ext1.n, m = ext2.n;
    const int total = k + m - l;
    Network u;
    u.n = total;
    u.labels.assign(static_cast<size_t>(total) * total, 0);
    auto map2 = [&](int v) { return v < l ? v : k + (v - l); };
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) u.ref(i, j) = ext1.at(i, j);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) u.ref(map2(i), map2(j)) = ext2.at(i, j);
    return u;
}

Network canonical_form(const Network& net) {
    const int n = net.n;
    std::vector<int> perm(n), best;
    std::iota(perm.begin(), perm.end(), 0);
    best = perm;
    do {
        // compare relabelled matrix against the best so far, row-major
        int cmp = 0;
        for (int i = 0; i < n && cmp == 0; ++i)
            for (int j = 0; j < n && cmp == 0; ++j) {
                Element a = net.at(perm[i], perm[j]), b = net.at(best[i], best[j]);
                if (a != b) cmp = a < b ? -1 : 1;
            }
        if (cmp < 0) best = perm;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return induced(net, best);
}

namespace {

// Backtracks over the edges (i,j), i<j, column by column, with diversity atoms only.
void extend_rec(const Algebra& ra, Network& net, int j, int i, const std::function<void(const Network&)>& out) {
    const int n = net.n;
    if (j == n) {
        out(net);
        return;
    }
    if (i == j) return extend_rec(ra, net, j + 1, 0, out);
    for (Atom t : atoms_of(ra.diversity())) {
        // triangle (h,i,j): (h,j) must lie in (h,i)∘(i,j)
        bool ok = true;
        for (int h = 0; h < i && ok; ++h)
            ok = ra.allowed(lowest_atom(net.at(h, i)), t, lowest_atom(net.at(h, j)));
        if (!ok) continue;
        net.set(ra, i, j, atom_bit(t));
        extend_rec(ra, net, j, i + 1, out);
    }
    net.set(ra, i, j, ra.full());
}

}  // namespace

std::vector<Network> extensions(const Algebra& ra, const Network& base, int n) {
    std::vector<Network> out;
    Network net = make_network(ra, n);
    for (int i = 0; i < base.n; ++i)
        for (int j = 0; j < base.n; ++j) net.ref(i, j) = base.at(i, j);
    extend_rec(ra, net, std::max(base.n, 1), 0, [&](const Network& g) { out.push_back(g); });
    return out;
}

std::vector<Network> canonical_networks(const Algebra& ra, int n) {
    std::vector<Network> out;
    if (n == 0) {
        out.push_back(make_network(ra, 0));
        return out;
    }
    Network net = make_network(ra, n);
    extend_rec(ra, net, 1, 0, [&](const Network& g) {
        if (canonical_form(g) == g) out.push_back(g);
    });
    return out;
}

bool amalgamates(const Algebra& ra, const Network& ext1, const Network& ext2, int l, std::uint64_t& nodes,
                 bool identify) {
    const int k = ext1.n, m = ext2.n;
    const int n1 = k - l, n2 = m - l;
    if (n1 == 0 || n2 == 0) return true;
    // base contribution to each missing edge (p,q)
    const Element start = identify ? ra.full() : ra.diversity();
    std::vector<Element> dom(static_cast<size_t>(n1) * n2, start);
    for (int p = 0; p < n1; ++p)
        for (int q = 0; q < n2; ++q) {
            Element d = start;
            for (int h = 0; h < l; ++h) d &= ra.compose(ext1.at(l + p, h), ext2.at(h, l + q));
            nodes += l;
            dom[p * n2 + q] = d;
        }
    std::vector<Element> fill(static_cast<size_t>(n1) * n2, 0);
    auto rec = [&](auto&& self, int idx) -> bool {
        if (idx == n1 * n2) return true;
        const int p = idx / n2, q = idx % n2;
        Element d = dom[idx];
        for (int h = 0; h < p && d; ++h) d &= ra.compose(ext1.at(l + p, l + h), fill[h * n2 + q]);
        for (int h = 0; h < q && d; ++h) d &= ra.compose(fill[p * n2 + h], ext2.at(l + h, l + q));
        nodes += p + q;
        for (Atom t : atoms_of(d)) {
            fill[idx] = atom_bit(t);
            if (self(self, idx + 1)) return true;
        }
        fill[idx] = 0;
        return false;
    };
    return rec(rec, 0);
}

namespace {

struct BaseOutcome {
    std::optional<ApWitness> witness;
    std::uint64_t nodes = 0;
    bool budget = false;
};

void check_base(const Algebra& ra, const Network& base, int k, int l, int m, std::uint64_t budget, bool identify,
                std::size_t limit, std::vector<ApWitness>& failures, std::uint64_t& nodes, bool& over) {
    std::vector<Network> e1 = l == 0 ? canonical_networks(ra, k) : extensions(ra, base, k);
    std::vector<Network> e2 = (m == k) ? e1 : (l == 0 ? canonical_networks(ra, m) : extensions(ra, base, m));
    for (const auto& a : e1)
        for (const auto& b : e2) {
            if (nodes > budget) {
                over = true;
                return;
            }
            if (!amalgamates(ra, a, b, l, nodes, identify)) {
                ApWitness w{base, a, b, {}};
                for (int p = l; p < k; ++p)
                    for (int q = 0; q < m - l; ++q) w.missing_edges.emplace_back(p, k + q);
                failures.push_back(std::move(w));
                if (failures.size() >= limit) return;
            }
        }
}

}  // namespace

ApResult check_ap(const Algebra& ra, int k, int l, int m, const ApOptions& opts) {
    if (l < 0 || l > std::min(k, m)) throw std::invalid_argument("AP needs l <= min(k, m)");
    ApResult res;
    const auto bases = canonical_networks(ra, l);
    const std::size_t nb = bases.size();
    std::vector<BaseOutcome> outcomes(nb);
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> first_fail{nb};
    std::atomic<std::uint64_t> total{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= nb || i > first_fail.load()) return;
            std::vector<ApWitness> fails;
            std::uint64_t nodes = 0;
            bool over = false;
            std::uint64_t remaining = opts.budget > total.load() ? opts.budget - total.load() : 0;
            check_base(ra, bases[i], k, l, m, remaining, opts.identify, 1, fails, nodes, over);
            total += nodes;
            outcomes[i].nodes = nodes;
            outcomes[i].budget = over;
            if (!fails.empty()) {
                outcomes[i].witness = std::move(fails.front());
                std::size_t cur = first_fail.load();
                while (i < cur && !first_fail.compare_exchange_weak(cur, i)) {
                }
            }
            if (over) return;
        }
    };
    const int threads = std::max(1, opts.threads);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    res.nodes = total.load();
    // deterministic merge: the earliest base that failed or ran out of budget decides
    for (std::size_t i = 0; i < nb; ++i) {
        if (outcomes[i].witness) {
            res.status = ApStatus::FAIL;
            res.witness = outcomes[i].witness;
            return res;
        }
        if (outcomes[i].budget) {
            res.status = ApStatus::BUDGET;
            return res;
        }
    }
    res.status = ApStatus::PASS;
    return res;
}

std::vector<ApWitness> ap_failures(const Algebra& ra, int k, int l, int m, std::size_t limit, bool identify) {
    std::vector<ApWitness> out;
    std::uint64_t nodes = 0;
    bool over = false;
    for (const auto& base : canonical_networks(ra, l)) {
        check_base(ra, base, k, l, m, UINT64_MAX, identify, limit, out, nodes, over);
        if (out.size() >= limit) break;
    }
    return out;
}

bool validate_witness(const Algebra& ra, const ApWitness& w, bool identify) {
    const int l = w.base.n, k = w.ext1.n, m = w.ext2.n;
    if (!is_consistent(ra, w.ext1) || !is_consistent(ra, w.ext2)) return false;
    if (!is_reduced(ra, w.ext1) || !is_reduced(ra, w.ext2)) return false;
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j)
            if (w.ext1.at(i, j) != w.base.at(i, j) || w.ext2.at(i, j) != w.base.at(i, j)) return false;
    // exhaustive filling of the missing edges, independent of the search in amalgamates
    Network u = w.partial_union();
    std::vector<std::pair<int, int>> missing;
    for (int p = l; p < k; ++p)
        for (int q = k; q < k + m - l; ++q) missing.emplace_back(p, q);
    const int atoms = ra.atom_count;
    std::size_t combos = 1;
    for (std::size_t i = 0; i < missing.size(); ++i) combos *= atoms;
    for (std::size_t code = 0; code < combos; ++code) {
        std::size_t c = code;
        for (auto [p, q] : missing) {
            u.set(ra, p, q, atom_bit(static_cast<Atom>(c % atoms)));
            c /= atoms;
        }
        if (is_consistent(ra, u) && (identify || is_reduced(ra, u))) return false;
    }
    return true;
}

std::vector<Element> witness_key(const Algebra& ra, const ApWitness& w) {
    Network u = w.partial_union();
    std::vector<Element> best;
    for (const auto& perm : automorphisms(ra)) {
        Network v = u;
        for (auto& e : v.labels) {
            Element img = 0;
            for (Atom a : atoms_of(e)) img |= atom_bit(perm[a]);
            e = img;
        }
        auto c = canonical_form(v).labels;
        if (best.empty() || c < best) best = c;
    }
    return best;
}

NormalResult has_normal_representation(const Algebra& ra, const ApOptions& opts) {
    NormalResult res;
    for (int l = 1; l <= ra.atom_count; ++l) {
        ApResult r = check_ap(ra, l + 1, l, l + 1, opts);
        if (r.status == ApStatus::BUDGET) throw BudgetExceeded();
        if (r.status == ApStatus::FAIL) {
            res.yes = false;
            res.witness = r.witness;
            res.failing_level = l;
            return res;
        }
    }
    res.yes = true;
    return res;
}

ProbeResult fully_universal_probe(const Algebra& ra, int max_n, const ApOptions& opts) {
    ProbeResult res;
    for (int n = 3; n <= max_n; ++n) {
        ApResult r = check_ap(ra, 3, 2, n, opts);
        if (r.status == ApStatus::BUDGET) throw BudgetExceeded();
        if (r.status == ApStatus::FAIL) {
            res.counterexample = true;
            res.witness = r.witness;
            res.n = n;
            return res;
        }
    }
    res.n = max_n;
    return res;
}

ApResult check_jep(const Algebra& ra, int max_k, int max_m, const ApOptions& opts) {
    ApResult total;
    for (int k = 1; k <= max_k; ++k)
        for (int m = k; m <= max_m; ++m) {
            ApResult r = check_ap(ra, k, 0, m, opts);
            total.nodes += r.nodes;
            if (r.status != ApStatus::PASS) {
                r.nodes = total.nodes;
                return r;
            }
        }
    return total;
}

ApWitness schema_witness(const Algebra& ra, const std::array<std::string, 3>& a,
                         const std::array<std::string, 3>& b, const std::array<std::string, 3>& c) {
    auto bit = [&](const std::string& s) { return atom_bit(ra.atom(s)); };
    ApWitness w;
    w.base = make_network(ra, 3);
    w.base.set(ra, 0, 1, bit(a[0]));
    w.base.set(ra, 1, 2, bit(a[1]));
    w.base.set(ra, 0, 2, bit(a[2]));
    auto side = [&](const std::array<std::string, 3>& s) {
        Network e = make_network(ra, 4);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) e.ref(i, j) = w.base.at(i, j);
        for (int i = 0; i < 3; ++i) e.set(ra, i, 3, bit(s[i]));
        return e;
    };
    w.ext1 = side(b);
    w.ext2 = side(c);
    w.missing_edges = {{3, 4}};
    return w;
}

}  // namespace relalg
