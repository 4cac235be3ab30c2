#include "relalg/hardness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <regex>
#include <sstream>
#include <thread>

#include "relalg/catalog.hpp"
#include "relalg/io.hpp"
#include "relalg_embedded.hpp"

namespace relalg {

std::string to_string(GadgetClaim::Kind k) {
    switch (k) {
        case GadgetClaim::Kind::EQUAL_ON: return "EQUAL_ON";
        case GadgetClaim::Kind::AT_LEAST_ONE_EQUALS: return "AT_LEAST_ONE_EQUALS";
        case GadgetClaim::Kind::IMPLIES: return "IMPLIES";
        case GadgetClaim::Kind::REALIZABLE: return "REALIZABLE";
    }
    return "?";
}

namespace {

std::string edge_text(const Network& net, const Edge& e) {
    return "(" + net.vertex_name(e.first) + "," + net.vertex_name(e.second) + ")";
}

std::string claim_text(const Algebra& ra, const GadgetClaim& c) {
    std::ostringstream out;
    switch (c.kind) {
        case GadgetClaim::Kind::EQUAL_ON:
            out << "equal " << edge_text(c.net, c.edges[0]) << ' ' << edge_text(c.net, c.edges[1]);
            break;
        case GadgetClaim::Kind::AT_LEAST_ONE_EQUALS:
            out << "some";
            for (const auto& e : c.edges) out << ' ' << edge_text(c.net, e);
            out << " = " << ra.atom_names[c.atoms[0]];
            break;
        case GadgetClaim::Kind::IMPLIES:
            out << "implies " << edge_text(c.net, c.edges[0]) << " = " << ra.atom_names[c.atoms[0]] << " -> "
                << edge_text(c.net, c.edges[1]) << " = " << ra.atom_names[c.atoms[1]];
            break;
        case GadgetClaim::Kind::REALIZABLE:
            out << "realizable";
            for (size_t i = 0; i < c.edges.size(); ++i)
                out << ' ' << edge_text(c.net, c.edges[i]) << " = " << ra.atom_names[c.atoms[i]];
            break;
    }
    return out.str();
}

// Restricts the edge and its converse to the given element.
void restrict_edge(const Algebra& ra, Network& net, const Edge& e, Element keep) {
    net.set(ra, e.first, e.second, net.at(e.first, e.second) & keep);
}

struct Search {
    std::optional<Network> found;
    std::uint64_t nodes = 0;
};

Search first_solution(const Algebra& ra, const Network& net, std::uint64_t budget) {
    Search s;
    for (int i = 0; i < net.n; ++i)
        for (int j = 0; j < net.n; ++j)
            if (net.at(i, j) == 0) return s;
    s.nodes = for_each_solution(
        ra, net, {},
        [&](const Network& sol) {
            s.found = sol;
            return false;
        },
        budget);
    return s;
}

}  // namespace

GadgetClaim parse_claim(const Algebra& ra, const Network& net, const std::string& text, int line) {
    GadgetClaim c;
    c.net = net;
    auto words = split_ws(text);
    if (words.empty()) throw ParseError(line, "empty claim");
    const std::string& kind = words[0];
    std::string rest = text.substr(text.find(kind) + kind.size());

    static const std::regex item(R"(\(\s*([^,\s()]+)\s*,\s*([^,\s()]+)\s*\)(\s*=\s*([^\s()]+))?)");
    std::vector<std::optional<Atom>> given;
    std::string leftover;
    auto pos = rest.cbegin();
    for (std::sregex_iterator it(rest.begin(), rest.end(), item), end; it != end; ++it) {
        const auto& m = *it;
        leftover += std::string(pos, m[0].first);
        pos = m[0].second;
        auto vertex = [&](const std::string& tok) {
            if (!tok.empty() && std::all_of(tok.begin(), tok.end(), ::isdigit) && std::stoi(tok) < net.n)
                return std::stoi(tok);
            try {
                return net.vertex(tok);
            } catch (const std::invalid_argument& ex) {
                throw ParseError(line, ex.what());
            }
        };
        Edge e{vertex(m[1]), vertex(m[2])};
        if (e.first == e.second) throw ParseError(line, "claim edge needs two distinct vertices");
        c.edges.push_back(e);
        if (m[4].matched) {
            try {
                given.push_back(ra.atom(m[4]));
            } catch (const std::invalid_argument& ex) {
                throw ParseError(line, ex.what());
            }
        } else {
            given.push_back(std::nullopt);
        }
    }
    leftover += std::string(pos, rest.cend());
    leftover = trim(leftover);

    auto all_given = [&] { return std::all_of(given.begin(), given.end(), [](const auto& a) { return a.has_value(); }); };
    if (kind == "equal") {
        c.kind = GadgetClaim::Kind::EQUAL_ON;
        if (c.edges.size() != 2 || given[0] || given[1] || !leftover.empty())
            throw ParseError(line, "expected 'equal (u,v) (x,y)'");
    } else if (kind == "some") {
        c.kind = GadgetClaim::Kind::AT_LEAST_ONE_EQUALS;
        if (c.edges.empty() || !given.back() || !leftover.empty())
            throw ParseError(line, "expected 'some (u,v) ... = atom'");
        for (size_t i = 0; i + 1 < given.size(); ++i)
            if (given[i]) throw ParseError(line, "'some' takes a single atom after the last edge");
        c.atoms.push_back(*given.back());
    } else if (kind == "implies") {
        c.kind = GadgetClaim::Kind::IMPLIES;
        if (c.edges.size() != 2 || !all_given() || leftover != "->")
            throw ParseError(line, "expected 'implies (u,v) = atom -> (x,y) = atom'");
        c.atoms = {*given[0], *given[1]};
    } else if (kind == "realizable") {
        c.kind = GadgetClaim::Kind::REALIZABLE;
        if (c.edges.empty() || !all_given() || !leftover.empty())
            throw ParseError(line, "expected 'realizable (u,v) = atom ...'");
        for (const auto& a : given) c.atoms.push_back(*a);
    } else {
        throw ParseError(line, "unknown claim kind '" + kind + "'");
    }
    c.text = claim_text(ra, c);
    return c;
}

Gadget parse_gadget(const std::string& text, const std::string& name) {
    Gadget g;
    g.name = name;
    std::istringstream in(text);
    std::string raw, net_text;
    std::vector<std::pair<int, std::string>> claim_lines;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        auto hash = raw.find('#');
        std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (s.rfind("algebra:", 0) == 0) {
            if (!g.algebra.empty()) throw ParseError(line, "duplicate 'algebra:'");
            g.algebra = trim(s.substr(8));
            net_text += '\n';
        } else if (s.rfind("claim:", 0) == 0) {
            claim_lines.emplace_back(line, trim(s.substr(6)));
            net_text += '\n';
        } else {
            net_text += raw + '\n';
        }
    }
    if (g.algebra.empty()) throw ParseError(line, "missing 'algebra:'");
    const Algebra* ra = nullptr;
    try {
        ra = &catalog_algebra(g.algebra);
    } catch (const std::exception&) {
        throw ParseError(line, "unknown algebra '" + g.algebra + "'");
    }
    g.net = parse_network(*ra, net_text);
    for (const auto& [l, t] : claim_lines) g.claims.push_back(parse_claim(*ra, g.net, t, l));
    return g;
}

std::string format_gadget(const Algebra& ra, const Gadget& g) {
    std::string out = "algebra: " + g.algebra + "\n" + format_network(ra, g.net);
    for (const auto& c : g.claims) out += "claim: " + c.text + "\n";
    return out;
}

const std::vector<Gadget>& embedded_gadgets() {
    static const std::vector<Gadget> gadgets = [] {
        std::vector<Gadget> out;
        for (const auto& [stem, text] : embedded::gadget_files)
            out.push_back(parse_gadget(std::string(text), std::string(stem)));
        return out;
    }();
    return gadgets;
}

GadgetVerdict verify_gadget(const Algebra& ra, const GadgetClaim& claim, std::uint64_t budget) {
    GadgetVerdict v;
    const Network& net = claim.net;
    for (const auto& [i, j] : claim.edges)
        if (i < 0 || j < 0 || i >= net.n || j >= net.n || i == j)
            throw std::invalid_argument("claim edge outside the network");

    // Each case lists restricted networks; universal claims pass when none has a solution.
    std::vector<Network> cases;
    switch (claim.kind) {
        case GadgetClaim::Kind::EQUAL_ON: {
            const Edge& e = claim.edges[0];
            const Edge& f = claim.edges[1];
            for (Atom x : atoms_of(net.at(e.first, e.second)))
                for (Atom y : atoms_of(net.at(f.first, f.second))) {
                    if (x == y) continue;
                    Network m = net;
                    restrict_edge(ra, m, e, atom_bit(x));
                    restrict_edge(ra, m, f, atom_bit(y));
                    cases.push_back(std::move(m));
                }
            break;
        }
        case GadgetClaim::Kind::AT_LEAST_ONE_EQUALS: {
            Network m = net;
            for (const auto& e : claim.edges) restrict_edge(ra, m, e, ~atom_bit(claim.atoms[0]));
            cases.push_back(std::move(m));
            break;
        }
        case GadgetClaim::Kind::IMPLIES: {
            Network m = net;
            restrict_edge(ra, m, claim.edges[0], atom_bit(claim.atoms[0]));
            restrict_edge(ra, m, claim.edges[1], ~atom_bit(claim.atoms[1]));
            cases.push_back(std::move(m));
            break;
        }
        case GadgetClaim::Kind::REALIZABLE: {
            Network m = net;
            for (size_t i = 0; i < claim.edges.size(); ++i) restrict_edge(ra, m, claim.edges[i], atom_bit(claim.atoms[i]));
            Search s = first_solution(ra, m, budget);
            v.nodes = s.nodes;
            v.pass = s.found.has_value();
            v.witness = s.found;
            return v;
        }
    }
    for (const auto& m : cases) {
        Search s = first_solution(ra, m, budget - std::min(budget, v.nodes));
        v.nodes += s.nodes;
        if (s.found) {
            v.counterexample = s.found;
            return v;
        }
    }
    v.pass = true;
    return v;
}

std::vector<GadgetClaim> realizability_claims(const Algebra& ra, const GadgetClaim& equal_claim) {
    std::vector<GadgetClaim> out;
    if (equal_claim.kind != GadgetClaim::Kind::EQUAL_ON) return out;
    const Edge& e = equal_claim.edges[0];
    for (Atom x : atoms_of(equal_claim.net.at(e.first, e.second))) {
        GadgetClaim c;
        c.net = equal_claim.net;
        c.kind = GadgetClaim::Kind::REALIZABLE;
        c.edges = equal_claim.edges;
        c.atoms = {x, x};
        c.text = claim_text(ra, c);
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<std::pair<Atom, Atom>> pcsp_condition(const Algebra& ra) {
    std::vector<std::pair<Atom, Atom>> out;
    for (Atom p = 0; p < ra.atom_count; ++p)
        for (Atom q = 0; q < ra.atom_count; ++q) {
            if (p == q || ra.conv[p] != p || ra.conv[q] != q) continue;
            if (ra.allowed(p, p, p) || ra.allowed(q, q, q)) continue;
            if (ra.allowed(p, q, q)) out.emplace_back(p, q);
        }
    return out;
}

bool has_monochromatic_triangle(int n, std::uint32_t colouring) {
    std::vector<int> index(n * n);
    int k = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) index[i * n + j] = k++;
    auto colour = [&](int i, int j) { return (colouring >> index[i * n + j]) & 1u; };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int l = j + 1; l < n; ++l)
                if (colour(i, j) == colour(j, l) && colour(j, l) == colour(i, l)) return true;
    return false;
}

RamseyReport ramsey_boundary_check() {
    RamseyReport r;
    for (std::uint32_t c = 0; c < (1u << 10); ++c, ++r.k5_checked)
        if (!r.k5_witness && !has_monochromatic_triangle(5, c)) r.k5_witness = c;
    for (std::uint32_t c = 0; c < (1u << 15); ++c, ++r.k6_checked)
        if (!r.k6_witness && !has_monochromatic_triangle(6, c)) r.k6_witness = c;
    return r;
}

std::vector<GadgetReportEntry> gadget_suite(const std::vector<Gadget>& library, int parallel, std::uint64_t budget) {
    struct Job {
        const Gadget* gadget;
        GadgetClaim claim;
    };
    std::vector<Job> jobs;
    for (const auto& g : library) {
        const Algebra& ra = catalog_algebra(g.algebra);
        for (const auto& c : g.claims) {
            jobs.push_back({&g, c});
            for (auto& r : realizability_claims(ra, c)) jobs.push_back({&g, std::move(r)});
        }
    }
    std::vector<GadgetReportEntry> report(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            const Job& job = jobs[i];
            GadgetReportEntry& e = report[i];
            e.gadget = job.gadget->name;
            e.algebra = job.gadget->algebra;
            e.claim = job.claim.text;
            auto t0 = std::chrono::steady_clock::now();
            try {
                GadgetVerdict v = verify_gadget(catalog_algebra(e.algebra), job.claim, budget);
                e.pass = v.pass;
                e.counterexample = v.counterexample;
            } catch (const BudgetExceeded&) {
                e.budget_exceeded = true;
            }
            e.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        }
    };
    const int threads = std::max(1, parallel);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return report;
}

std::vector<GadgetReportEntry> gadget_suite() { return gadget_suite(embedded_gadgets()); }

}  // namespace relalg
