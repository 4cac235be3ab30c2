#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <sstream>

#include "relalg/algebra.hpp"
#include "relalg/amalgamation.hpp"
#include "relalg/atom_structure.hpp"
#include "relalg/catalog.hpp"
#include "relalg/hardness.hpp"
#include "relalg/io.hpp"
#include "relalg/network.hpp"
#include "relalg/representation.hpp"
#include "relalg/solvers.hpp"

using namespace relalg;
using json = nlohmann::ordered_json;

namespace {

enum Exit { OK = 0, NO = 1, USAGE = 2, UNKNOWN = 3 };

struct Globals {
    bool json = false;
    std::uint64_t budget = 100000000;
    int parallel = 1;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Catalog name, or a file (or '-') holding one algebra.
Algebra load_algebra(const std::string& spec) {
    for (const auto& e : catalog())
        if (e.name == spec) return e.algebra;
    if (spec != "-" && spec.find('/') == std::string::npos && spec.find('.') == std::string::npos)
        throw UsageError("unknown catalog algebra '" + spec + "'");
    return parse_algebra(read_text(spec));
}

const CatalogEntry* catalog_lookup(const Algebra& ra) {
    for (const auto& e : catalog())
        if (e.name == ra.name && e.algebra.comp == ra.comp && e.algebra.atom_names == ra.atom_names) return &e;
    return nullptr;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

json network_json(const Algebra& ra, const Network& net) {
    json edges = json::array();
    for (int i = 0; i < net.n; ++i)
        for (int j = i; j < net.n; ++j)
            if ((i == j && net.at(i, i) != ra.identity) || (i != j && net.at(i, j) != ra.full()))
                edges.push_back({net.vertex_name(i), net.vertex_name(j), ra.element_name(net.at(i, j))});
    json names = json::array();
    for (int i = 0; i < net.n; ++i) names.push_back(net.vertex_name(i));
    return {{"vertices", net.n}, {"names", names}, {"edges", edges}};
}

std::string witness_text(const Algebra& ra, const ApWitness& w) {
    std::ostringstream out;
    out << "base:\n" << format_network(ra, w.base) << "ext1:\n" << format_network(ra, w.ext1) << "ext2:\n"
        << format_network(ra, w.ext2) << "missing:";
    for (const auto& [i, j] : w.missing_edges) out << " (" << i << "," << j << ")";
    out << "\nunion:\n" << format_network(ra, w.partial_union());
    return out.str();
}

json witness_json(const Algebra& ra, const ApWitness& w) {
    json missing = json::array();
    for (const auto& [i, j] : w.missing_edges) missing.push_back({i, j});
    return {{"base", network_json(ra, w.base)},
            {"ext1", network_json(ra, w.ext1)},
            {"ext2", network_json(ra, w.ext2)},
            {"missing", missing}};
}

void emit(const Globals& g, const json& j, const std::string& text) {
    if (g.json)
        std::cout << j.dump(2) << '\n';
    else
        std::cout << text;
}

int cmd_enumerate(const Globals& g, int atoms, const std::string& signature) {
    if (signature != "sym" && signature != "asym") throw UsageError("signature must be sym or asym");
    auto sig = signature == "sym" ? Signature::ALL_SYMMETRIC : Signature::ONE_ASYMMETRIC_PAIR;
    auto algebras = enumerate_integral(atoms, sig);
    std::ostringstream out;
    json list = json::array();
    for (auto& ra : algebras) {
        auto m = match_to_catalog(ra);
        if (m.entry) ra.name = m.entry->name;
        out << format_algebra(ra) << '\n';
        list.push_back({{"name", ra.name}, {"text", format_algebra(ra)}});
    }
    out << "count: " << algebras.size() << '\n';
    emit(g, {{"atoms", atoms}, {"signature", signature}, {"count", algebras.size()}, {"algebras", list}}, out.str());
    return OK;
}

int cmd_classify(const Globals& g, const std::string& spec, int probe_n) {
    Algebra ra = load_algebra(spec);
    std::ostringstream out;
    json j;
    auto m = match_to_catalog(ra);
    if (m.entry) {
        out << "catalog: " << m.entry->name << " (repr " << to_string(m.entry->repr) << ", nsp "
            << to_string(m.entry->nsp) << ")\n";
        j["catalog"] = {{"name", m.entry->name}, {"repr", to_string(m.entry->repr)}, {"nsp", to_string(m.entry->nsp)}};
    } else {
        out << "catalog: none\n";
        j["catalog"] = nullptr;
    }
    auto f = structural_flags(ra);
    out << "symmetric: " << yes_no(f.symmetric) << "\nintegral: " << yes_no(f.integral)
        << "\nsimple: " << yes_no(f.simple) << "\nflexible atoms: " << ra.element_name(f.flexible_atoms) << '\n';
    j["flags"] = {{"symmetric", f.symmetric},
                  {"integral", f.integral},
                  {"simple", f.simple},
                  {"flexible_atoms", ra.element_name(f.flexible_atoms)}};
    if (!f.integral) {
        out << "normal representation: not checked (non-integral)\n";
        emit(g, j, out.str());
        return OK;
    }
    ApOptions opts;
    opts.budget = g.budget;
    opts.threads = g.parallel;
    auto normal = has_normal_representation(ra, opts);
    out << "normal representation: " << (normal.yes ? "YES" : "NO") << '\n';
    j["normal"] = normal.yes;
    if (normal.witness) {
        int l = normal.failing_level;
        out << "failing: AP(" << l + 1 << "," << l << "," << l + 1 << ")\n" << witness_text(ra, *normal.witness);
        j["failing_level"] = l;
        j["normal_witness"] = witness_json(ra, *normal.witness);
    }
    auto probe = fully_universal_probe(ra, probe_n, opts);
    if (probe.counterexample) {
        out << "fully universal probe: AP(3,2," << probe.n << ") fails\n" << witness_text(ra, *probe.witness);
        j["probe"] = {{"counterexample", true}, {"n", probe.n}, {"witness", witness_json(ra, *probe.witness)}};
    } else {
        out << "fully universal probe: no AP(3,2,n) counterexample for n <= " << probe.n << '\n';
        j["probe"] = {{"counterexample", false}, {"n", probe.n}};
    }
    emit(g, j, out.str());
    return normal.yes ? OK : NO;
}

int cmd_ap(const Globals& g, const std::string& spec, int k, int l, int m) {
    Algebra ra = load_algebra(spec);
    if (l < 0 || l > k || l > m) throw UsageError("need 0 <= l <= min(k, m)");
    ApOptions opts;
    opts.budget = g.budget;
    opts.threads = g.parallel;
    auto res = check_ap(ra, k, l, m, opts);
    std::ostringstream out;
    std::string head = "AP(" + std::to_string(k) + "," + std::to_string(l) + "," + std::to_string(m) + ")";
    json j{{"algebra", spec}, {"k", k}, {"l", l}, {"m", m}};
    switch (res.status) {
        case ApStatus::PASS:
            out << head << ": PASS\n";
            j["status"] = "PASS";
            emit(g, j, out.str());
            return OK;
        case ApStatus::BUDGET:
            out << head << ": BUDGET\n";
            j["status"] = "BUDGET";
            emit(g, j, out.str());
            return UNKNOWN;
        case ApStatus::FAIL:
            out << head << ": FAIL\n" << witness_text(ra, *res.witness);
            j["status"] = "FAIL";
            j["witness"] = witness_json(ra, *res.witness);
            emit(g, j, out.str());
            return NO;
    }
    return NO;
}

int cmd_solve(const Globals& g, const std::string& spec, const std::string& file) {
    Algebra ra = load_algebra(spec);
    Network net = parse_network(ra, read_text(file));
    SolveOptions opts;
    opts.budget = g.budget;
    NspVerdict v;
    if (const CatalogEntry* e = catalog_lookup(ra))
        v = solve_nsp(*e, net, opts);
    else
        v = solve_nsp(ra, net, opts);
    std::ostringstream out;
    out << to_string(v.status) << " (method: " << v.method << ")\n";
    json j{{"status", to_string(v.status)}, {"method", v.method}};
    if (v.solution) {
        out << "solution:\n" << format_network(ra, *v.solution);
        j["solution"] = network_json(ra, *v.solution);
    }
    if (v.assignment) {
        out << "representation: " << v.assignment->rep_name << "\nassignment:";
        for (int x : v.assignment->map) out << ' ' << x;
        out << '\n';
        j["representation"] = v.assignment->rep_name;
        j["assignment"] = v.assignment->map;
    }
    emit(g, j, out.str());
    switch (v.status) {
        case NspStatus::SAT: return OK;
        case NspStatus::UNSAT: return NO;
        case NspStatus::UNKNOWN: return UNKNOWN;
    }
    return UNKNOWN;
}

int cmd_pc(const Globals& g, const std::string& spec, const std::string& file) {
    Algebra ra = load_algebra(spec);
    Network net = parse_network(ra, read_text(file));
    auto pc = path_consistency(ra, net);
    if (pc.unsolvable) {
        emit(g, {{"status", "INCONSISTENT"}}, "PC: INCONSISTENT\n");
        return NO;
    }
    emit(g, {{"status", "FIXPOINT"}, {"network", network_json(ra, pc.net)}},
         "PC: FIXPOINT\n" + format_network(ra, pc.net));
    return OK;
}

int cmd_rep_verify(const Globals& g, const std::string& spec, const std::string& source) {
    Algebra ra = load_algebra(spec);
    FiniteRepresentation rep;
    auto names = builtin_names();
    if (std::find(names.begin(), names.end(), source) != names.end()) {
        auto named = builtin_representation(source);
        if (named.algebra != ra.name)
            throw UsageError("builtin " + source + " represents " + named.algebra + ", not " + ra.name);
        rep = named.rep;
    } else {
        rep = parse_representation(ra, read_text(source));
    }
    auto report = verify_representation(ra, rep);
    std::ostringstream out;
    out << "representation: " << (report.valid ? "VALID" : "INVALID") << "\nsquare: " << yes_no(report.square)
        << "\npoints: " << rep.domain_size << '\n';
    json viol = json::array();
    for (const auto& v : report.violations) {
        out << "axiom " << v.axiom << ": " << v.detail << '\n';
        viol.push_back({{"axiom", v.axiom}, {"detail", v.detail}});
    }
    emit(g, {{"valid", report.valid}, {"square", report.square}, {"points", rep.domain_size}, {"violations", viol}},
         out.str());
    return report.valid ? OK : NO;
}

int cmd_poly(const Globals& g, const std::string& spec, const std::string& search, const std::string& verify_file,
             bool show) {
    Algebra ra = load_algebra(spec);
    std::ostringstream out;
    json j{{"algebra", ra.name}};
    if (!verify_file.empty()) {
        auto op = parse_operation(ra, read_text(verify_file));
        bool ok = verify_polymorphism(ra, op);
        out << "polymorphism: " << (ok ? "PASS" : "FAIL") << "\nconservative: " << yes_no(is_conservative(op));
        if (op.arity == 2) out << "\nsymmetric: " << yes_no(is_binary_symmetric(op));
        if (op.arity == 3) out << "\nwnu: " << yes_no(is_wnu(op));
        out << '\n';
        j["polymorphism"] = ok;
        emit(g, j, out.str());
        return ok ? OK : NO;
    }
    if (!search.empty()) {
        std::string s = search;
        std::replace(s.begin(), s.end(), ',', ' ');
        auto atoms = split_ws(s);
        if (atoms.size() != 2) throw UsageError("--search expects two atoms, e.g. a,b");
        Atom a = ra.atom(atoms[0]), b = ra.atom(atoms[1]);
        std::uint64_t nodes = 0;
        auto w = search_pair(ra, a, b, g.budget, &nodes);
        if (!w) {
            out << "pair {" << atoms[0] << "," << atoms[1] << "}: no witness\n";
            j["witness"] = nullptr;
            emit(g, j, out.str());
            return NO;
        }
        out << "pair {" << atoms[0] << "," << atoms[1] << "}: " << to_string(w->kind) << '\n'
            << format_operation(ra, w->op);
        j["kind"] = to_string(w->kind);
        j["table"] = format_operation(ra, w->op);
        emit(g, j, out.str());
        return OK;
    }
    bool all_ok = true;
    json tables = json::array();
    for (const auto& p : embedded_polymorphisms()) {
        if (std::find(p.algebras.begin(), p.algebras.end(), ra.name) == p.algebras.end()) continue;
        bool ok = verify_polymorphism(ra, p.op);
        all_ok = all_ok && ok;
        out << "table " << p.label << ": " << (ok ? "PASS" : "FAIL") << '\n';
        if (show) out << format_operation(ra, p.op);
        tables.push_back({{"label", p.label}, {"pass", ok}});
    }
    j["tables"] = tables;
    auto res = bulatov_condition(ra, g.budget);
    std::string status = res.status == BulatovStatus::PASS ? "PASS" : res.status == BulatovStatus::FAIL ? "FAIL" : "BUDGET";
    out << "conservative condition: " << status << '\n';
    j["condition"] = status;
    json failing = json::array();
    for (const auto& [a, b] : res.failing_pairs) {
        out << "failing pair: {" << ra.atom_names[a] << "," << ra.atom_names[b] << "}\n";
        failing.push_back({ra.atom_names[a], ra.atom_names[b]});
    }
    j["failing_pairs"] = failing;
    if (show)
        for (const auto& w : res.witnesses)
            out << "pair {" << ra.atom_names[w.a] << "," << ra.atom_names[w.b] << "}: " << to_string(w.kind) << '\n'
                << format_operation(ra, w.op);
    emit(g, j, out.str());
    if (res.status == BulatovStatus::BUDGET) return UNKNOWN;
    return all_ok && res.status == BulatovStatus::PASS ? OK : NO;
}

int cmd_gadgets(const Globals& g, const std::vector<std::string>& files, bool timing) {
    std::vector<Gadget> library;
    if (files.empty()) {
        library = embedded_gadgets();
    } else {
        for (const auto& f : files) {
            auto slash = f.find_last_of('/');
            std::string stem = slash == std::string::npos ? f : f.substr(slash + 1);
            library.push_back(parse_gadget(read_text(f), stem.substr(0, stem.find('.'))));
        }
    }
    auto report = gadget_suite(library, g.parallel, g.budget);
    std::ostringstream out;
    json entries = json::array();
    int failed = 0, over = 0;
    for (const auto& e : report) {
        std::string status = e.budget_exceeded ? "BUDGET" : e.pass ? "PASS" : "FAIL";
        failed += !e.pass && !e.budget_exceeded;
        over += e.budget_exceeded;
        out << status << ' ' << e.gadget << ": " << e.claim;
        if (timing) out << " (" << e.millis << " ms)";
        out << '\n';
        json je{{"gadget", e.gadget}, {"algebra", e.algebra}, {"claim", e.claim}, {"status", status}};
        if (e.counterexample) {
            const Algebra& ra = catalog_algebra(e.algebra);
            out << format_network(ra, *e.counterexample);
            je["counterexample"] = network_json(ra, *e.counterexample);
        }
        if (timing) je["millis"] = e.millis;
        entries.push_back(je);
    }
    out << report.size() - failed - over << "/" << report.size() << " claims pass\n";
    emit(g, {{"entries", entries}, {"failed", failed}}, out.str());
    if (failed) return NO;
    return over ? UNKNOWN : OK;
}

int cmd_census(const Globals& g) {
    std::ostringstream out;
    json rows = json::array();
    for (const auto& r : census()) {
        out << format_census_row(r) << '\n';
        rows.push_back({{"atoms", r.atom_count},
                        {"integral", r.integral},
                        {"symmetric", r.signature.sym},
                        {"asymmetric", r.signature.asym},
                        {"total", r.total},
                        {"simple", r.simple},
                        {"representable", r.representable.total()},
                        {"fully_universal", r.fully_universal.total()},
                        {"normal", r.normal.total()},
                        {"flexible", r.flexible.total()}});
    }
    emit(g, rows, out.str());
    return OK;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite relation algebras with at most four atoms"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_flag("--json", g.json, "Structured output");
    app.add_option("--budget", g.budget, "Search node budget");
    app.add_option("--parallel", g.parallel, "Worker threads")->check(CLI::PositiveNumber);

    int atoms = 4;
    std::string signature = "sym";
    auto* enumerate = app.add_subcommand("enumerate", "Integral algebras with the given atom count");
    enumerate->add_option("--atoms", atoms)->required()->check(CLI::Range(1, 4));
    enumerate->add_option("--signature", signature)->required();

    std::string alg, file, source;
    int probe_n = 4;
    auto* classify = app.add_subcommand("classify", "Catalog match, flags and representation probes");
    classify->add_option("algebra", alg, "Catalog name or algebra file")->required();
    classify->add_option("--probe-n", probe_n, "Largest n for the AP(3,2,n) probe");

    int k = 0, l = 0, m = 0;
    auto* ap = app.add_subcommand("ap", "Amalgamation property AP(k,l,m)");
    ap->add_option("algebra", alg)->required();
    ap->add_option("k", k)->required();
    ap->add_option("l", l)->required();
    ap->add_option("m", m)->required();

    auto* solve = app.add_subcommand("solve", "Network satisfaction");
    solve->add_option("algebra", alg)->required();
    solve->add_option("network", file)->required();

    auto* pc = app.add_subcommand("pc", "Path consistency fixpoint");
    pc->add_option("algebra", alg)->required();
    pc->add_option("network", file)->required();

    auto* rep = app.add_subcommand("rep-verify", "Check a finite representation");
    rep->add_option("algebra", alg)->required();
    rep->add_option("representation", source, "Representation file or builtin name")->required();

    std::string search, verify_file;
    bool show = false;
    auto* poly = app.add_subcommand("poly", "Conservative polymorphisms");
    poly->add_option("algebra", alg)->required();
    poly->add_option("--search", search, "Search one atom pair, e.g. a,b");
    poly->add_option("--verify", verify_file, "Verify an operation table file");
    poly->add_flag("--show", show, "Print the tables");

    std::vector<std::string> gadget_files;
    bool timing = false;
    auto* gadgets = app.add_subcommand("gadgets", "Verify the gadget claims");
    gadgets->add_option("files", gadget_files, "Gadget files instead of the embedded library");
    gadgets->add_flag("--timing", timing, "Report time per claim");

    auto* census_cmd = app.add_subcommand("census", "Census of algebras with at most four atoms");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? OK : USAGE;
    }

    try {
        if (*enumerate) return cmd_enumerate(g, atoms, signature);
        if (*classify) return cmd_classify(g, alg, probe_n);
        if (*ap) return cmd_ap(g, alg, k, l, m);
        if (*solve) return cmd_solve(g, alg, file);
        if (*pc) return cmd_pc(g, alg, file);
        if (*rep) return cmd_rep_verify(g, alg, source);
        if (*poly) return cmd_poly(g, alg, search, verify_file, show);
        if (*gadgets) return cmd_gadgets(g, gadget_files, timing);
        if (*census_cmd) return cmd_census(g);
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return UNKNOWN;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return USAGE;
    }
    return USAGE;
}
