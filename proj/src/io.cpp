#include "relalg/io.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <set>
#include <sstream>

namespace relalg {

ParseError::ParseError(int l, const std::string& msg)
    : std::runtime_error("line " + std::to_string(l) + ": " + msg), line(l) {}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    return {std::istream_iterator<std::string>(in), std::istream_iterator<std::string>()};
}

std::string read_text(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

const std::string* Record::get(const std::string& key) const {
    for (const auto& [k, v] : fields)
        if (k == key) return &v;
    return nullptr;
}

std::vector<Record> parse_records(const std::string& text) {
    std::vector<Record> out;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    Record cur;
    auto flush = [&] {
        if (!cur.fields.empty()) out.push_back(cur);
        cur = Record{};
    };
    while (std::getline(in, raw)) {
        ++line;
        auto hash = raw.find('#');
        std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (s.empty()) {
            if (trim(raw).empty()) flush();
            continue;
        }
        auto colon = s.find(':');
        if (colon == std::string::npos) throw ParseError(line, "expected 'key: value'");
        if (cur.fields.empty()) cur.first_line = line;
        cur.fields.emplace_back(trim(s.substr(0, colon)), trim(s.substr(colon + 1)));
        cur.lines.push_back(line);
    }
    flush();
    return out;
}

Algebra algebra_from_record(const Record& rec, const std::vector<std::string>& extra_keys) {
    static const std::set<std::string> known{"name", "atoms", "identity", "converse", "cycles"};
    std::map<std::string, std::string> kv;
    for (size_t i = 0; i < rec.fields.size(); ++i) {
        const auto& [k, v] = rec.fields[i];
        bool extra = std::find(extra_keys.begin(), extra_keys.end(), k) != extra_keys.end();
        if (!known.count(k) && !extra) throw ParseError(rec.lines[i], "unknown key '" + k + "'");
        if (kv.count(k)) throw ParseError(rec.lines[i], "duplicate key '" + k + "'");
        kv[k] = v;
    }
    if (!kv.count("atoms")) throw ParseError(rec.first_line, "missing 'atoms'");
    if (!kv.count("identity")) throw ParseError(rec.first_line, "missing 'identity'");
    std::vector<std::string> names = split_ws(kv["atoms"]);
    if (names.empty() || names.size() > static_cast<size_t>(kMaxAtoms))
        throw ParseError(rec.first_line, "atom count must be between 1 and 8");
    auto index = [&](const std::string& a) -> Atom {
        auto it = std::find(names.begin(), names.end(), a);
        if (it == names.end()) throw ParseError(rec.first_line, "unknown atom '" + a + "'");
        return static_cast<Atom>(it - names.begin());
    };
    Element identity = 0;
    for (const auto& a : split_ws(kv["identity"])) identity |= atom_bit(index(a));
    auto conv = identity_converse();
    for (const auto& pair : split_ws(kv["converse"])) {
        auto c = pair.find(':');
        if (c == std::string::npos) throw ParseError(rec.first_line, "converse entry must be x:y");
        Atom x = index(pair.substr(0, c)), y = index(pair.substr(c + 1));
        conv[x] = y;
        conv[y] = x;
    }
    std::vector<Triple> cycles;
    for (const auto& t : split_ws(kv["cycles"])) {
        auto d1 = t.find('.');
        auto d2 = d1 == std::string::npos ? d1 : t.find('.', d1 + 1);
        if (d2 == std::string::npos) throw ParseError(rec.first_line, "cycle must be x.y.z");
        cycles.push_back({index(t.substr(0, d1)), index(t.substr(d1 + 1, d2 - d1 - 1)), index(t.substr(d2 + 1))});
    }
    std::string name = kv.count("name") ? kv["name"] : "";
    try {
        if (is_singleton(identity)) return build_algebra(names, lowest_atom(identity), conv, cycles, name);
        return build_algebra_explicit(names, identity, conv, cycles, name);
    } catch (const InvalidConverse& e) {
        throw ParseError(rec.first_line, e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(rec.first_line, e.what());
    }
}

Algebra parse_algebra(const std::string& text) {
    auto recs = parse_records(text);
    if (recs.size() != 1) throw ParseError(1, "expected exactly one algebra record");
    return algebra_from_record(recs[0]);
}

std::string format_algebra(const Algebra& ra) {
    std::ostringstream out;
    out << "name: " << ra.name << "\natoms:";
    for (const auto& a : ra.atom_names) out << ' ' << a;
    out << "\nidentity:";
    for (Atom a : atoms_of(ra.identity)) out << ' ' << ra.atom_names[a];
    out << "\nconverse:";
    for (Atom a = 0; a < ra.atom_count; ++a)
        if (ra.conv[a] > a) out << ' ' << ra.atom_names[a] << ':' << ra.atom_names[ra.conv[a]];
    out << "\ncycles:";
    // one representative per orbit; identity triples are implied for integral algebras
    std::set<Triple> seen;
    bool integral = is_singleton(ra.identity);
    for (const auto& t : ra.cycles()) {
        if (seen.count(t)) continue;
        auto orbit = cycle_orbit(t[0], t[1], t[2], ra.conv);
        seen.insert(orbit.begin(), orbit.end());
        if (integral && (ra.is_identity(t[0]) || ra.is_identity(t[1]) || ra.is_identity(t[2]))) continue;
        out << ' ' << ra.triple_name(*orbit.begin());
    }
    out << '\n';
    return out.str();
}

Element parse_element(const Algebra& ra, const std::string& token, int line) {
    std::string s = trim(token);
    if (s.size() < 2 || s.front() != '{' || s.back() != '}') throw ParseError(line, "label must be {atoms}");
    std::string body = s.substr(1, s.size() - 2);
    std::replace(body.begin(), body.end(), ',', ' ');
    Element e = 0;
    for (const auto& a : split_ws(body)) {
        if (a == "*") {
            e |= ra.full();
            continue;
        }
        try {
            e |= atom_bit(ra.atom(a));
        } catch (const std::invalid_argument& ex) {
            throw ParseError(line, ex.what());
        }
    }
    return e;
}

Network parse_network(const Algebra& ra, const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    Network net;
    bool have_size = false;
    std::set<std::pair<int, int>> given;
    auto vertex = [&](const std::string& tok) {
        bool numeric = !tok.empty() && std::all_of(tok.begin(), tok.end(), ::isdigit);
        int v = -1;
        if (numeric) {
            v = std::stoi(tok);
        } else {
            for (int i = 0; i < static_cast<int>(net.names.size()); ++i)
                if (net.names[i] == tok) v = i;
        }
        if (v < 0 || v >= net.n) throw ParseError(line, "unknown vertex '" + tok + "'");
        return v;
    };
    while (std::getline(in, raw)) {
        ++line;
        auto hash = raw.find('#');
        std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (s.empty()) continue;
        auto toks = split_ws(s);
        if (toks[0] == "vertices:") {
            if (have_size || toks.size() != 2) throw ParseError(line, "bad 'vertices:' line");
            int n = 0;
            try {
                n = std::stoi(toks[1]);
            } catch (...) {
                throw ParseError(line, "vertex count must be an integer");
            }
            if (n < 0) throw ParseError(line, "negative vertex count");
            net = make_network(ra, n);
            have_size = true;
        } else if (toks[0] == "names:") {
            if (!have_size || static_cast<int>(toks.size()) != net.n + 1)
                throw ParseError(line, "'names:' must list one name per vertex");
            net.names.assign(toks.begin() + 1, toks.end());
        } else if (toks[0] == "edge") {
            if (!have_size) throw ParseError(line, "'edge' before 'vertices:'");
            if (toks.size() < 4) throw ParseError(line, "edge needs two vertices and a label");
            int i = vertex(toks[1]), j = vertex(toks[2]);
            std::string label;
            for (size_t k = 3; k < toks.size(); ++k) label += toks[k];
            Element e = parse_element(ra, label, line);
            if (i == j) {
                if (ra.converse(e) != e) throw ParseError(line, "diagonal label must be self-converse");
                net.ref(i, i) = e;
            } else if (given.count({j, i})) {
                if (net.at(j, i) != ra.converse(e))
                    throw ParseError(line, "edge conflicts with the converse of the reverse edge");
            } else {
                net.set(ra, i, j, e);
            }
            given.insert({i, j});
        } else {
            throw ParseError(line, "unknown directive '" + toks[0] + "'");
        }
    }
    if (!have_size) throw ParseError(line, "missing 'vertices:'");
    return net;
}

std::string format_network(const Algebra& ra, const Network& net) {
    std::ostringstream out;
    out << "vertices: " << net.n << '\n';
    if (!net.names.empty()) {
        out << "names:";
        for (const auto& s : net.names) out << ' ' << s;
        out << '\n';
    }
    for (int i = 0; i < net.n; ++i)
        if (net.at(i, i) != ra.identity) out << "edge " << i << ' ' << i << ' ' << ra.element_name(net.at(i, i)) << '\n';
    for (int i = 0; i < net.n; ++i)
        for (int j = i + 1; j < net.n; ++j)
            if (net.at(i, j) != ra.full())
                out << "edge " << i << ' ' << j << ' ' << ra.element_name(net.at(i, j)) << '\n';
    return out.str();
}

}  // namespace relalg
