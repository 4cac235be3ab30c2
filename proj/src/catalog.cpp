#include "relalg/catalog.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "relalg/io.hpp"
#include "relalg_embedded.hpp"

namespace relalg {

std::string to_string(Repr r) {
    switch (r) {
        case Repr::NONE: return "NONE";
        case Repr::NOT_FULLY_UNIVERSAL: return "NOT_FULLY_UNIVERSAL";
        case Repr::FULLY_UNIVERSAL: return "FULLY_UNIVERSAL";
        case Repr::NORMAL: return "NORMAL";
        case Repr::FLEXIBLE: return "FLEXIBLE";
    }
    return "?";
}

std::string to_string(Nsp n) {
    switch (n) {
        case Nsp::P_TRIVIAL: return "P_TRIVIAL";
        case Nsp::P: return "P";
        case Nsp::NP_COMPLETE: return "NP_COMPLETE";
        case Nsp::NP_HARD_OPEN_MEMBERSHIP: return "NP_HARD_OPEN_MEMBERSHIP";
    }
    return "?";
}

Repr parse_repr(const std::string& s) {
    for (Repr r : {Repr::NONE, Repr::NOT_FULLY_UNIVERSAL, Repr::FULLY_UNIVERSAL, Repr::NORMAL, Repr::FLEXIBLE})
        if (to_string(r) == s) return r;
    throw std::invalid_argument("unknown representability class '" + s + "'");
}

Nsp parse_nsp(const std::string& s) {
    for (Nsp n : {Nsp::P_TRIVIAL, Nsp::P, Nsp::NP_COMPLETE, Nsp::NP_HARD_OPEN_MEMBERSHIP})
        if (to_string(n) == s) return n;
    throw std::invalid_argument("unknown complexity class '" + s + "'");
}

std::vector<CatalogEntry> parse_catalog(const std::string& text) {
    std::vector<CatalogEntry> out;
    for (const auto& rec : parse_records(text)) {
        CatalogEntry e;
        e.algebra = algebra_from_record(rec, {"repr", "nsp", "notes"});
        e.name = e.algebra.name;
        const std::string* r = rec.get("repr");
        const std::string* n = rec.get("nsp");
        if (!r || !n) throw ParseError(rec.first_line, "catalog record needs 'repr' and 'nsp'");
        try {
            e.repr = parse_repr(*r);
            e.nsp = parse_nsp(*n);
        } catch (const std::invalid_argument& ex) {
            throw ParseError(rec.first_line, ex.what());
        }
        if (const std::string* notes = rec.get("notes")) e.notes = *notes;
        out.push_back(std::move(e));
    }
    return out;
}

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = parse_catalog(std::string(embedded::catalog_text));
    return entries;
}

const CatalogEntry& catalog_entry(const std::string& name) {
    for (const auto& e : catalog())
        if (e.name == name) return e;
    throw NotInCatalog("no catalog entry named '" + name + "'");
}

const Algebra& catalog_algebra(const std::string& name) { return catalog_entry(name).algebra; }

std::vector<Triple> orbit_classes(const std::vector<std::string>& names, const std::array<Atom, kMaxAtoms>& conv) {
    const int n = static_cast<int>(names.size());
    std::set<Triple> seen;
    std::vector<Triple> out;
    for (Atom x = 1; x < n; ++x)
        for (Atom y = 1; y < n; ++y)
            for (Atom z = 1; z < n; ++z) {
                if (seen.count({x, y, z})) continue;
                auto orbit = cycle_orbit(x, y, z, conv);
                seen.insert(orbit.begin(), orbit.end());
                out.push_back(*orbit.begin());
            }
    return out;
}

namespace {

void signature_of(int atom_count, Signature sig, std::vector<std::string>& names, std::array<Atom, kMaxAtoms>& conv) {
    conv = identity_converse();
    names = {"id"};
    if (sig == Signature::ALL_SYMMETRIC) {
        static const char* sym[] = {"a", "b", "c", "d", "e", "f", "g"};
        for (int i = 1; i < atom_count; ++i) names.push_back(sym[i - 1]);
        return;
    }
    if (atom_count == 4) names.push_back("a");
    names.push_back("r");
    names.push_back("r~");
    const Atom r = static_cast<Atom>(names.size()) - 2;
    conv[r] = r + 1;
    conv[r + 1] = r;
}

}  // namespace

std::vector<Algebra> enumerate_integral(int atom_count, Signature sig) {
    std::vector<Algebra> out;
    if (atom_count < 1 || atom_count > 4) throw std::invalid_argument("atom count must be 1..4");
    if (sig == Signature::ONE_ASYMMETRIC_PAIR && atom_count < 3) return out;
    std::vector<std::string> names;
    std::array<Atom, kMaxAtoms> conv{};
    signature_of(atom_count, sig, names, conv);
    const auto classes = orbit_classes(names, conv);
    const unsigned limit = 1u << classes.size();
    for (unsigned mask = 0; mask < limit; ++mask) {
        std::vector<Triple> cycles;
        for (size_t i = 0; i < classes.size(); ++i)
            if ((mask >> i) & 1u) cycles.push_back(classes[i]);
        Algebra ra = build_algebra(names, 0, conv, cycles, "candidate-" + std::to_string(mask));
        if (!ra.valid) continue;
        bool dup = std::any_of(out.begin(), out.end(), [&](const Algebra& o) { return isomorphic(ra, o); });
        if (!dup) out.push_back(std::move(ra));
    }
    return out;
}

CatalogMatch match_to_catalog(const Algebra& ra) {
    for (const auto& e : catalog()) {
        if (e.algebra.atom_count != ra.atom_count) continue;
        auto isos = isomorphisms(ra, e.algebra, true);
        if (!isos.empty()) return {&e, isos.front()};
    }
    throw NotInCatalog("algebra '" + ra.name + "' matches no catalog entry");
}

std::vector<Algebra> enumerate_simple_nonintegral(int atom_count) {
    std::vector<Algebra> out;
    const int n = atom_count;
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
    // Identity atoms come first; the search covers every identity count from 2 up.
    for (int m = 2; m <= n; ++m) {
        const int d = n - m;
        // converse involutions on the diversity atoms m..n-1
        std::vector<std::array<Atom, kMaxAtoms>> convs;
        auto gen_conv = [&](auto&& self, std::array<Atom, kMaxAtoms> c, int i) -> void {
            if (i == n) {
                convs.push_back(c);
                return;
            }
            if (c[i] != -1) return self(self, c, i + 1);
            for (int j = i; j < n; ++j) {
                if (c[j] != -1) continue;
                auto c2 = c;
                c2[i] = j;
                c2[j] = i;
                self(self, c2, i + 1);
            }
        };
        std::array<Atom, kMaxAtoms> start;
        start.fill(-1);
        for (int i = 0; i < m; ++i) start[i] = i;
        for (int i = n; i < kMaxAtoms; ++i) start[i] = i;
        gen_conv(gen_conv, start, 0);
        Element identity = (Element{1} << m) - 1;
        for (const auto& conv : convs) {
            // source identity per diversity atom; the target of x is the source of x̆
            long combos = 1;
            for (int i = 0; i < d; ++i) combos *= m;
            for (long code = 0; code < combos; ++code) {
                std::vector<Atom> src(n);
                for (int i = 0; i < m; ++i) src[i] = i;
                long c = code;
                for (int i = m; i < n; ++i) {
                    src[i] = static_cast<Atom>(c % m);
                    c /= m;
                }
                auto tgt = [&](Atom x) { return src[conv[x]]; };
                bool ok = true;
                for (int i = m; i < n; ++i)
                    if (conv[i] == i && src[i] != tgt(i)) ok = false;
                if (!ok) continue;
                std::vector<Triple> forced;
                for (int e = 0; e < m; ++e) forced.push_back({e, e, e});
                for (int x = m; x < n; ++x) forced.push_back({src[x], x, x});
                std::set<Triple> seen;
                std::vector<Triple> classes;
                for (Atom x = m; x < n; ++x)
                    for (Atom y = m; y < n; ++y)
                        for (Atom z = m; z < n; ++z) {
                            if (tgt(x) != src[y] || src[z] != src[x] || tgt(z) != tgt(y)) continue;
                            if (seen.count({x, y, z})) continue;
                            auto orbit = cycle_orbit(x, y, z, conv);
                            seen.insert(orbit.begin(), orbit.end());
                            classes.push_back(*orbit.begin());
                        }
                for (unsigned mask = 0; mask < (1u << classes.size()); ++mask) {
                    std::vector<Triple> cycles = forced;
                    for (size_t i = 0; i < classes.size(); ++i)
                        if ((mask >> i) & 1u) cycles.push_back(classes[i]);
                    Algebra ra = build_algebra_explicit(names, identity, conv, cycles, "nonintegral");
                    if (!ra.valid) continue;
                    auto flags = structural_flags(ra);
                    if (!flags.simple || flags.integral) continue;
                    bool dup = std::any_of(out.begin(), out.end(), [&](const Algebra& o) { return isomorphic(ra, o); });
                    if (!dup) out.push_back(std::move(ra));
                }
            }
        }
    }
    return out;
}

std::vector<CensusRow> census(int max_atoms) {
    std::vector<CensusRow> rows;
    std::vector<long> simple(max_atoms + 1, 0);
    for (int k = 1; k <= max_atoms; ++k) {
        CensusRow row;
        row.atom_count = k;
        auto sym = enumerate_integral(k, Signature::ALL_SYMMETRIC);
        auto asym = enumerate_integral(k, Signature::ONE_ASYMMETRIC_PAIR);
        row.signature = {static_cast<int>(sym.size()), static_cast<int>(asym.size())};
        row.integral = row.signature.total();
        row.simple = row.integral + static_cast<long>(enumerate_simple_nonintegral(k).size());
        simple[k] = row.simple;
        // every finite algebra is a product of simple factors: count multisets of factors by atom total
        std::vector<long> ways(k + 1, 0);
        ways[0] = 1;
        for (int part = 1; part <= k; ++part) {
            std::vector<long> next(k + 1, 0);
            for (int used = 0; used <= k; ++used) {
                if (!ways[used]) continue;
                // choose a multiset of size t from simple[part] factors: C(s+t-1, t)
                long comb = 1;
                for (int t = 0; used + t * part <= k; ++t) {
                    if (t > 0) comb = comb * (simple[part] + t - 1) / t;
                    next[used + t * part] += ways[used] * comb;
                }
            }
            ways = next;
        }
        row.total = ways[k];
        auto tally = [&](const std::vector<Algebra>& algs, bool is_sym) {
            for (const auto& ra : algs) {
                const CatalogEntry* e = match_to_catalog(ra).entry;
                auto bump = [&](SplitCount& s) { (is_sym ? s.sym : s.asym)++; };
                if (is_representable(e->repr)) bump(row.representable);
                if (is_fully_universal(e->repr)) bump(row.fully_universal);
                if (is_normal(e->repr)) bump(row.normal);
                if (structural_flags(ra).flexible_atoms != 0) bump(row.flexible);
            }
        };
        if (k >= 2) {
            tally(sym, true);
            tally(asym, false);
        }
        rows.push_back(row);
    }
    return rows;
}

std::string format_census_row(const CensusRow& r) {
    auto split = [](const SplitCount& s) { return std::to_string(s.sym) + "/" + std::to_string(s.asym); };
    return std::to_string(r.atom_count) + ": " + std::to_string(r.integral) + " integral (" + split(r.signature) +
           "); total " + std::to_string(r.total) + "; simple " + std::to_string(r.simple) + "; representable " +
           split(r.representable) + "; fully universal " + split(r.fully_universal) + "; normal " +
           split(r.normal) + "; flexible " + split(r.flexible);
}

}  // namespace relalg
