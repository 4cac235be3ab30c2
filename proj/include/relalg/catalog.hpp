#pragma once

#include <string>
#include <vector>

#include "relalg/algebra.hpp"

namespace relalg {

// Ordered from weakest to strongest.
enum class Repr { NONE, NOT_FULLY_UNIVERSAL, FULLY_UNIVERSAL, NORMAL, FLEXIBLE };
enum class Nsp { P_TRIVIAL, P, NP_COMPLETE, NP_HARD_OPEN_MEMBERSHIP };

std::string to_string(Repr r);
std::string to_string(Nsp n);
Repr parse_repr(const std::string& s);
Nsp parse_nsp(const std::string& s);

inline bool is_representable(Repr r) { return r != Repr::NONE; }
inline bool is_fully_universal(Repr r) { return r >= Repr::FULLY_UNIVERSAL; }
inline bool is_normal(Repr r) { return r >= Repr::NORMAL; }

struct CatalogEntry {
    std::string name;
    Algebra algebra;
    Repr repr = Repr::NONE;
    Nsp nsp = Nsp::P_TRIVIAL;
    std::string notes;
};

class NotInCatalog : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::vector<CatalogEntry> parse_catalog(const std::string& text);
// The embedded catalog: 114 integral algebras plus the non-integral simple one.
const std::vector<CatalogEntry>& catalog();
const CatalogEntry& catalog_entry(const std::string& name);
const Algebra& catalog_algebra(const std::string& name);

enum class Signature { ALL_SYMMETRIC, ONE_ASYMMETRIC_PAIR };

// Diversity cycle orbits over the signature, each given by its least triple.
std::vector<Triple> orbit_classes(const std::vector<std::string>& names, const std::array<Atom, kMaxAtoms>& conv);
std::vector<Algebra> enumerate_integral(int atom_count, Signature sig);

struct CatalogMatch {
    const CatalogEntry* entry = nullptr;
    // renaming[x] is the entry atom matching atom x of the input
    std::vector<Atom> renaming;
};

CatalogMatch match_to_catalog(const Algebra& ra);

std::vector<Algebra> enumerate_simple_nonintegral(int atom_count);

struct SplitCount {
    int sym = 0;
    int asym = 0;
    int total() const { return sym + asym; }
};

struct CensusRow {
    int atom_count = 0;
    long total = 0;
    long simple = 0;
    long integral = 0;
    SplitCount signature;
    SplitCount representable;
    SplitCount fully_universal;
    SplitCount normal;
    SplitCount flexible;
};

// Recomputed from enumeration (structure counts) and the catalog (representability columns).
std::vector<CensusRow> census(int max_atoms = 4);
std::string format_census_row(const CensusRow& row);

}  // namespace relalg
