#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace relalg {

constexpr int kMaxAtoms = 8;

using Atom = int;
using Element = std::uint32_t;
using Triple = std::array<Atom, 3>;

inline Element atom_bit(Atom a) { return Element{1} << a; }
inline bool contains(Element e, Atom a) { return (e >> a) & 1u; }
inline bool is_singleton(Element e) { return e != 0 && (e & (e - 1)) == 0; }
int popcount(Element e);
Atom lowest_atom(Element e);
std::vector<Atom> atoms_of(Element e);

class InvalidConverse : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class AxiomViolation : public std::runtime_error {
public:
    AxiomViolation(int axiom, Triple witness);
    int axiom;
    Triple witness;
};

struct Algebra;

struct ProductInfo {
    std::shared_ptr<const Algebra> first;
    std::shared_ptr<const Algebra> second;
    // factor index (0 or 1) and the atom inside that factor, per product atom
    std::vector<std::pair<int, Atom>> origin;
};

struct Algebra {
    std::string name;
    int atom_count = 0;
    std::vector<std::string> atom_names;
    std::array<Atom, kMaxAtoms> conv{};
    Element identity = 0;
    // comp[x][y] has bit z iff (x,y,z) is an allowed triple
    std::array<std::array<Element, kMaxAtoms>, kMaxAtoms> comp{};

    bool valid = false;
    int violated_axiom = 0;
    Triple witness{0, 0, 0};

    std::shared_ptr<const ProductInfo> product;

    Element full() const { return atom_count == 0 ? 0 : ((Element{1} << atom_count) - 1); }
    Element diversity() const { return full() & ~identity; }
    bool is_identity(Atom a) const { return contains(identity, a); }
    bool allowed(Atom x, Atom y, Atom z) const { return contains(comp[x][y], z); }
    Element converse(Element e) const;
    Element compose(Element e1, Element e2) const;
    Atom atom(const std::string& atom_name) const;
    Element element(const std::vector<std::string>& names) const;
    std::string element_name(Element e) const;
    std::string triple_name(const Triple& t) const;
    // identity atom below x∘x̆, the source identity of x
    Atom source_identity(Atom x) const;
    std::vector<Triple> cycles() const;
    void require_valid() const;
};

// Six-element orbit of a triple under the cycle law.
std::set<Triple> cycle_orbit(Atom x, Atom y, Atom z, const std::array<Atom, kMaxAtoms>& conv);

// Integral construction: identity triples are forced, diversity cycles are orbit-closed.
Algebra build_algebra(const std::vector<std::string>& atom_names, Atom identity,
                      const std::array<Atom, kMaxAtoms>& conv,
                      const std::vector<Triple>& diversity_cycles, const std::string& name);

// General construction from a complete cycle list (identity triples included).
Algebra build_algebra_explicit(const std::vector<std::string>& atom_names, Element identity,
                               const std::array<Atom, kMaxAtoms>& conv,
                               const std::vector<Triple>& cycles, const std::string& name);

// Recompute validity flags from the composition table.
void check_axioms(Algebra& ra);

std::array<Atom, kMaxAtoms> identity_converse();

Element compose(const Algebra& ra, Element e1, Element e2);

struct StructuralFlags {
    bool symmetric = false;
    bool integral = false;
    bool simple = false;
    Element flexible_atoms = 0;
    std::vector<Element> equivalence_elements;
};

StructuralFlags structural_flags(const Algebra& ra);

// Algebra with a single atom that is the identity.
Algebra trivial_identity_algebra(const std::string& atom_name = "id");
// Algebra with no atoms (0 = 1).
Algebra degenerate_algebra();

Algebra direct_product(const Algebra& a, const Algebra& b);
// A-atoms live inside classes, B-atoms between classes.
Algebra two_cycle_product(const Algebra& a, const Algebra& b);

// Atom renamings that fix identity, commute with converse and map ra onto rb.
// perm[x] is the atom of rb assigned to atom x of ra.
std::vector<std::vector<Atom>> isomorphisms(const Algebra& ra, const Algebra& rb, bool first_only);
bool isomorphic(const Algebra& ra, const Algebra& rb);
std::vector<std::vector<Atom>> automorphisms(const Algebra& ra);

}  // namespace relalg
