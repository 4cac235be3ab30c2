#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relalg/algebra.hpp"
#include "relalg/network.hpp"

namespace relalg {

class NotFullyUniversal : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct AtomStructure {
    int size = 0;
    // unary relation of element b is the set of atoms below b, i.e. b itself as a bitmask
    std::vector<std::pair<Atom, Atom>> converse_pairs;  // E
    std::vector<Triple> cycles;                         // R
};

AtomStructure build_atom_structure(const Algebra& ra);

// Relations are tuple lists over atoms; a scope may repeat a variable.
struct CspRelation {
    int arity = 0;
    std::vector<std::vector<Atom>> tuples;
};

struct CspConstraint {
    std::vector<int> scope;
    int relation = 0;
};

struct CspInstance {
    std::vector<Element> domains;
    std::vector<CspRelation> relations;
    std::vector<CspConstraint> constraints;
};

struct CspStats {
    std::uint64_t nodes = 0;
};

// Backtracking with generalized arc consistency; smallest domain first (or variables in index order when
// lex is set), values ascending. With lex the first solution is the lexicographically least one.
std::optional<std::vector<Atom>> solve_csp(const CspInstance& inst, std::uint64_t budget = UINT64_MAX,
                                           CspStats* stats = nullptr, bool lex = false);

// Relation 0 is E, relation 1 is R. Pair variables are (x,y) with x<y after merging identity-labelled vertices.
struct NspCsp {
    CspInstance instance;
    std::vector<int> vertex_class;          // merged vertex per input vertex
    std::vector<std::pair<int, int>> pairs;  // merged vertex pair per variable
    bool trivially_unsat = false;
};

NspCsp nsp_to_csp(const Algebra& ra, const Network& net);
// Atomic network from a CSP solution over the original vertices.
Network csp_solution_network(const Algebra& ra, const Network& net, const NspCsp& csp, const std::vector<Atom>& sol);
std::optional<Network> solve_via_atom_structure(const Algebra& ra, const Network& net);

// Conservative operation; table index is the base-n reading of the argument tuple.
struct OperationTable {
    int arity = 0;
    int size = 0;
    std::vector<Atom> table;
    Atom at(const std::vector<Atom>& args) const;
    Atom& at(const std::vector<Atom>& args);
};

bool is_conservative(const OperationTable& op);
bool verify_polymorphism(const Algebra& ra, const OperationTable& op);
bool is_binary_symmetric(const OperationTable& op);
bool is_wnu(const OperationTable& op);
enum class PairKind { BINARY_SYMMETRIC, MAJORITY, MINORITY };
std::string to_string(PairKind k);
// Restriction of op to {a,b} has the given kind.
bool restricts_to(const OperationTable& op, Atom a, Atom b, PairKind kind);

struct EmbeddedPolymorphism {
    std::string label;
    std::vector<std::string> algebras;
    OperationTable op;
    bool binary_symmetric = false;  // otherwise a ternary WNU
};

// Tables built from the stated rules, evaluated against the catalog naming of each algebra.
std::vector<EmbeddedPolymorphism> embedded_polymorphisms();

struct PairWitness {
    Atom a = 0, b = 0;
    PairKind kind = PairKind::BINARY_SYMMETRIC;
    OperationTable op;
};

enum class BulatovStatus { PASS, FAIL, BUDGET };

struct BulatovResult {
    BulatovStatus status = BulatovStatus::PASS;
    std::vector<PairWitness> witnesses;
    std::vector<std::pair<Atom, Atom>> failing_pairs;
    std::uint64_t nodes = 0;
};

// Searches one pair; nullopt when no binary symmetric, majority or minority restriction exists.
std::optional<PairWitness> search_pair(const Algebra& ra, Atom a, Atom b, std::uint64_t budget,
                                       std::uint64_t* nodes = nullptr);
BulatovResult bulatov_condition(const Algebra& ra, std::uint64_t budget = 1000000000ULL, bool all_pairs = false);

OperationTable parse_operation(const Algebra& ra, const std::string& text);
std::string format_operation(const Algebra& ra, const OperationTable& op);

}  // namespace relalg
