#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relalg/algebra.hpp"
#include "relalg/catalog.hpp"
#include "relalg/network.hpp"
#include "relalg/representation.hpp"

namespace relalg {

class LabelOutsideGeneratorSet : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NotAProduct : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class AlgebraMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class NspStatus { SAT, UNSAT, UNKNOWN };
std::string to_string(NspStatus s);

struct RepCertificate {
    std::string rep_name;
    FiniteRepresentation rep;
    std::vector<int> map;
};

struct NspVerdict {
    NspStatus status = NspStatus::UNKNOWN;
    std::optional<Network> solution;  // atomic refinement of the input
    std::optional<RepCertificate> assignment;
    std::string method;
};

struct SolveOptions {
    std::uint64_t budget = 100000000;
    // also produce a certificate when the deciding method gives none (path consistency)
    bool certify = true;
};

// Dispatch on the catalog entry; the network is over entry.algebra.
NspVerdict solve_nsp(const CatalogEntry& entry, const Network& net, const SolveOptions& opts = {});
// Product algebras are split into their factors, anything else is matched against the catalog.
NspVerdict solve_nsp(const Algebra& ra, const Network& net, const SolveOptions& opts = {});

// SAT certificates re-verify against the input and the method's forbidden patterns; other verdicts pass.
bool verify_verdict(const Algebra& ra, const Network& net, const NspVerdict& v);

struct CutDecomposition {
    enum class Kind { D_CUT, A_CUT, S_CUT, P_CUT };
    Kind kind = Kind::D_CUT;
    Atom d = 0;  // the cut atom of a d-cut
    std::vector<std::vector<int>> parts;
    // cross_atoms[i*k+j]: atom on every pair from part i to part j
    std::vector<Atom> cross_atoms;
};
std::string to_string(CutDecomposition::Kind k);

// Generator alphabets: 24_65 {R_a, R_b, R_c, not-id, id, 1}; 17_37 {R_r, R_a, not-id, id, 1} with R_r~ as converse.
std::vector<Element> generators_24_65(const Algebra& ra);
std::vector<Element> generators_17_37(const Algebra& ra);

// Cuts over the vertex subset vs of a generator-labelled network, found by the merge loops.
std::optional<CutDecomposition> find_d_cut(const Algebra& ra, const Network& net, const std::vector<int>& vs, Atom d);
std::optional<CutDecomposition> find_a_cut(const Algebra& ra, const Network& net, const std::vector<int>& vs);
std::optional<CutDecomposition> find_s_cut(const Algebra& ra, const Network& net, const std::vector<int>& vs);
std::optional<CutDecomposition> find_p_cut(const Algebra& ra, const Network& net, const std::vector<int>& vs);

// Divide and conquer over the catalog algebras 24_65 and 17_37; the network uses generator labels only.
NspVerdict dc_24_65(const Network& net);
NspVerdict dc_17_37(const Network& net);

// Rewrites every label as an intersection of generator chains, adding fresh vertices after the originals.
// nullopt when a label is empty or a diagonal label misses the identity.
std::optional<Network> desugar(const Algebra& ra, const Network& net, const std::vector<Element>& generators);

std::pair<Network, Network> decompose_product(const Algebra& product, const Network& net);

// Square representations of at most 16 points, searched around the solutions of net; cached models first.
NspVerdict bounded_rep_search(const CatalogEntry& entry, const Network& net, std::uint64_t budget = 100000000);

// Vertices pairwise forced apart (greedy clique of labels without the identity).
int forced_distinct_points(const Algebra& ra, const Network& net);

}  // namespace relalg
