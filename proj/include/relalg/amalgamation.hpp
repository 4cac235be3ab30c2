#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "relalg/algebra.hpp"
#include "relalg/network.hpp"

namespace relalg {

// Vertices 0..l-1 form the base, l..k-1 are new in ext1, the rest of the union is new in ext2.
struct ApWitness {
    Network base;
    Network ext1;
    Network ext2;
    std::vector<std::pair<int, int>> missing_edges;
    // Union over k+m-l vertices with the missing edges labelled 0.
    Network partial_union() const;
};

enum class ApStatus { PASS, FAIL, BUDGET };

struct ApResult {
    ApStatus status = ApStatus::PASS;
    std::optional<ApWitness> witness;
    std::uint64_t nodes = 0;
};

struct ApOptions {
    std::uint64_t budget = 1000000000ULL;
    int threads = 1;
    // missing edges may be filled with the identity, merging a vertex of each side
    bool identify = true;
};

// Reduced consistent atomic networks on n vertices, one per isomorphism class (lex-min matrix).
std::vector<Network> canonical_networks(const Algebra& ra, int n);
Network canonical_form(const Network& net);

// Consistent reduced atomic extensions of base to n vertices, base vertices first.
std::vector<Network> extensions(const Algebra& ra, const Network& base, int n);

// Some atom assignment to the missing edges yields a consistent union; nodes counts triangle checks.
bool amalgamates(const Algebra& ra, const Network& ext1, const Network& ext2, int l, std::uint64_t& nodes,
                 bool identify = true);

ApResult check_ap(const Algebra& ra, int k, int l, int m, const ApOptions& opts = {});

// Every failing pair, for witness comparison; stops after limit witnesses.
std::vector<ApWitness> ap_failures(const Algebra& ra, int k, int l, int m, std::size_t limit, bool identify = true);

// Both sides consistent and extending the base, and no filling of the missing edges is consistent.
bool validate_witness(const Algebra& ra, const ApWitness& w, bool identify = true);

// Canonical key of a witness up to vertex renaming and algebra automorphisms.
std::vector<Element> witness_key(const Algebra& ra, const ApWitness& w);

struct NormalResult {
    bool yes = false;
    std::optional<ApWitness> witness;
    int failing_level = 0;  // l of the failing AP(l+1,l,l+1)
};

// AP(l+1,l,l+1) for l = 1..atom count; the first failure is reported.
NormalResult has_normal_representation(const Algebra& ra, const ApOptions& opts = {});

struct ProbeResult {
    bool counterexample = false;
    std::optional<ApWitness> witness;
    int n = 0;  // failing n, or the bound searched
};

ProbeResult fully_universal_probe(const Algebra& ra, int max_n, const ApOptions& opts = {});

ApResult check_jep(const Algebra& ra, int max_k, int max_m, const ApOptions& opts = {});

// Builds a witness from the three-vertex schema: base T,M,Bo and the two new vertices L and R.
// a = (T->M, M->Bo, T->Bo), b = (T->L, M->L, Bo->L), c = (T->R, M->R, Bo->R).
ApWitness schema_witness(const Algebra& ra, const std::array<std::string, 3>& a,
                         const std::array<std::string, 3>& b, const std::array<std::string, 3>& c);

}  // namespace relalg
