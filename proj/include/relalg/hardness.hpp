#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relalg/algebra.hpp"
#include "relalg/network.hpp"

namespace relalg {

using Edge = std::pair<int, int>;

struct GadgetClaim {
    enum class Kind { EQUAL_ON, AT_LEAST_ONE_EQUALS, IMPLIES, REALIZABLE };
    Network net;
    Kind kind = Kind::EQUAL_ON;
    // EQUAL_ON: two edges; AT_LEAST_ONE_EQUALS: any number of edges and one atom;
    // IMPLIES: premise and conclusion edge with one atom each; REALIZABLE: one atom per edge.
    std::vector<Edge> edges;
    std::vector<Atom> atoms;
    std::string text;
};
std::string to_string(GadgetClaim::Kind k);

struct Gadget {
    std::string name;
    std::string algebra;
    Network net;
    std::vector<GadgetClaim> claims;
};

// A network file with an `algebra:` line and `claim:` lines:
//   claim: equal (x1,x2) (y1,y2)
//   claim: some (p1,q1) (p2,q2) = r
//   claim: implies (p0,p1) = r -> (q0,q1) = r~
//   claim: realizable (x0,x1) = r (y0,y1) = r
Gadget parse_gadget(const std::string& text, const std::string& name = "");
GadgetClaim parse_claim(const Algebra& ra, const Network& net, const std::string& text, int line = 0);
std::string format_gadget(const Algebra& ra, const Gadget& g);

const std::vector<Gadget>& embedded_gadgets();

struct GadgetVerdict {
    bool pass = false;
    // a solution violating a universal claim
    std::optional<Network> counterexample;
    // a solution witnessing a realizability claim
    std::optional<Network> witness;
    std::uint64_t nodes = 0;
};

// Universal claims search for a solution of the negated claim; REALIZABLE searches for a solution of the claim.
GadgetVerdict verify_gadget(const Algebra& ra, const GadgetClaim& claim, std::uint64_t budget = 100000000);

// For each atom v of the first tracked edge: both edges labelled v.
std::vector<GadgetClaim> realizability_claims(const Algebra& ra, const GadgetClaim& equal_claim);

// Ordered pairs (p,q) of distinct symmetric atoms with (p,p,p), (q,q,q) forbidden and (p,q,q) allowed.
std::vector<std::pair<Atom, Atom>> pcsp_condition(const Algebra& ra);

// Edge colourings of K_n as bitmasks over the pairs (i,j), i<j, in lexicographic order.
bool has_monochromatic_triangle(int n, std::uint32_t colouring);

struct RamseyReport {
    std::optional<std::uint32_t> k5_witness;
    std::optional<std::uint32_t> k6_witness;
    std::uint32_t k5_checked = 0;
    std::uint32_t k6_checked = 0;
    bool pass() const { return k5_witness.has_value() && !k6_witness.has_value(); }
};
RamseyReport ramsey_boundary_check();

struct GadgetReportEntry {
    std::string gadget;
    std::string algebra;
    std::string claim;
    bool pass = false;
    bool budget_exceeded = false;
    std::optional<Network> counterexample;
    double millis = 0;
};

// Every claim of every gadget, plus the realizability of both values for each equality claim.
std::vector<GadgetReportEntry> gadget_suite(const std::vector<Gadget>& library, int parallel = 1,
                                            std::uint64_t budget = 100000000);
std::vector<GadgetReportEntry> gadget_suite();

}  // namespace relalg
