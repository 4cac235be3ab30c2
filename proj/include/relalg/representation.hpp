#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "relalg/algebra.hpp"
#include "relalg/network.hpp"

namespace relalg {

class InvalidDifferenceSets : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class PreconditionViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class UnsupportedRamseyArity : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// relations[a][u*n+v] is 1 iff (u,v) belongs to atom a.
struct FiniteRepresentation {
    int domain_size = 0;
    std::vector<std::vector<std::uint8_t>> relations;

    bool has(Atom a, int u, int v) const { return relations[a][static_cast<size_t>(u) * domain_size + v] != 0; }
    void add(Atom a, int u, int v) { relations[a][static_cast<size_t>(u) * domain_size + v] = 1; }
    // first atom holding (u,v), or -1
    Atom atom_at(int u, int v) const;
};

FiniteRepresentation empty_representation(const Algebra& ra, int n);

struct RepViolation {
    int axiom = 0;
    // domain elements involved; -1 where unused
    std::array<int, 3> witness{-1, -1, -1};
    Atom atom1 = -1;
    Atom atom2 = -1;
    std::string detail;
};

struct RepReport {
    bool valid = false;
    bool square = false;
    std::vector<RepViolation> violations;
};

RepReport verify_representation(const Algebra& ra, const FiniteRepresentation& rep);

struct NamedRepresentation {
    std::string algebra;  // catalog name or constructed algebra name
    FiniteRepresentation rep;
};

// Atom name to residues; the diagonal becomes the identity atom.
FiniteRepresentation cyclic_representation(const Algebra& ra, int modulus,
                                           const std::map<std::string, std::set<int>>& difference_sets);

// Z5_5_7, Z7_39_65, Z13_62_65, TWO_POINT_NONINTEGRAL.
std::vector<std::string> builtin_names();
NamedRepresentation builtin_representation(const std::string& name);

// Square representation of a two-atom integral algebra on n points, one diversity atom between distinct points.
FiniteRepresentation complete_graph_representation(const Algebra& ra, int n);

// Representation of two_cycle_product(a, b) on repD's domain times repC's domain; repC represents a.
FiniteRepresentation cycle_product_rep(const Algebra& a, const FiniteRepresentation& repC, const Algebra& b,
                                       const FiniteRepresentation& repD);
// Representation of direct_product(a, b) on the disjoint union of the domains.
FiniteRepresentation union_rep(const Algebra& a, const FiniteRepresentation& rep1, const Algebra& b,
                               const FiniteRepresentation& rep2);

// Vertex-to-domain map, or nullopt when the network is not satisfiable in rep.
std::optional<std::vector<int>> satisfy_in_rep(const Algebra& ra, const FiniteRepresentation& rep, const Network& net);

// Atoms between points of classes ci, cj; order is -1 (x<y), 0 (x=y), 1 (x>y).
struct OrderClassModel {
    std::string algebra;
    int class_count = 0;
    std::vector<Atom> less;  // less[ci*class_count+cj]: atom for x in ci, y in cj, x<y
    std::vector<Atom> converse_of_less;
    Atom identity = 0;
    Atom rule(int ci, int cj, int order) const;
};

OrderClassModel order_model_51_65(const Algebra& ra);
OrderClassModel order_model_56_65(const Algebra& ra);

// Converse consistency of the rule under swapping arguments.
bool order_model_converse_consistent(const Algebra& ra, const OrderClassModel& model);

struct OrderAssignment {
    std::vector<int> cls;
    std::vector<int> rank;  // position in the realized order; equal ranks share a point
};

std::optional<OrderAssignment> satisfy_in_order_model(const Algebra& ra, const OrderClassModel& model,
                                                      const Network& net, std::uint64_t budget = 100000000);

struct OrderSampleReport {
    bool partition_ok = false;  // axioms 1-6 on the grid
    bool forward_ok = false;    // every grid triangle is an allowed triple
    bool backward_ok = false;   // every allowed triple over a grid pair has a witness class and slot
    std::vector<std::string> problems;
};

// Grid of g points, point p in class p mod class_count; witnesses use density symbolically.
OrderSampleReport sample_order_model(const Algebra& ra, const OrderClassModel& model, int grid);

// R(3,...,3)-1 for the atoms outside e∘e, or nullopt when unbounded.
std::optional<int> ramsey_class_bound(const Algebra& ra, Element e);

// Every composition demand of every pair, including the diagonal, has a witness vertex.
bool is_saturated(const Algebra& ra, const Network& atomic);

// Adds vertices to a reduced consistent atomic network until it is saturated, keeping at most max_n
// vertices; nullopt when no square representation of that size contains it. Throws BudgetExceeded.
std::optional<Network> extend_to_square_model(const Algebra& ra, const Network& atomic, int max_n,
                                              std::uint64_t budget = 100000000);

// Square representations of an integral algebra with at most max_n points, one per isomorphism class.
std::vector<FiniteRepresentation> square_models(const Algebra& ra, int max_n);

// Saturated consistent atomic network read as a representation on its vertices.
FiniteRepresentation network_representation(const Algebra& ra, const Network& atomic);

FiniteRepresentation parse_representation(const Algebra& ra, const std::string& text);
std::string format_representation(const Algebra& ra, const FiniteRepresentation& rep);

// The representation as an atomic network over its domain.
Network representation_network(const Algebra& ra, const FiniteRepresentation& rep);

}  // namespace relalg
