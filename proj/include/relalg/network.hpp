#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "relalg/algebra.hpp"

namespace relalg {

class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded() : std::runtime_error("node budget exceeded") {}
};

struct Network {
    int n = 0;
    std::vector<Element> labels;
    std::vector<std::string> names;

    Element at(int i, int j) const { return labels[i * n + j]; }
    Element& ref(int i, int j) { return labels[i * n + j]; }
    // sets (i,j) and the converse entry (j,i)
    void set(const Algebra& ra, int i, int j, Element e);
    std::string vertex_name(int i) const;
    int vertex(const std::string& name) const;
    bool operator==(const Network& o) const { return n == o.n && labels == o.labels; }
};

// Off-diagonal labels 1, diagonal labels id.
Network make_network(const Algebra& ra, int n);
bool converse_consistent(const Algebra& ra, const Network& net);
bool is_atomic(const Network& net);
// Atomic, diagonal below id and every triangle allowed.
bool is_consistent(const Algebra& ra, const Network& net);
// No two distinct vertices joined by an identity atom.
bool is_reduced(const Algebra& ra, const Network& net);
// Subnetwork induced by the given vertices, in the given order.
Network induced(const Network& net, const std::vector<int>& vertices);
// Merges vertices of an atomic network joined by an identity atom; map[i] is the merged vertex of i.
Network reduce_atomic(const Algebra& ra, const Network& net, std::vector<int>& map);

struct PcResult {
    bool unsolvable = false;
    Network net;
};

// Work-queue path consistency.
PcResult path_consistency(const Algebra& ra, const Network& net);
// Triple-loop path consistency, kept as a reference implementation.
PcResult path_consistency_naive(const Algebra& ra, const Network& net);

struct Pattern {
    std::string name;
    Network net;
};
using PatternLibrary = std::vector<Pattern>;

// Injective map carrying every pattern label onto an equal host label.
bool embeds(const Network& pattern, const Network& host);

std::optional<Network> solve_ncp(const Algebra& ra, const Network& net, const PatternLibrary& forbidden = {});

struct Enumeration {
    std::vector<Network> solutions;
    bool truncated = false;
    std::uint64_t nodes = 0;
};

Enumeration enumerate_solutions(const Algebra& ra, const Network& net, const PatternLibrary& forbidden,
                                std::size_t limit, std::uint64_t budget = 100000000);

// Calls visit on every solution; visit returns false to stop early.
std::uint64_t for_each_solution(const Algebra& ra, const Network& net, const PatternLibrary& forbidden,
                                const std::function<bool(const Network&)>& visit,
                                std::uint64_t budget = 100000000);

// Patterns named in the literature on small algebras, built over the given algebra by atom name.
Network evil_square(const Algebra& ra57);
Network a_path4(const Algebra& ra1737);
PatternLibrary forbidden_51_65(const Algebra& ra5165);

Network atomic_network(const Algebra& ra, int n, const std::vector<std::tuple<int, int, std::string>>& edges);

}  // namespace relalg
