#pragma once

#include "strongcol/graph.hpp"
#include "strongcol/partition.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace strongcol {

// Node budget for backtracking searches. A node is one candidate vertex
// considered at some depth. Exceeding the budget is reported, never thrown;
// callers decide whether that means "fall back" or "give up".
inline constexpr std::uint64_t default_node_budget = 20'000'000;

enum class search_status { found, exhausted, timeout };

struct it_search_result {
    search_status status = search_status::exhausted;
    std::vector<int> vertices; // one per input class, in input class order
    std::uint64_t nodes = 0;
};

struct haxell_violation {
    std::vector<int> classes;  // indices of the violating class subset
    long long union_size = 0;  // |union of those classes|
    long long bound = 0;       // (2|I|-2) * max_degree(G)
};

struct haxell_report {
    bool satisfied = true;
    std::optional<haxell_violation> witness;

    explicit operator bool() const { return satisfied; }
};

// Sufficient condition for an independent transversal: every nonempty class
// subset I must satisfy |union of I| > (2|I|-2)*Delta(G). Sweeps all 2^k - 1
// subsets in ascending bitmask order and reports the first violation, so at
// most 25 classes are accepted. Classes must be pairwise disjoint.
haxell_report check_haxell_condition(const graph& g,
                                     const std::vector<std::vector<int>>& classes);

// Exhaustive backtracking search for an independent transversal of the given
// class lists (any sizes, pairwise disjoint). Classes are tried smallest
// first, vertices in ascending id, so results are deterministic and a
// `found` result with the identity class order is the lexicographic minimum.
// `exhausted` certifies that no independent transversal exists. Vertices in
// `excluded` (optional, sized n) are treated as absent.
it_search_result find_independent_transversal(const graph& g,
                                              const std::vector<std::vector<int>>& classes,
                                              std::uint64_t node_budget = default_node_budget,
                                              const bitset* excluded = nullptr);

// Enumerates all independent transversals in lexicographic order (classes in
// the given order, vertex ids ascending). The callback returns false to stop
// early. Returns the number of transversals emitted.
std::uint64_t enumerate_independent_transversals(
    const graph& g, const std::vector<std::vector<int>>& classes,
    const std::function<bool(const std::vector<int>&)>& emit);

// Class lists for the pinned search: every class except pin_class, in class
// order, with the neighbourhoods of both pins deleted. Class sizes may be
// unequal; only the non-pin classes need slack.
std::vector<std::vector<int>> pinned_classes(const graph& g,
                                             const std::vector<std::vector<int>>& classes,
                                             int pin_class, int pin_a, int pin_b);
std::vector<std::vector<int>> pinned_classes(const graph& g, const partition& p,
                                             int pin_class, int pin_a, int pin_b);

struct pinned_it_result {
    search_status status = search_status::exhausted;
    // One vertex per non-pin class, in ascending class order. Adding either
    // pin vertex keeps it independent; that is rechecked before returning.
    std::vector<int> vertices;
    std::vector<int> classes; // the non-pin class indices, ascending
    std::uint64_t nodes = 0;
};

// Independent transversal of all classes but pin_class that avoids the
// neighbourhoods of both pin vertices. pin_a and pin_b must lie in
// pin_class; pin_a == pin_b is allowed.
pinned_it_result find_pinned_it(const graph& g,
                                const std::vector<std::vector<int>>& classes,
                                int pin_class, int pin_a, int pin_b,
                                std::uint64_t node_budget = default_node_budget);
pinned_it_result find_pinned_it(const graph& g, const partition& p, int pin_class,
                                int pin_a, int pin_b,
                                std::uint64_t node_budget = default_node_budget);

// Exact number of pinned independent transversals for the same setup.
// Throws cap_exceeded if the product of the shrunken class sizes exceeds
// `cap` (the enumeration would be too large to finish).
std::uint64_t count_pinned_its(const graph& g,
                               const std::vector<std::vector<int>>& classes,
                               int pin_class, int pin_a, int pin_b,
                               std::uint64_t cap = 10'000'000);
std::uint64_t count_pinned_its(const graph& g, const partition& p, int pin_class,
                               int pin_a, int pin_b,
                               std::uint64_t cap = 10'000'000);

struct it_partition_result {
    search_status status = search_status::exhausted;
    std::vector<transversal> transversals; // r of them when found
    std::uint64_t nodes = 0;
};

// Partitions the class system into r pairwise disjoint independent
// transversals, or certifies that none exists (`exhausted`). Classes must
// all have the same size r. Backtracking assigns a round number to every
// vertex; the first class is assigned in fixed order, which quotients out
// the r! relabelling of rounds.
it_partition_result find_it_partition(const graph& g,
                                      const std::vector<std::vector<int>>& classes,
                                      std::uint64_t node_budget = default_node_budget);

it_partition_result find_it_partition(const graph& g, const partition& p,
                                      std::uint64_t node_budget = default_node_budget);

} // namespace strongcol
