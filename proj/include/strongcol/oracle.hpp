#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "strongcol/graph.hpp"
#include "strongcol/it_engine.hpp"

namespace strongcol {

// Exhaustive ground truth for small graphs. The colourability check walks
// every partition of the (padded) vertex set into classes of size r, so it
// refuses padded orders above 14; single-class and singleton-class layouts
// are decided directly and skip that limit.

struct padded_instance {
    graph padded;
    int pad_count = 0;
};

// Appends r*ceil(n/r) - n isolated vertices so the order is divisible by r.
padded_instance pad_to_multiple(const graph& g, int r);

struct colourability_result {
    bool colourable = false;
    // a class layout with no IT partition, present iff colourable is false
    std::optional<std::vector<std::vector<int>>> witness;
    std::uint64_t partitions_checked = 0;
    std::uint64_t nodes = 0;

    explicit operator bool() const { return colourable; }
};

// True iff every partition of the padded vertex set into classes of size r
// admits a partition into independent transversals. Layout enumeration
// anchors each class on its smallest member, so no layout repeats.
colourability_result is_strongly_r_colourable(const graph& g, int r,
                                              std::uint64_t budget = default_node_budget);

// Least r in 1..n with is_strongly_r_colourable true. Each r gets a fresh
// budget; r = n always succeeds (single class), so the search terminates.
int strong_chromatic_number(const graph& g, std::uint64_t budget = default_node_budget);

struct cpt_options {
    std::uint64_t budget = default_node_budget;
    // nullopt walks every triple partition (3m <= 21 enforced); a value
    // checks that many uniformly random ones instead
    std::optional<int> samples;
    std::uint64_t seed = 0;
};

struct cpt_result {
    bool all_pass = false;
    std::uint64_t partitions_checked = 0;
    std::uint64_t nodes = 0;
    // triple layout of the cycle with no split into 3 ITs, if one turned up
    std::optional<std::vector<std::vector<int>>> failing;

    explicit operator bool() const { return all_pass; }
};

// Partitions the cycle on 3m vertices into m triples every possible (or
// sampled) way and looks for a split into 3 independent transversals each
// time.
cpt_result check_all_partitions_cpt(int m, const cpt_options& opts = {});

// Exact chromatic number by branch-and-bound, independent of the
// transversal machinery. Used to cross-check lower bounds.
int chromatic_number(const graph& g);

} // namespace strongcol
