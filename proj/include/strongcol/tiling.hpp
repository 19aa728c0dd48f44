#pragma once

#include "strongcol/absorber.hpp"
#include "strongcol/graph.hpp"
#include "strongcol/partition.hpp"

#include <vector>

namespace strongcol {

struct tiling_result {
    // One clique per row, vertices in class order; rows partition V(G).
    std::vector<std::vector<int>> cliques;
    pipeline_trace trace;
};

// Perfect K_k-tiling of a k-partite graph whose parts are the classes of p:
// in the cross-class complement, a clique through every class becomes an
// independent transversal, so partitioning the complement into independent
// transversals tiles the original graph. Propagates unsolvable /
// pipeline_failure from the colouring pipeline; the returned tiling is
// certified against the original graph before it is handed back.
tiling_result find_perfect_kk_tiling(const graph& g, const partition& p,
                                     double epsilon,
                                     const strong_colouring_config& config = {});

// Recheck a claimed tiling: disjoint rows covering every vertex, one vertex
// per class in each row, every pair inside a row adjacent in g.
certificate_report verify_tiling(const graph& g, const partition& p,
                                 const std::vector<std::vector<int>>& cliques);

} // namespace strongcol
