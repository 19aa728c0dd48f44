#pragma once

#include <random>
#include <string>

#include "strongcol/graph.hpp"
#include "strongcol/partition.hpp"

namespace strongcol {

// Cycle 0-1-...-(n-1)-0. n >= 3.
graph cycle_graph(int n);

struct generated_instance {
    graph g;
    partition classes;
};

// Parameters for generate(). Which fields matter depends on family:
//   "cycle"          n (length), class_size (consecutive chunks, default 3)
//   "cpt"            m triangles on a cycle of length 3m, random triples
//   "bounded-degree" n, k, max_degree, density
//   "kpartite"       k, class_size, min_degree
struct instance_spec {
    std::string family;
    int n = 0;
    int m = 0;
    int k = 0;
    int class_size = 0;
    int max_degree = 0;
    int min_degree = 0;
    double density = 0.5;
};

// Builds the instance and re-checks its declared constraints (degree caps,
// floors, partition shape) before returning.
generated_instance generate(const instance_spec& spec, std::mt19937_64& rng);

// Random graph on n vertices with every degree <= max_degree. Candidate
// pairs are visited in random order and kept with probability `density`
// when both endpoints still have room, so the cap binds only at high
// density.
graph random_bounded_degree(int n, int max_degree, double density,
                            std::mt19937_64& rng);

partition random_balanced_partition(int n, int k, std::mt19937_64& rng);

// Complete k-partite graph with classes of size class_size, thinned by
// random cross-edge deletions that keep every degree >= min_degree.
generated_instance kpartite_instance(int k, int class_size, int min_degree,
                                     std::mt19937_64& rng);

} // namespace strongcol
