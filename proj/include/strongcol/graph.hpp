#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cstdint>
#include <utility>
#include <vector>

namespace strongcol {

using bitset = boost::dynamic_bitset<std::uint64_t>;

// Simple undirected graph on vertices 0..n-1. Immutable once built.
// Adjacency is kept twice: one bitset row per vertex (fast conflict tests
// during transversal search) and sorted neighbour lists (fast iteration).
class graph {
  public:
    graph() = default;
    explicit graph(int n);
    graph(int n, const std::vector<std::pair<int, int>>& edges);

    int vertex_count() const { return n_; }
    std::size_t edge_count() const { return edge_count_; }

    bool adjacent(int u, int v) const;
    int degree(int v) const;
    int max_degree() const { return max_degree_; }

    const std::vector<int>& neighbours(int v) const;
    const bitset& row(int v) const;

    // Sorted (u < v) edge list, ascending. Used by writers and generators.
    std::vector<std::pair<int, int>> edges() const;

    // Subgraph induced on `vertices` (need not be sorted; duplicates rejected).
    // Vertex i of the result is vertices[i]; the mapping is the caller's
    // argument order.
    graph induced(const std::vector<int>& vertices) const;

    // Complement within a class structure: u~v in the result iff u and v lie
    // in different classes of `class_of` and u!~v here. Same vertex set.
    graph cross_class_complement(const std::vector<int>& class_of) const;

    void check_vertex(int v) const;

    bool operator==(const graph& other) const;

  private:
    void add_edge_internal(int u, int v);
    void finalise();

    int n_ = 0;
    std::size_t edge_count_ = 0;
    int max_degree_ = 0;
    std::vector<bitset> rows_;
    std::vector<std::vector<int>> adj_;
};

} // namespace strongcol
