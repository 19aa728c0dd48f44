#include "strongcol/graph.hpp"

#include "strongcol/errors.hpp"

#include <algorithm>

namespace strongcol {

graph::graph(int n) : n_(n) {
    if (n < 0)
        throw precondition_failed("vertex count must be nonnegative");
    rows_.assign(n_, bitset(n_));
    adj_.assign(n_, {});
}

graph::graph(int n, const std::vector<std::pair<int, int>>& edges) : graph(n) {
    for (auto [u, v] : edges)
        add_edge_internal(u, v);
    finalise();
}

void graph::add_edge_internal(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v)
        throw precondition_failed("loop edge at vertex " + std::to_string(u));
    if (rows_[u].test(v))
        return; // parallel edges collapse
    rows_[u].set(v);
    rows_[v].set(u);
    adj_[u].push_back(v);
    adj_[v].push_back(u);
    ++edge_count_;
}

void graph::finalise() {
    max_degree_ = 0;
    for (int v = 0; v < n_; ++v) {
        std::sort(adj_[v].begin(), adj_[v].end());
        max_degree_ = std::max<int>(max_degree_, static_cast<int>(adj_[v].size()));
    }
}

void graph::check_vertex(int v) const {
    if (v < 0 || v >= n_)
        throw invalid_vertex(v);
}

bool graph::adjacent(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    return rows_[u].test(v);
}

int graph::degree(int v) const {
    check_vertex(v);
    return static_cast<int>(adj_[v].size());
}

const std::vector<int>& graph::neighbours(int v) const {
    check_vertex(v);
    return adj_[v];
}

const bitset& graph::row(int v) const {
    check_vertex(v);
    return rows_[v];
}

std::vector<std::pair<int, int>> graph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(edge_count_);
    for (int u = 0; u < n_; ++u)
        for (int v : adj_[u])
            if (u < v)
                out.emplace_back(u, v);
    return out;
}

graph graph::induced(const std::vector<int>& vertices) const {
    const int m = static_cast<int>(vertices.size());
    std::vector<int> pos(n_, -1);
    for (int i = 0; i < m; ++i) {
        check_vertex(vertices[i]);
        if (pos[vertices[i]] != -1)
            throw precondition_failed("duplicate vertex in induced-subgraph request");
        pos[vertices[i]] = i;
    }
    std::vector<std::pair<int, int>> sub_edges;
    for (int i = 0; i < m; ++i)
        for (int w : adj_[vertices[i]]) {
            int j = pos[w];
            if (j > i)
                sub_edges.emplace_back(i, j);
        }
    return graph(m, sub_edges);
}

graph graph::cross_class_complement(const std::vector<int>& class_of) const {
    if (static_cast<int>(class_of.size()) != n_)
        throw precondition_failed("class_of size must match vertex count");
    std::vector<std::pair<int, int>> comp_edges;
    for (int u = 0; u < n_; ++u)
        for (int v = u + 1; v < n_; ++v)
            if (class_of[u] != class_of[v] && !rows_[u].test(v))
                comp_edges.emplace_back(u, v);
    return graph(n_, comp_edges);
}

bool graph::operator==(const graph& other) const {
    return n_ == other.n_ && rows_ == other.rows_;
}

} // namespace strongcol
