#include "strongcol/generators.hpp"

#include <algorithm>
#include <numeric>
#include <utility>
#include <vector>

#include "strongcol/errors.hpp"

namespace strongcol {

graph cycle_graph(int n) {
    if (n < 3)
        throw infeasible_spec("cycle needs at least 3 vertices");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
        edges.emplace_back(v, (v + 1) % n);
    return graph(n, edges);
}

graph random_bounded_degree(int n, int max_degree, double density,
                            std::mt19937_64& rng) {
    if (n < 0)
        throw infeasible_spec("negative vertex count");
    if (max_degree < 0)
        throw infeasible_spec("negative degree bound");
    if (density < 0.0 || density > 1.0)
        throw infeasible_spec("density must lie in [0, 1]");
    std::vector<std::pair<int, int>> candidates;
    candidates.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            candidates.emplace_back(u, v);
    std::shuffle(candidates.begin(), candidates.end(), rng);
    std::vector<int> deg(static_cast<std::size_t>(std::max(n, 1)), 0);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : candidates) {
        if (deg[u] >= max_degree || deg[v] >= max_degree)
            continue;
        if (coin(rng) > density)
            continue;
        edges.emplace_back(u, v);
        ++deg[u];
        ++deg[v];
    }
    return graph(n, edges);
}

partition random_balanced_partition(int n, int k, std::mt19937_64& rng) {
    if (k < 1 || n < 1 || n % k != 0)
        throw infeasible_spec("class count must divide the vertex count");
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    const int r = n / k;
    std::vector<std::vector<int>> classes(static_cast<std::size_t>(k));
    for (int i = 0; i < n; ++i)
        classes[static_cast<std::size_t>(i / r)].push_back(order[i]);
    return partition(n, classes);
}

generated_instance kpartite_instance(int k, int class_size, int min_degree,
                                     std::mt19937_64& rng) {
    if (k < 2 || class_size < 1)
        throw infeasible_spec("need k >= 2 classes of positive size");
    const int full = (k - 1) * class_size;
    if (min_degree < 0 || min_degree > full)
        throw infeasible_spec("degree floor exceeds the complete k-partite degree");
    const int n = k * class_size;
    std::vector<int> deg(static_cast<std::size_t>(n), full);
    std::vector<std::pair<int, int>> cross;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (u / class_size != v / class_size)
                cross.emplace_back(u, v);
    std::shuffle(cross.begin(), cross.end(), rng);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : cross) {
        if (deg[u] > min_degree && deg[v] > min_degree && coin(rng) < 0.5) {
            --deg[u];
            --deg[v];
            continue;
        }
        edges.emplace_back(u, v);
    }
    std::vector<std::vector<int>> classes(static_cast<std::size_t>(k));
    for (int v = 0; v < n; ++v)
        classes[static_cast<std::size_t>(v / class_size)].push_back(v);
    return {graph(n, edges), partition(n, classes)};
}

namespace {

void verify_kpartite(const generated_instance& inst, int min_degree) {
    const auto& g = inst.g;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (g.degree(v) < min_degree)
            throw error("generated instance broke its degree floor");
        for (int u : g.neighbours(v))
            if (inst.classes.class_of(u) == inst.classes.class_of(v))
                throw error("generated instance has an intra-class edge");
    }
}

} // namespace

generated_instance generate(const instance_spec& spec, std::mt19937_64& rng) {
    if (spec.family == "cycle") {
        const int s = spec.class_size > 0 ? spec.class_size : 3;
        if (spec.n < 3 || spec.n % s != 0)
            throw infeasible_spec("cycle length must be a positive multiple of the class size");
        graph g = cycle_graph(spec.n);
        std::vector<std::vector<int>> classes(static_cast<std::size_t>(spec.n / s));
        for (int v = 0; v < spec.n; ++v)
            classes[static_cast<std::size_t>(v / s)].push_back(v);
        return {std::move(g), partition(spec.n, classes)};
    }
    if (spec.family == "cpt") {
        if (spec.m < 1)
            throw infeasible_spec("need at least one triangle");
        const int n = 3 * spec.m;
        graph g = cycle_graph(n);
        partition p = random_balanced_partition(n, spec.m, rng);
        return {std::move(g), std::move(p)};
    }
    if (spec.family == "bounded-degree") {
        if (spec.k < 1 || spec.n < 1 || spec.n % spec.k != 0)
            throw infeasible_spec("class count must divide the vertex count");
        graph g = random_bounded_degree(spec.n, spec.max_degree, spec.density, rng);
        if (g.max_degree() > spec.max_degree)
            throw error("generated instance broke its degree cap");
        partition p = random_balanced_partition(spec.n, spec.k, rng);
        return {std::move(g), std::move(p)};
    }
    if (spec.family == "kpartite") {
        auto inst = kpartite_instance(spec.k, spec.class_size, spec.min_degree, rng);
        verify_kpartite(inst, spec.min_degree);
        return inst;
    }
    throw infeasible_spec("unknown generator family: " + spec.family);
}

} // namespace strongcol
