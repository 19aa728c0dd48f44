#include "strongcol/tiling.hpp"

#include <algorithm>

#include "strongcol/errors.hpp"

namespace strongcol {

certificate_report verify_tiling(const graph& g, const partition& p,
                                 const std::vector<std::vector<int>>& cliques) {
    certificate_report rep;
    auto fail = [&](std::string reason) {
        rep.ok = false;
        rep.reason = std::move(reason);
        return rep;
    };
    const int k = static_cast<int>(p.classes().size());
    std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()), 0);
    for (std::size_t row = 0; row < cliques.size(); ++row) {
        const auto& c = cliques[row];
        if (static_cast<int>(c.size()) != k)
            return fail("row " + std::to_string(row) + " is not a k-set");
        std::vector<char> class_hit(static_cast<std::size_t>(k), 0);
        for (int v : c) {
            if (v < 0 || v >= g.vertex_count())
                return fail("row " + std::to_string(row) + " has an invalid vertex");
            if (seen[static_cast<std::size_t>(v)])
                return fail("vertex " + std::to_string(v) + " appears twice");
            seen[static_cast<std::size_t>(v)] = 1;
            int cls = p.class_of(v);
            if (class_hit[static_cast<std::size_t>(cls)])
                return fail("row " + std::to_string(row) + " repeats a class");
            class_hit[static_cast<std::size_t>(cls)] = 1;
        }
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = i + 1; j < c.size(); ++j)
                if (!g.adjacent(c[i], c[j]))
                    return fail("row " + std::to_string(row) + " misses the edge {" +
                                std::to_string(c[i]) + "," + std::to_string(c[j]) + "}");
    }
    for (int v = 0; v < g.vertex_count(); ++v)
        if (!seen[static_cast<std::size_t>(v)])
            return fail("vertex " + std::to_string(v) + " is uncovered");
    return rep;
}

tiling_result find_perfect_kk_tiling(const graph& g, const partition& p,
                                     double epsilon,
                                     const strong_colouring_config& config) {
    const int n = g.vertex_count();
    std::vector<int> class_of(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
        class_of[static_cast<std::size_t>(v)] = p.class_of(v);
    for (auto [u, v] : g.edges())
        if (class_of[static_cast<std::size_t>(u)] == class_of[static_cast<std::size_t>(v)])
            throw precondition_failed("graph has an edge inside a class");

    graph complement = g.cross_class_complement(class_of);
    auto coloured = strong_colouring(complement, p, epsilon, config);

    tiling_result result;
    result.trace = std::move(coloured.trace);
    for (const auto& t : coloured.colouring)
        result.cliques.push_back(t.vertices);
    auto rep = verify_tiling(g, p, result.cliques);
    if (!rep.ok)
        throw pipeline_failure("tiling certification failed: " + rep.reason, "certify");
    return result;
}

} // namespace strongcol
