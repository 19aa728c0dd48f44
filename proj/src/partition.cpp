#include "strongcol/partition.hpp"

#include "strongcol/errors.hpp"

#include <algorithm>

namespace strongcol {

partition::partition(int n, std::vector<std::vector<int>> classes)
    : n_(n), classes_(std::move(classes)) {
    if (classes_.empty())
        throw precondition_failed("partition needs at least one class");
    r_ = static_cast<int>(classes_[0].size());
    if (r_ == 0)
        throw precondition_failed("partition classes must be nonempty");
    class_of_.assign(n_, -1);
    int seen = 0;
    for (std::size_t i = 0; i < classes_.size(); ++i) {
        auto& cls = classes_[i];
        if (static_cast<int>(cls.size()) != r_)
            throw precondition_failed("partition classes must have equal sizes");
        std::sort(cls.begin(), cls.end());
        for (int v : cls) {
            if (v < 0 || v >= n_)
                throw invalid_vertex(v);
            if (class_of_[v] != -1)
                throw precondition_failed("vertex " + std::to_string(v) +
                                          " appears in two classes");
            class_of_[v] = static_cast<int>(i);
            ++seen;
        }
    }
    if (seen != n_)
        throw precondition_failed("partition does not cover the vertex set");
}

const std::vector<int>& partition::class_members(int i) const {
    if (i < 0 || i >= class_count())
        throw precondition_failed("class index out of range: " + std::to_string(i));
    return classes_[i];
}

int partition::class_of(int v) const {
    if (v < 0 || v >= n_)
        throw invalid_vertex(v);
    return class_of_[v];
}

vertex_set::vertex_set(std::vector<int> vertices) : members_(std::move(vertices)) {
    std::sort(members_.begin(), members_.end());
    if (std::adjacent_find(members_.begin(), members_.end()) != members_.end())
        throw precondition_failed("vertex set has a repeated member");
}

bool vertex_set::contains(int v) const {
    return std::binary_search(members_.begin(), members_.end(), v);
}

std::vector<int> class_counts(const vertex_set& s, const partition& p) {
    std::vector<int> counts(p.class_count(), 0);
    for (int v : s.members())
        ++counts[p.class_of(v)];
    return counts;
}

bool is_legal(const vertex_set& s, const partition& p) {
    for (int c : class_counts(s, p))
        if (c > 1)
            return false;
    return true;
}

bool is_balanced(const vertex_set& s, const partition& p) {
    auto counts = class_counts(s, p);
    for (int c : counts)
        if (c != counts[0])
            return false;
    return true;
}

namespace {

certificate_report fail(std::string reason) {
    return certificate_report{false, std::move(reason)};
}

// Shared core: legality, independence, pairwise disjointness. Coverage is
// layered on by verify_it_partition.
certificate_report check_transversal_list(const graph& g, const partition& p,
                                          const std::vector<transversal>& ts,
                                          std::vector<char>& used) {
    const int k = p.class_count();
    for (std::size_t t = 0; t < ts.size(); ++t) {
        const auto& vs = ts[t].vertices;
        if (static_cast<int>(vs.size()) != k)
            return fail("transversal " + std::to_string(t) + " has " +
                        std::to_string(vs.size()) + " vertices, expected " +
                        std::to_string(k));
        for (int i = 0; i < k; ++i) {
            int v = vs[i];
            if (v < 0 || v >= g.vertex_count())
                return fail("transversal " + std::to_string(t) +
                            " mentions unknown vertex " + std::to_string(v));
            if (p.class_of(v) != i)
                return fail("transversal " + std::to_string(t) + " slot " +
                            std::to_string(i) + " holds vertex " + std::to_string(v) +
                            " from class " + std::to_string(p.class_of(v)));
            if (used[v])
                return fail("vertex " + std::to_string(v) +
                            " appears in two transversals");
            used[v] = 1;
        }
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
                if (g.adjacent(vs[i], vs[j]))
                    return fail("transversal " + std::to_string(t) + " contains edge {" +
                                std::to_string(vs[i]) + "," + std::to_string(vs[j]) + "}");
    }
    return {};
}

} // namespace

certificate_report verify_it_partition(const graph& g, const partition& p,
                                       const std::vector<transversal>& colouring) {
    if (g.vertex_count() != p.vertex_count())
        return fail("graph and partition disagree on vertex count");
    std::vector<char> used(g.vertex_count(), 0);
    auto base = check_transversal_list(g, p, colouring, used);
    if (!base)
        return base;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (!used[v])
            return fail("vertex " + std::to_string(v) + " is uncovered");
    return {};
}

certificate_report verify_disjoint_its(const graph& g, const partition& p,
                                       const std::vector<transversal>& ts) {
    if (g.vertex_count() != p.vertex_count())
        return fail("graph and partition disagree on vertex count");
    std::vector<char> used(g.vertex_count(), 0);
    return check_transversal_list(g, p, ts, used);
}

} // namespace strongcol
