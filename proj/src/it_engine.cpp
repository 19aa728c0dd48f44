#include "strongcol/it_engine.hpp"

#include "strongcol/errors.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace strongcol {

namespace {

// Shared validation for plain class lists: ids in range, no vertex in two
// classes. Returns a membership bitset over V(G).
bitset validate_classes(const graph& g, const std::vector<std::vector<int>>& classes) {
    if (classes.empty())
        throw precondition_failed("need at least one class");
    bitset seen(g.vertex_count());
    for (const auto& cls : classes)
        for (int v : cls) {
            g.check_vertex(v);
            if (seen.test(v))
                throw precondition_failed("classes overlap at vertex " + std::to_string(v));
            seen.set(v);
        }
    return seen;
}

std::vector<std::vector<int>> sorted_copy(const std::vector<std::vector<int>>& classes) {
    auto out = classes;
    for (auto& cls : out)
        std::sort(cls.begin(), cls.end());
    return out;
}

} // namespace

haxell_report check_haxell_condition(const graph& g,
                                     const std::vector<std::vector<int>>& classes) {
    const int k = static_cast<int>(classes.size());
    if (k > 25)
        throw precondition_failed("subset sweep limited to 25 classes, got " +
                                  std::to_string(k));
    validate_classes(g, classes);
    // Classes are disjoint, so subset unions are plain size sums.
    std::vector<long long> size(k);
    for (int i = 0; i < k; ++i)
        size[i] = static_cast<long long>(classes[i].size());
    const long long delta = g.max_degree();
    haxell_report report;
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
        long long union_size = 0;
        int picked = 0;
        for (std::uint32_t rest = mask; rest; rest &= rest - 1) {
            int i = std::countr_zero(rest);
            union_size += size[i];
            ++picked;
        }
        long long bound = (2LL * picked - 2) * delta;
        if (union_size <= bound) {
            haxell_violation w;
            for (int i = 0; i < k; ++i)
                if (mask & (1u << i))
                    w.classes.push_back(i);
            w.union_size = union_size;
            w.bound = bound;
            report.satisfied = false;
            report.witness = std::move(w);
            return report;
        }
    }
    return report;
}

it_search_result find_independent_transversal(const graph& g,
                                              const std::vector<std::vector<int>>& classes,
                                              std::uint64_t node_budget,
                                              const bitset* excluded) {
    validate_classes(g, classes);
    const int k = static_cast<int>(classes.size());
    const int n = g.vertex_count();
    auto sorted = sorted_copy(classes);

    // Smallest class first; index breaks ties so the order is stable.
    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return sorted[a].size() < sorted[b].size(); });

    std::vector<bitset> forbidden(k + 1, bitset(n));
    if (excluded) {
        if (excluded->size() != static_cast<std::size_t>(n))
            throw precondition_failed("excluded bitset has wrong size");
        forbidden[0] = *excluded;
    }

    it_search_result res;
    std::vector<int> chosen(k, -1);

    // Depth-first over `order`; forbidden[d] accumulates the neighbourhoods
    // of everything chosen above depth d.
    auto dfs = [&](auto&& self, int d) -> search_status {
        if (d == k)
            return search_status::found;
        const auto& cls = sorted[order[d]];
        for (int v : cls) {
            if (res.nodes >= node_budget)
                return search_status::timeout;
            ++res.nodes;
            if (forbidden[d].test(v))
                continue;
            chosen[order[d]] = v;
            forbidden[d + 1] = forbidden[d];
            forbidden[d + 1] |= g.row(v);
            auto st = self(self, d + 1);
            if (st != search_status::exhausted)
                return st;
        }
        chosen[order[d]] = -1;
        return search_status::exhausted;
    };

    res.status = dfs(dfs, 0);
    if (res.status == search_status::found)
        res.vertices = chosen;
    return res;
}

std::uint64_t enumerate_independent_transversals(
    const graph& g, const std::vector<std::vector<int>>& classes,
    const std::function<bool(const std::vector<int>&)>& emit) {
    validate_classes(g, classes);
    const int k = static_cast<int>(classes.size());
    const int n = g.vertex_count();
    auto sorted = sorted_copy(classes);

    std::vector<bitset> forbidden(k + 1, bitset(n));
    std::vector<int> chosen(k, -1);
    std::uint64_t emitted = 0;

    // Classes in their given order so output is lexicographic.
    auto dfs = [&](auto&& self, int d) -> bool {
        if (d == k) {
            ++emitted;
            return emit(chosen);
        }
        for (int v : sorted[d]) {
            if (forbidden[d].test(v))
                continue;
            chosen[d] = v;
            forbidden[d + 1] = forbidden[d];
            forbidden[d + 1] |= g.row(v);
            if (!self(self, d + 1))
                return false;
        }
        return true;
    };

    dfs(dfs, 0);
    return emitted;
}

std::vector<std::vector<int>> pinned_classes(const graph& g,
                                             const std::vector<std::vector<int>>& classes,
                                             int pin_class, int pin_a, int pin_b) {
    const int k = static_cast<int>(classes.size());
    if (pin_class < 0 || pin_class >= k)
        throw precondition_failed("pin class index out of range");
    auto in_pin_class = [&](int v) {
        const auto& cls = classes[pin_class];
        return std::find(cls.begin(), cls.end(), v) != cls.end();
    };
    if (!in_pin_class(pin_a) || !in_pin_class(pin_b))
        throw precondition_failed("pin vertices must lie in the pin class");
    bitset banned = g.row(pin_a);
    banned |= g.row(pin_b);
    std::vector<std::vector<int>> out;
    out.reserve(k - 1);
    for (int i = 0; i < k; ++i) {
        if (i == pin_class)
            continue;
        std::vector<int> cls;
        for (int v : classes[i])
            if (!banned.test(v))
                cls.push_back(v);
        out.push_back(std::move(cls));
    }
    return out;
}

std::vector<std::vector<int>> pinned_classes(const graph& g, const partition& p,
                                             int pin_class, int pin_a, int pin_b) {
    return pinned_classes(g, p.classes(), pin_class, pin_a, pin_b);
}

pinned_it_result find_pinned_it(const graph& g,
                                const std::vector<std::vector<int>>& classes,
                                int pin_class, int pin_a, int pin_b,
                                std::uint64_t node_budget) {
    auto shrunken = pinned_classes(g, classes, pin_class, pin_a, pin_b);
    auto search = find_independent_transversal(g, shrunken, node_budget);
    pinned_it_result res;
    res.status = search.status;
    res.nodes = search.nodes;
    for (int i = 0; i < static_cast<int>(classes.size()); ++i)
        if (i != pin_class)
            res.classes.push_back(i);
    if (search.status != search_status::found)
        return res;
    res.vertices = search.vertices;
    // The deleted neighbourhoods should already guarantee this; recheck
    // against the adjacency before handing the result out.
    for (int v : res.vertices)
        if (g.adjacent(v, pin_a) || g.adjacent(v, pin_b))
            throw error("pinned transversal touches a pin neighbourhood");
    return res;
}

pinned_it_result find_pinned_it(const graph& g, const partition& p, int pin_class,
                                int pin_a, int pin_b, std::uint64_t node_budget) {
    return find_pinned_it(g, p.classes(), pin_class, pin_a, pin_b, node_budget);
}

std::uint64_t count_pinned_its(const graph& g,
                               const std::vector<std::vector<int>>& classes,
                               int pin_class, int pin_a, int pin_b, std::uint64_t cap) {
    auto shrunken = pinned_classes(g, classes, pin_class, pin_a, pin_b);
    std::uint64_t space = 1;
    for (const auto& cls : shrunken) {
        if (cls.empty())
            return 0;
        if (space > cap / cls.size())
            throw cap_exceeded("pinned enumeration space exceeds cap", cap);
        space *= cls.size();
    }
    std::uint64_t count = 0;
    enumerate_independent_transversals(g, shrunken, [&](const std::vector<int>&) {
        ++count;
        return true;
    });
    return count;
}

std::uint64_t count_pinned_its(const graph& g, const partition& p, int pin_class,
                               int pin_a, int pin_b, std::uint64_t cap) {
    return count_pinned_its(g, p.classes(), pin_class, pin_a, pin_b, cap);
}

namespace {

// Round-assignment backtracking state for find_it_partition. Rounds live in
// a uint64 mask, which caps r at 64; every current caller is far below that.
struct round_search {
    const graph& g;
    const std::vector<std::vector<int>>& classes;
    int r;
    int n;
    std::uint64_t full_mask;
    std::uint64_t budget;
    std::uint64_t nodes = 0;

    std::vector<int> class_of{};             // -1 for vertices outside the classes
    std::vector<int> round_of{};             // -1 while unassigned
    std::vector<std::uint64_t> class_used{}; // rounds taken within each class
    std::vector<std::vector<std::uint8_t>> neigh_cnt{}; // per vertex, per round
    std::vector<std::uint64_t> neigh_used{}; // rounds blocked by neighbours
    std::vector<int> vertices{};             // all class members

    void assign(int v, int t) {
        round_of[v] = t;
        class_used[class_of[v]] |= 1ull << t;
        for (int w : g.neighbours(v)) {
            if (class_of[w] < 0)
                continue;
            if (++neigh_cnt[w][t] == 1)
                neigh_used[w] |= 1ull << t;
        }
    }

    void unassign(int v, int t) {
        round_of[v] = -1;
        class_used[class_of[v]] &= ~(1ull << t);
        for (int w : g.neighbours(v)) {
            if (class_of[w] < 0)
                continue;
            if (--neigh_cnt[w][t] == 0)
                neigh_used[w] &= ~(1ull << t);
        }
    }

    std::uint64_t avail(int v) const {
        return full_mask & ~(class_used[class_of[v]] | neigh_used[v]);
    }

    search_status dfs(int assigned) {
        if (assigned == static_cast<int>(vertices.size()))
            return search_status::found;
        // Most constrained vertex next; ties fall to the smallest id.
        int best = -1;
        int best_count = r + 1;
        for (int v : vertices) {
            if (round_of[v] != -1)
                continue;
            int c = std::popcount(avail(v));
            if (c < best_count) {
                best_count = c;
                best = v;
                if (c == 0)
                    break;
            }
        }
        for (std::uint64_t rest = avail(best); rest; rest &= rest - 1) {
            if (nodes >= budget)
                return search_status::timeout;
            ++nodes;
            int t = std::countr_zero(rest);
            assign(best, t);
            auto st = dfs(assigned + 1);
            if (st != search_status::exhausted)
                return st;
            unassign(best, t);
        }
        return search_status::exhausted;
    }
};

} // namespace

it_partition_result find_it_partition(const graph& g,
                                      const std::vector<std::vector<int>>& classes,
                                      std::uint64_t node_budget) {
    validate_classes(g, classes);
    const int k = static_cast<int>(classes.size());
    const int r = static_cast<int>(classes[0].size());
    for (const auto& cls : classes)
        if (static_cast<int>(cls.size()) != r)
            throw precondition_failed("round search needs equal class sizes");
    if (r == 0)
        throw precondition_failed("round search needs nonempty classes");
    if (r > 64)
        throw precondition_failed("round search supports at most 64 rounds");

    auto sorted = sorted_copy(classes);
    round_search s{g, sorted, r, g.vertex_count(),
                   r == 64 ? ~0ull : (1ull << r) - 1, node_budget};
    s.class_of.assign(g.vertex_count(), -1);
    s.round_of.assign(g.vertex_count(), -1);
    s.class_used.assign(k, 0);
    s.neigh_cnt.assign(g.vertex_count(), std::vector<std::uint8_t>(r, 0));
    s.neigh_used.assign(g.vertex_count(), 0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < r; ++j) {
            int v = sorted[i][j];
            s.class_of[v] = i;
            s.vertices.push_back(v);
        }

    // Rounds are interchangeable; pinning the first class in slot order
    // removes that symmetry without losing any solution.
    for (int j = 0; j < r; ++j)
        s.assign(sorted[0][j], j);

    it_partition_result res;
    res.status = s.dfs(r);
    res.nodes = s.nodes;
    if (res.status == search_status::found) {
        res.transversals.assign(r, transversal{std::vector<int>(k, -1)});
        for (int v : s.vertices)
            res.transversals[s.round_of[v]].vertices[s.class_of[v]] = v;
    }
    return res;
}

it_partition_result find_it_partition(const graph& g, const partition& p,
                                      std::uint64_t node_budget) {
    return find_it_partition(g, p.classes(), node_budget);
}

} // namespace strongcol
