#include "strongcol/oracle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <string>

#include "strongcol/errors.hpp"
#include "strongcol/generators.hpp"

namespace strongcol {

namespace {

// Enumerates partitions of 0..n-1 into classes of size r. Each class is
// anchored on the smallest vertex not yet assigned and its companions are
// chosen in ascending order, so every set partition appears exactly once,
// classes sorted by their minima. The callback returns false to stop.
class layout_enumerator {
  public:
    layout_enumerator(int n, int r,
                      std::function<bool(const std::vector<std::vector<int>>&)> emit)
        : n_(n), r_(r), emit_(std::move(emit)), assigned_(static_cast<std::size_t>(n), 0) {}

    void run() { descend(); }

  private:
    void descend() {
        if (done_)
            return;
        int anchor = -1;
        for (int v = 0; v < n_; ++v) {
            if (!assigned_[static_cast<std::size_t>(v)]) {
                anchor = v;
                break;
            }
        }
        if (anchor < 0) {
            done_ = !emit_(classes_);
            return;
        }
        std::vector<int> pool;
        for (int v = anchor + 1; v < n_; ++v)
            if (!assigned_[static_cast<std::size_t>(v)])
                pool.push_back(v);
        std::vector<int> current{anchor};
        assigned_[static_cast<std::size_t>(anchor)] = 1;
        choose(pool, 0, r_ - 1, current);
        assigned_[static_cast<std::size_t>(anchor)] = 0;
    }

    void choose(const std::vector<int>& pool, std::size_t from, int need,
                std::vector<int>& current) {
        if (done_)
            return;
        if (need == 0) {
            for (std::size_t i = 1; i < current.size(); ++i)
                assigned_[static_cast<std::size_t>(current[i])] = 1;
            classes_.push_back(current);
            descend();
            classes_.pop_back();
            for (std::size_t i = 1; i < current.size(); ++i)
                assigned_[static_cast<std::size_t>(current[i])] = 0;
            return;
        }
        for (std::size_t i = from; i + static_cast<std::size_t>(need) <= pool.size(); ++i) {
            current.push_back(pool[i]);
            choose(pool, i + 1, need - 1, current);
            current.pop_back();
            if (done_)
                return;
        }
    }

    int n_, r_;
    std::function<bool(const std::vector<std::vector<int>>&)> emit_;
    std::vector<char> assigned_;
    std::vector<std::vector<int>> classes_;
    bool done_ = false;
};

} // namespace

padded_instance pad_to_multiple(const graph& g, int r) {
    if (r < 1)
        throw precondition_failed("class size must be positive");
    const int n = g.vertex_count();
    const int target = r * ((n + r - 1) / r);
    return {graph(target, g.edges()), target - n};
}

colourability_result is_strongly_r_colourable(const graph& g, int r,
                                              std::uint64_t budget) {
    auto inst = pad_to_multiple(g, r);
    const graph& h = inst.padded;
    const int n = h.vertex_count();

    colourability_result out;
    if (r == 1) {
        // one colour: the only layout is all-singletons and the single
        // transversal is V(G) itself
        out.colourable = g.edge_count() == 0;
        out.partitions_checked = 1;
        if (!out.colourable) {
            std::vector<std::vector<int>> singletons;
            for (int v = 0; v < n; ++v)
                singletons.push_back({v});
            out.witness = std::move(singletons);
        }
        return out;
    }
    if (n == 0 || n / r <= 1) {
        // a lone class always splits into singleton rounds
        out.colourable = true;
        out.partitions_checked = 1;
        return out;
    }
    if (n > 14)
        throw precondition_failed("padded order above 14 is out of exhaustive range");

    out.colourable = true;
    bool out_of_budget = false;
    layout_enumerator walk(n, r, [&](const std::vector<std::vector<int>>& classes) {
        ++out.partitions_checked;
        if (out.nodes >= budget) {
            out_of_budget = true;
            return false;
        }
        auto res = find_it_partition(h, classes, budget - out.nodes);
        out.nodes += res.nodes;
        if (res.status == search_status::timeout) {
            out_of_budget = true;
            return false;
        }
        if (res.status == search_status::exhausted) {
            out.colourable = false;
            out.witness = classes;
            return false;
        }
        return true;
    });
    walk.run();
    if (out_of_budget)
        throw budget_exceeded("layout sweep ran out of nodes", budget);
    return out;
}

int strong_chromatic_number(const graph& g, std::uint64_t budget) {
    const int n = g.vertex_count();
    if (n < 1)
        throw precondition_failed("need at least one vertex");
    for (int r = 1; r < n; ++r) {
        if (is_strongly_r_colourable(g, r, budget).colourable)
            return r;
    }
    return n;
}

cpt_result check_all_partitions_cpt(int m, const cpt_options& opts) {
    if (m < 1)
        throw precondition_failed("need at least one triangle");
    const int n = 3 * m;
    const graph cyc = cycle_graph(n);

    cpt_result out;
    out.all_pass = true;
    bool out_of_budget = false;
    auto check = [&](const std::vector<std::vector<int>>& classes) {
        ++out.partitions_checked;
        if (out.nodes >= opts.budget) {
            out_of_budget = true;
            return false;
        }
        auto res = find_it_partition(cyc, classes, opts.budget - out.nodes);
        out.nodes += res.nodes;
        if (res.status == search_status::timeout) {
            out_of_budget = true;
            return false;
        }
        if (res.status == search_status::exhausted) {
            out.all_pass = false;
            out.failing = classes;
            return false;
        }
        return true;
    };

    if (opts.samples) {
        std::mt19937_64 rng(opts.seed);
        std::vector<int> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), 0);
        for (int s = 0; s < *opts.samples; ++s) {
            std::shuffle(order.begin(), order.end(), rng);
            std::vector<std::vector<int>> classes(static_cast<std::size_t>(m));
            for (int i = 0; i < n; ++i)
                classes[static_cast<std::size_t>(i / 3)].push_back(order[i]);
            for (auto& c : classes)
                std::sort(c.begin(), c.end());
            if (!check(classes))
                break;
        }
    } else {
        if (n > 21)
            throw precondition_failed("exhaustive triple sweep caps at 21 vertices");
        layout_enumerator walk(n, 3, check);
        walk.run();
    }
    if (out_of_budget)
        throw budget_exceeded("triple sweep ran out of nodes", opts.budget);
    return out;
}

namespace {

bool colourable_with(const graph& g, int q, const std::vector<int>& order) {
    const int n = g.vertex_count();
    std::vector<int> colour(static_cast<std::size_t>(n), -1);
    std::function<bool(int, int)> go = [&](int idx, int used) {
        if (idx == n)
            return true;
        const int v = order[static_cast<std::size_t>(idx)];
        // allowing at most one fresh colour kills the colour-permutation
        // symmetry
        const int limit = std::min(q, used + 1);
        for (int c = 0; c < limit; ++c) {
            bool clash = false;
            for (int u : g.neighbours(v)) {
                if (colour[static_cast<std::size_t>(u)] == c) {
                    clash = true;
                    break;
                }
            }
            if (clash)
                continue;
            colour[static_cast<std::size_t>(v)] = c;
            if (go(idx + 1, std::max(used, c + 1)))
                return true;
            colour[static_cast<std::size_t>(v)] = -1;
        }
        return false;
    };
    return go(0, 0);
}

} // namespace

int chromatic_number(const graph& g) {
    const int n = g.vertex_count();
    if (n == 0)
        return 0;
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return g.degree(a) > g.degree(b); });
    for (int q = 1; q < n; ++q)
        if (colourable_with(g, q, order))
            return q;
    return n;
}

} // namespace strongcol
