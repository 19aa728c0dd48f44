#include "strongcol/nibble.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <set>
#include <unordered_map>

#include "strongcol/fractional.hpp"
#include "strongcol/it_engine.hpp"

namespace strongcol {

void nibble_params::validate() const {
    // the default exponents sit exactly on the non-strict boundaries, so
    // those comparisons get a tolerance against roundoff in the sums
    constexpr double tol = 1e-9;
    const double e[6] = {eta1, eta2, eta3, eta4, eta5, eta6};
    for (double x : e)
        if (!(x > 0.0 && x < 1.0))
            throw precondition_failed("every exponent must lie strictly in (0, 1)");
    if (!(eta1 + eta2 > eta3))
        throw precondition_failed("need eta1 + eta2 > eta3");
    if (!(2.0 * eta3 > eta1 + eta2))
        throw precondition_failed("need 2*eta3 > eta1 + eta2");
    if (!(2.0 * eta1 + eta2 < 1.0))
        throw precondition_failed("need 2*eta1 + eta2 < 1");
    if (!(3.0 * eta2 + 6.0 * eta1 <= 1.0 + tol))
        throw precondition_failed("need 3*eta2 + 6*eta1 <= 1");
    if (!(2.0 * eta3 + tol >= eta1 + eta2 + eta4))
        throw precondition_failed("need 2*eta3 >= eta1 + eta2 + eta4");
    if (!(3.0 * eta2 + 6.0 * eta1 + eta5 <= 1.0 + tol))
        throw precondition_failed("need 3*eta2 + 6*eta1 + eta5 <= 1");
    if (!(eta1 + eta2 > eta6 && eta6 > eta3))
        throw precondition_failed("need eta1 + eta2 > eta6 > eta3");
    if (!(delta >= 0.0 && delta <= 1.0))
        throw precondition_failed("delta must lie in [0, 1]");
    if (m && *m < 1)
        throw precondition_failed("subset size override must be positive");
    if (cover_count && *cover_count < 1)
        throw precondition_failed("cover count override must be positive");
    if (cover_count_cap < 0)
        throw precondition_failed("cover count cap cannot be negative");
    if (max_resamples < 1)
        throw precondition_failed("need at least one sampling attempt");
}

int nibble_params::subset_size(int r) const {
    if (m)
        return *m;
    return std::max(1, static_cast<int>(std::llround(std::pow(r, eta1))));
}

long long nibble_params::set_count(int r) const {
    long long count = cover_count
                          ? *cover_count
                          : std::max(1ll, std::llround(std::pow(r, 1.0 + eta2)));
    if (cover_count_cap > 0)
        count = std::min(count, cover_count_cap);
    return count;
}

cover_report verify_cover(const graph& g, const partition& p, const cover& c,
                          const nibble_params& params) {
    const int n = p.vertex_count();
    const int r = p.class_size();
    const int k = p.class_count();
    const int m = params.subset_size(r);

    cover_report rep;
    rep.subset_size = m;
    rep.window_centre = std::pow(r, params.eta1 + params.eta2);
    rep.window_radius = std::pow(r, params.eta3);

    // (1) every set meets every class exactly m times
    rep.balanced = true;
    for (const auto& s : c.sets) {
        auto counts = class_counts(s, p);
        for (int i = 0; i < k; ++i)
            if (counts[static_cast<std::size_t>(i)] != m)
                rep.balanced = false;
    }

    // (2) membership counts, recomputed from the sets themselves
    std::vector<int> member_count(static_cast<std::size_t>(n), 0);
    for (const auto& s : c.sets)
        for (int v : s.members())
            ++member_count[static_cast<std::size_t>(v)];
    rep.min_membership = n > 0 ? *std::min_element(member_count.begin(), member_count.end()) : 0;
    rep.max_membership = n > 0 ? *std::max_element(member_count.begin(), member_count.end()) : 0;
    const double lo = rep.window_centre - rep.window_radius;
    const double hi = rep.window_centre + rep.window_radius;
    for (int v = 0; v < n; ++v) {
        double cnt = member_count[static_cast<std::size_t>(v)];
        if (cnt < lo || cnt > hi)
            ++rep.outside_window;
    }
    rep.membership_in_window = rep.outside_window == 0;

    // (3) and (4): exact multiplicity counts over all legal pairs/triples
    // inside sampled sets
    const auto un = static_cast<unsigned long long>(n);
    std::unordered_map<unsigned long long, long long> pair_mult;
    std::unordered_map<unsigned long long, long long> triple_mult;
    for (const auto& s : c.sets) {
        std::vector<std::vector<int>> by_class(static_cast<std::size_t>(k));
        for (int v : s.members())
            by_class[static_cast<std::size_t>(p.class_of(v))].push_back(v);
        for (int a = 0; a < k; ++a)
            for (int b = a + 1; b < k; ++b)
                for (int u : by_class[static_cast<std::size_t>(a)])
                    for (int v : by_class[static_cast<std::size_t>(b)]) {
                        auto x = static_cast<unsigned long long>(std::min(u, v));
                        auto y = static_cast<unsigned long long>(std::max(u, v));
                        ++pair_mult[x * un + y];
                    }
        for (int a = 0; a < k; ++a)
            for (int b = a + 1; b < k; ++b)
                for (int d = b + 1; d < k; ++d)
                    for (int u : by_class[static_cast<std::size_t>(a)])
                        for (int v : by_class[static_cast<std::size_t>(b)])
                            for (int w : by_class[static_cast<std::size_t>(d)]) {
                                int t[3] = {u, v, w};
                                std::sort(t, t + 3);
                                auto key = (static_cast<unsigned long long>(t[0]) * un +
                                            static_cast<unsigned long long>(t[1])) *
                                               un +
                                           static_cast<unsigned long long>(t[2]);
                                ++triple_mult[key];
                            }
    }
    for (const auto& [key, cnt] : pair_mult)
        rep.max_pair_multiplicity = std::max(rep.max_pair_multiplicity, cnt);
    for (const auto& [key, cnt] : triple_mult)
        rep.max_triple_multiplicity = std::max(rep.max_triple_multiplicity, cnt);
    rep.pairs_ok = rep.max_pair_multiplicity <= 2;
    rep.triples_ok = rep.max_triple_multiplicity <= 1;

    // (5) induced maximum degree per set against m/2
    rep.induced_degree_ok = true;
    for (const auto& s : c.sets) {
        bitset mask(static_cast<bitset::size_type>(g.vertex_count()));
        for (int v : s.members())
            mask.set(static_cast<bitset::size_type>(v));
        for (int v : s.members()) {
            auto deg = static_cast<int>((g.row(v) & mask).count());
            rep.max_induced_degree = std::max(rep.max_induced_degree, deg);
            if (m < 2 * deg)
                rep.induced_degree_ok = false;
        }
    }
    return rep;
}

namespace {

cover draw_cover(const partition& p, int m, long long count, std::mt19937_64& rng) {
    cover c;
    c.sets.reserve(static_cast<std::size_t>(count));
    c.membership.assign(static_cast<std::size_t>(p.vertex_count()), {});
    for (long long j = 0; j < count; ++j) {
        std::vector<int> members;
        members.reserve(static_cast<std::size_t>(m) * p.class_count());
        for (int i = 0; i < p.class_count(); ++i) {
            const auto& cls = p.class_members(i);
            std::sample(cls.begin(), cls.end(), std::back_inserter(members), m, rng);
        }
        for (int v : members)
            c.membership[static_cast<std::size_t>(v)].push_back(static_cast<int>(j));
        c.sets.emplace_back(std::move(members));
    }
    return c;
}

} // namespace

std::pair<cover, cover_report> sample_cover(const graph& g, const partition& p,
                                            const nibble_params& params) {
    params.validate();
    const int r = p.class_size();
    const int m = params.subset_size(r);
    if (m > r)
        throw precondition_failed("per-class subset size exceeds the class size");
    const long long count = params.set_count(r);

    std::mt19937_64 rng(params.seed);
    cover best;
    cover_report best_rep;
    int best_passes = -1;
    for (int attempt = 0; attempt < params.max_resamples; ++attempt) {
        cover c = draw_cover(p, m, count, rng);
        cover_report rep = verify_cover(g, p, c, params);
        if (rep.all())
            return {std::move(c), rep};
        if (rep.passes() > best_passes) {
            best_passes = rep.passes();
            best = std::move(c);
            best_rep = rep;
        }
    }
    return {std::move(best), best_rep};
}

hypergraph::hypergraph(int n, int k, std::vector<std::vector<int>> edges)
    : n_(n), k_(k), edges_(std::move(edges)) {
    if (n_ < 0 || k_ < 1)
        throw precondition_failed("hypergraph needs n >= 0 and positive arity");
    for (auto& e : edges_) {
        if (static_cast<int>(e.size()) != k_)
            throw precondition_failed("hypergraph edge with wrong arity");
        std::sort(e.begin(), e.end());
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] < 0 || e[i] >= n_)
                throw invalid_vertex(e[i]);
            if (i > 0 && e[i] == e[i - 1])
                throw precondition_failed("hypergraph edge repeats a vertex");
        }
    }
    auto order = std::vector<std::size_t>(edges_.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return edges_[a] < edges_[b]; });
    for (std::size_t i = 1; i < order.size(); ++i)
        if (edges_[order[i]] == edges_[order[i - 1]])
            throw precondition_failed("duplicate hypergraph edge");
    incidence_.assign(static_cast<std::size_t>(n_), {});
    for (std::size_t i = 0; i < edges_.size(); ++i)
        for (int v : edges_[i])
            incidence_[static_cast<std::size_t>(v)].push_back(static_cast<int>(i));
}

int hypergraph::degree(int v) const {
    if (v < 0 || v >= n_)
        throw invalid_vertex(v);
    return static_cast<int>(incidence_[static_cast<std::size_t>(v)].size());
}

int hypergraph::codegree(int u, int v) const {
    if (u < 0 || u >= n_)
        throw invalid_vertex(u);
    if (v < 0 || v >= n_)
        throw invalid_vertex(v);
    if (u == v)
        return degree(u);
    const auto& iu = incidence_[static_cast<std::size_t>(u)];
    const auto& iv = incidence_[static_cast<std::size_t>(v)];
    const auto& small = iu.size() <= iv.size() ? iu : iv;
    const int other = iu.size() <= iv.size() ? v : u;
    int count = 0;
    for (int e : small) {
        const auto& edge = edges_[static_cast<std::size_t>(e)];
        if (std::binary_search(edge.begin(), edge.end(), other))
            ++count;
    }
    return count;
}

long long hypergraph::max_codegree() const {
    std::unordered_map<unsigned long long, long long> mult;
    const auto un = static_cast<unsigned long long>(n_);
    for (const auto& e : edges_)
        for (std::size_t i = 0; i < e.size(); ++i)
            for (std::size_t j = i + 1; j < e.size(); ++j)
                ++mult[static_cast<unsigned long long>(e[i]) * un +
                       static_cast<unsigned long long>(e[j])];
    long long best = 0;
    for (const auto& [key, cnt] : mult)
        best = std::max(best, cnt);
    return best;
}

double hypergraph::average_degree() const {
    if (n_ == 0)
        return 0.0;
    return static_cast<double>(k_ * edge_count()) / n_;
}

weighting_provider exact_weighting_provider() {
    return [](const graph& g, const std::vector<std::vector<int>>& restricted)
               -> std::optional<std::vector<std::pair<transversal, double>>> {
        std::vector<int> verts;
        for (const auto& cls : restricted)
            verts.insert(verts.end(), cls.begin(), cls.end());
        graph sub = g.induced(verts);
        std::vector<std::vector<int>> local(restricted.size());
        int next = 0;
        for (std::size_t i = 0; i < restricted.size(); ++i)
            for (std::size_t j = 0; j < restricted[i].size(); ++j)
                local[i].push_back(next++);
        try {
            auto res = solve_fractional_weighting(
                sub, partition(static_cast<int>(verts.size()), local));
            if (res.status != fractional_status::feasible)
                return std::nullopt;
            std::vector<std::pair<transversal, double>> out;
            out.reserve(res.weighting.transversals.size());
            for (std::size_t t = 0; t < res.weighting.transversals.size(); ++t) {
                transversal global;
                for (int v : res.weighting.transversals[t].vertices)
                    global.vertices.push_back(verts[static_cast<std::size_t>(v)]);
                out.emplace_back(std::move(global),
                                 res.weighting.weights[t].convert_to<double>());
            }
            return out;
        } catch (const cap_exceeded&) {
            return std::nullopt;
        }
    };
}

hypergraph build_transversal_hypergraph(const graph& g, const partition& p,
                                        const cover& c,
                                        const weighting_provider& provider,
                                        std::mt19937_64& rng) {
    const int k = p.class_count();
    std::vector<std::vector<int>> edges;
    std::set<std::vector<int>> seen;
    for (std::size_t j = 0; j < c.sets.size(); ++j) {
        std::vector<std::vector<int>> restricted(static_cast<std::size_t>(k));
        for (int v : c.sets[j].members())
            restricted[static_cast<std::size_t>(p.class_of(v))].push_back(v);
        auto weighted = provider(g, restricted);
        if (!weighted)
            throw restricted_infeasible(static_cast<long long>(j));
        for (const auto& [t, w] : *weighted) {
            std::vector<int> e = t.vertices;
            std::sort(e.begin(), e.end());
            if (!seen.insert(e).second)
                continue;
            if (w <= 0.0)
                continue;
            if (std::bernoulli_distribution(std::min(w, 1.0))(rng))
                edges.push_back(std::move(e));
        }
    }
    return hypergraph(p.vertex_count(), k, std::move(edges));
}

matching_result semi_random_matching(const hypergraph& h, double delta,
                                     int rounds, double bite_fraction,
                                     std::mt19937_64& rng) {
    if (delta < 0.0 || delta > 1.0)
        throw precondition_failed("delta must lie in [0, 1]");
    if (rounds < 0)
        throw precondition_failed("round count cannot be negative");
    if (bite_fraction <= 0.0)
        throw precondition_failed("bite fraction must be positive");

    const int n = h.vertex_count();
    const int k = h.arity();
    const int target = static_cast<int>(std::ceil((1.0 - delta) * n));
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    matching_result res;

    std::vector<int> alive(h.edge_count());
    for (std::size_t i = 0; i < alive.size(); ++i)
        alive[i] = static_cast<int>(i);
    auto edge_free = [&](const std::vector<int>& e) {
        for (int v : e)
            if (used[static_cast<std::size_t>(v)])
                return false;
        return true;
    };
    auto take = [&](const std::vector<int>& e) {
        for (int v : e)
            used[static_cast<std::size_t>(v)] = 1;
        res.edges.push_back(e);
        res.covered += k;
    };

    for (int round = 0; round < rounds; ++round) {
        if (res.covered >= target)
            break;
        std::vector<int> survivors;
        for (int idx : alive)
            if (edge_free(h.edges()[static_cast<std::size_t>(idx)]))
                survivors.push_back(idx);
        alive = std::move(survivors);
        if (alive.empty())
            break;
        ++res.rounds_run;
        const int uncovered = n - res.covered;
        const double avg = static_cast<double>(k) *
                           static_cast<double>(alive.size()) / uncovered;
        const double prob = std::min(1.0, bite_fraction / avg);
        std::bernoulli_distribution bite(prob);
        for (int idx : alive) {
            const auto& e = h.edges()[static_cast<std::size_t>(idx)];
            if (!bite(rng))
                continue;
            if (edge_free(e))
                take(e);
        }
    }

    // greedy sweep mops up whatever the bites left behind
    for (const auto& e : h.edges())
        if (edge_free(e))
            take(e);

    res.reached_target = res.covered >= target;

    std::vector<char> check(static_cast<std::size_t>(n), 0);
    for (const auto& e : res.edges)
        for (int v : e) {
            if (check[static_cast<std::size_t>(v)])
                throw error("matching certification failed: vertex reused");
            check[static_cast<std::size_t>(v)] = 1;
        }
    return res;
}

namespace {

transversal edge_to_transversal(const std::vector<int>& e, const partition& p) {
    std::vector<int> slot(static_cast<std::size_t>(p.class_count()), -1);
    for (int v : e) {
        const int i = p.class_of(v);
        if (slot[static_cast<std::size_t>(i)] != -1)
            throw error("hypergraph edge meets a class twice");
        slot[static_cast<std::size_t>(i)] = v;
    }
    for (int v : slot)
        if (v == -1)
            throw error("hypergraph edge misses a class");
    return transversal{std::move(slot)};
}

} // namespace

partial_colouring_result partial_strong_colouring(const graph& g,
                                                  const partition& p,
                                                  double delta,
                                                  const nibble_params& params,
                                                  bool fallback) {
    params.validate();
    if (p.class_count() < 3)
        throw precondition_failed("partial colouring needs at least 3 classes");
    if (delta < 0.0 || delta > 1.0)
        throw precondition_failed("delta must lie in [0, 1]");
    const int r = p.class_size();
    const int k = p.class_count();

    partial_colouring_result out;
    out.target = std::min(r, static_cast<int>(std::ceil((1.0 - delta) * r)));

    auto [cov, rep] = sample_cover(g, p, params);
    out.cover_ok = rep.all();
    std::mt19937_64 rng(params.seed + 0x9e3779b97f4a7c15ull);
    if (out.cover_ok) {
        try {
            hypergraph h =
                build_transversal_hypergraph(g, p, cov, exact_weighting_provider(), rng);
            auto match = semi_random_matching(h, delta, default_nibble_rounds,
                                              default_bite_fraction, rng);
            for (const auto& e : match.edges)
                out.transversals.push_back(edge_to_transversal(e, p));
        } catch (const restricted_infeasible&) {
            // cover verification lied only if the provider was nonstandard;
            // either way the greedy path still applies
            out.transversals.clear();
        }
    }
    out.from_matching = static_cast<int>(out.transversals.size());

    if (auto cert = verify_disjoint_its(g, p, out.transversals); !cert)
        throw error("matching stage produced a bad partial colouring: " + cert.reason);

    if (static_cast<int>(out.transversals.size()) < out.target && fallback) {
        out.used_fallback = true;
        std::vector<char> taken(static_cast<std::size_t>(p.vertex_count()), 0);
        for (const auto& t : out.transversals)
            for (int v : t.vertices)
                taken[static_cast<std::size_t>(v)] = 1;
        while (static_cast<int>(out.transversals.size()) < out.target) {
            std::vector<std::vector<int>> residual(static_cast<std::size_t>(k));
            for (int i = 0; i < k; ++i)
                for (int v : p.class_members(i))
                    if (!taken[static_cast<std::size_t>(v)])
                        residual[static_cast<std::size_t>(i)].push_back(v);
            auto found = find_independent_transversal(g, residual);
            if (found.status != search_status::found)
                break;
            for (int v : found.vertices)
                taken[static_cast<std::size_t>(v)] = 1;
            out.transversals.push_back(transversal{found.vertices});
        }
        if (auto cert = verify_disjoint_its(g, p, out.transversals); !cert)
            throw error("fallback produced a bad partial colouring: " + cert.reason);
    }

    if (static_cast<int>(out.transversals.size()) < out.target)
        throw shortfall(static_cast<int>(out.transversals.size()), out.target);
    return out;
}

} // namespace strongcol
