#include "strongcol/absorber.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <set>

#include "strongcol/errors.hpp"
#include "strongcol/it_engine.hpp"

namespace strongcol {

namespace {

std::vector<std::vector<int>> split_by_class(const partition& p,
                                             const std::vector<int>& verts) {
    std::vector<std::vector<int>> lists(p.classes().size());
    for (int v : verts)
        lists[static_cast<std::size_t>(p.class_of(v))].push_back(v);
    for (auto& l : lists)
        std::sort(l.begin(), l.end());
    return lists;
}

// True when the vertices split into independent transversals, one vertex
// per class per round. Requires the same count in every class.
bool splits_into_its(const graph& g, const partition& p, const std::vector<int>& verts,
                     std::uint64_t budget) {
    auto lists = split_by_class(p, verts);
    return find_it_partition(g, lists, budget).status == search_status::found;
}

int equal_class_size(const partition& p) {
    const auto& classes = p.classes();
    if (classes.empty())
        throw precondition_failed("partition has no classes");
    const std::size_t r = classes.front().size();
    for (const auto& c : classes)
        if (c.size() != r)
            throw precondition_failed("classes must have equal sizes");
    return static_cast<int>(r);
}

} // namespace

void absorber_params::validate() const {
    if (!(gamma > 0.0))
        throw precondition_failed("gamma must be positive");
    if (!(eta > 0.0))
        throw precondition_failed("eta must be positive");
    if (alpha && !(*alpha > 0.0))
        throw precondition_failed("alpha must be positive");
    if (beta && !(*beta > 0.0))
        throw precondition_failed("beta must be positive");
    if (sample_probability && !(*sample_probability >= 0.0))
        throw precondition_failed("sample probability cannot be negative");
    if (family_target && *family_target < 0)
        throw precondition_failed("family target cannot be negative");
    if (max_family_size < 0)
        throw precondition_failed("family size cap cannot be negative");
}

double absorber_params::alpha_for(int k) const {
    return alpha ? *alpha : gamma / (8.0 * k * k);
}

double absorber_params::beta_for(int k) const {
    return beta ? *beta : gamma * gamma / (64.0 * k * k);
}

int absorber_params::target_family_size(int r, int k) const {
    if (k < 1 || r < 0)
        throw precondition_failed("need k >= 1 and r >= 0");
    long long t;
    if (family_target) {
        t = *family_target;
    } else {
        double expected;
        if (sample_probability) {
            double binom = 1.0;
            for (int i = 0; i < k; ++i)
                binom = binom * (r - i) / (i + 1);
            expected = *sample_probability * std::pow(binom, k);
        } else {
            expected = gamma * r / (16.0 * k * k);
        }
        t = std::llround(expected);
    }
    t = std::clamp(t, 0LL, static_cast<long long>(max_family_size));
    return static_cast<int>(t);
}

bool absorbing_family::consumed(int i) const {
    return absorbed[static_cast<std::size_t>(i)].has_value();
}

int absorbing_family::unconsumed_count() const {
    int c = 0;
    for (const auto& a : absorbed)
        if (!a)
            ++c;
    return c;
}

long long absorbing_family::total_vertices() const {
    long long t = 0;
    for (const auto& m : members)
        t += static_cast<long long>(m.size());
    return t;
}

certificate_report verify_family(const graph& g, const partition& p,
                                 const absorbing_family& family) {
    certificate_report rep;
    auto fail = [&](std::string reason) {
        rep.ok = false;
        rep.reason = std::move(reason);
        return rep;
    };
    const int k = static_cast<int>(p.classes().size());
    if (family.k != k)
        return fail("family built for a different class count");
    if (family.members.size() != family.member_its.size() ||
        family.members.size() != family.absorbed.size())
        return fail("family bookkeeping vectors disagree in length");

    std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()), 0);
    for (std::size_t i = 0; i < family.members.size(); ++i) {
        const auto& m = family.members[i];
        if (static_cast<int>(m.size()) != k * k)
            return fail("member " + std::to_string(i) + " is not a k*k-set");
        for (int cnt : class_counts(m, p))
            if (cnt != k)
                return fail("member " + std::to_string(i) + " is not balanced");
        for (int v : m.members()) {
            if (seen[static_cast<std::size_t>(v)])
                return fail("members overlap at vertex " + std::to_string(v));
            seen[static_cast<std::size_t>(v)] = 1;
        }
        const auto& its = family.member_its[i];
        if (static_cast<int>(its.size()) != k)
            return fail("member " + std::to_string(i) + " lacks its k transversals");
        auto sub = verify_disjoint_its(g, p, its);
        if (!sub.ok)
            return fail("member " + std::to_string(i) + ": " + sub.reason);
        std::vector<int> covered;
        for (const auto& t : its)
            covered.insert(covered.end(), t.vertices.begin(), t.vertices.end());
        std::sort(covered.begin(), covered.end());
        if (covered != m.members())
            return fail("member " + std::to_string(i) +
                        "'s transversals do not cover exactly the member");
    }
    for (std::size_t i = 0; i < family.absorbed.size(); ++i)
        if (family.absorbed[i] &&
            (*family.absorbed[i] < 0 ||
             *family.absorbed[i] >= static_cast<int>(family.chunks.size())))
            return fail("ledger entry for member " + std::to_string(i) +
                        " points outside the chunk list");
    return rep;
}

std::vector<vertex_set> find_absorbers_for(const graph& g, const partition& p,
                                           const std::vector<int>& s, int limit,
                                           std::uint64_t node_budget) {
    const int k = static_cast<int>(p.classes().size());
    if (k < 3)
        throw precondition_failed("absorbers need at least three classes");
    if (limit < 1)
        throw precondition_failed("limit must be positive");
    if (static_cast<int>(s.size()) != k)
        throw precondition_failed("the target set must hold one vertex per class");
    std::vector<int> s_by_class(static_cast<std::size_t>(k), -1);
    for (int v : s) {
        g.check_vertex(v);
        int c = p.class_of(v);
        if (s_by_class[static_cast<std::size_t>(c)] != -1)
            throw precondition_failed("the target set must hold one vertex per class");
        s_by_class[static_cast<std::size_t>(c)] = v;
    }
    std::vector<char> in_s(static_cast<std::size_t>(g.vertex_count()), 0);
    for (int v : s)
        in_s[static_cast<std::size_t>(v)] = 1;

    std::vector<std::vector<int>> t_classes(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
        for (int v : p.class_members(i))
            if (!in_s[static_cast<std::size_t>(v)])
                t_classes[static_cast<std::size_t>(i)].push_back(v);

    std::vector<vertex_set> out;
    std::set<std::vector<int>> seen;
    // scan a bounded number of transversal candidates for T; each one is
    // extended class by class with a pinned search for U_i
    constexpr std::uint64_t candidate_cap = 200'000;
    std::uint64_t examined = 0;
    enumerate_independent_transversals(g, t_classes, [&](const std::vector<int>& t) {
        if (++examined > candidate_cap)
            return false;
        std::vector<char> used = in_s;
        for (int v : t)
            used[static_cast<std::size_t>(v)] = 1;
        std::vector<int> a(t);
        bool ok = true;
        for (int i = 0; i < k && ok; ++i) {
            auto cls = pinned_classes(g, p, i, s_by_class[static_cast<std::size_t>(i)],
                                      t[static_cast<std::size_t>(i)]);
            for (auto& c : cls)
                std::erase_if(c, [&](int v) { return used[static_cast<std::size_t>(v)]; });
            auto res = find_independent_transversal(g, cls, node_budget);
            if (res.status != search_status::found) {
                ok = false;
                break;
            }
            for (int v : res.vertices) {
                used[static_cast<std::size_t>(v)] = 1;
                a.push_back(v);
            }
        }
        if (!ok)
            return true;
        std::sort(a.begin(), a.end());
        if (seen.count(a))
            return true;
        // the construction guarantees both splits, but certify from scratch
        // before handing the set out
        std::vector<int> with_s(a);
        with_s.insert(with_s.end(), s.begin(), s.end());
        if (!splits_into_its(g, p, a, node_budget) ||
            !splits_into_its(g, p, with_s, node_budget))
            return true;
        seen.insert(a);
        out.emplace_back(a);
        return static_cast<int>(out.size()) < limit;
    });
    if (out.empty())
        throw none_found("no absorber found for the given set");
    return out;
}

absorbing_family build_absorbing_set(const graph& g, const partition& p,
                                     const absorber_params& params,
                                     std::mt19937_64& rng) {
    params.validate();
    const int k = static_cast<int>(p.classes().size());
    if (k < 3)
        throw precondition_failed("absorbers need at least three classes");
    if (!(params.beta_for(k) < params.alpha_for(k)))
        throw precondition_failed("beta must stay below alpha");
    const int r = equal_class_size(p);

    absorbing_family fam;
    fam.k = k;
    const int target = params.target_family_size(r, k);
    if (target == 0)
        return fam;
    if (r < k)
        throw precondition_failed("classes too small to hold k vertices each");

    std::vector<char> taken(static_cast<std::size_t>(g.vertex_count()), 0);
    const long long budget = 400LL * target + 400;
    for (long long attempt = 0; attempt < budget && fam.size() < target; ++attempt) {
        std::vector<int> cand;
        cand.reserve(static_cast<std::size_t>(k * k));
        for (int i = 0; i < k; ++i) {
            const auto& cls = p.class_members(i);
            std::sample(cls.begin(), cls.end(), std::back_inserter(cand), k, rng);
        }
        if (std::any_of(cand.begin(), cand.end(),
                        [&](int v) { return taken[static_cast<std::size_t>(v)]; }))
            continue;
        auto lists = split_by_class(p, cand);
        auto res = find_it_partition(g, lists);
        if (res.status != search_status::found)
            continue;
        for (int v : cand)
            taken[static_cast<std::size_t>(v)] = 1;
        fam.members.emplace_back(std::move(cand));
        fam.member_its.push_back(std::move(res.transversals));
        fam.absorbed.emplace_back();
    }
    if (fam.size() < target)
        throw family_budget_exhausted(
            "sampling budget exhausted with " + std::to_string(fam.size()) + " of " +
                std::to_string(target) + " members certified",
            std::move(fam));
    return fam;
}

std::vector<transversal> absorb(const graph& g, const partition& p,
                                absorbing_family& family, const std::vector<int>& s) {
    const int k = static_cast<int>(p.classes().size());
    if (family.k != k)
        throw precondition_failed("family built for a different class count");

    std::vector<char> in_s(static_cast<std::size_t>(g.vertex_count()), 0);
    std::vector<std::vector<int>> by_class(static_cast<std::size_t>(k));
    for (int v : s) {
        g.check_vertex(v);
        if (in_s[static_cast<std::size_t>(v)])
            throw precondition_failed("leftover set repeats a vertex");
        in_s[static_cast<std::size_t>(v)] = 1;
        by_class[static_cast<std::size_t>(p.class_of(v))].push_back(v);
    }
    const std::size_t rounds = by_class.front().size();
    for (const auto& c : by_class)
        if (c.size() != rounds)
            throw precondition_failed("leftover set must be balanced");
    for (const auto& m : family.members)
        for (int v : m.members())
            if (in_s[static_cast<std::size_t>(v)])
                throw precondition_failed("leftover set meets the family");
    for (auto& c : by_class)
        std::sort(c.begin(), c.end());

    std::vector<transversal> out;
    for (std::size_t j = 0; j < rounds; ++j) {
        std::vector<int> chunk;
        chunk.reserve(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i)
            chunk.push_back(by_class[static_cast<std::size_t>(i)][j]);
        bool placed = false;
        for (int mi = 0; mi < family.size() && !placed; ++mi) {
            if (family.consumed(mi))
                continue;
            std::vector<int> uni = family.members[static_cast<std::size_t>(mi)].members();
            uni.insert(uni.end(), chunk.begin(), chunk.end());
            auto lists = split_by_class(p, uni);
            auto res = find_it_partition(g, lists);
            if (res.status != search_status::found)
                continue;
            family.chunks.push_back(chunk);
            family.absorbed[static_cast<std::size_t>(mi)] =
                static_cast<int>(family.chunks.size()) - 1;
            for (auto& t : res.transversals)
                out.push_back(std::move(t));
            placed = true;
        }
        if (!placed)
            throw absorption_failure("no unconsumed member absorbs the chunk", chunk);
    }
    return out;
}

strong_colouring_result strong_colouring(const graph& g, const partition& p,
                                         double epsilon,
                                         const strong_colouring_config& config) {
    config.absorber.validate();
    config.nibble.validate();
    const int k = static_cast<int>(p.classes().size());
    const int r = equal_class_size(p);
    const int n = g.vertex_count();

    strong_colouring_result result;
    auto& trace = result.trace;
    trace.within_regime = static_cast<double>(r) >= (2.0 + epsilon) * g.max_degree();
    if (!trace.within_regime)
        trace.notes.push_back("class size below (2+eps) times the max degree; best effort");

    auto finish = [&](std::vector<transversal> cols) -> strong_colouring_result {
        auto rep = verify_it_partition(g, p, cols);
        if (!rep.ok)
            throw pipeline_failure("certification failed: " + rep.reason, "certify");
        result.colouring = std::move(cols);
        return result;
    };

    auto exhaustive = [&]() -> strong_colouring_result {
        trace.used_exhaustive = true;
        auto res = find_it_partition(g, p, config.exhaustive_budget);
        if (res.status == search_status::found)
            return finish(std::move(res.transversals));
        if (res.status == search_status::exhausted)
            throw unsolvable("no partition into independent transversals exists");
        throw pipeline_failure("exhaustive search hit its node budget", "exhaustive");
    };

    // too few classes for the probabilistic machinery; settle it directly
    if (k < 3)
        return exhaustive();

    const double beta = config.absorber.beta_for(k);
    std::string last_failure = "no attempts were run";
    for (int attempt = 0; attempt < config.attempts; ++attempt) {
        trace.attempts = attempt + 1;
        const std::uint64_t aseed =
            config.seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(attempt);
        try {
            absorber_params ap = config.absorber;
            ap.seed = aseed;
            int f = ap.target_family_size(r, k);
            if (f == 0 && attempt > 0 && !ap.family_target) {
                // the asymptotic formula rounds to nothing at this scale;
                // after a failed plain run, bring in a family sized to the
                // slack the classes actually have
                int slack = (r - (2 * g.max_degree() + 1)) / k;
                int want = std::max(1, static_cast<int>(std::llround(r / (4.0 * k))));
                f = std::min({want, slack, r / (k + 2), ap.max_family_size});
                f = std::max(f, 0);
                if (f > 0)
                    trace.notes.push_back("family raised to " + std::to_string(f) +
                                          " members for retry");
            } else if (f > 0) {
                f = std::min(f, std::max(0, r / (k + 2)));
            }

            absorbing_family fam;
            fam.k = k;
            if (f > 0) {
                ap.family_target = f;
                std::mt19937_64 frng(aseed);
                fam = build_absorbing_set(g, p, ap, frng);
            }
            trace.family_size = fam.size();

            std::vector<char> in_family(static_cast<std::size_t>(n), 0);
            for (const auto& m : fam.members)
                for (int v : m.members())
                    in_family[static_cast<std::size_t>(v)] = 1;
            std::vector<int> keep;
            keep.reserve(static_cast<std::size_t>(n));
            for (int v = 0; v < n; ++v)
                if (!in_family[static_cast<std::size_t>(v)])
                    keep.push_back(v);
            graph rest = g.induced(keep);
            std::vector<int> local(static_cast<std::size_t>(n), -1);
            for (std::size_t i = 0; i < keep.size(); ++i)
                local[static_cast<std::size_t>(keep[i])] = static_cast<int>(i);
            std::vector<std::vector<int>> rest_classes(static_cast<std::size_t>(k));
            for (int i = 0; i < k; ++i)
                for (int v : p.class_members(i))
                    if (!in_family[static_cast<std::size_t>(v)])
                        rest_classes[static_cast<std::size_t>(i)].push_back(
                            local[static_cast<std::size_t>(v)]);
            partition rest_partition(static_cast<int>(keep.size()), rest_classes);

            const int rest_r = r - k * fam.size();
            double delta = beta;
            if (fam.size() > 0)
                delta = std::max(beta, static_cast<double>(fam.size()) / rest_r);

            nibble_params np = config.nibble;
            np.seed = aseed;
            auto part = partial_strong_colouring(rest, rest_partition, delta, np,
                                                 config.fallback);
            trace.partial_count = static_cast<int>(part.transversals.size());
            trace.partial_used_fallback = part.used_fallback;

            std::vector<char> covered(static_cast<std::size_t>(n), 0);
            std::vector<transversal> cols;
            for (const auto& t : part.transversals) {
                transversal mapped;
                for (int lv : t.vertices) {
                    int v = keep[static_cast<std::size_t>(lv)];
                    mapped.vertices.push_back(v);
                    covered[static_cast<std::size_t>(v)] = 1;
                }
                cols.push_back(std::move(mapped));
            }
            std::vector<int> leftover;
            for (int v : keep)
                if (!covered[static_cast<std::size_t>(v)])
                    leftover.push_back(v);
            trace.leftover_size = static_cast<int>(leftover.size());
            {
                auto counts = split_by_class(p, leftover);
                for (const auto& c : counts)
                    if (c.size() != counts.front().size())
                        throw error("internal: leftover is not balanced");
            }

            auto its = absorb(g, p, fam, leftover);
            trace.absorbed_chunks = static_cast<int>(leftover.size()) / std::max(k, 1);
            for (auto& t : its)
                cols.push_back(std::move(t));
            for (int mi = 0; mi < fam.size(); ++mi)
                if (!fam.consumed(mi))
                    for (const auto& t : fam.member_its[static_cast<std::size_t>(mi)])
                        cols.push_back(t);
            return finish(std::move(cols));
        } catch (const unsolvable&) {
            throw;
        } catch (const error& e) {
            last_failure = e.what();
            trace.notes.push_back("attempt " + std::to_string(attempt + 1) +
                                  " failed: " + e.what());
        }
    }

    if (config.fallback)
        return exhaustive();
    throw pipeline_failure("all attempts failed; last: " + last_failure, "attempts");
}

} // namespace strongcol
