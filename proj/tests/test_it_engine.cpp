#include "doctest.h"

#include "strongcol/errors.hpp"
#include "strongcol/it_engine.hpp"

#include "test_helpers.hpp"

#include <set>

using namespace strongcol;
using namespace testutil;

namespace {

// Reference evaluation of the subset condition, written independently of the
// engine: explicit unions, no size shortcut.
bool naive_subset_condition(const graph& g, const std::vector<std::vector<int>>& classes) {
    int k = static_cast<int>(classes.size());
    for (int mask = 1; mask < (1 << k); ++mask) {
        std::set<int> uni;
        int picked = 0;
        for (int i = 0; i < k; ++i)
            if (mask & (1 << i)) {
                uni.insert(classes[i].begin(), classes[i].end());
                ++picked;
            }
        if (static_cast<long long>(uni.size()) <=
            (2LL * picked - 2) * g.max_degree())
            return false;
    }
    return true;
}

// Reference partition-into-transversals decision: try every round assignment
// directly. Only usable for tiny instances.
bool naive_it_partition_exists(const graph& g, const std::vector<std::vector<int>>& classes) {
    int r = static_cast<int>(classes[0].size());
    std::vector<int> all;
    for (const auto& c : classes)
        all.insert(all.end(), c.begin(), c.end());
    std::vector<int> round(g.vertex_count(), -1);
    auto rec = [&](auto&& self, std::size_t idx) -> bool {
        if (idx == all.size())
            return true;
        int v = all[idx];
        for (int t = 0; t < r; ++t) {
            bool ok = true;
            for (std::size_t j = 0; j < idx && ok; ++j) {
                int w = all[j];
                if (round[w] != t)
                    continue;
                if (g.adjacent(v, w))
                    ok = false;
            }
            // same class, same round is impossible
            for (const auto& c : classes) {
                if (std::find(c.begin(), c.end(), v) == c.end())
                    continue;
                for (int w : c)
                    if (w != v && round[w] == t)
                        ok = false;
                break;
            }
            if (!ok)
                continue;
            round[v] = t;
            if (self(self, idx + 1))
                return true;
            round[v] = -1;
        }
        return false;
    };
    return rec(rec, 0);
}

} // namespace

TEST_CASE("subset condition on the trivial instances") {
    graph empty(3);
    auto rep = check_haxell_condition(empty, {{0}, {1}, {2}});
    CHECK(rep.satisfied);
    CHECK(!rep.witness.has_value());
}

TEST_CASE("subset condition witness for the 4-cycle") {
    graph g = cycle(4);
    auto rep = check_haxell_condition(g, {{0, 2}, {1, 3}});
    REQUIRE(!rep.satisfied);
    REQUIRE(rep.witness.has_value());
    CHECK(rep.witness->classes == std::vector<int>{0, 1});
    CHECK(rep.witness->union_size == 4);
    CHECK(rep.witness->bound == 4);
}

TEST_CASE("subset condition witness for a single edge") {
    graph g(2, {{0, 1}});
    auto rep = check_haxell_condition(g, {{0}, {1}});
    REQUIRE(!rep.satisfied);
    CHECK(rep.witness->union_size == 2);
    CHECK(rep.witness->bound == 2);
}

TEST_CASE("subset condition matches a naive reimplementation") {
    rng_t rng(5150);
    for (int trial = 0; trial < 300; ++trial) {
        int n = 2 + static_cast<int>(rng() % 9);
        graph g = random_graph(n, 0.35, rng);
        auto classes = random_class_lists(n, 1 + static_cast<int>(rng() % 4), rng);
        CHECK(check_haxell_condition(g, classes).satisfied ==
              naive_subset_condition(g, classes));
    }
}

TEST_CASE("subset condition rejects too many classes and overlaps") {
    graph g(26);
    std::vector<std::vector<int>> classes;
    for (int i = 0; i < 26; ++i)
        classes.push_back({i});
    CHECK_THROWS_AS(check_haxell_condition(g, classes), precondition_failed);
    graph h(3);
    CHECK_THROWS_AS(check_haxell_condition(h, {{0, 1}, {1, 2}}), precondition_failed);
}

TEST_CASE("transversal search on the 6-cycle") {
    graph g = cycle(6);
    std::vector<std::vector<int>> classes = {{0, 1, 2}, {3, 4, 5}};
    auto res = find_independent_transversal(g, classes);
    REQUIRE(res.status == search_status::found);
    CHECK(res.vertices == std::vector<int>{0, 3}); // lexicographic minimum

    // all seven, in lexicographic order
    std::vector<std::vector<int>> all;
    enumerate_independent_transversals(g, classes, [&](const std::vector<int>& t) {
        all.push_back(t);
        return true;
    });
    std::vector<std::vector<int>> expect = {{0, 3}, {0, 4}, {1, 3}, {1, 4},
                                            {1, 5}, {2, 4}, {2, 5}};
    CHECK(all == expect);
    CHECK(brute_force_its(g, classes) == expect);
}

TEST_CASE("transversal search certifies absence on the 4-cycle") {
    graph g = cycle(4);
    auto res = find_independent_transversal(g, {{0, 2}, {1, 3}});
    CHECK(res.status == search_status::exhausted);
    CHECK(brute_force_its(g, {{0, 2}, {1, 3}}).empty());
}

TEST_CASE("transversal search respects the node budget") {
    graph g = cycle(6);
    auto res = find_independent_transversal(g, {{0, 1, 2}, {3, 4, 5}}, 1);
    CHECK(res.status == search_status::timeout);
    CHECK(res.nodes == 1);
}

TEST_CASE("transversal search honours the excluded set") {
    graph g(4);
    bitset excl(4);
    excl.set(0);
    auto res = find_independent_transversal(g, {{0, 1}, {2, 3}},
                                            default_node_budget, &excl);
    REQUIRE(res.status == search_status::found);
    CHECK(res.vertices == std::vector<int>{1, 2});
}

TEST_CASE("transversal search agrees with brute force on random instances") {
    rng_t rng(90210);
    int found = 0;
    for (int trial = 0; trial < 300; ++trial) {
        int n = 2 + static_cast<int>(rng() % 10);
        graph g = random_graph(n, 0.4, rng);
        auto classes = random_class_lists(n, 1 + static_cast<int>(rng() % 4), rng);
        auto brute = brute_force_its(g, classes);
        auto res = find_independent_transversal(g, classes);
        REQUIRE(res.status != search_status::timeout);
        if (res.status == search_status::found) {
            ++found;
            CHECK(std::find(brute.begin(), brute.end(), res.vertices) != brute.end());
        } else {
            CHECK(brute.empty());
        }
    }
    CHECK(found > 50); // the suite exercises both outcomes
}

TEST_CASE("condition satisfied implies a transversal exists") {
    rng_t rng(1234);
    for (int trial = 0; trial < 150; ++trial) {
        int n = 2 + static_cast<int>(rng() % 11);
        graph g = random_graph(n, 0.3, rng);
        auto classes = random_class_lists(n, 1 + static_cast<int>(rng() % 4), rng);
        auto rep = check_haxell_condition(g, classes);
        if (!rep.satisfied)
            continue;
        auto res = find_independent_transversal(g, classes);
        CHECK(res.status == search_status::found);
    }
}

TEST_CASE("pinned search deletes both pin neighbourhoods") {
    // a..e in one class, pins v, v'; v-a and v'-b are the only edges
    graph g(7, {{5, 0}, {6, 1}});
    std::vector<std::vector<int>> layout = {{0, 1, 2, 3, 4}, {5, 6}};
    auto classes = pinned_classes(g, layout, 1, 5, 6);
    CHECK(classes == std::vector<std::vector<int>>{{2, 3, 4}});
    auto res = find_pinned_it(g, layout, 1, 5, 6);
    REQUIRE(res.status == search_status::found);
    CHECK(res.vertices == std::vector<int>{2});
    CHECK(res.classes == std::vector<int>{0});
}

TEST_CASE("pinned search on the 6-cycle") {
    graph g = cycle(6);
    partition p(6, {{0, 1, 2}, {3, 4, 5}});
    auto res = find_pinned_it(g, p, 1, 3, 4);
    REQUIRE(res.status == search_status::found);
    CHECK(res.vertices == std::vector<int>{0});
    CHECK(count_pinned_its(g, p, 1, 3, 4) == 2);
}

TEST_CASE("pinned search reports absence on the 4-cycle") {
    graph g = cycle(4);
    partition p(4, {{0, 2}, {1, 3}});
    auto res = find_pinned_it(g, p, 0, 0, 2);
    CHECK(res.status == search_status::exhausted);
    CHECK(count_pinned_its(g, p, 0, 0, 2) == 0);
}

TEST_CASE("pinned counts on empty graphs grow with the class size") {
    std::uint64_t prev = 0;
    for (int r = 2; r <= 6; ++r) {
        graph g(3 * r);
        std::vector<std::vector<int>> classes(3);
        for (int i = 0; i < 3 * r; ++i)
            classes[i / r].push_back(i);
        partition p(3 * r, classes);
        auto count = count_pinned_its(g, p, 0, 0, 1);
        CHECK(count == static_cast<std::uint64_t>(r) * r);
        CHECK(count > prev);
        prev = count;
    }
    // the worked case: three classes of five, count 25
    graph g(15);
    partition p(15, {{0, 1, 2, 3, 4}, {5, 6, 7, 8, 9}, {10, 11, 12, 13, 14}});
    CHECK(count_pinned_its(g, p, 0, 0, 1) == 25);
}

TEST_CASE("pinned count refuses oversized enumerations") {
    graph g(15);
    partition p(15, {{0, 1, 2, 3, 4}, {5, 6, 7, 8, 9}, {10, 11, 12, 13, 14}});
    CHECK_THROWS_AS(count_pinned_its(g, p, 0, 0, 1, 10), cap_exceeded);
}

TEST_CASE("pinned search validates its arguments") {
    graph g = cycle(6);
    partition p(6, {{0, 1, 2}, {3, 4, 5}});
    CHECK_THROWS_AS(find_pinned_it(g, p, 0, 3, 4), precondition_failed);
    CHECK_THROWS_AS(find_pinned_it(g, p, 2, 0, 1), precondition_failed);
}

TEST_CASE("large enough classes always admit a pinned transversal") {
    rng_t rng(31337);
    for (int trial = 0; trial < 60; ++trial) {
        int k = 2 + static_cast<int>(rng() % 3);
        int dmax = 1 + static_cast<int>(rng() % 2);
        int r = 2 * dmax + 1 + static_cast<int>(rng() % 2);
        int n = k * r;
        graph g = random_bounded_degree_graph(n, dmax, 0.8, rng);
        partition p = random_balanced_partition(n, k, rng);
        const auto& pin_cls = p.class_members(k - 1);
        for (int a : pin_cls)
            for (int b : pin_cls) {
                auto res = find_pinned_it(g, p, k - 1, a, b);
                REQUIRE(res.status == search_status::found);
                // both completions stay independent
                for (std::size_t i = 0; i < res.vertices.size(); ++i)
                    for (std::size_t j = i + 1; j < res.vertices.size(); ++j)
                        CHECK(!g.adjacent(res.vertices[i], res.vertices[j]));
                for (int v : res.vertices) {
                    CHECK(!g.adjacent(v, a));
                    CHECK(!g.adjacent(v, b));
                }
            }
    }
}

TEST_CASE("round search partitions the 6-cycle but not the 4-cycle") {
    graph c6 = cycle(6);
    auto res = find_it_partition(c6, {{0, 1, 2}, {3, 4, 5}});
    REQUIRE(res.status == search_status::found);
    partition p6(6, {{0, 1, 2}, {3, 4, 5}});
    CHECK(verify_it_partition(c6, p6, res.transversals).ok);

    graph c4 = cycle(4);
    CHECK(find_it_partition(c4, {{0, 2}, {1, 3}}).status == search_status::exhausted);
}

TEST_CASE("round search matches the naive reference on tiny instances") {
    rng_t rng(60601);
    for (int trial = 0; trial < 200; ++trial) {
        int k = 1 + static_cast<int>(rng() % 3);
        int r = 1 + static_cast<int>(rng() % 3);
        int n = k * r;
        graph g = random_graph(n, 0.45, rng);
        partition p = random_balanced_partition(n, k, rng);
        auto res = find_it_partition(g, p);
        REQUIRE(res.status != search_status::timeout);
        bool naive = naive_it_partition_exists(g, p.classes());
        CHECK((res.status == search_status::found) == naive);
        if (res.status == search_status::found)
            CHECK(verify_it_partition(g, p, res.transversals).ok);
    }
}

TEST_CASE("round search rejects broken class systems") {
    graph g(4);
    CHECK_THROWS_AS(find_it_partition(g, {{0, 1}, {2}}), precondition_failed);
    CHECK_THROWS_AS(find_it_partition(g, std::vector<std::vector<int>>{}),
                    precondition_failed);
}
