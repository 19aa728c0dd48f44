#include "strongcol/oracle.hpp"

#include <doctest.h>

#include <set>

#include "strongcol/errors.hpp"
#include "strongcol/generators.hpp"
#include "strongcol/it_engine.hpp"
#include "test_helpers.hpp"

using namespace strongcol;

TEST_CASE("padding adds exactly the missing isolated vertices") {
    testutil::rng_t rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 1 + static_cast<int>(rng() % 10);
        int r = 1 + static_cast<int>(rng() % 6);
        graph g = testutil::random_graph(n, 0.4, rng);
        auto inst = pad_to_multiple(g, r);
        CHECK(inst.padded.vertex_count() % r == 0);
        CHECK(inst.pad_count >= 0);
        CHECK(inst.pad_count < r);
        CHECK(inst.padded.vertex_count() == n + inst.pad_count);
        // original adjacency untouched, padding isolated
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                CHECK(inst.padded.adjacent(u, v) == g.adjacent(u, v));
        for (int v = n; v < inst.padded.vertex_count(); ++v)
            CHECK(inst.padded.degree(v) == 0);
    }
}

TEST_CASE("single-class and single-colour fast paths") {
    CHECK(is_strongly_r_colourable(testutil::complete(3), 3).colourable);
    CHECK(is_strongly_r_colourable(testutil::complete(5), 7).colourable);
    CHECK(is_strongly_r_colourable(graph(4), 1).colourable);
    auto res = is_strongly_r_colourable(testutil::cycle(4), 1);
    CHECK(!res.colourable);
    REQUIRE(res.witness.has_value());
    CHECK(res.witness->size() == 4);
}

TEST_CASE("C_4 is not strongly 2-colourable and the witness layout is bad") {
    graph c4 = testutil::cycle(4);
    auto res = is_strongly_r_colourable(c4, 2);
    CHECK(!res.colourable);
    REQUIRE(res.witness.has_value());
    // the witness really has no IT partition
    auto check = find_it_partition(c4, *res.witness);
    CHECK(check.status == search_status::exhausted);
    // and it is the diagonal split
    std::vector<std::vector<int>> diag{{0, 2}, {1, 3}};
    CHECK(*res.witness == diag);
}

TEST_CASE("strong chromatic number anchors") {
    for (int n = 2; n <= 5; ++n)
        CHECK(strong_chromatic_number(testutil::complete(n)) == n);
    CHECK(strong_chromatic_number(graph(1)) == 1);
    CHECK(strong_chromatic_number(graph(6)) == 1);
}

TEST_CASE("strong chromatic number of C_6 stays at its frozen value") {
    // computed by this oracle when the test was first run; checked against
    // the r=2 counterexample layout {0,2},{1,4},{3,5} by hand
    CHECK(strong_chromatic_number(testutil::cycle(6)) == 3);
}

TEST_CASE("strong chromatic number of C_4 needs the padding rule") {
    // r=3 pads C_4 to six vertices, and the layout {0,2,a},{1,3,b} then has
    // no IT partition: 0 and 2 both refuse 1 and 3, so both fight over b.
    // Only r=4 (one class) works.
    CHECK(!is_strongly_r_colourable(testutil::cycle(4), 3).colourable);
    CHECK(strong_chromatic_number(testutil::cycle(4)) == 4);
}

TEST_CASE("layout sweep respects its node budget") {
    CHECK_THROWS_AS(is_strongly_r_colourable(testutil::cycle(12), 3, 5),
                    budget_exceeded);
}

TEST_CASE("exhaustive triple sweep on one and two triangles") {
    auto one = check_all_partitions_cpt(1);
    CHECK(one.all_pass);
    CHECK(one.partitions_checked == 1);

    auto two = check_all_partitions_cpt(2);
    CHECK(two.all_pass);
    // 6!/(3!^2 2!) ways to split six vertices into two triples
    CHECK(two.partitions_checked == 10);
    CHECK(!two.failing.has_value());
}

TEST_CASE("exhaustive triple sweep on four triangles") {
    auto res = check_all_partitions_cpt(4);
    CHECK(res.all_pass);
    CHECK(res.partitions_checked == 15400);
}

TEST_CASE("sampled triple sweep is deterministic in the seed") {
    cpt_options opts;
    opts.samples = 60;
    opts.seed = 7;
    auto a = check_all_partitions_cpt(5, opts);
    auto b = check_all_partitions_cpt(5, opts);
    CHECK(a.all_pass);
    CHECK(a.partitions_checked == 60);
    CHECK(a.nodes == b.nodes);
}

TEST_CASE("triple sweep rejects silly arguments") {
    CHECK_THROWS_AS(check_all_partitions_cpt(0), precondition_failed);
    CHECK_THROWS_AS(check_all_partitions_cpt(8), precondition_failed);
    cpt_options opts;
    opts.samples = 5;
    CHECK_NOTHROW(check_all_partitions_cpt(8, opts));
}

TEST_CASE("chromatic number on known graphs") {
    CHECK(chromatic_number(graph(0)) == 0);
    CHECK(chromatic_number(graph(5)) == 1);
    for (int n = 2; n <= 6; ++n)
        CHECK(chromatic_number(testutil::complete(n)) == n);
    CHECK(chromatic_number(testutil::cycle(5)) == 3);
    CHECK(chromatic_number(testutil::cycle(6)) == 2);
    CHECK(chromatic_number(testutil::matching(8)) == 2);
}

TEST_CASE("strong chromatic number dominates the chromatic number") {
    testutil::rng_t rng(99);
    for (int trial = 0; trial < 25; ++trial) {
        int n = 2 + static_cast<int>(rng() % 6);
        graph g = testutil::random_graph(n, 0.45, rng);
        int chi = chromatic_number(g);
        int schi = strong_chromatic_number(g);
        CHECK(schi >= chi);
        CHECK(schi <= n);
    }
}

TEST_CASE("colourability is decided identically across repeat runs") {
    testutil::rng_t rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 4 + static_cast<int>(rng() % 5);
        graph g = testutil::random_graph(n, 0.5, rng);
        for (int r = 2; r <= 3; ++r) {
            auto a = is_strongly_r_colourable(g, r);
            auto b = is_strongly_r_colourable(g, r);
            CHECK(a.colourable == b.colourable);
            CHECK(a.partitions_checked == b.partitions_checked);
            CHECK(a.nodes == b.nodes);
        }
    }
}

TEST_CASE("generator families come back shape-checked") {
    std::mt19937_64 rng(13);

    instance_spec cyc;
    cyc.family = "cycle";
    cyc.n = 6;
    auto c = generate(cyc, rng);
    CHECK(c.g == testutil::cycle(6));
    CHECK(c.classes.class_count() == 2);
    CHECK(c.classes.class_size() == 3);

    instance_spec cpt;
    cpt.family = "cpt";
    cpt.m = 4;
    auto t = generate(cpt, rng);
    CHECK(t.g.vertex_count() == 12);
    CHECK(t.g.edge_count() == 12);
    CHECK(t.classes.class_count() == 4);

    instance_spec bd;
    bd.family = "bounded-degree";
    bd.n = 24;
    bd.k = 3;
    bd.max_degree = 4;
    bd.density = 0.6;
    auto b = generate(bd, rng);
    CHECK(b.g.max_degree() <= 4);
    CHECK(b.classes.class_count() == 3);
    CHECK(b.classes.class_size() == 8);

    instance_spec kp;
    kp.family = "kpartite";
    kp.k = 3;
    kp.class_size = 8;
    kp.min_degree = 14;
    auto p = generate(kp, rng);
    CHECK(p.g.vertex_count() == 24);
    for (int v = 0; v < 24; ++v)
        CHECK(p.g.degree(v) >= 14);
    for (auto [u, v] : p.g.edges())
        CHECK(p.classes.class_of(u) != p.classes.class_of(v));
}

TEST_CASE("generator rejects contradictory parameters") {
    std::mt19937_64 rng(1);
    instance_spec s;
    s.family = "no-such-family";
    CHECK_THROWS_AS(generate(s, rng), infeasible_spec);

    s.family = "cycle";
    s.n = 7;
    CHECK_THROWS_AS(generate(s, rng), infeasible_spec);

    s.family = "bounded-degree";
    s.n = 10;
    s.k = 3;
    CHECK_THROWS_AS(generate(s, rng), infeasible_spec);

    s.family = "kpartite";
    s.k = 3;
    s.class_size = 4;
    s.min_degree = 9;
    CHECK_THROWS_AS(generate(s, rng), infeasible_spec);

    s.min_degree = 8;
    CHECK_NOTHROW(generate(s, rng));
}

TEST_CASE("bounded-degree generator honours tight caps") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 6 + static_cast<int>(rng() % 20);
        int cap = static_cast<int>(rng() % 4);
        graph g = random_bounded_degree(n, cap, 1.0, rng);
        CHECK(g.max_degree() <= cap);
    }
    // degree cap 0 forces the empty graph even at full density
    graph g = random_bounded_degree(10, 0, 1.0, rng);
    CHECK(g.edge_count() == 0);
}
