#pragma once

#include "strongcol/graph.hpp"
#include "strongcol/it_engine.hpp"
#include "strongcol/nibble.hpp"
#include "strongcol/partition.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace strongcol {

// Knobs for the absorbing-family construction. An absorber for a balanced
// k-set S is a balanced k*k-set A, disjoint from S, such that both G[A] and
// G[A + S] split into independent transversals; a family of disjoint
// certified absorbers lets the pipeline finish off the leftover of a partial
// colouring.
struct absorber_params {
    double gamma = 0.5;
    double eta = 0.25; // bookkeeping constant, recorded in traces only

    // Derived defaults: alpha = gamma/(8k^2) bounds the family's share of
    // the graph, beta = gamma^2/(64k^2) bounds the leftover it can take.
    std::optional<double> alpha;
    std::optional<double> beta;

    // Per-set inclusion probability over all C(r,k)^k balanced k*k-sets.
    // The builder samples the expected count directly instead of tossing a
    // coin per set, so only the product p * C(r,k)^k matters.
    std::optional<double> sample_probability;

    // Desk-scale override: ask for exactly this many members. The formula
    // above rounds to zero for realistic r, which would leave the absorber
    // idle in every run.
    std::optional<int> family_target;

    int max_family_size = 1 << 20;
    std::uint64_t seed = 0;

    void validate() const;
    double alpha_for(int k) const;
    double beta_for(int k) const;
    int target_family_size(int r, int k) const;
    static int absorber_size(int k) { return k * k; }
};

// Pairwise-disjoint certified absorbers plus the consumption ledger. The
// internal transversals recorded at admission stay valid because the graph
// never changes; `absorbed[i]` points into `chunks` once member i has been
// spent on a leftover k-set.
struct absorbing_family {
    int k = 0;
    std::vector<vertex_set> members;
    std::vector<std::vector<transversal>> member_its;
    std::vector<std::optional<int>> absorbed;
    std::vector<std::vector<int>> chunks;

    int size() const { return static_cast<int>(members.size()); }
    bool consumed(int i) const;
    int unconsumed_count() const;
    long long total_vertices() const;
};

// Recheck every family invariant from scratch: balance, pairwise
// disjointness, and that each member's recorded transversals really
// partition it into independent transversals.
certificate_report verify_family(const graph& g, const partition& p,
                                 const absorbing_family& family);

// Thrown by build_absorbing_set when the sampling budget runs out before
// the target count; carries whatever was certified so far.
struct family_budget_exhausted : error {
    family_budget_exhausted(const std::string& what, absorbing_family partial)
        : error(what), partial(std::move(partial)) {}
    absorbing_family partial;
};

// Up to `limit` distinct absorbers for S, each certified before inclusion.
// The search picks an independent transversal T = {t_1,...,t_k} disjoint
// from S, then for every class i an independent transversal U_i of the
// other classes avoiding the neighbourhoods of both s_i and t_i; the union
// T + U_1 + ... + U_k then splits as {U_i + t_i} on its own and as
// {U_i + s_i} plus T once S joins. Throws none_found when no candidate
// survives.
std::vector<vertex_set> find_absorbers_for(const graph& g, const partition& p,
                                           const std::vector<int>& s, int limit,
                                           std::uint64_t node_budget = default_node_budget);

// Samples balanced k*k-sets uniformly, drops any candidate that meets an
// already-kept member, certifies each survivor by actually partitioning it
// into independent transversals, and stops at the target count.
absorbing_family build_absorbing_set(const graph& g, const partition& p,
                                     const absorber_params& params,
                                     std::mt19937_64& rng);

// Splits S into balanced k-sets (j-th smallest of every class together) and
// assigns each to the first unconsumed member whose union with it still
// splits into independent transversals. Returns those transversals: k+1 per
// consumed member, covering exactly the consumed members and S. Internal
// transversals of unconsumed members are not included. Throws
// absorption_failure when a chunk fits no member.
std::vector<transversal> absorb(const graph& g, const partition& p,
                                absorbing_family& family, const std::vector<int>& s);

struct pipeline_trace {
    int family_size = 0;
    int partial_count = 0;
    int leftover_size = 0;
    int absorbed_chunks = 0;
    int attempts = 0;
    bool partial_used_fallback = false;
    bool used_exhaustive = false;
    bool within_regime = true; // r >= (2+eps) * max degree
    std::vector<std::string> notes;
};

struct strong_colouring_result {
    std::vector<transversal> colouring; // exactly r transversals
    pipeline_trace trace;
};

struct strong_colouring_config {
    absorber_params absorber{};
    nibble_params nibble{};
    int attempts = 5;
    bool fallback = true; // greedy top-up in the partial stage and the
                          // exhaustive last resort
    std::uint64_t exhaustive_budget = 200'000'000;
    std::uint64_t seed = 0;
};

// Full pipeline for a balanced partition: build an absorbing family, run
// the partial colouring on the graph minus the family, absorb the leftover,
// and certify the union. Retries with fresh seeds, then (with fallback on)
// runs the exhaustive round-assignment search, which either finds a
// colouring or proves none exists (unsolvable). Partitions with fewer than
// three classes go straight to the exhaustive search.
strong_colouring_result strong_colouring(const graph& g, const partition& p,
                                         double epsilon,
                                         const strong_colouring_config& config = {});

} // namespace strongcol
