#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "strongcol/errors.hpp"
#include "strongcol/graph.hpp"
#include "strongcol/partition.hpp"

namespace strongcol {

inline constexpr int default_nibble_rounds = 200;
inline constexpr double default_bite_fraction = 0.1;

// Exponent and budget knobs for the cover sampler and everything built on
// top of it. The exponents form one mutually constrained system; validate()
// spells it out. The defaults sit exactly on two of the boundaries, so
// those two inequalities are checked non-strictly.
struct nibble_params {
    double eta1 = 0.1;
    double eta2 = 0.1;
    double eta3 = 0.175;
    double eta4 = 0.15;
    double eta5 = 0.1;
    double eta6 = 0.19;
    double delta = 0.05;

    // per-class subset size; unset means round(r^eta1) with a floor of 1
    std::optional<int> m;
    // number of sampled sets; unset means round(r^(1+eta2))
    std::optional<long long> cover_count;
    long long cover_count_cap = 0; // 0 = uncapped
    int max_resamples = 20;
    std::uint64_t seed = 0;

    void validate() const;
    int subset_size(int r) const;
    long long set_count(int r) const;
};

// R(1)..R(count): each set is the union of one uniformly chosen m-subset
// per class. membership[v] lists the sets containing v, ascending.
struct cover {
    std::vector<vertex_set> sets;
    std::vector<std::vector<int>> membership;
};

// Exact evaluation of the five cover properties, with the statistics that
// back each verdict.
struct cover_report {
    bool balanced = false;            // (1) every set meets every class m times
    bool membership_in_window = false;// (2) |J_v| within r^(eta1+eta2) +- r^eta3
    bool pairs_ok = false;            // (3) legal 2-sets in at most two sets
    bool triples_ok = false;          // (4) legal 3-sets in at most one set
    bool induced_degree_ok = false;   // (5) m >= 2*max degree inside each set

    int subset_size = 0;
    double window_centre = 0.0;
    double window_radius = 0.0;
    int min_membership = 0;
    int max_membership = 0;
    int outside_window = 0;
    long long max_pair_multiplicity = 0;
    long long max_triple_multiplicity = 0;
    int max_induced_degree = 0;

    bool all() const {
        return balanced && membership_in_window && pairs_ok && triples_ok &&
               induced_degree_ok;
    }
    int passes() const {
        return int(balanced) + int(membership_in_window) + int(pairs_ok) +
               int(triples_ok) + int(induced_degree_ok);
    }
};

cover_report verify_cover(const graph& g, const partition& p, const cover& c,
                          const nibble_params& params);

// Samples whole covers until one passes all five properties or
// max_resamples attempts are spent; in the latter case the attempt with the
// most passing properties comes back with its failing report, and the
// caller decides what that is worth.
std::pair<cover, cover_report> sample_cover(const graph& g, const partition& p,
                                            const nibble_params& params);

// k-uniform hypergraph on the vertices of G. Edges are stored sorted; the
// constructor rejects wrong arity, out-of-range or repeated vertices, and
// duplicate edges.
class hypergraph {
  public:
    hypergraph(int n, int k, std::vector<std::vector<int>> edges);

    int vertex_count() const { return n_; }
    int arity() const { return k_; }
    const std::vector<std::vector<int>>& edges() const { return edges_; }
    std::size_t edge_count() const { return edges_.size(); }

    int degree(int v) const;
    int codegree(int u, int v) const;
    long long max_codegree() const;
    double average_degree() const;

  private:
    int n_ = 0;
    int k_ = 0;
    std::vector<std::vector<int>> edges_;
    std::vector<std::vector<int>> incidence_; // edge indices per vertex
};

// One restricted instance has no fractional weighting (its induced degree
// grew past m/2, or the transversal enumeration hit its cap).
struct restricted_infeasible : error {
    explicit restricted_infeasible(long long j)
        : error("no fractional weighting on sampled set " + std::to_string(j)),
          set_index(j) {}
    long long set_index;
};

// Weights for the independent transversals of one restricted instance.
// `restricted` holds the per-class member lists (global ids, partition
// class order); results use global ids with vertices[i] in class i.
// nullopt means no weighting exists.
using weighting_provider =
    std::function<std::optional<std::vector<std::pair<transversal, double>>>(
        const graph&, const std::vector<std::vector<int>>&)>;

// Solves each restricted instance exactly and converts the weights to
// probabilities.
weighting_provider exact_weighting_provider();

// For each sampled set, weights the independent transversals inside it and
// keeps each one as an edge with probability equal to its weight. A
// transversal lying in two sets (possible only when property (4) failed)
// is decided by the first set that reaches it.
hypergraph build_transversal_hypergraph(const graph& g, const partition& p,
                                        const cover& c,
                                        const weighting_provider& provider,
                                        std::mt19937_64& rng);

struct matching_result {
    std::vector<std::vector<int>> edges; // pairwise disjoint, each sorted
    int covered = 0;
    int rounds_run = 0;
    bool reached_target = false; // covered >= (1-delta) * n
};

// Repeated bites: every surviving edge is sampled with probability
// bite_fraction / (current average degree), sampled edges are kept
// first-come-first-served when disjoint, covered vertices drop out. A
// greedy sweep over all remaining edges always runs at the end, and the
// returned edge set is re-checked for disjointness.
matching_result semi_random_matching(const hypergraph& h, double delta,
                                     int rounds, double bite_fraction,
                                     std::mt19937_64& rng);

// Fewer transversals than the target came out, even after any fallback.
struct shortfall : error {
    shortfall(int got, int want)
        : error("partial colouring stopped at " + std::to_string(got) +
                " of " + std::to_string(want) + " transversals"),
          got(got), want(want) {}
    int got;
    int want;
};

struct partial_colouring_result {
    std::vector<transversal> transversals;
    int target = 0;        // ceil((1-delta) * r)
    int from_matching = 0; // before any greedy top-up
    bool cover_ok = false; // the sampled cover passed all five properties
    bool used_fallback = false;
};

// Cover -> restricted weightings -> random hypergraph -> semi-random
// matching; when that chain stops short of ceil((1-delta)*r) transversals
// (or the cover never passed verification), a greedy independent
// transversal search tops up on the residual classes if fallback is
// enabled. The output is certificate-checked; a shortfall below target
// throws.
partial_colouring_result partial_strong_colouring(const graph& g,
                                                  const partition& p,
                                                  double delta,
                                                  const nibble_params& params,
                                                  bool fallback = true);

} // namespace strongcol
