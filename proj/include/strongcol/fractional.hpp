#pragma once

#include "strongcol/graph.hpp"
#include "strongcol/partition.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace strongcol {

using rational = boost::multiprecision::cpp_rational;

// Canonical "p/q" form in lowest terms, e.g. "1/2", "1/1", "0/1".
std::string rational_to_string(const rational& q);
rational rational_from_string(const std::string& s);

// All independent transversals of (G, P) in lexicographic order (class 0
// vertex first, ids ascending). Throws cap_exceeded beyond `cap`.
std::vector<transversal> enumerate_its(const graph& g, const partition& p,
                                       std::uint64_t cap = 1'000'000);

// Weights over a transversal list. Entries align by index; the support is
// the set of transversals with nonzero weight.
struct fractional_weighting {
    std::vector<transversal> transversals;
    std::vector<rational> weights;
};

enum class fractional_status { feasible, infeasible };

struct fractional_result {
    fractional_status status = fractional_status::infeasible;
    fractional_weighting weighting; // meaningful iff feasible
    // Infeasibility certificates: either some vertex lies in no independent
    // transversal at all, or the phase-one optimum stayed positive.
    std::optional<int> uncovered_vertex;
    bool solver_certified = false;
    std::uint64_t transversal_count = 0;
};

// Decides whether weights w : T -> [0,1] exist with sum_{T contains v} w(T) = 1
// for every vertex v, and produces them when they do. Exact rational
// arithmetic throughout; `cap` bounds the enumeration feeding the solver.
fractional_result solve_fractional_weighting(const graph& g, const partition& p,
                                             std::uint64_t cap = 20'000);

struct fractional_result_float {
    fractional_status status = fractional_status::infeasible;
    std::vector<transversal> transversals;
    std::vector<double> weights;
    std::optional<int> uncovered_vertex;
    bool solver_certified = false;
    std::uint64_t transversal_count = 0;
};

// Same solve in double arithmetic with a 1e-9 pivot/zero tolerance. Meant
// for enumerations too large for comfortable exact pivoting.
fractional_result_float solve_fractional_weighting_float(const graph& g,
                                                         const partition& p,
                                                         std::uint64_t cap = 200'000);

// Full recheck of a claimed weighting: supported transversals must be legal,
// independent and pairwise distinct, weights in [0,1], and every vertex sum
// exactly 1.
certificate_report verify_weighting(const graph& g, const partition& p,
                                    const fractional_weighting& w);

// Float-side verification with additive tolerance `tol` on the vertex sums.
certificate_report verify_weighting_float(const graph& g, const partition& p,
                                          const std::vector<transversal>& ts,
                                          const std::vector<double>& weights,
                                          double tol = 1e-9);

// Serialized form: one {"vertices": [...], "weight": "p/q"} object per
// supported transversal, vertex ids 1-based to match the file formats.
std::string weighting_to_json(const fractional_weighting& w);
fractional_weighting weighting_from_json(const std::string& text, int vertex_count,
                                         int class_count);

} // namespace strongcol
