#pragma once

#include "strongcol/graph.hpp"

#include <optional>
#include <string>
#include <vector>

namespace strongcol {

// Transversal: one vertex per class, vertices[i] drawn from class i.
// Independence is a property to check, not an invariant of the type.
struct transversal {
    std::vector<int> vertices;

    bool operator==(const transversal& other) const { return vertices == other.vertices; }
    bool operator<(const transversal& other) const { return vertices < other.vertices; }
};

// Partition of 0..n-1 into k classes of equal size r. Class lists are kept
// sorted; class_of(v) is the inverse map. Immutable once built. Unequal
// class layouts (residual instances, shrunken classes) travel as plain
// std::vector<std::vector<int>> and never through this type.
class partition {
  public:
    partition() = default;
    partition(int n, std::vector<std::vector<int>> classes);

    int vertex_count() const { return n_; }
    int class_count() const { return static_cast<int>(classes_.size()); }
    int class_size() const { return r_; }

    const std::vector<int>& class_members(int i) const;
    const std::vector<std::vector<int>>& classes() const { return classes_; }
    int class_of(int v) const;

    bool operator==(const partition& other) const { return classes_ == other.classes_; }

  private:
    int n_ = 0;
    int r_ = 0;
    std::vector<std::vector<int>> classes_;
    std::vector<int> class_of_;
};

// Sorted vertex subset. Construction sorts and rejects duplicates.
struct vertex_set {
    vertex_set() = default;
    explicit vertex_set(std::vector<int> vertices);

    const std::vector<int>& members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    bool contains(int v) const;

  private:
    std::vector<int> members_;
};

// Per-class occupancy of S under P. counts[i] = |S ∩ V_i|.
std::vector<int> class_counts(const vertex_set& s, const partition& p);

// Legal: at most one member per class.
bool is_legal(const vertex_set& s, const partition& p);

// Balanced: the same number of members in every class.
bool is_balanced(const vertex_set& s, const partition& p);

// Outcome of a certificate check. Failing checks say why.
struct certificate_report {
    bool ok = true;
    std::string reason;

    explicit operator bool() const { return ok; }
};

// Full certificate for a strong colouring: `colouring` must be a list of
// independent transversals of P whose union is exactly V(G), pairwise
// disjoint. Every condition is rechecked from scratch against G.
certificate_report verify_it_partition(const graph& g, const partition& p,
                                       const std::vector<transversal>& colouring);

// Same check for a set of transversals that need not cover all of V(G)
// (partial colourings, matchings in transversal form). Disjointness and
// per-transversal independence/legality are still required.
certificate_report verify_disjoint_its(const graph& g, const partition& p,
                                       const std::vector<transversal>& ts);

} // namespace strongcol
