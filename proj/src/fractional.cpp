#include "strongcol/fractional.hpp"

#include "strongcol/errors.hpp"
#include "strongcol/it_engine.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace strongcol {

std::string rational_to_string(const rational& q) {
    return numerator(q).str() + "/" + denominator(q).str();
}

rational rational_from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        using boost::multiprecision::cpp_int;
        if (slash == std::string::npos)
            return rational(cpp_int(s));
        cpp_int num(s.substr(0, slash));
        cpp_int den(s.substr(slash + 1));
        if (den == 0)
            throw parse_error("rational with zero denominator: " + s);
        return rational(num, den);
    } catch (const std::exception&) {
        throw parse_error("malformed rational: " + s);
    }
}

std::vector<transversal> enumerate_its(const graph& g, const partition& p,
                                       std::uint64_t cap) {
    std::vector<transversal> out;
    bool capped = false;
    enumerate_independent_transversals(g, p.classes(), [&](const std::vector<int>& t) {
        if (out.size() >= cap) {
            capped = true;
            return false;
        }
        out.push_back(transversal{t});
        return true;
    });
    if (capped)
        throw cap_exceeded("transversal enumeration exceeds cap", cap);
    return out;
}

namespace {

template <class Q> struct lp_ops {
    static bool neg(const Q& x) { return x < 0; }
    static bool pos(const Q& x) { return x > 0; }
};

template <> struct lp_ops<double> {
    static bool neg(double x) { return x < -1e-9; }
    static bool pos(double x) { return x > 1e-9; }
};

// Phase-one simplex in revised form: minimise the sum of one artificial per
// row subject to  sum_{T contains v} w(T) + a_v = 1,  w, a >= 0.  The
// original system is feasible exactly when the optimum is zero. Bland's
// rule (smallest entering index, smallest leaving basis variable on ties)
// guarantees termination; artificials never re-enter.
//
// columns[j] lists the rows with a 1 in structural column j.
template <class Q>
struct phase_one_lp {
    int rows;
    const std::vector<std::vector<int>>& columns;

    std::vector<std::vector<Q>> b_inv; // running basis inverse
    std::vector<Q> rhs;                // B^{-1} b
    std::vector<int> basis;            // structural j or rows+i for artificial i

    explicit phase_one_lp(int m, const std::vector<std::vector<int>>& cols)
        : rows(m), columns(cols), b_inv(m, std::vector<Q>(m, Q(0))), rhs(m, Q(1)),
          basis(m) {
        for (int i = 0; i < m; ++i) {
            b_inv[i][i] = Q(1);
            basis[i] = static_cast<int>(columns.size()) + i;
        }
    }

    bool basic_is_artificial(int i) const {
        return basis[i] >= static_cast<int>(columns.size());
    }

    Q objective() const {
        Q total(0);
        for (int i = 0; i < rows; ++i)
            if (basic_is_artificial(i))
                total += rhs[i];
        return total;
    }

    // Runs to optimality. Returns false only if the pivot cap trips, which
    // Bland's rule rules out short of a defect.
    bool solve() {
        const long long pivot_cap = 2'000'000;
        std::vector<Q> y(rows);
        std::vector<Q> u(rows);
        for (long long pivots = 0; pivots < pivot_cap; ++pivots) {
            // y = c_B B^{-1}; artificial basics cost 1, structural 0.
            for (int j = 0; j < rows; ++j) {
                y[j] = Q(0);
                for (int i = 0; i < rows; ++i)
                    if (basic_is_artificial(i))
                        y[j] += b_inv[i][j];
            }
            // First structural column with negative reduced cost 0 - y.A_j.
            int entering = -1;
            for (int j = 0; j < static_cast<int>(columns.size()); ++j) {
                Q d(0);
                for (int row : columns[j])
                    d -= y[row];
                if (lp_ops<Q>::neg(d)) {
                    entering = j;
                    break;
                }
            }
            if (entering < 0)
                return true; // optimal
            // u = B^{-1} A_entering.
            for (int i = 0; i < rows; ++i) {
                u[i] = Q(0);
                for (int row : columns[entering])
                    u[i] += b_inv[i][row];
            }
            int leave = -1;
            for (int i = 0; i < rows; ++i) {
                if (!lp_ops<Q>::pos(u[i]))
                    continue;
                if (leave < 0) {
                    leave = i;
                    continue;
                }
                Q lhs = rhs[i] * u[leave];
                Q rhs_cmp = rhs[leave] * u[i];
                if (lhs < rhs_cmp || (lhs == rhs_cmp && basis[i] < basis[leave]))
                    leave = i;
            }
            if (leave < 0)
                throw error("phase-one column is unbounded; incidence data is broken");
            Q piv = u[leave];
            for (int j = 0; j < rows; ++j)
                b_inv[leave][j] /= piv;
            rhs[leave] /= piv;
            for (int i = 0; i < rows; ++i) {
                if (i == leave)
                    continue;
                if (u[i] == 0)
                    continue;
                Q f = u[i];
                for (int j = 0; j < rows; ++j)
                    b_inv[i][j] -= f * b_inv[leave][j];
                rhs[i] -= f * rhs[leave];
            }
            basis[leave] = entering;
        }
        return false;
    }

    std::vector<Q> extract(std::size_t column_count) const {
        std::vector<Q> w(column_count, Q(0));
        for (int i = 0; i < rows; ++i)
            if (!basic_is_artificial(i))
                w[basis[i]] = rhs[i];
        return w;
    }
};

std::vector<std::vector<int>> incidence_columns(const std::vector<transversal>& ts) {
    std::vector<std::vector<int>> cols(ts.size());
    for (std::size_t j = 0; j < ts.size(); ++j)
        cols[j] = ts[j].vertices; // row index == vertex id
    return cols;
}

// Vertex covered by no transversal at all: cheap infeasibility certificate.
std::optional<int> find_uncovered(int n, const std::vector<std::vector<int>>& cols) {
    std::vector<char> hit(n, 0);
    for (const auto& col : cols)
        for (int v : col)
            hit[v] = 1;
    for (int v = 0; v < n; ++v)
        if (!hit[v])
            return v;
    return std::nullopt;
}

} // namespace

fractional_result solve_fractional_weighting(const graph& g, const partition& p,
                                             std::uint64_t cap) {
    if (g.vertex_count() != p.vertex_count())
        throw precondition_failed("graph and partition disagree on vertex count");
    fractional_result res;
    auto ts = enumerate_its(g, p, cap);
    res.transversal_count = ts.size();
    auto cols = incidence_columns(ts);
    if (auto v = find_uncovered(g.vertex_count(), cols)) {
        res.uncovered_vertex = v;
        return res;
    }
    phase_one_lp<rational> lp(g.vertex_count(), cols);
    if (!lp.solve())
        throw error("phase-one simplex failed to terminate under Bland's rule");
    if (lp.objective() != 0) {
        res.solver_certified = true;
        return res;
    }
    res.status = fractional_status::feasible;
    res.weighting.transversals = std::move(ts);
    res.weighting.weights = lp.extract(cols.size());
    return res;
}

fractional_result_float solve_fractional_weighting_float(const graph& g,
                                                         const partition& p,
                                                         std::uint64_t cap) {
    if (g.vertex_count() != p.vertex_count())
        throw precondition_failed("graph and partition disagree on vertex count");
    fractional_result_float res;
    auto ts = enumerate_its(g, p, cap);
    res.transversal_count = ts.size();
    auto cols = incidence_columns(ts);
    if (auto v = find_uncovered(g.vertex_count(), cols)) {
        res.uncovered_vertex = v;
        return res;
    }
    phase_one_lp<double> lp(g.vertex_count(), cols);
    if (!lp.solve())
        throw error("phase-one simplex failed to terminate");
    if (lp.objective() > 1e-7 * g.vertex_count()) {
        res.solver_certified = true;
        return res;
    }
    res.status = fractional_status::feasible;
    res.transversals = std::move(ts);
    res.weights.assign(cols.size(), 0.0);
    auto w = lp.extract(cols.size());
    for (std::size_t j = 0; j < w.size(); ++j)
        res.weights[j] = std::clamp(w[j], 0.0, 1.0);
    return res;
}

namespace {

certificate_report fail(std::string reason) {
    return certificate_report{false, std::move(reason)};
}

certificate_report check_support_shape(const graph& g, const partition& p,
                                       const std::vector<transversal>& ts) {
    const int k = p.class_count();
    std::set<std::vector<int>> seen;
    for (std::size_t t = 0; t < ts.size(); ++t) {
        const auto& vs = ts[t].vertices;
        if (static_cast<int>(vs.size()) != k)
            return fail("transversal " + std::to_string(t) + " has wrong arity");
        for (int i = 0; i < k; ++i) {
            if (vs[i] < 0 || vs[i] >= g.vertex_count())
                return fail("transversal " + std::to_string(t) + " has unknown vertex");
            if (p.class_of(vs[i]) != i)
                return fail("transversal " + std::to_string(t) +
                            " breaks the class alignment");
        }
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
                if (g.adjacent(vs[i], vs[j]))
                    return fail("transversal " + std::to_string(t) + " is not independent");
        if (!seen.insert(vs).second)
            return fail("transversal list repeats an entry");
    }
    return {};
}

} // namespace

certificate_report verify_weighting(const graph& g, const partition& p,
                                    const fractional_weighting& w) {
    if (w.transversals.size() != w.weights.size())
        return fail("weight list and transversal list disagree in length");
    auto shape = check_support_shape(g, p, w.transversals);
    if (!shape)
        return shape;
    for (std::size_t t = 0; t < w.weights.size(); ++t)
        if (w.weights[t] < 0 || w.weights[t] > 1)
            return fail("weight " + std::to_string(t) + " outside [0,1]: " +
                        rational_to_string(w.weights[t]));
    std::vector<rational> sums(g.vertex_count(), rational(0));
    for (std::size_t t = 0; t < w.transversals.size(); ++t)
        for (int v : w.transversals[t].vertices)
            sums[v] += w.weights[t];
    for (int v = 0; v < g.vertex_count(); ++v)
        if (sums[v] != 1)
            return fail("vertex " + std::to_string(v) + " has weight sum " +
                        rational_to_string(sums[v]));
    return {};
}

certificate_report verify_weighting_float(const graph& g, const partition& p,
                                          const std::vector<transversal>& ts,
                                          const std::vector<double>& weights,
                                          double tol) {
    if (ts.size() != weights.size())
        return fail("weight list and transversal list disagree in length");
    auto shape = check_support_shape(g, p, ts);
    if (!shape)
        return shape;
    for (std::size_t t = 0; t < weights.size(); ++t)
        if (weights[t] < -tol || weights[t] > 1 + tol)
            return fail("weight " + std::to_string(t) + " outside [0,1]");
    std::vector<double> sums(g.vertex_count(), 0.0);
    for (std::size_t t = 0; t < ts.size(); ++t)
        for (int v : ts[t].vertices)
            sums[v] += weights[t];
    for (int v = 0; v < g.vertex_count(); ++v)
        if (std::abs(sums[v] - 1.0) > tol)
            return fail("vertex " + std::to_string(v) + " has weight sum " +
                        std::to_string(sums[v]));
    return {};
}

std::string weighting_to_json(const fractional_weighting& w) {
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t t = 0; t < w.transversals.size(); ++t) {
        if (w.weights[t] == 0)
            continue;
        nlohmann::json entry;
        nlohmann::json vs = nlohmann::json::array();
        for (int v : w.transversals[t].vertices)
            vs.push_back(v + 1);
        entry["vertices"] = std::move(vs);
        entry["weight"] = rational_to_string(w.weights[t]);
        arr.push_back(std::move(entry));
    }
    return arr.dump();
}

fractional_weighting weighting_from_json(const std::string& text, int vertex_count,
                                         int class_count) {
    nlohmann::json arr;
    try {
        arr = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("bad weighting JSON: ") + e.what());
    }
    if (!arr.is_array())
        throw parse_error("weighting JSON must be an array");
    fractional_weighting w;
    for (const auto& entry : arr) {
        if (!entry.is_object() || !entry.contains("vertices") || !entry.contains("weight"))
            throw parse_error("weighting entries need 'vertices' and 'weight'");
        transversal t;
        for (const auto& v : entry["vertices"]) {
            if (!v.is_number_integer())
                throw parse_error("weighting vertices must be integers");
            int id = v.get<int>();
            if (id < 1 || id > vertex_count)
                throw parse_error("weighting vertex out of range: " + std::to_string(id));
            t.vertices.push_back(id - 1);
        }
        if (static_cast<int>(t.vertices.size()) != class_count)
            throw parse_error("weighting entry has wrong transversal arity");
        w.transversals.push_back(std::move(t));
        w.weights.push_back(rational_from_string(entry["weight"].get<std::string>()));
    }
    return w;
}

} // namespace strongcol
