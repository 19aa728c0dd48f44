#include "strongcol/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include "strongcol/absorber.hpp"
#include "strongcol/errors.hpp"
#include "strongcol/fractional.hpp"
#include "strongcol/generators.hpp"
#include "strongcol/io.hpp"
#include "strongcol/it_engine.hpp"
#include "strongcol/nibble.hpp"
#include "strongcol/oracle.hpp"
#include "strongcol/tiling.hpp"

namespace strongcol {
namespace {

using ordered_json = nlohmann::ordered_json;

// File formats and JSON artifacts are 1-based; everything internal is
// 0-based. These helpers sit on that boundary.
std::vector<int> up1(const std::vector<int>& v) {
    std::vector<int> out;
    out.reserve(v.size());
    for (int x : v)
        out.push_back(x + 1);
    return out;
}

ordered_json rows_up1(const std::vector<std::vector<int>>& rows) {
    ordered_json arr = ordered_json::array();
    for (const auto& row : rows)
        arr.push_back(up1(row));
    return arr;
}

ordered_json transversals_up1(const std::vector<transversal>& ts) {
    ordered_json arr = ordered_json::array();
    for (const auto& t : ts)
        arr.push_back(up1(t.vertices));
    return arr;
}

ordered_json trace_json(const pipeline_trace& t) {
    ordered_json j;
    j["family_size"] = t.family_size;
    j["partial_count"] = t.partial_count;
    j["leftover_size"] = t.leftover_size;
    j["absorbed_chunks"] = t.absorbed_chunks;
    j["attempts"] = t.attempts;
    j["partial_used_fallback"] = t.partial_used_fallback;
    j["used_exhaustive"] = t.used_exhaustive;
    j["within_regime"] = t.within_regime;
    j["notes"] = t.notes;
    return j;
}

std::string join_ids(const std::vector<int>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            out += ' ';
        out += std::to_string(v[i] + 1);
    }
    return out;
}

struct cli_state {
    std::string graph_file;
    std::string partition_file;
    std::uint64_t seed = 0;
    double epsilon = 0.5;
    double delta = 0.05;
    bool json = false;
    std::string fallback = "on";
    std::uint64_t budget = 0;
    bool budget_set = false;

    // cpt
    int m = 0;
    int samples = -1;

    // generate
    instance_spec spec;
    std::string out_graph;
    std::string out_partition;

    bool fallback_on() const { return fallback == "on"; }

    std::uint64_t budget_or(std::uint64_t fallback_value) const {
        if (budget_set)
            return budget;
        if (const char* env = std::getenv("STRONGCOL_BUDGET")) {
            char* end = nullptr;
            unsigned long long parsed = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && end != env)
                return parsed;
            throw parse_error("STRONGCOL_BUDGET is not a number: " + std::string(env));
        }
        return fallback_value;
    }
};

ordered_json base_json(const std::string& cmd) {
    ordered_json j;
    j["schema"] = 1;
    j["command"] = cmd;
    return j;
}

command_result emit(int code, const ordered_json& j) {
    return {code, j.dump(2) + "\n"};
}

command_result fail(const std::string& cmd, bool json, int code,
                    const std::string& kind, const std::string& message,
                    const std::function<void(ordered_json&)>& extra = {}) {
    if (json) {
        ordered_json j = base_json(cmd);
        j["error"] = kind;
        j["message"] = message;
        if (extra)
            extra(j);
        return emit(code, j);
    }
    return {code, kind + ": " + message + "\n"};
}

graph load_graph(const cli_state& st) {
    if (st.graph_file.empty())
        throw parse_error("--graph is required for this command");
    return read_graph_file(st.graph_file);
}

partition load_partition(const cli_state& st, const graph& g) {
    if (st.partition_file.empty())
        throw parse_error("--partition is required for this command");
    return read_partition_file(st.partition_file, g.vertex_count());
}

command_result cmd_check_haxell(const cli_state& st) {
    graph g = load_graph(st);
    partition p = load_partition(st, g);
    auto rep = check_haxell_condition(g, p.classes());
    if (st.json) {
        ordered_json j = base_json("check-haxell");
        j["satisfied"] = rep.satisfied;
        if (rep.witness) {
            ordered_json w;
            w["classes"] = up1(rep.witness->classes);
            w["union_size"] = rep.witness->union_size;
            w["bound"] = rep.witness->bound;
            j["violation"] = w;
        }
        return emit(rep.satisfied ? exit_ok : exit_impossible, j);
    }
    if (rep.satisfied)
        return {exit_ok, "haxell condition satisfied\n"};
    std::ostringstream out;
    out << "violated by classes " << join_ids(rep.witness->classes) << ": union "
        << rep.witness->union_size << " <= bound " << rep.witness->bound << "\n";
    return {exit_impossible, out.str()};
}

command_result cmd_find_it(const cli_state& st) {
    graph g = load_graph(st);
    partition p = load_partition(st, g);
    auto res = find_independent_transversal(g, p.classes(),
                                            st.budget_or(default_node_budget));
    if (st.json) {
        ordered_json j = base_json("find-it");
        switch (res.status) {
        case search_status::found:
            j["status"] = "found";
            j["transversal"] = up1(res.vertices);
            break;
        case search_status::exhausted:
            j["status"] = "exhausted";
            break;
        case search_status::timeout:
            j["status"] = "budget-exhausted";
            break;
        }
        j["nodes"] = res.nodes;
        int code = res.status == search_status::found      ? exit_ok
                   : res.status == search_status::exhausted ? exit_impossible
                                                            : exit_budget;
        return emit(code, j);
    }
    if (res.status == search_status::found)
        return {exit_ok, "found: " + join_ids(res.vertices) + "\n"};
    if (res.status == search_status::exhausted)
        return {exit_impossible, "no independent transversal exists\n"};
    return {exit_budget,
            "budget exhausted after " + std::to_string(res.nodes) + " nodes\n"};
}

command_result cmd_fractional(const cli_state& st) {
    graph g = load_graph(st);
    partition p = load_partition(st, g);
    auto res = solve_fractional_weighting(g, p, st.budget_or(20'000));
    if (res.status == fractional_status::feasible) {
        auto cert = verify_weighting(g, p, res.weighting);
        if (!cert.ok)
            throw error("internal: weighting failed verification: " + cert.reason);
        if (st.json) {
            ordered_json j = base_json("fractional");
            j["status"] = "feasible";
            j["transversal_count"] = res.transversal_count;
            j["support"] = ordered_json::parse(weighting_to_json(res.weighting));
            j["verified"] = true;
            return emit(exit_ok, j);
        }
        std::ostringstream out;
        out << "feasible over " << res.transversal_count << " transversals\n";
        for (std::size_t i = 0; i < res.weighting.transversals.size(); ++i)
            out << "  " << rational_to_string(res.weighting.weights[i]) << "  "
                << join_ids(res.weighting.transversals[i].vertices) << "\n";
        return {exit_ok, out.str()};
    }
    if (st.json) {
        ordered_json j = base_json("fractional");
        j["status"] = "infeasible";
        if (res.uncovered_vertex)
            j["uncovered_vertex"] = *res.uncovered_vertex + 1;
        else
            j["uncovered_vertex"] = nullptr;
        j["solver_certified"] = res.solver_certified;
        j["transversal_count"] = res.transversal_count;
        return emit(exit_impossible, j);
    }
    std::string why = res.uncovered_vertex
                          ? "vertex " + std::to_string(*res.uncovered_vertex + 1) +
                                " lies in no independent transversal"
                          : "solver certified infeasibility";
    return {exit_impossible, "infeasible: " + why + "\n"};
}

command_result cmd_cover_stats(const cli_state& st) {
    graph g = load_graph(st);
    partition p = load_partition(st, g);
    nibble_params np;
    np.seed = st.seed;
    if (st.budget_set)
        np.cover_count_cap = static_cast<long long>(st.budget_or(0));
    auto [c, rep] = sample_cover(g, p, np);
    if (st.json) {
        ordered_json j = base_json("cover-stats");
        j["sets"] = c.sets.size();
        j["subset_size"] = rep.subset_size;
        j["balanced"] = rep.balanced;
        j["membership_in_window"] = rep.membership_in_window;
        j["pairs_ok"] = rep.pairs_ok;
        j["triples_ok"] = rep.triples_ok;
        j["induced_degree_ok"] = rep.induced_degree_ok;
        j["min_membership"] = rep.min_membership;
        j["max_membership"] = rep.max_membership;
        j["outside_window"] = rep.outside_window;
        j["window_centre"] = rep.window_centre;
        j["window_radius"] = rep.window_radius;
        j["max_pair_multiplicity"] = rep.max_pair_multiplicity;
        j["max_triple_multiplicity"] = rep.max_triple_multiplicity;
        j["max_induced_degree"] = rep.max_induced_degree;
        j["all_pass"] = rep.all();
        return emit(exit_ok, j);
    }
    std::ostringstream out;
    out << "sets " << c.sets.size() << ", subset size " << rep.subset_size << "\n"
        << "balanced " << (rep.balanced ? "yes" : "no") << ", window "
        << (rep.membership_in_window ? "yes" : "no") << " (" << rep.outside_window
        << " outside), pairs " << (rep.pairs_ok ? "yes" : "no") << ", triples "
        << (rep.triples_ok ? "yes" : "no") << ", induced degree "
        << (rep.induced_degree_ok ? "yes" : "no") << "\n"
        << "properties passed: " << rep.passes() << "/5\n";
    return {exit_ok, out.str()};
}

command_result cmd_partial_colour(const cli_state& st) {
    graph g = load_graph(st);
    partition p = load_partition(st, g);
    nibble_params np;
    np.seed = st.seed;
    auto res = partial_strong_colouring(g, p, st.delta, np, st.fallback_on());
    auto cert = verify_disjoint_its(g, p, res.transversals);
    if (!cert.ok)
        throw error("internal: partial colouring failed verification: " + cert.reason);
    if (st.json) {
        ordered_json j = base_json("partial-colour");
        j["target"] = res.target;
        j["count"] = res.transversals.size();
        j["transversals"] = transversals_up1(res.transversals);
        j["from_matching"] = res.from_matching;
        j["cover_ok"] = res.cover_ok;
        j["used_fallback"] = res.used_fallback;
        j["verified"] = true;
        return emit(exit_ok, j);
    }
    std::ostringstream out;
    out << res.transversals.size() << " transversals (target " << res.target << ")\n";
    for (const auto& t : res.transversals)
        out << "  " << join_ids(t.vertices) << "\n";
    return {exit_ok, out.str()};
}

command_result cmd_strong_colour(const cli_state& st) {
    graph g = load_graph(st);
    partition p = load_partition(st, g);
    strong_colouring_config cfg;
    cfg.seed = st.seed;
    cfg.fallback = st.fallback_on();
    if (st.budget_set)
        cfg.exhaustive_budget = st.budget_or(cfg.exhaustive_budget);
    auto res = strong_colouring(g, p, st.epsilon, cfg);
    auto cert = verify_it_partition(g, p, res.colouring);
    if (!cert.ok)
        throw error("internal: colouring failed verification: " + cert.reason);
    if (st.json) {
        ordered_json j = base_json("strong-colour");
        j["colouring"] = transversals_up1(res.colouring);
        j["verified"] = true;
        j["trace"] = trace_json(res.trace);
        return emit(exit_ok, j);
    }
    std::ostringstream out;
    out << res.colouring.size() << " independent transversals\n";
    for (const auto& t : res.colouring)
        out << "  " << join_ids(t.vertices) << "\n";
    return {exit_ok, out.str()};
}

command_result cmd_exact_schrom(const cli_state& st) {
    graph g = load_graph(st);
    int value = strong_chromatic_number(g, st.budget_or(default_node_budget));
    if (st.json) {
        ordered_json j = base_json("exact-schrom");
        j["n"] = g.vertex_count();
        j["strong_chromatic_number"] = value;
        return emit(exit_ok, j);
    }
    return {exit_ok, "strong chromatic number: " + std::to_string(value) + "\n"};
}

command_result cmd_cpt(const cli_state& st) {
    cpt_options opts;
    opts.seed = st.seed;
    opts.budget = st.budget_or(default_node_budget);
    if (st.samples >= 0)
        opts.samples = st.samples;
    auto res = check_all_partitions_cpt(st.m, opts);
    if (st.json) {
        ordered_json j = base_json("cpt");
        j["m"] = st.m;
        j["mode"] = opts.samples ? "sampled" : "exhaustive";
        j["partitions_checked"] = res.partitions_checked;
        j["all_pass"] = res.all_pass;
        if (res.failing)
            j["failing_partition"] = rows_up1(*res.failing);
        return emit(res.all_pass ? exit_ok : exit_impossible, j);
    }
    std::ostringstream out;
    out << res.partitions_checked << " partitions checked, "
        << (res.all_pass ? "all admit 3 independent transversals"
                         : "found one with no split")
        << "\n";
    return {res.all_pass ? exit_ok : exit_impossible, out.str()};
}

command_result cmd_tiling(const cli_state& st) {
    graph g = load_graph(st);
    partition p = load_partition(st, g);
    strong_colouring_config cfg;
    cfg.seed = st.seed;
    cfg.fallback = st.fallback_on();
    auto res = find_perfect_kk_tiling(g, p, st.epsilon, cfg);
    auto cert = verify_tiling(g, p, res.cliques);
    if (!cert.ok)
        throw error("internal: tiling failed verification: " + cert.reason);
    if (st.json) {
        ordered_json j = base_json("tiling");
        j["cliques"] = rows_up1(res.cliques);
        j["verified"] = true;
        j["trace"] = trace_json(res.trace);
        return emit(exit_ok, j);
    }
    std::ostringstream out;
    out << res.cliques.size() << " cliques\n";
    for (const auto& c : res.cliques)
        out << "  " << join_ids(c) << "\n";
    return {exit_ok, out.str()};
}

command_result cmd_generate(const cli_state& st) {
    instance_spec spec = st.spec;
    std::mt19937_64 rng(st.seed);
    auto inst = generate(spec, rng);
    std::string graph_text = graph_to_string(inst.g);
    std::string partition_text = partition_to_string(inst.classes);
    auto write_file = [](const std::string& path, const std::string& text) {
        std::ofstream out(path);
        if (!out)
            throw parse_error("cannot write " + path);
        out << text;
    };
    if (!st.out_graph.empty())
        write_file(st.out_graph, graph_text);
    if (!st.out_partition.empty())
        write_file(st.out_partition, partition_text);
    if (st.json) {
        ordered_json j = base_json("generate");
        j["family"] = spec.family;
        j["n"] = inst.g.vertex_count();
        j["edges"] = inst.g.edge_count();
        j["classes"] = inst.classes.class_count();
        j["graph"] = graph_text;
        j["partition"] = partition_text;
        if (!st.out_graph.empty())
            j["graph_written_to"] = st.out_graph;
        if (!st.out_partition.empty())
            j["partition_written_to"] = st.out_partition;
        return emit(exit_ok, j);
    }
    if (!st.out_graph.empty() || !st.out_partition.empty()) {
        std::string out;
        if (!st.out_graph.empty())
            out += "wrote " + st.out_graph + "\n";
        if (!st.out_partition.empty())
            out += "wrote " + st.out_partition + "\n";
        return {exit_ok, out};
    }
    return {exit_ok, graph_text + partition_text};
}

} // namespace

command_result run_command(const std::vector<std::string>& args) {
    cli_state st;
    CLI::App app{"independent-transversal and strong-colouring toolkit"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--graph", st.graph_file, "graph file, p edge format");
        sub->add_option("--partition", st.partition_file, "partition file");
        sub->add_option("--seed", st.seed, "random seed");
        sub->add_option("--epsilon", st.epsilon, "degree-regime slack");
        sub->add_option("--delta", st.delta, "allowed uncovered fraction");
        sub->add_flag("--json", st.json, "machine-readable output");
        sub->add_option("--fallback", st.fallback, "use deterministic fallbacks")
            ->check(CLI::IsMember({"on", "off"}));
        sub->add_option("--budget", st.budget, "search/enumeration budget")
            ->each([&](const std::string&) { st.budget_set = true; });
    };

    struct sub_entry {
        CLI::App* sub;
        command_result (*run)(const cli_state&);
    };
    std::vector<sub_entry> table;
    auto reg = [&](const std::string& name, const std::string& desc,
                   command_result (*fn)(const cli_state&)) {
        CLI::App* sub = app.add_subcommand(name, desc);
        add_common(sub);
        table.push_back({sub, fn});
        return sub;
    };

    reg("check-haxell", "test the class-union degree condition", cmd_check_haxell);
    reg("find-it", "search for one independent transversal", cmd_find_it);
    reg("fractional", "exact fractional transversal weighting", cmd_fractional);
    reg("cover-stats", "sample a cover and report its properties", cmd_cover_stats);
    reg("partial-colour", "disjoint independent transversals short of full",
        cmd_partial_colour);
    reg("strong-colour", "partition every class into independent transversals",
        cmd_strong_colour);
    reg("exact-schrom", "exhaustive strong chromatic number", cmd_exact_schrom);
    auto* cpt = reg("cpt", "cycle-plus-triangles partitions", cmd_cpt);
    cpt->add_option("--m", st.m, "number of triangles (cycle length 3m)");
    cpt->add_option("--samples", st.samples, "random partitions instead of all");
    reg("tiling", "perfect clique tiling via the complement", cmd_tiling);
    auto* gen = reg("generate", "emit a benchmark instance", cmd_generate);
    gen->add_option("--family", st.spec.family,
                    "cycle | cpt | bounded-degree | kpartite");
    gen->add_option("--n", st.spec.n, "vertex count");
    gen->add_option("--m", st.spec.m, "triangle count for cpt");
    gen->add_option("--k", st.spec.k, "class count");
    gen->add_option("--class-size", st.spec.class_size, "vertices per class");
    gen->add_option("--max-degree", st.spec.max_degree, "degree cap");
    gen->add_option("--min-degree", st.spec.min_degree, "degree floor");
    gen->add_option("--density", st.spec.density, "edge keep probability");
    gen->add_option("--out-graph", st.out_graph, "write the graph here");
    gen->add_option("--out-partition", st.out_partition, "write the partition here");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        return {exit_ok, app.help()};
    } catch (const CLI::ParseError& e) {
        return {exit_usage, std::string(e.what()) + "\n"};
    }

    for (const auto& entry : table) {
        if (!entry.sub->parsed())
            continue;
        const std::string name = entry.sub->get_name();
        try {
            return entry.run(st);
        } catch (const shortfall& e) {
            return fail(name, st.json, exit_budget, "shortfall", e.what(),
                        [&](ordered_json& j) {
                            j["got"] = e.got;
                            j["want"] = e.want;
                        });
        } catch (const unsolvable& e) {
            return fail(name, st.json, exit_impossible, "unsolvable", e.what());
        } catch (const parse_error& e) {
            return fail(name, st.json, exit_usage, "input error", e.what());
        } catch (const infeasible_spec& e) {
            return fail(name, st.json, exit_usage, "infeasible spec", e.what());
        } catch (const precondition_failed& e) {
            return fail(name, st.json, exit_usage, "precondition failed", e.what());
        } catch (const invalid_vertex& e) {
            return fail(name, st.json, exit_usage, "invalid vertex", e.what());
        } catch (const error& e) {
            // budget exhaustion, caps, pipeline failures: all "ran out of
            // room" rather than "proved impossible"
            return fail(name, st.json, exit_budget, "gave up", e.what());
        }
    }
    return {exit_usage, "no subcommand given\n"};
}

int cli_main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    auto res = run_command(args);
    std::fputs(res.output.c_str(), stdout);
    return res.exit_code;
}

} // namespace strongcol
