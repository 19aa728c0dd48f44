#include "strongcol/io.hpp"

#include "strongcol/errors.hpp"

#include <fstream>
#include <sstream>

namespace strongcol {

namespace {

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw parse_error("cannot open " + path);
    return in;
}

} // namespace

graph read_graph(std::istream& in) {
    std::string line;
    int n = -1;
    long long m = -1;
    std::vector<std::pair<int, int>> edges;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag))
            continue; // blank line
        if (tag == "c")
            continue;
        if (tag == "p") {
            std::string kind;
            if (!(ls >> kind >> n >> m) || kind != "edge" || n < 0 || m < 0)
                throw parse_error("line " + std::to_string(lineno) +
                                  ": expected 'p edge <n> <m>'");
            edges.reserve(static_cast<std::size_t>(m));
        } else if (tag == "e") {
            if (n < 0)
                throw parse_error("line " + std::to_string(lineno) +
                                  ": edge before problem line");
            int u, v;
            if (!(ls >> u >> v) || u < 1 || v < 1 || u > n || v > n)
                throw parse_error("line " + std::to_string(lineno) +
                                  ": expected 'e <u> <v>' with 1-based vertex ids");
            edges.emplace_back(u - 1, v - 1);
        } else {
            throw parse_error("line " + std::to_string(lineno) +
                              ": unknown record '" + tag + "'");
        }
    }
    if (n < 0)
        throw parse_error("missing problem line");
    if (static_cast<long long>(edges.size()) != m)
        throw parse_error("problem line promises " + std::to_string(m) +
                          " edges, file has " + std::to_string(edges.size()));
    return graph(n, edges);
}

graph read_graph_file(const std::string& path) {
    auto in = open_or_throw(path);
    return read_graph(in);
}

void write_graph(std::ostream& out, const graph& g) {
    out << "p edge " << g.vertex_count() << " " << g.edge_count() << "\n";
    for (auto [u, v] : g.edges())
        out << "e " << u + 1 << " " << v + 1 << "\n";
}

std::string graph_to_string(const graph& g) {
    std::ostringstream out;
    write_graph(out, g);
    return out.str();
}

partition read_partition(std::istream& in, int vertex_count) {
    std::string line;
    std::vector<std::vector<int>> classes;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag))
            continue;
        if (tag != "c")
            throw parse_error("line " + std::to_string(lineno) +
                              ": expected 'c <id> <v1> <v2> ...'");
        int id;
        if (!(ls >> id) || id != static_cast<int>(classes.size()) + 1)
            throw parse_error("line " + std::to_string(lineno) +
                              ": class ids must run 1.." +
                              " in order");
        std::vector<int> cls;
        int v;
        while (ls >> v) {
            if (v < 1 || v > vertex_count)
                throw parse_error("line " + std::to_string(lineno) + ": vertex " +
                                  std::to_string(v) + " outside 1.." +
                                  std::to_string(vertex_count));
            cls.push_back(v - 1);
        }
        if (!ls.eof())
            throw parse_error("line " + std::to_string(lineno) + ": trailing junk");
        classes.push_back(std::move(cls));
    }
    if (classes.empty())
        throw parse_error("partition file has no class lines");
    return partition(vertex_count, std::move(classes));
}

partition read_partition_file(const std::string& path, int vertex_count) {
    auto in = open_or_throw(path);
    return read_partition(in, vertex_count);
}

void write_partition(std::ostream& out, const partition& p) {
    for (int i = 0; i < p.class_count(); ++i) {
        out << "c " << i + 1;
        for (int v : p.class_members(i))
            out << " " << v + 1;
        out << "\n";
    }
}

std::string partition_to_string(const partition& p) {
    std::ostringstream out;
    write_partition(out, p);
    return out.str();
}

} // namespace strongcol
