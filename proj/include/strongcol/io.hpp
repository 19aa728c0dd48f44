#pragma once

#include "strongcol/graph.hpp"
#include "strongcol/partition.hpp"

#include <iosfwd>
#include <string>

namespace strongcol {

// Graph files: "p edge <n> <m>" then one "e <u> <v>" line per edge, vertices
// 1-based. Lines starting with "c" are comments here. Ids are shifted down
// to 0-based on read and back up on write.
graph read_graph(std::istream& in);
graph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const graph& g);
std::string graph_to_string(const graph& g);

// Partition files: one "c <id> <v1> <v2> ..." line per class, in class order,
// vertices 1-based. The id field is echoed back as 1..k on write; on read it
// is checked to be the 1-based position of the line.
partition read_partition(std::istream& in, int vertex_count);
partition read_partition_file(const std::string& path, int vertex_count);
void write_partition(std::ostream& out, const partition& p);
std::string partition_to_string(const partition& p);

} // namespace strongcol
