#pragma once

// Plain-text edge-list files: first line "n m", then m lines "u v" with
// 0 <= u < v < n.  Comments (#...) and blank lines are ignored on read.

#include <iosfwd>
#include <string>

#include "mhwalk/graph.hpp"

namespace mhwalk {

Graph read_edge_list(std::istream& in);
Graph load_edge_list(const std::string& path);

void write_edge_list(std::ostream& out, const Graph& g);
void save_edge_list(const std::string& path, const Graph& g);

}  // namespace mhwalk
