#include "mhwalk/graph_io.hpp"

#include <fstream>
#include <sstream>

namespace mhwalk {

namespace {

// Pulls the next content line (skipping blanks and # comments); false at EOF.
bool next_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        const auto pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos || line[pos] == '#') {
            continue;
        }
        return true;
    }
    return false;
}

}  // namespace

Graph read_edge_list(std::istream& in) {
    std::string line;
    if (!next_line(in, line)) {
        throw std::runtime_error("edge list: missing header line");
    }
    uint64_t n = 0, m = 0;
    {
        std::istringstream hs(line);
        std::string extra;
        if (!(hs >> n >> m) || (hs >> extra)) {
            throw std::runtime_error("edge list: header must be exactly 'n m'");
        }
    }
    if (n == 0 || n > UINT32_MAX) {
        throw std::runtime_error("edge list: node count out of range");
    }
    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(static_cast<size_t>(m));
    for (uint64_t i = 0; i < m; ++i) {
        if (!next_line(in, line)) {
            throw std::runtime_error("edge list: expected " + std::to_string(m) +
                                     " edges, found " + std::to_string(i));
        }
        std::istringstream es(line);
        uint64_t u = 0, v = 0;
        std::string extra;
        if (!(es >> u >> v) || (es >> extra)) {
            throw std::runtime_error("edge list: malformed edge line '" + line + "'");
        }
        if (u >= v || v >= n) {
            throw std::runtime_error("edge list: edge must satisfy 0 <= u < v < n, got '" +
                                     line + "'");
        }
        edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
    }
    if (next_line(in, line)) {
        throw std::runtime_error("edge list: trailing content after " + std::to_string(m) +
                                 " edges");
    }
    return Graph::from_edges(static_cast<uint32_t>(n), edges);
}

Graph load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open graph file: " + path);
    }
    return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
    out << g.node_count() << ' ' << g.edge_count() << '\n';
    for (const auto& [u, v] : g.edges()) {
        out << u << ' ' << v << '\n';
    }
}

void save_edge_list(const std::string& path, const Graph& g) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write graph file: " + path);
    }
    write_edge_list(out, g);
    if (!out.flush()) {
        throw std::runtime_error("write failed for graph file: " + path);
    }
}

}  // namespace mhwalk
