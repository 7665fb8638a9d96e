#include "motifscan/graph_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "motifscan/util.hpp"

namespace motifscan {

namespace {

std::ifstream open_or_throw(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return in;
}

} // namespace

std::vector<NodeMeta> load_nodes_csv(const std::filesystem::path& path) {
    std::vector<NodeMeta> nodes;
    auto in = open_or_throw(path);
    std::string line;
    if (!std::getline(in, line) || split_csv(line).at(0) != "id")
        throw std::runtime_error("node file missing 'id,name,role,type_name,layer' header: " +
                                 path.string());
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        const auto fields = split_csv(line);
        if (fields.size() != 5)
            throw std::runtime_error("node row needs 5 fields, got " +
                                     std::to_string(fields.size()) + ": " + line);
        NodeMeta meta;
        meta.id = static_cast<NodeId>(parse_u64(fields[0], "node id"));
        meta.name = std::string(fields[1]);
        const auto role = trim(fields[2]);
        if (role.size() != 1)
            throw std::runtime_error("node role must be one of E,I,O: '" + std::string(role) + "'");
        meta.role = role_from_letter(role[0]);
        meta.type_name = std::string(fields[3]);
        meta.layer = std::string(fields[4]);
        nodes.push_back(std::move(meta));
    }
    return nodes;
}

std::vector<std::pair<NodeId, NodeId>> load_edges_csv(const std::filesystem::path& path) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    auto in = open_or_throw(path);
    std::string line;
    if (!std::getline(in, line) || split_csv(line).at(0) != "src")
        throw std::runtime_error("edge file missing 'src,dst' header: " + path.string());
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        const auto fields = split_csv(line);
        if (fields.size() != 2)
            throw std::runtime_error("edge row needs 2 fields: " + line);
        edges.emplace_back(static_cast<NodeId>(parse_u64(fields[0], "edge src")),
                           static_cast<NodeId>(parse_u64(fields[1], "edge dst")));
    }
    return edges;
}

TypedDigraph load_graph_dir(const std::filesystem::path& dir) {
    return TypedDigraph::build(load_nodes_csv(dir / kNodesFile), load_edges_csv(dir / kEdgesFile));
}

std::string render_nodes_csv(const std::vector<NodeMeta>& nodes) {
    std::ostringstream out;
    out << "id,name,role,type_name,layer\n";
    for (const auto& n : nodes)
        out << n.id << ',' << n.name << ',' << role_letter(n.role) << ',' << n.type_name << ','
            << n.layer << '\n';
    return out.str();
}

std::string render_edges_csv(const std::vector<std::pair<NodeId, NodeId>>& edges) {
    std::ostringstream out;
    out << "src,dst\n";
    for (const auto& [src, dst] : edges) out << src << ',' << dst << '\n';
    return out.str();
}

void save_graph_dir(const TypedDigraph& g, const std::filesystem::path& dir) {
    write_file_atomic(dir / kNodesFile, render_nodes_csv(g.nodes()));

    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(g.edge_count());
    for (NodeId u = 0; u < g.node_count(); ++u)
        for (NodeId v : g.neighbors(u, Direction::Out)) edges.emplace_back(u, v);
    write_file_atomic(dir / kEdgesFile, render_edges_csv(edges));
}

} // namespace motifscan
