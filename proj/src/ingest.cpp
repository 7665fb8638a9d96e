#include "motifscan/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "motifscan/graph_io.hpp"
#include "motifscan/util.hpp"

namespace motifscan {

RoleMapping RoleMapping::preset(std::string_view name) {
    RoleMapping m;
    if (name == "worm") {
        m.tokens_ = {{"glutamate", NodeRole::Excitatory}, {"acetylcholine", NodeRole::Excitatory},
                     {"gaba", NodeRole::Inhibitory},      {"serotonin", NodeRole::Other},
                     {"octopamine", NodeRole::Other},     {"dopamine", NodeRole::Other},
                     {"unknown", NodeRole::Other}};
    } else if (name == "fly") {
        m.tokens_ = {{"acetylcholine", NodeRole::Excitatory},
                     {"gaba", NodeRole::Inhibitory},
                     {"glutamate", NodeRole::Inhibitory}};
        m.unlisted_is_known_ = true;
    } else if (name == "v1-prefix") {
        m.prefix_based_ = true;
    } else {
        throw std::runtime_error("unknown role mapping preset: " + std::string(name));
    }
    return m;
}

RoleMapping RoleMapping::from_file(const std::filesystem::path& path) {
    RoleMapping m;
    std::istringstream in(read_file(path));
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto text = trim(line);
        if (text.empty() || text.front() == '#') continue;
        const auto fields = split_csv(text);
        if (fields.size() != 2)
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": mapping line needs 'token,role'");
        const auto role_field = trim(fields[1]);
        if (role_field.size() != 1)
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": role must be one of E,I,O");
        m.tokens_[to_lower(trim(fields[0]))] = role_from_letter(role_field[0]);
    }
    if (m.tokens_.empty()) throw std::runtime_error("empty role mapping file: " + path.string());
    return m;
}

RoleMapping RoleMapping::resolve(const std::string& name_or_path) {
    if (name_or_path == "worm" || name_or_path == "fly" || name_or_path == "v1-prefix")
        return preset(name_or_path);
    return from_file(name_or_path);
}

NodeRole RoleMapping::role_of(std::string_view token, bool& known) const {
    if (prefix_based_) {
        const char c = token.empty() ? '\0' : token.front();
        known = true;
        if (c == 'e' || c == 'E') return NodeRole::Excitatory;
        if (c == 'i' || c == 'I') return NodeRole::Inhibitory;
        known = false;
        return NodeRole::Other;
    }
    const auto it = tokens_.find(to_lower(token));
    if (it != tokens_.end()) {
        known = true;
        return it->second;
    }
    known = unlisted_is_known_;
    return NodeRole::Other;
}

std::string layer_from_type_name(std::string_view type_name) {
    std::size_t i = 0;
    while (i < type_name.size() && !(type_name[i] >= '0' && type_name[i] <= '9')) ++i;
    std::size_t j = i;
    while (j < type_name.size() && type_name[j] >= '0' && type_name[j] <= '9') ++j;
    const std::string_view run = type_name.substr(i, j - i);
    if (run == "1" || run == "23" || run == "4" || run == "5" || run == "6")
        return "L" + std::string(run);
    return "";
}

namespace {

std::vector<std::string> read_lines(const std::filesystem::path& path) {
    const std::string content = read_file(path);
    std::vector<std::string> lines;
    std::istringstream in(content);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

bool starts_with_integer(std::string_view line) {
    const auto fields = split_csv(line);
    if (fields.empty()) return false;
    const auto f = trim(fields[0]);
    if (f.empty()) return false;
    return std::all_of(f.begin(), f.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::uint64_t pack_edge(NodeId src, NodeId dst) {
    return static_cast<std::uint64_t>(src) << 32 | dst;
}

void tally_roles(IngestResult& result, const std::vector<NodeMeta>& nodes) {
    result.nodes = nodes.size();
    for (const auto& n : nodes) ++result.role_counts[static_cast<int>(n.role)];
}

void write_normalized(const std::filesystem::path& out_dir, const std::vector<NodeMeta>& nodes,
                      const std::vector<std::pair<NodeId, NodeId>>& edges) {
    write_file_atomic(out_dir / kNodesFile, render_nodes_csv(nodes));
    write_file_atomic(out_dir / kEdgesFile, render_edges_csv(edges));
}

} // namespace

IngestResult ingest_adjacency(const std::filesystem::path& matrix_file,
                              const std::filesystem::path& roles_file, const RoleMapping& mapping,
                              Orientation orientation, const std::filesystem::path& out_dir) {
    // Roles file: `name,token` rows; an optional header starting with "name".
    std::unordered_map<std::string, std::string> token_of;
    {
        const auto lines = read_lines(roles_file);
        for (std::size_t i = 0; i < lines.size(); ++i) {
            const auto text = trim(lines[i]);
            if (text.empty() || text.front() == '#') continue;
            const auto fields = split_csv(text);
            if (fields.size() < 2)
                throw std::runtime_error(roles_file.string() + ":" + std::to_string(i + 1) +
                                         ": roles line needs 'name,token'");
            if (i == 0 && to_lower(trim(fields[0])) == "name") continue;
            token_of[std::string(trim(fields[0]))] = std::string(trim(fields[1]));
        }
    }

    const auto lines = read_lines(matrix_file);
    if (lines.empty()) throw std::runtime_error("empty matrix file: " + matrix_file.string());

    const auto header = split_csv(lines[0]);
    if (header.size() < 2) throw std::runtime_error("matrix header has no neuron names");
    // The corner cell is a label (often empty); names start at column 1.
    std::vector<std::string> names;
    for (std::size_t c = 1; c < header.size(); ++c) names.emplace_back(trim(header[c]));

    std::vector<std::string> data_lines;
    for (std::size_t i = 1; i < lines.size(); ++i)
        if (!trim(lines[i]).empty()) data_lines.push_back(lines[i]);
    if (data_lines.size() != names.size())
        throw std::runtime_error("matrix is not square: " + std::to_string(names.size()) +
                                 " columns vs " + std::to_string(data_lines.size()) + " rows");

    IngestResult result;
    std::vector<NodeMeta> nodes;
    nodes.reserve(names.size());
    for (std::size_t i = 0; i < names.size(); ++i) {
        NodeMeta meta;
        meta.id = static_cast<NodeId>(i);
        meta.name = names[i];
        const auto it = token_of.find(meta.name);
        if (it == token_of.end()) {
            meta.role = NodeRole::Other;
            ++result.unknown_role_nodes;
        } else {
            meta.type_name = it->second;
            bool known = false;
            meta.role = mapping.role_of(meta.type_name, known);
            if (!known) ++result.unknown_role_nodes;
        }
        nodes.push_back(std::move(meta));
    }

    std::vector<std::pair<NodeId, NodeId>> edges;
    for (std::size_t r = 0; r < data_lines.size(); ++r) {
        const auto fields = split_csv(data_lines[r]);
        if (fields.size() != names.size() + 1)
            throw std::runtime_error("matrix row " + std::to_string(r + 1) + " has " +
                                     std::to_string(fields.size()) + " fields, expected " +
                                     std::to_string(names.size() + 1));
        if (trim(fields[0]) != names[r])
            throw std::runtime_error("matrix row name '" + std::string(trim(fields[0])) +
                                     "' does not match column name '" + names[r] + "'");
        for (std::size_t c = 0; c < names.size(); ++c) {
            const auto cell = trim(fields[c + 1]);
            const double value = cell.empty() ? 0.0 : parse_double(cell, "matrix cell");
            if (value == 0.0) continue;
            const auto row_node = static_cast<NodeId>(r);
            const auto col_node = static_cast<NodeId>(c);
            if (orientation == Orientation::RowsPresynaptic)
                edges.emplace_back(row_node, col_node);
            else
                edges.emplace_back(col_node, row_node);
            if (r == c) ++result.self_loops;
        }
    }

    tally_roles(result, nodes);
    result.edges = edges.size(); // one matrix cell each; duplicates impossible
    write_normalized(out_dir, nodes, edges);
    return result;
}

IngestResult ingest_edge_list(const std::filesystem::path& edges_file,
                              const std::filesystem::path& nodes_file,
                              const std::filesystem::path& types_file, const RoleMapping& mapping,
                              const std::filesystem::path& out_dir) {
    std::unordered_map<std::uint64_t, std::string> type_names;
    const bool have_types = !types_file.empty();
    if (have_types) {
        const auto lines = read_lines(types_file);
        for (std::size_t i = 0; i < lines.size(); ++i) {
            if (trim(lines[i]).empty()) continue;
            if (i == 0 && !starts_with_integer(lines[i])) continue; // header
            const auto fields = split_csv(lines[i]);
            if (fields.size() < 2)
                throw std::runtime_error(types_file.string() + ":" + std::to_string(i + 1) +
                                         ": type line needs 'type_id,type_name'");
            type_names[parse_u64(trim(fields[0]), "type id")] = std::string(trim(fields[1]));
        }
    }

    IngestResult result;
    std::vector<NodeMeta> nodes;
    std::unordered_map<std::uint64_t, NodeId> dense_id;
    {
        const auto lines = read_lines(nodes_file);
        for (std::size_t i = 0; i < lines.size(); ++i) {
            if (trim(lines[i]).empty()) continue;
            if (i == 0 && !starts_with_integer(lines[i])) continue; // header
            const auto fields = split_csv(lines[i]);
            if (fields.size() < 2)
                throw std::runtime_error(nodes_file.string() + ":" + std::to_string(i + 1) +
                                         ": node line needs 'node_id,type'");
            const std::uint64_t source_id = parse_u64(trim(fields[0]), "node id");
            NodeMeta meta;
            meta.id = static_cast<NodeId>(nodes.size());
            meta.name = std::to_string(source_id);
            if (have_types) {
                const std::uint64_t type_id = parse_u64(trim(fields[1]), "type id");
                const auto it = type_names.find(type_id);
                if (it == type_names.end())
                    throw std::runtime_error(nodes_file.string() + ":" + std::to_string(i + 1) +
                                             ": dangling type reference " + std::to_string(type_id));
                meta.type_name = it->second;
            } else {
                meta.type_name = std::string(trim(fields[1]));
            }
            bool known = false;
            meta.role = mapping.role_of(meta.type_name, known);
            if (!known) ++result.unknown_role_nodes;
            meta.layer = layer_from_type_name(meta.type_name);
            if (!dense_id.emplace(source_id, meta.id).second)
                throw std::runtime_error(nodes_file.string() + ":" + std::to_string(i + 1) +
                                         ": duplicate node id " + std::to_string(source_id));
            nodes.push_back(std::move(meta));
        }
    }

    std::vector<std::pair<NodeId, NodeId>> edges;
    {
        std::unordered_set<std::uint64_t> seen;
        const auto lines = read_lines(edges_file);
        for (std::size_t i = 0; i < lines.size(); ++i) {
            if (trim(lines[i]).empty()) continue;
            if (i == 0 && !starts_with_integer(lines[i])) continue; // header
            const auto fields = split_csv(lines[i]);
            if (fields.size() < 2)
                throw std::runtime_error(edges_file.string() + ":" + std::to_string(i + 1) +
                                         ": edge line needs 'src,dst'");
            const std::uint64_t src_source = parse_u64(trim(fields[0]), "edge src");
            const std::uint64_t dst_source = parse_u64(trim(fields[1]), "edge dst");
            const auto src_it = dense_id.find(src_source);
            const auto dst_it = dense_id.find(dst_source);
            if (src_it == dense_id.end() || dst_it == dense_id.end())
                throw std::runtime_error(edges_file.string() + ":" + std::to_string(i + 1) +
                                         ": dangling node reference");
            const NodeId src = src_it->second;
            const NodeId dst = dst_it->second;
            if (!seen.insert(pack_edge(src, dst)).second) {
                ++result.duplicates_collapsed;
                continue;
            }
            if (src == dst) ++result.self_loops;
            edges.emplace_back(src, dst);
        }
    }

    tally_roles(result, nodes);
    result.edges = edges.size();
    write_normalized(out_dir, nodes, edges);
    return result;
}

IngestResult slice_edges(const std::filesystem::path& in_dir, const SliceSpec& spec,
                         const std::filesystem::path& out_dir) {
    const auto nodes = load_nodes_csv(in_dir / kNodesFile);
    const auto edges = load_edges_csv(in_dir / kEdgesFile);
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].id != i)
            throw std::runtime_error("node ids are not dense in " + in_dir.string());

    std::vector<std::pair<NodeId, NodeId>> kept;
    if (spec.kind == SliceSpec::Kind::Head) {
        if (spec.n > edges.size())
            throw std::runtime_error("head slice of " + std::to_string(spec.n) +
                                     " exceeds edge count " + std::to_string(edges.size()));
        kept.assign(edges.begin(), edges.begin() + static_cast<std::ptrdiff_t>(spec.n));
    } else {
        const std::uint64_t n = std::min<std::uint64_t>(spec.n, edges.size());
        std::vector<bool> selected(edges.size(), false);
        if (n > 0) {
            SplitMix64 rng(spec.seed);
            std::uint64_t picked = 0;
            while (picked < n) {
                const std::uint64_t i = rng.next_below(edges.size());
                if (!selected[i]) {
                    selected[i] = true;
                    ++picked;
                }
            }
        }
        kept.reserve(n);
        for (std::size_t i = 0; i < edges.size(); ++i)
            if (selected[i]) kept.push_back(edges[i]);
    }

    std::vector<bool> used(nodes.size(), false);
    for (const auto& [src, dst] : kept) {
        if (src >= nodes.size() || dst >= nodes.size())
            throw std::runtime_error("edge references node beyond node file in " + in_dir.string());
        used[src] = used[dst] = true;
    }

    std::vector<NodeId> new_id(nodes.size(), 0);
    std::vector<NodeMeta> kept_nodes;
    std::ostringstream idmap;
    idmap << "old_id,new_id\n";
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (!used[i]) continue;
        NodeMeta meta = nodes[i];
        new_id[i] = static_cast<NodeId>(kept_nodes.size());
        meta.id = new_id[i];
        idmap << i << ',' << meta.id << '\n';
        kept_nodes.push_back(std::move(meta));
    }
    for (auto& [src, dst] : kept) {
        src = new_id[src];
        dst = new_id[dst];
    }

    IngestResult result;
    tally_roles(result, kept_nodes);
    result.edges = kept.size();
    for (const auto& [src, dst] : kept)
        if (src == dst) ++result.self_loops;
    write_normalized(out_dir, kept_nodes, kept);
    write_file_atomic(out_dir / "idmap.csv", idmap.str());
    return result;
}

} // namespace motifscan
