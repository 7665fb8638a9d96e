#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "motifscan/graph.hpp"

namespace motifscan {

/// Maps a neuron's type token (neurotransmitter or cell-type name) to a role.
///
/// Role conventions differ per dataset — notably glutamate is excitatory in
/// the worm mapping and inhibitory in the fly mapping — so mappings are
/// explicit per-dataset presets, never a global table.
class RoleMapping {
public:
    /// "worm": glutamate/acetylcholine -> E, GABA -> I,
    ///         serotonin/octopamine/dopamine/unknown -> O.
    /// "fly":  acetylcholine -> E, GABA/glutamate -> I, everything else -> O
    ///         (by definition, not a fallback).
    /// "v1-prefix": type name starting with 'e' -> E, 'i' -> I.
    /// Throws std::runtime_error on unknown preset names.
    static RoleMapping preset(std::string_view name);

    /// Loads lines `token,role` (role one of E/I/O, '#' comments allowed).
    static RoleMapping from_file(const std::filesystem::path& path);

    /// Preset name if it matches one, otherwise a mapping file path.
    static RoleMapping resolve(const std::string& name_or_path);

    /// Role for a type token; `known` is set false when the token fell
    /// through to an unlisted-token default (counted as a warning upstream).
    NodeRole role_of(std::string_view token, bool& known) const;

private:
    bool prefix_based_ = false;                        // v1-prefix rule
    std::map<std::string, NodeRole, std::less<>> tokens_; // lowercased keys
    bool unlisted_is_known_ = false;                   // fly: others are O by definition
};

struct IngestResult {
    std::uint64_t nodes = 0;
    std::uint64_t edges = 0; // after duplicate collapse
    std::uint64_t duplicates_collapsed = 0;
    std::uint64_t self_loops = 0;
    std::uint64_t unknown_role_nodes = 0;
    std::array<std::uint64_t, 3> role_counts{}; // E, I, O
};

enum class Orientation : std::uint8_t { RowsPresynaptic, ColumnsPresynaptic };

/// Converts a named square adjacency matrix (CSV; first row and first column
/// hold neuron names, which must agree in order) plus a roles file (lines
/// `name,token`) into the normalized node/edge files in out_dir. A nonzero
/// cell (r,c) becomes r->c under RowsPresynaptic, c->r otherwise. Names
/// missing from the roles file get role O and count as unknown_role_nodes.
/// Throws std::runtime_error on a non-square matrix, name mismatch, or an
/// unparsable cell.
IngestResult ingest_adjacency(const std::filesystem::path& matrix_file,
                              const std::filesystem::path& roles_file, const RoleMapping& mapping,
                              Orientation orientation, const std::filesystem::path& out_dir);

/// Converts an edge list into the normalized files.
///   edges file: `src,dst[,...]` rows of source node ids
///   nodes file: `node_id,type[,...]` rows; `type` is a type id when a types
///               file is given, else the type name itself
///   types file: `type_id,type_name[,...]` rows (pass empty path for none)
/// A first line that fails integer parsing is treated as a header. Source
/// node ids may be sparse; they are re-densified in nodes-file row order and
/// the original id becomes the node name. Layers are parsed from the first
/// digit run of the type name (23 -> L23; 1/4/5/6 -> L1/L4/L5/L6).
/// Throws std::runtime_error on dangling node or type references.
IngestResult ingest_edge_list(const std::filesystem::path& edges_file,
                              const std::filesystem::path& nodes_file,
                              const std::filesystem::path& types_file, const RoleMapping& mapping,
                              const std::filesystem::path& out_dir);

struct SliceSpec {
    enum class Kind : std::uint8_t { Head, Sample } kind = Kind::Head;
    std::uint64_t n = 0;
    std::uint64_t seed = 0; // Sample only
};

/// Keeps a subset of the edges of a normalized graph dir: Head takes the
/// first n in file order (n must be <= total); Sample draws n distinct edges
/// (capped at total) with SplitMix64 rejection sampling over edge indices,
/// emitted in original file order. Nodes are restricted to surviving
/// endpoints, re-densified in original order, and `idmap.csv`
/// (`old_id,new_id`) records the renumbering.
IngestResult slice_edges(const std::filesystem::path& in_dir, const SliceSpec& spec,
                         const std::filesystem::path& out_dir);

/// "L23", "L4", ... from the first digit run of a type name, or "" when the
/// run is absent or not one of 1/23/4/5/6.
std::string layer_from_type_name(std::string_view type_name);

} // namespace motifscan
