#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "motifscan/graph.hpp"

namespace motifscan {

/// Non-empty subset of {Excitatory, Inhibitory, Other}. "*" is the full set.
class RoleSet {
public:
    RoleSet() : mask_(0b111) {}

    static RoleSet all() { return RoleSet(); }
    static RoleSet of(std::initializer_list<NodeRole> roles) {
        RoleSet s;
        s.mask_ = 0;
        for (NodeRole r : roles) s.mask_ |= bit(r);
        return s;
    }

    /// Parses "*" or a comma-joined subset of E,I,O (e.g. "E,O").
    /// Throws std::runtime_error on empty or unknown tokens.
    static RoleSet parse(std::string_view text);

    bool contains(NodeRole r) const { return mask_ & bit(r); }
    bool is_all() const { return mask_ == 0b111; }
    bool is_subset_of(RoleSet other) const { return (mask_ & ~other.mask_) == 0; }
    std::string to_string() const;

    bool operator==(const RoleSet&) const = default;

private:
    static std::uint8_t bit(NodeRole r) { return static_cast<std::uint8_t>(1u << static_cast<int>(r)); }
    std::uint8_t mask_;
};

enum class MatchMode : std::uint8_t { Induced, Monomorphic };

std::string_view match_mode_name(MatchMode m);

using SlotIndex = std::uint8_t;
inline constexpr int kMaxSlots = 10;

using SlotPermutation = std::vector<SlotIndex>;

/// A small directed pattern: named slots with role constraints, a simple edge
/// set (no self-edges), a match mode, and the cached automorphism group.
/// Immutable once constructed; shareable across threads.
class MotifPattern {
public:
    /// Validates (2..kMaxSlots slots, unique names, edges in range, no
    /// self-edges) and computes the automorphism group. Throws
    /// std::runtime_error on violations.
    MotifPattern(std::vector<std::string> slot_names, std::vector<RoleSet> slot_roles,
                 std::vector<std::pair<SlotIndex, SlotIndex>> edges, MatchMode mode);

    int slot_count() const { return static_cast<int>(slot_names_.size()); }
    const std::vector<std::string>& slot_names() const { return slot_names_; }
    const std::string& slot_name(SlotIndex s) const { return slot_names_[s]; }
    RoleSet slot_roles(SlotIndex s) const { return slot_roles_[s]; }

    /// Edges sorted by (src,dst) slot index.
    const std::vector<std::pair<SlotIndex, SlotIndex>>& edges() const { return edges_; }
    bool has_edge(SlotIndex a, SlotIndex b) const { return out_mask_[a] >> b & 1u; }
    std::uint16_t out_mask(SlotIndex a) const { return out_mask_[a]; }
    std::uint16_t in_mask(SlotIndex a) const { return in_mask_[a]; }
    int out_degree(SlotIndex a) const;
    int in_degree(SlotIndex a) const;

    MatchMode mode() const { return mode_; }

    /// Returns the slot index for a name, or -1.
    int find_slot(std::string_view name) const;

    /// Same slots, roles, and edges under a different match mode.
    MotifPattern with_mode(MatchMode mode) const;

    /// All slot permutations preserving the edge set and per-slot RoleSets.
    /// Always contains the identity; closed under composition.
    const std::vector<SlotPermutation>& automorphisms() const { return automorphisms_; }

    bool operator==(const MotifPattern& other) const;

private:
    std::vector<std::string> slot_names_;
    std::vector<RoleSet> slot_roles_;
    std::vector<std::pair<SlotIndex, SlotIndex>> edges_;
    MatchMode mode_;
    std::array<std::uint16_t, kMaxSlots> out_mask_{};
    std::array<std::uint16_t, kMaxSlots> in_mask_{};
    std::vector<SlotPermutation> automorphisms_;
};

/// Pattern file format (UTF-8, LF, '#' comments):
///   mode induced|mono
///   node <name> <roleset>      roleset: * or comma-joined subset of E,I,O
///   edge <src> <dst>
/// Exactly one mode line; node lines precede edge lines referencing them.
MotifPattern parse_pattern(std::string_view text);

std::string render_pattern(const MotifPattern& p);

MotifPattern load_pattern_file(const std::filesystem::path& path);

enum class BuiltinPattern : std::uint8_t { StrictXor, ExtendedFullFeedback, ExtendedAsymFeedback };
enum class RoleProfile : std::uint8_t { Unconstrained, True, TrueWithOther };

/// Built-in motif layouts over slots E1,E2,E3,E4,XOR,INH.
///   StrictXor             8 edges  E1>E2 E1>INH E3>INH E3>E4 INH>E2 INH>E4 E2>XOR E4>XOR
///   ExtendedFullFeedback  +6 edges XOR>E2 XOR>E4 E2>INH E4>INH INH>E1 INH>E3
///   ExtendedAsymFeedback  full feedback minus E2>INH and INH>E1
/// Profiles: True pins E1-E4 to {E} and INH to {I}; TrueWithOther widens both
/// with {O}; XOR stays unconstrained in all profiles.
MotifPattern builtin_pattern(BuiltinPattern id, RoleProfile profile, MatchMode mode);

/// Default mode: Induced for StrictXor, Monomorphic for the extended layouts.
MotifPattern builtin_pattern(BuiltinPattern id, RoleProfile profile);

std::string_view builtin_pattern_name(BuiltinPattern id);
std::string_view role_profile_name(RoleProfile p);

} // namespace motifscan
