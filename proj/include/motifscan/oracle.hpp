#pragma once

#include "motifscan/match.hpp"

namespace motifscan {

struct OracleResult {
    std::uint64_t raw = 0;
    std::uint64_t deduped = 0;
    std::vector<MatchAssignment> assignments; // canonical representatives, sorted ascending
};

inline constexpr std::size_t kOracleMaxNodes = 50;

/// Reference enumerator: tries every injective slot assignment directly
/// (candidates are always all graph nodes), rejecting a prefix as soon as a
/// role or edge constraint fails. Shares only canonical_form with the
/// engine. Throws std::runtime_error when the graph exceeds kOracleMaxNodes.
OracleResult brute_force(const TypedDigraph& g, const MotifPattern& p);

} // namespace motifscan
