#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace motifscan {

inline constexpr const char* kEngineVersion = "0.1.0";
inline constexpr int kPatternFormatVersion = 1;
inline constexpr int kReportFormatVersion = 1;

/// Machine-readable summary of one CLI run, emitted on success and failure
/// alike. Serialization is deterministic (sorted keys, fixed layout); the
/// only field that varies between identical runs is wall_time_ms.
struct RunReport {
    std::string subcommand;
    int exit_code = 0;
    std::string error; // empty on success

    std::map<std::string, std::string> inputs; // label -> content hash
    std::map<std::string, std::string> params; // flags as given/resolved
    std::map<std::string, std::uint64_t> counts;
    std::vector<std::string> warnings;

    bool has_progress = false; // scan-style commands report anchor progress
    std::uint64_t anchors_total = 0;
    std::uint64_t anchors_completed = 0;

    double wall_time_ms = 0.0;

    /// Records the FNV-1a hash of an input file; unreadable files record
    /// "unavailable" (the failure itself is reported elsewhere).
    void add_input(const std::string& label, const std::filesystem::path& path);

    /// Pretty-printed JSON, trailing newline included.
    std::string to_json() const;
};

} // namespace motifscan
