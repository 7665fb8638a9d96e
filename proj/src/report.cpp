#include "motifscan/report.hpp"

#include "json.hpp"

#include "motifscan/util.hpp"

namespace motifscan {

void RunReport::add_input(const std::string& label, const std::filesystem::path& path) {
    try {
        inputs[label] = hash_file(path);
    } catch (const std::exception&) {
        inputs[label] = "unavailable";
    }
}

std::string RunReport::to_json() const {
    nlohmann::json j;
    j["subcommand"] = subcommand;
    j["version"] = {{"engine", kEngineVersion},
                    {"pattern_format", kPatternFormatVersion},
                    {"report_format", kReportFormatVersion}};
    j["status"] = exit_code == 0 ? "ok" : "error";
    j["exit_code"] = exit_code;
    if (!error.empty()) j["error"] = error;
    j["inputs"] = inputs;
    j["params"] = params;
    j["counts"] = counts;
    j["warnings"] = warnings;
    if (has_progress)
        j["progress"] = {{"anchors_total", anchors_total},
                         {"anchors_completed", anchors_completed}};
    j["wall_time_ms"] = wall_time_ms;
    return j.dump(2) + "\n";
}

} // namespace motifscan
