#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "json.hpp"

#include "motifscan/graph_io.hpp"
#include "motifscan/match.hpp"
#include "motifscan/oracle.hpp"
#include "motifscan/pattern.hpp"
#include "motifscan/util.hpp"
#include "support/random_graph.hpp"
#include "support/temp_dir.hpp"

using namespace motifscan;
using testsupport::TempDir;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
};

/// Runs the installed binary with the given arguments, capturing stdout.
CliResult run_cli(const std::vector<std::string>& args) {
    std::string command = MOTIFSCAN_BIN;
    for (const auto& a : args) command += " '" + a + "'";
    command += " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult result;
    char buffer[4096];
    std::size_t n = 0;
    while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) result.out.append(buffer, n);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

nlohmann::json report_of(const std::filesystem::path& path) {
    return nlohmann::json::parse(read_file(path));
}

} // namespace

TEST_CASE("--version reports the engine and format versions") {
    const auto result = run_cli({"--version"});
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("motifscan 0.1.0") != std::string::npos);
    CHECK(result.out.find("pattern-format 1") != std::string::npos);
}

TEST_CASE("usage problems exit with code 1") {
    CHECK(run_cli({"scan"}).exit_code == 1);                    // missing --graph
    CHECK(run_cli({"no-such-command"}).exit_code == 1);
    CHECK(run_cli({"scan", "--graph", "x", "--builtin", "strict-xor", "--wat"}).exit_code == 1);
    TempDir dir("usage");
    save_graph_dir(testsupport::random_graph(8, 0.3, 1), dir / "g");
    // Both pattern sources at once is ambiguous.
    const auto both = run_cli({"scan", "--graph", (dir / "g").string(), "--builtin",
                               "strict-xor", "--pattern", "p.motif"});
    CHECK(both.exit_code == 1);
    // --emit-limit is meaningless without --emit-matches.
    const auto dangling = run_cli({"scan", "--graph", (dir / "g").string(), "--builtin",
                                   "strict-xor", "--emit-limit", "5"});
    CHECK(dangling.exit_code == 1);
}

TEST_CASE("a missing graph directory is a data error") {
    TempDir dir("missing");
    const auto report_path = dir / "r.json";
    const auto result = run_cli({"scan", "--graph", (dir / "nope").string(), "--builtin",
                                 "strict-xor", "--report", report_path.string()});
    CHECK(result.exit_code == 2);
    const auto report = report_of(report_path);
    CHECK(report["status"] == "error");
    CHECK(report["exit_code"] == 2);
    CHECK(report["inputs"]["graph_nodes"] == "unavailable");
    CHECK(!report["error"].get<std::string>().empty());
}

TEST_CASE("scan counts match the library and reports are deterministic") {
    TempDir dir("scan");
    const auto g = testsupport::random_graph(30, 0.25, 77);
    save_graph_dir(g, dir / "g");
    const auto p = builtin_pattern(BuiltinPattern::StrictXor, RoleProfile::Unconstrained);
    const auto expected = count_matches(g, p);

    auto run_once = [&](const std::string& name) {
        const auto report_path = dir / name;
        const auto result =
            run_cli({"scan", "--graph", (dir / "g").string(), "--builtin", "strict-xor",
                     "--threads", "2", "--report", report_path.string()});
        CHECK(result.exit_code == 0);
        return report_of(report_path);
    };
    auto first = run_once("r1.json");
    CHECK(first["status"] == "ok");
    CHECK(first["subcommand"] == "scan");
    CHECK(first["counts"]["raw"] == expected.raw);
    CHECK(first["counts"]["deduped"] == expected.deduped);
    CHECK(first["params"]["mode"] == "induced");
    CHECK(first["params"]["pattern"] == "strict-xor");
    CHECK(first["progress"]["anchors_total"] == first["progress"]["anchors_completed"]);
    const auto nodes_hash = first["inputs"]["graph_nodes"].get<std::string>();
    CHECK(nodes_hash.rfind("fnv1a:", 0) == 0);

    auto second = run_once("r2.json");
    first.erase("wall_time_ms");
    second.erase("wall_time_ms");
    CHECK(first == second);
}

TEST_CASE("scan honors mode overrides and pattern files") {
    TempDir dir("modes");
    const auto g = testsupport::random_graph(20, 0.3, 88);
    save_graph_dir(g, dir / "g");
    const auto p = builtin_pattern(BuiltinPattern::StrictXor, RoleProfile::True);
    const auto report_path = dir / "r.json";

    const auto mono = run_cli({"scan", "--graph", (dir / "g").string(), "--builtin",
                               "strict-xor", "--profile", "true", "--mode", "mono", "--report",
                               report_path.string()});
    CHECK(mono.exit_code == 0);
    auto report = report_of(report_path);
    CHECK(report["params"]["mode"] == "mono");
    CHECK(report["counts"]["deduped"] ==
          count_matches(g, p.with_mode(MatchMode::Monomorphic)).deduped);

    const auto pattern_path = dir.write("custom.motif", render_pattern(p));
    const auto from_file = run_cli({"scan", "--graph", (dir / "g").string(), "--pattern",
                                    pattern_path.string(), "--report", report_path.string()});
    CHECK(from_file.exit_code == 0);
    report = report_of(report_path);
    CHECK(report["counts"]["deduped"] == count_matches(g, p).deduped);
    CHECK(report["inputs"].contains("pattern"));
}

TEST_CASE("emitted match files list canonical assignments in order") {
    TempDir dir("emit");
    const auto g = testsupport::random_graph(16, 0.3, 91);
    save_graph_dir(g, dir / "g");
    const auto p = builtin_pattern(BuiltinPattern::StrictXor, RoleProfile::Unconstrained,
                                   MatchMode::Monomorphic);
    const auto expected = brute_force(g, p);
    const auto matches_path = dir / "matches.csv";
    const auto report_path = dir / "r.json";

    const auto result = run_cli({"scan", "--graph", (dir / "g").string(), "--builtin",
                                 "strict-xor", "--mode", "mono", "--emit-matches",
                                 matches_path.string(), "--report", report_path.string()});
    CHECK(result.exit_code == 0);
    std::string rendered;
    for (const auto& m : expected.assignments) {
        for (std::uint8_t i = 0; i < m.count; ++i) {
            if (i) rendered += ',';
            rendered += std::to_string(m.ids[i]);
        }
        rendered += '\n';
    }
    CHECK(read_file(matches_path) == rendered);
    auto report = report_of(report_path);
    CHECK(report["counts"]["emitted"] == expected.assignments.size());
    CHECK(report["warnings"].empty());

    if (expected.assignments.size() > 3) {
        const auto truncated = run_cli({"scan", "--graph", (dir / "g").string(), "--builtin",
                                        "strict-xor", "--mode", "mono", "--emit-matches",
                                        matches_path.string(), "--emit-limit", "3", "--report",
                                        report_path.string()});
        CHECK(truncated.exit_code == 0);
        report = report_of(report_path);
        CHECK(report["counts"]["emitted"] == 3);
        CHECK(!report["warnings"].empty());
        const auto text = read_file(matches_path);
        CHECK(rendered.rfind(text, 0) == 0); // prefix of the full list
    }
}

TEST_CASE("oracle subcommand agrees with the scan") {
    TempDir dir("oracle");
    const auto g = testsupport::random_graph(12, 0.3, 95);
    save_graph_dir(g, dir / "g");
    const auto expected =
        brute_force(g, builtin_pattern(BuiltinPattern::StrictXor, RoleProfile::Unconstrained));
    const auto result = run_cli({"oracle", "--graph", (dir / "g").string(), "--builtin",
                                 "strict-xor", "--report", (dir / "r.json").string()});
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("raw " + std::to_string(expected.raw)) != std::string::npos);
    CHECK(result.out.find("deduped " + std::to_string(expected.deduped)) != std::string::npos);
}

TEST_CASE("ingest, slice, stats, and batch-scan work end to end") {
    TempDir dir("endtoend");
    // A small worm-style matrix: three neurons, four connections.
    const auto matrix = dir.write(
        "adj.csv", "name,AVAL,AVAR,PVCL\nAVAL,0,2,1\nAVAR,1,0,0\nPVCL,0,1,0\n");
    const auto roles =
        dir.write("roles.csv", "name,token\nAVAL,glutamate\nAVAR,GABA\nPVCL,acetylcholine\n");
    const auto ingest = run_cli({"ingest", "worm", "--adjacency", matrix.string(), "--roles",
                                 roles.string(), "--out", (dir / "worm").string(), "--report",
                                 (dir / "ri.json").string()});
    CHECK(ingest.exit_code == 0);
    auto report = report_of(dir / "ri.json");
    CHECK(report["counts"]["nodes"] == 3);
    CHECK(report["counts"]["edges"] == 4);
    CHECK(report["counts"]["role_e"] == 2);
    CHECK(report["counts"]["role_i"] == 1);

    const auto slice = run_cli({"slice", "--in", (dir / "worm").string(), "--head", "2", "--out",
                                (dir / "sliced").string(), "--report", (dir / "rs.json").string()});
    CHECK(slice.exit_code == 0);
    CHECK(report_of(dir / "rs.json")["counts"]["edges"] == 2);

    // stats over a synthetic graph large enough to hold matches
    save_graph_dir(testsupport::random_graph(24, 0.3, 99), dir / "big");
    const auto no_outputs = run_cli({"stats", "--graph", (dir / "big").string(), "--builtin",
                                     "strict-xor"});
    CHECK(no_outputs.exit_code == 1);
    const auto stats = run_cli({"stats", "--graph", (dir / "big").string(), "--builtin",
                                "strict-xor", "--mode", "mono", "--group", "inputs=E1+E3",
                                "--types-out", (dir / "types.csv").string(),
                                "--participation-out", (dir / "part.csv").string(), "--report",
                                (dir / "rt.json").string()});
    CHECK(stats.exit_code == 0);
    const auto types_csv = read_file(dir / "types.csv");
    CHECK(types_csv.rfind("group,type_name,count", 0) == 0);
    CHECK(read_file(dir / "part.csv").rfind("group,node,count", 0) == 0);

    // batch-scan isolates a missing directory but scans the rest
    const auto batch = run_cli({"batch-scan", "--graph", (dir / "big").string(), "--graph",
                                (dir / "absent").string(), "--builtin", "strict-xor",
                                "--summary-out", (dir / "summary.csv").string(), "--scatter-out",
                                (dir / "scatter.csv").string(), "--report",
                                (dir / "rb.json").string()});
    CHECK(batch.exit_code == 0);
    report = report_of(dir / "rb.json");
    CHECK(report["counts"]["graphs"] == 2);
    CHECK(report["counts"]["graphs_failed"] == 1);
    const auto summary = read_file(dir / "summary.csv");
    CHECK(summary.find("failed:") != std::string::npos);
    CHECK(read_file(dir / "scatter.csv").rfind("label,connections,motifs", 0) == 0);
}

TEST_CASE("spike subcommand simulates and calibrate round-trips") {
    TempDir dir("spike");
    const auto spikes_path = dir / "spikes.csv";
    const auto run10 = run_cli({"spike", "--inputs", "10", "--out", spikes_path.string(),
                                "--report", (dir / "r10.json").string()});
    CHECK(run10.exit_code == 0);
    auto report = report_of(dir / "r10.json");
    CHECK(report["params"]["classification"] == "1");
    CHECK(report["counts"]["spikes_out"].get<std::uint64_t>() >= 5);
    CHECK(read_file(spikes_path).rfind("neuron,time_ms", 0) == 0);

    const auto bad_inputs = run_cli({"spike", "--inputs", "2", "--out", spikes_path.string()});
    CHECK(bad_inputs.exit_code == 1);

    // A pinned one-point grid calibrates to exactly that point, and the
    // emitted weights file drives the simulator to the same behavior.
    const auto grid = dir.write("grid.csv", "weight,lo,hi,steps\nsensory,10,10,1\nexc,10,10,1\n"
                                            "exc_inh,4,4,1\ninh,25,25,1\n");
    const auto weights_path = dir / "weights.csv";
    const auto cal = run_cli({"spike", "calibrate", "--grid", grid.string(), "--out",
                              weights_path.string(), "--report", (dir / "rc.json").string()});
    CHECK(cal.exit_code == 0);
    report = report_of(dir / "rc.json");
    CHECK(report["counts"]["feasible_points"] == 1);
    CHECK(report["counts"]["grid_points"] == 1);
    CHECK(report["params"]["chosen_inh"] == "25");

    const auto replay = run_cli({"spike", "--inputs", "11", "--weights", weights_path.string(),
                                 "--out", spikes_path.string(), "--report",
                                 (dir / "r11.json").string()});
    CHECK(replay.exit_code == 0);
    CHECK(report_of(dir / "r11.json")["params"]["classification"] == "0");
}
