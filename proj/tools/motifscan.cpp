#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "motifscan/graph.hpp"
#include "motifscan/graph_io.hpp"
#include "motifscan/ingest.hpp"
#include "motifscan/match.hpp"
#include "motifscan/oracle.hpp"
#include "motifscan/pattern.hpp"
#include "motifscan/report.hpp"
#include "motifscan/spiking.hpp"
#include "motifscan/stats.hpp"
#include "motifscan/util.hpp"

namespace fs = std::filesystem;
using namespace motifscan;

namespace {

// Exit codes: 0 success, 1 usage error, 2 data error.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string version_string() {
    std::ostringstream out;
    out << "motifscan " << kEngineVersion << " (pattern-format " << kPatternFormatVersion
        << ", report-format " << kReportFormatVersion << ")";
    return out.str();
}

std::string fmt(double value) {
    std::ostringstream out;
    out << value;
    return out.str();
}

/// Owns the RunReport of one invocation: collects inputs/params/counts while
/// the subcommand runs, then serializes to --report or stdout. The report is
/// emitted on every path, success or failure.
class Run {
public:
    Run(std::string subcommand, std::string report_path)
        : report_path_(std::move(report_path)), start_(std::chrono::steady_clock::now()) {
        report.subcommand = std::move(subcommand);
    }

    RunReport report;

    int finish(int code, const std::string& error = "") {
        report.exit_code = code;
        report.error = error;
        report.wall_time_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
                .count();
        const std::string json = report.to_json();
        if (report_path_.empty()) {
            std::cout << json;
        } else {
            try {
                write_file_atomic(report_path_, json);
            } catch (const std::exception& e) {
                std::cerr << "error: cannot write report: " << e.what() << '\n';
            }
        }
        if (!error.empty()) std::cerr << "error: " << error << '\n';
        return code;
    }

    template <typename Body>
    int guarded(Body body) {
        try {
            body();
            return finish(0);
        } catch (const UsageError& e) {
            return finish(1, e.what());
        } catch (const std::invalid_argument& e) {
            return finish(1, e.what());
        } catch (const std::exception& e) {
            return finish(2, e.what());
        }
    }

private:
    std::string report_path_;
    std::chrono::steady_clock::time_point start_;
};

// ---------------------------------------------------------------- patterns

struct PatternFlags {
    std::string file;
    std::string builtin;
    std::string profile = "unconstrained";
    std::string mode;
};

void add_pattern_flags(CLI::App* cmd, PatternFlags& pf) {
    cmd->add_option("--pattern", pf.file, "pattern file (mode/node/edge lines)");
    cmd->add_option("--builtin", pf.builtin,
                    "builtin pattern: strict-xor | extended-full-feedback | "
                    "extended-asym-feedback");
    cmd->add_option("--profile", pf.profile,
                    "role profile for --builtin: unconstrained | true | true-with-other")
        ->capture_default_str();
    cmd->add_option("--mode", pf.mode, "override match mode: induced | mono");
}

BuiltinPattern parse_builtin(const std::string& name) {
    for (auto id : {BuiltinPattern::StrictXor, BuiltinPattern::ExtendedFullFeedback,
                    BuiltinPattern::ExtendedAsymFeedback})
        if (name == builtin_pattern_name(id)) return id;
    throw UsageError("unknown builtin pattern: " + name);
}

RoleProfile parse_profile(const std::string& name) {
    for (auto p : {RoleProfile::Unconstrained, RoleProfile::True, RoleProfile::TrueWithOther})
        if (name == role_profile_name(p)) return p;
    throw UsageError("unknown role profile: " + name);
}

MatchMode parse_mode(const std::string& name) {
    if (name == "induced") return MatchMode::Induced;
    if (name == "mono") return MatchMode::Monomorphic;
    throw UsageError("unknown match mode: " + name + " (expected induced or mono)");
}

MotifPattern resolve_pattern(const PatternFlags& pf, RunReport& report) {
    if (pf.file.empty() == pf.builtin.empty())
        throw UsageError("exactly one of --pattern and --builtin is required");
    std::optional<MotifPattern> p;
    if (!pf.file.empty()) {
        report.add_input("pattern", pf.file);
        report.params["pattern"] = pf.file;
        p = load_pattern_file(pf.file);
    } else {
        const BuiltinPattern id = parse_builtin(pf.builtin);
        const RoleProfile profile = parse_profile(pf.profile);
        report.params["pattern"] = pf.builtin;
        report.params["profile"] = pf.profile;
        p = builtin_pattern(id, profile);
    }
    if (!pf.mode.empty()) p = p->with_mode(parse_mode(pf.mode));
    report.params["mode"] = std::string(match_mode_name(p->mode()));
    return std::move(*p);
}

TypedDigraph load_graph(const std::string& dir, RunReport& report) {
    report.add_input("graph_nodes", fs::path(dir) / kNodesFile);
    report.add_input("graph_edges", fs::path(dir) / kEdgesFile);
    return load_graph_dir(dir);
}

int resolve_threads(int flag) {
    if (flag < 0) throw UsageError("--threads must be >= 1");
    if (flag > 0) return flag;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Typed directed-graph motif enumeration and a spiking exclusive-or circuit"};
    app.set_version_flag("--version", version_string());
    app.require_subcommand(1);

    // ---- ingest
    auto* ingest = app.add_subcommand("ingest", "Convert source data to normalized node/edge files");
    ingest->require_subcommand(1);

    std::string ing_adjacency, ing_roles, ing_out, ing_report;
    bool ing_columns_pre = false;
    auto* ingest_worm =
        ingest->add_subcommand("worm", "Ingest a named square adjacency matrix with a roles file");
    ingest_worm->add_option("--adjacency", ing_adjacency, "adjacency matrix CSV")->required();
    ingest_worm->add_option("--roles", ing_roles, "roles CSV: name,token")->required();
    ingest_worm->add_flag("--columns-presynaptic", ing_columns_pre,
                          "treat columns as presynaptic (default: rows)");
    ingest_worm->add_option("--out", ing_out, "output graph directory")->required();
    ingest_worm->add_option("--report", ing_report, "write the run report here instead of stdout");

    std::string ed_edges, ed_nodes, ed_types, ed_mapping, ed_out, ed_report;
    auto* ingest_edges = ingest->add_subcommand("edges", "Ingest an edge list with node types");
    ingest_edges->add_option("--edges", ed_edges, "edge CSV: src,dst")->required();
    ingest_edges->add_option("--nodes", ed_nodes, "node CSV: node_id,type")->required();
    ingest_edges->add_option("--types", ed_types, "type CSV: type_id,type_name");
    ingest_edges->add_option("--mapping", ed_mapping, "worm | fly | v1-prefix | mapping file")
        ->required();
    ingest_edges->add_option("--out", ed_out, "output graph directory")->required();
    ingest_edges->add_option("--report", ed_report, "write the run report here instead of stdout");

    // ---- slice
    std::string sl_in, sl_out, sl_report;
    std::uint64_t sl_head = 0, sl_sample = 0, sl_seed = 0;
    auto* slice = app.add_subcommand("slice", "Keep a subset of a normalized graph's edges");
    slice->add_option("--in", sl_in, "input graph directory")->required();
    auto* sl_head_opt = slice->add_option("--head", sl_head, "keep the first N edges (file order)");
    auto* sl_sample_opt =
        slice->add_option("--sample", sl_sample, "keep N edges drawn uniformly (seeded)");
    sl_head_opt->excludes(sl_sample_opt);
    slice->add_option("--seed", sl_seed, "sample seed")->capture_default_str();
    slice->add_option("--out", sl_out, "output graph directory")->required();
    slice->add_option("--report", sl_report, "write the run report here instead of stdout");

    // ---- scan
    std::string sc_graph, sc_emit, sc_report;
    PatternFlags sc_pattern;
    int sc_threads = 0;
    std::uint64_t sc_emit_limit = 10000;
    auto* scan = app.add_subcommand("scan", "Count (and optionally emit) pattern matches");
    scan->add_option("--graph", sc_graph, "normalized graph directory")->required();
    add_pattern_flags(scan, sc_pattern);
    scan->add_option("--threads", sc_threads, "worker threads (default: hardware parallelism)");
    auto* sc_emit_opt =
        scan->add_option("--emit-matches", sc_emit, "write canonical matches (node-id CSV lines)");
    scan->add_option("--emit-limit", sc_emit_limit,
                     "keep the N lexicographically smallest matches")
        ->capture_default_str()
        ->needs(sc_emit_opt);
    scan->add_option("--report", sc_report, "write the run report here instead of stdout");

    // ---- batch-scan
    std::vector<std::string> bs_graphs;
    std::string bs_summary, bs_scatter, bs_report;
    PatternFlags bs_pattern;
    int bs_threads = 0;
    auto* batch = app.add_subcommand("batch-scan", "Scan several graphs with one pattern");
    batch->add_option("--graph", bs_graphs, "graph directory (repeatable)")->required();
    add_pattern_flags(batch, bs_pattern);
    batch->add_option("--threads", bs_threads, "worker threads (default: hardware parallelism)");
    batch->add_option("--summary-out", bs_summary, "summary CSV")->required();
    batch->add_option("--scatter-out", bs_scatter, "label,connections,motifs CSV");
    batch->add_option("--report", bs_report, "write the run report here instead of stdout");

    // ---- stats
    std::string st_graph, st_types_out, st_part_out, st_layers_out, st_report;
    std::vector<std::string> st_groups;
    PatternFlags st_pattern;
    int st_threads = 0;
    auto* stats = app.add_subcommand("stats", "Aggregate match composition tables");
    stats->add_option("--graph", st_graph, "normalized graph directory")->required();
    add_pattern_flags(stats, st_pattern);
    stats->add_option("--group", st_groups,
                      "slot group NAME=S1+S2 or S1+S2 (repeatable; default: one per slot)");
    stats->add_option("--threads", st_threads, "worker threads (default: hardware parallelism)");
    stats->add_option("--types-out", st_types_out, "type-frequency CSV (group,type_name,count)");
    stats->add_option("--participation-out", st_part_out,
                      "participation CSV (group,node,count)");
    stats->add_option("--layers-out", st_layers_out, "layer-signature CSV (signature,count)");
    stats->add_option("--report", st_report, "write the run report here instead of stdout");

    // ---- spike
    std::string sp_inputs, sp_weights, sp_out, sp_report;
    double sp_duration = 500.0, sp_dt = 0.1, sp_rate = 100.0, sp_window = 400.0;
    auto* spike = app.add_subcommand("spike", "Simulate the spiking exclusive-or circuit");
    spike->add_option("--inputs", sp_inputs, "input bits: 00 | 01 | 10 | 11");
    spike->add_option("--duration", sp_duration, "simulated time in ms")->capture_default_str();
    spike->add_option("--dt", sp_dt, "integration step in ms")->capture_default_str();
    spike->add_option("--rate", sp_rate, "active-input train rate in Hz")->capture_default_str();
    spike->add_option("--window", sp_window, "trailing classification window in ms")
        ->capture_default_str();
    spike->add_option("--weights", sp_weights, "weights CSV (weight,value) overriding defaults");
    spike->add_option("--out", sp_out, "spike CSV (neuron,time_ms)");
    spike->add_option("--report", sp_report, "write the run report here instead of stdout");

    std::string cal_grid, cal_out, cal_feasible, cal_report;
    auto* calibrate_cmd =
        spike->add_subcommand("calibrate", "Sweep synaptic weights for a working circuit");
    calibrate_cmd->add_option("--grid", cal_grid, "grid CSV (weight,lo,hi,steps); default grid "
                                                  "reproduces the shipped weights");
    calibrate_cmd->add_option("--out", cal_out, "chosen weights CSV (weight,value)")->required();
    calibrate_cmd->add_option("--feasible-out", cal_feasible, "all feasible points CSV");
    calibrate_cmd->add_option("--report", cal_report,
                              "write the run report here instead of stdout");

    // ---- oracle
    std::string or_graph, or_report;
    PatternFlags or_pattern;
    auto* oracle = app.add_subcommand("oracle", "Reference brute-force enumeration (small graphs)");
    oracle->add_option("--graph", or_graph, "normalized graph directory")->required();
    add_pattern_flags(oracle, or_pattern);
    oracle->add_option("--report", or_report, "write the run report here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int cli_code = app.exit(e);
        if (cli_code == 0) return 0; // --help / --version
        Run run("usage", "");
        return run.finish(1, e.what());
    }

    if (ingest_worm->parsed()) {
        Run run("ingest-worm", ing_report);
        return run.guarded([&] {
            run.report.add_input("adjacency", ing_adjacency);
            run.report.add_input("roles", ing_roles);
            run.report.params["orientation"] =
                ing_columns_pre ? "columns-presynaptic" : "rows-presynaptic";
            const auto result =
                ingest_adjacency(ing_adjacency, ing_roles, RoleMapping::preset("worm"),
                                 ing_columns_pre ? Orientation::ColumnsPresynaptic
                                                 : Orientation::RowsPresynaptic,
                                 ing_out);
            run.report.counts["nodes"] = result.nodes;
            run.report.counts["edges"] = result.edges;
            run.report.counts["self_loops"] = result.self_loops;
            run.report.counts["duplicates_collapsed"] = result.duplicates_collapsed;
            run.report.counts["unknown_role_nodes"] = result.unknown_role_nodes;
            run.report.counts["role_e"] = result.role_counts[0];
            run.report.counts["role_i"] = result.role_counts[1];
            run.report.counts["role_o"] = result.role_counts[2];
            if (result.unknown_role_nodes > 0)
                run.report.warnings.push_back(std::to_string(result.unknown_role_nodes) +
                                              " nodes lack a role mapping; assigned O");
        });
    }

    if (ingest_edges->parsed()) {
        Run run("ingest-edges", ed_report);
        return run.guarded([&] {
            run.report.add_input("edges", ed_edges);
            run.report.add_input("nodes", ed_nodes);
            if (!ed_types.empty()) run.report.add_input("types", ed_types);
            run.report.params["mapping"] = ed_mapping;
            const auto result = ingest_edge_list(ed_edges, ed_nodes, ed_types,
                                                 RoleMapping::resolve(ed_mapping), ed_out);
            run.report.counts["nodes"] = result.nodes;
            run.report.counts["edges"] = result.edges;
            run.report.counts["self_loops"] = result.self_loops;
            run.report.counts["duplicates_collapsed"] = result.duplicates_collapsed;
            run.report.counts["unknown_role_nodes"] = result.unknown_role_nodes;
            run.report.counts["role_e"] = result.role_counts[0];
            run.report.counts["role_i"] = result.role_counts[1];
            run.report.counts["role_o"] = result.role_counts[2];
            if (result.duplicates_collapsed > 0)
                run.report.warnings.push_back(std::to_string(result.duplicates_collapsed) +
                                              " duplicate edges collapsed");
            if (result.unknown_role_nodes > 0)
                run.report.warnings.push_back(std::to_string(result.unknown_role_nodes) +
                                              " nodes lack a role mapping; assigned O");
        });
    }

    if (slice->parsed()) {
        Run run("slice", sl_report);
        return run.guarded([&] {
            run.report.add_input("graph_nodes", fs::path(sl_in) / kNodesFile);
            run.report.add_input("graph_edges", fs::path(sl_in) / kEdgesFile);
            SliceSpec spec;
            if (sl_head_opt->count()) {
                spec.kind = SliceSpec::Kind::Head;
                spec.n = sl_head;
                run.report.params["slice"] = "head";
            } else if (sl_sample_opt->count()) {
                spec.kind = SliceSpec::Kind::Sample;
                spec.n = sl_sample;
                spec.seed = sl_seed;
                run.report.params["slice"] = "sample";
                run.report.params["seed"] = std::to_string(sl_seed);
            } else {
                throw UsageError("one of --head and --sample is required");
            }
            run.report.params["n"] = std::to_string(spec.n);
            const auto result = slice_edges(sl_in, spec, sl_out);
            run.report.counts["nodes"] = result.nodes;
            run.report.counts["edges"] = result.edges;
            run.report.counts["self_loops"] = result.self_loops;
        });
    }

    if (scan->parsed()) {
        Run run("scan", sc_report);
        return run.guarded([&] {
            const TypedDigraph g = load_graph(sc_graph, run.report);
            const MotifPattern p = resolve_pattern(sc_pattern, run.report);
            const int threads = resolve_threads(sc_threads);
            run.report.params["threads"] = std::to_string(threads);

            ScanProgress progress;
            run.report.has_progress = true;
            std::optional<BoundedMatchCollector> collector;
            ScanOptions options;
            options.threads = threads;
            options.progress = &progress;
            if (sc_emit_opt->count()) {
                collector.emplace(static_cast<std::size_t>(sc_emit_limit));
                options.sink = &*collector;
            }

            MatchCounts counts;
            try {
                counts = enumerate_matches(g, p, options);
            } catch (...) {
                run.report.anchors_total = progress.anchors_total.load();
                run.report.anchors_completed = progress.anchors_completed.load();
                throw;
            }
            run.report.anchors_total = progress.anchors_total.load();
            run.report.anchors_completed = progress.anchors_completed.load();
            run.report.counts["raw"] = counts.raw;
            run.report.counts["deduped"] = counts.deduped;

            if (collector) {
                const auto matches = collector->take_sorted();
                std::ostringstream out;
                for (const auto& m : matches) {
                    for (std::uint8_t i = 0; i < m.count; ++i) {
                        if (i) out << ',';
                        out << m.ids[i];
                    }
                    out << '\n';
                }
                write_file_atomic(sc_emit, out.str());
                run.report.counts["emitted"] = matches.size();
                if (collector->truncated())
                    run.report.warnings.push_back("match emission truncated at " +
                                                  std::to_string(sc_emit_limit));
            }
        });
    }

    if (batch->parsed()) {
        Run run("batch-scan", bs_report);
        return run.guarded([&] {
            const MotifPattern p = resolve_pattern(bs_pattern, run.report);
            const int threads = resolve_threads(bs_threads);
            run.report.params["threads"] = std::to_string(threads);

            std::vector<fs::path> dirs(bs_graphs.begin(), bs_graphs.end());
            const auto rows = batch_scan(dirs, p, threads);
            write_file_atomic(bs_summary, render_batch_summary(rows));
            if (!bs_scatter.empty()) write_file_atomic(bs_scatter, render_batch_scatter(rows));

            std::uint64_t failed = 0, motifs = 0;
            for (const auto& row : rows) {
                if (row.failed) {
                    ++failed;
                    run.report.warnings.push_back(row.label + " failed: " + row.error);
                } else {
                    motifs += row.counts.deduped;
                }
            }
            run.report.counts["graphs"] = rows.size();
            run.report.counts["graphs_failed"] = failed;
            run.report.counts["motifs_total"] = motifs;
        });
    }

    if (stats->parsed()) {
        Run run("stats", st_report);
        return run.guarded([&] {
            if (st_types_out.empty() && st_part_out.empty() && st_layers_out.empty())
                throw UsageError("no output requested; pass --types-out, --participation-out, "
                                 "or --layers-out");
            const TypedDigraph g = load_graph(st_graph, run.report);
            const MotifPattern p = resolve_pattern(st_pattern, run.report);
            const int threads = resolve_threads(st_threads);
            run.report.params["threads"] = std::to_string(threads);

            AggregateSpec spec;
            for (const auto& text : st_groups) {
                try {
                    spec.groups.push_back(parse_slot_group(text, p));
                } catch (const std::runtime_error& e) {
                    throw UsageError(e.what());
                }
            }
            spec.layer_signatures = !st_layers_out.empty();
            AggregateSink sink(g, p, spec);

            ScanProgress progress;
            run.report.has_progress = true;
            ScanOptions options;
            options.threads = threads;
            options.progress = &progress;
            options.sink = &sink;
            MatchCounts counts;
            try {
                counts = enumerate_matches(g, p, options);
            } catch (...) {
                run.report.anchors_total = progress.anchors_total.load();
                run.report.anchors_completed = progress.anchors_completed.load();
                throw;
            }
            run.report.anchors_total = progress.anchors_total.load();
            run.report.anchors_completed = progress.anchors_completed.load();
            run.report.counts["raw"] = counts.raw;
            run.report.counts["deduped"] = counts.deduped;

            if (!st_types_out.empty()) write_file_atomic(st_types_out, sink.render_type_table());
            if (!st_part_out.empty())
                write_file_atomic(st_part_out, sink.render_participation_table());
            if (!st_layers_out.empty()) write_file_atomic(st_layers_out, sink.render_layer_table());
        });
    }

    if (calibrate_cmd->parsed()) {
        Run run("spike-calibrate", cal_report);
        return run.guarded([&] {
            WeightGrid grid{{8, 16, 5}, {8, 16, 5}, {2, 8, 7}, {10, 30, 5}};
            if (!cal_grid.empty()) {
                run.report.add_input("grid", cal_grid);
                grid = WeightGrid{};
                bool have[4] = {false, false, false, false};
                std::istringstream in(read_file(cal_grid));
                std::string line;
                int line_no = 0;
                while (std::getline(in, line)) {
                    ++line_no;
                    const auto text = trim(line);
                    if (text.empty() || text.front() == '#') continue;
                    const auto fields = split_csv(text);
                    if (fields.size() != 4)
                        throw std::runtime_error(cal_grid + ":" + std::to_string(line_no) +
                                                 ": grid line needs 'weight,lo,hi,steps'");
                    const auto name = trim(fields[0]);
                    if (line_no == 1 && name == "weight") continue;
                    WeightAxis axis;
                    axis.lo = parse_double(trim(fields[1]), "grid lo");
                    axis.hi = parse_double(trim(fields[2]), "grid hi");
                    axis.steps = static_cast<int>(parse_u64(trim(fields[3]), "grid steps"));
                    if (axis.steps < 1 || axis.lo > axis.hi)
                        throw std::runtime_error(cal_grid + ":" + std::to_string(line_no) +
                                                 ": need lo <= hi and steps >= 1");
                    int index = -1;
                    if (name == "sensory") index = 0;
                    else if (name == "exc") index = 1;
                    else if (name == "exc_inh") index = 2;
                    else if (name == "inh") index = 3;
                    else
                        throw std::runtime_error(cal_grid + ":" + std::to_string(line_no) +
                                                 ": unknown weight '" + std::string(name) + "'");
                    (index == 0 ? grid.sensory
                     : index == 1 ? grid.exc
                     : index == 2 ? grid.exc_inh
                                  : grid.inh) = axis;
                    have[index] = true;
                }
                for (bool h : have)
                    if (!h) throw std::runtime_error("grid file must define sensory, exc, exc_inh, and inh");
            }

            const SpikingParams base; // constants; weights come from the grid
            const CalibrationResult result = calibrate(base, grid);

            std::ostringstream chosen;
            chosen << "weight,value\n"
                   << "sensory," << fmt(result.chosen.sensory) << '\n'
                   << "exc," << fmt(result.chosen.exc) << '\n'
                   << "exc_inh," << fmt(result.chosen.exc_inh) << '\n'
                   << "inh," << fmt(result.chosen.inh) << '\n';
            write_file_atomic(cal_out, chosen.str());

            if (!cal_feasible.empty()) {
                std::ostringstream feasible;
                feasible << "sensory,exc,exc_inh,inh\n";
                for (const auto& point : result.feasible)
                    feasible << fmt(point.sensory) << ',' << fmt(point.exc) << ','
                             << fmt(point.exc_inh) << ',' << fmt(point.inh) << '\n';
                write_file_atomic(cal_feasible, feasible.str());
            }

            run.report.counts["grid_points"] =
                static_cast<std::uint64_t>(grid.sensory.steps) * grid.exc.steps *
                grid.exc_inh.steps * grid.inh.steps;
            run.report.counts["feasible_points"] = result.feasible.size();
            run.report.params["chosen_sensory"] = fmt(result.chosen.sensory);
            run.report.params["chosen_exc"] = fmt(result.chosen.exc);
            run.report.params["chosen_exc_inh"] = fmt(result.chosen.exc_inh);
            run.report.params["chosen_inh"] = fmt(result.chosen.inh);
        });
    }

    if (spike->parsed()) {
        Run run("spike", sp_report);
        return run.guarded([&] {
            if (sp_inputs.size() != 2 ||
                (sp_inputs[0] != '0' && sp_inputs[0] != '1') ||
                (sp_inputs[1] != '0' && sp_inputs[1] != '1'))
                throw UsageError("--inputs must be one of 00, 01, 10, 11");
            if (sp_out.empty()) throw UsageError("--out is required");
            if (sp_window > sp_duration)
                throw UsageError("--window must not exceed --duration");

            SpikingParams params;
            params.dt_ms = sp_dt;
            params.input_rate_hz = sp_rate;
            if (!sp_weights.empty()) {
                run.report.add_input("weights", sp_weights);
                std::istringstream in(read_file(sp_weights));
                std::string line;
                int line_no = 0;
                while (std::getline(in, line)) {
                    ++line_no;
                    const auto text = trim(line);
                    if (text.empty() || text.front() == '#') continue;
                    const auto fields = split_csv(text);
                    if (fields.size() != 2)
                        throw std::runtime_error(sp_weights + ":" + std::to_string(line_no) +
                                                 ": weights line needs 'weight,value'");
                    const auto name = trim(fields[0]);
                    if (line_no == 1 && name == "weight") continue;
                    const double value = parse_double(trim(fields[1]), "weight value");
                    if (name == "sensory") params.w_sensory = value;
                    else if (name == "exc") params.w_exc = value;
                    else if (name == "exc_inh") params.w_exc_inh = value;
                    else if (name == "inh") params.w_inh = value;
                    else
                        throw std::runtime_error(sp_weights + ":" + std::to_string(line_no) +
                                                 ": unknown weight '" + std::string(name) + "'");
                }
            }

            run.report.params["inputs"] = sp_inputs;
            run.report.params["duration_ms"] = fmt(sp_duration);
            run.report.params["dt_ms"] = fmt(sp_dt);
            run.report.params["rate_hz"] = fmt(sp_rate);
            run.report.params["window_ms"] = fmt(sp_window);

            const SpikeRecord record =
                simulate(params, sp_inputs[0] == '1', sp_inputs[1] == '1', sp_duration);

            std::ostringstream out;
            out << "neuron,time_ms\n";
            for (int n = 0; n < kNeuronCount; ++n)
                for (double t : record.spikes[n]) out << kNeuronNames[n] << ',' << fmt(t) << '\n';
            write_file_atomic(sp_out, out.str());

            for (int n = 0; n < kNeuronCount; ++n)
                run.report.counts["spikes_" + to_lower(kNeuronNames[n])] =
                    record.spikes[n].size();
            run.report.counts["out_spikes_in_window"] =
                record.spike_count(kOut, sp_duration - sp_window);
            run.report.params["classification"] =
                std::string(xor_class_name(classify(record, sp_window)));
        });
    }

    if (oracle->parsed()) {
        Run run("oracle", or_report);
        return run.guarded([&] {
            const TypedDigraph g = load_graph(or_graph, run.report);
            const MotifPattern p = resolve_pattern(or_pattern, run.report);
            const OracleResult result = brute_force(g, p);
            std::cout << "raw " << result.raw << '\n' << "deduped " << result.deduped << '\n';
            for (const auto& m : result.assignments) {
                for (std::uint8_t i = 0; i < m.count; ++i) {
                    if (i) std::cout << ',';
                    std::cout << m.ids[i];
                }
                std::cout << '\n';
            }
            run.report.counts["raw"] = result.raw;
            run.report.counts["deduped"] = result.deduped;
        });
    }

    std::cerr << "error: no subcommand\n";
    return 1;
}
