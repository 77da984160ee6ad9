#include <omp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "emortal/blech.hpp"
#include "emortal/canonical.hpp"
#include "emortal/dc_solver.hpp"
#include "emortal/engine.hpp"
#include "emortal/errors.hpp"
#include "emortal/generator.hpp"
#include "emortal/graph.hpp"
#include "emortal/oracle.hpp"
#include "emortal/report.hpp"
#include "emortal/spice.hpp"

namespace {

using namespace emortal;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

int log_level() {
    static const int level = [] {
        const char* env = std::getenv("EMORTAL_LOG");
        if (!env) return 0;
        const std::string v(env);
        if (v == "debug" || v == "2") return 2;
        if (v.empty() || v == "0" || v == "quiet") return 0;
        return 1;
    }();
    return level;
}

void log_info(const std::string& msg) {
    if (log_level() >= 1) std::cerr << "emortal: " << msg << "\n";
}

void print_warnings(const std::vector<std::string>& warnings) {
    constexpr std::size_t cap = 20;
    for (std::size_t i = 0; i < warnings.size() && i < cap; ++i) {
        std::cerr << "emortal: warning: " << warnings[i] << "\n";
    }
    if (warnings.size() > cap) {
        std::cerr << "emortal: warning: " << (warnings.size() - cap) << " more suppressed\n";
    }
}

std::string shortest(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    (void)ec;
    return std::string(buf, ptr);
}

/// Options shared by every subcommand.
struct GlobalArgs {
    std::string materials_path;
    std::string format = "json";
    std::string out_path;
    std::uint64_t seed = 1;
    bool seed_set = false;
    int threads = 0;
};

void add_global(CLI::App* sub, GlobalArgs& g) {
    sub->add_option("--materials", g.materials_path, "materials override file");
    sub->add_option("--format", g.format, "report format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", g.out_path, "write output here instead of stdout");
    sub->add_option("--seed", g.seed, "random seed")->each([&g](const std::string&) {
        g.seed_set = true;
    });
    sub->add_option("--threads", g.threads, "worker thread count (0 = runtime default)");
}

void apply_threads(int threads) {
    if (threads > 0) omp_set_num_threads(threads);
}

void write_output(const std::string& out_path, const std::string& data) {
    if (out_path.empty()) {
        std::cout << data;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file '" + out_path + "'");
    out << data;
    out.flush();
    if (!out) throw ConfigError("failed writing output file '" + out_path + "'");
}

InterconnectGraph with_materials(const InterconnectGraph& g, const MaterialParams& m) {
    GraphBuilder builder(m);
    for (const Node& n : g.nodes()) builder.add_node(n.id, n.layer);
    for (const Segment& s : g.segments()) {
        builder.add_segment(s.id, g.nodes()[static_cast<std::size_t>(s.from)].id,
                            g.nodes()[static_cast<std::size_t>(s.to)].id, s.length, s.width,
                            s.height, s.current_density, s.layer);
    }
    return std::move(builder).build();
}

void append_kv(std::string& descr, const std::string& key, const std::string& value) {
    descr += key;
    descr += '=';
    descr += value;
    descr += ';';
}

std::string materials_digest(const MaterialParams& m) {
    std::string d;
    append_kv(d, "rho", shortest(m.resistivity));
    append_kv(d, "omega", shortest(m.atomic_volume));
    append_kv(d, "zstar", shortest(m.effective_charge));
    append_kv(d, "e", shortest(m.electron_charge));
    append_kv(d, "b", shortest(m.bulk_modulus));
    append_kv(d, "k", shortest(m.boltzmann));
    append_kv(d, "t", shortest(m.temperature));
    append_kv(d, "d0", shortest(m.diffusion_prefactor));
    append_kv(d, "ea", shortest(m.activation_energy_ev));
    append_kv(d, "scrit", shortest(m.critical_stress));
    append_kv(d, "sth", shortest(m.thermal_stress));
    return d;
}

RunMeta make_meta(const std::string& command, const std::string& input, const GlobalArgs& g,
                  const std::string& extra_descr, const MaterialParams& materials) {
    RunMeta meta;
    meta.command = command;
    meta.input = input;
    meta.threads = g.threads;
    if (g.seed_set) meta.seed = g.seed;

    std::string descr;
    append_kv(descr, "command", command);
    append_kv(descr, "input", input);
    append_kv(descr, "format", g.format);
    if (g.seed_set) append_kv(descr, "seed", std::to_string(g.seed));
    descr += materials_digest(materials);
    descr += extra_descr;
    meta.config_hash = fnv1a(descr);
    return meta;
}

int verdict_exit(const StressSolution& sol) { return sol.all_immortal() ? 0 : 2; }

/// analyze and compare share everything except the confusion block.
int run_analyze(const std::string& input, const GlobalArgs& g, double chord_tol,
                bool with_confusion) {
    const auto t0 = Clock::now();
    apply_threads(g.threads);

    InterconnectGraph graph = parse_canonical_file(input);
    if (!g.materials_path.empty()) {
        graph = with_materials(graph, parse_materials_file(g.materials_path));
    }
    const double parse_s = seconds_since(t0);
    log_info("parsed " + std::to_string(graph.segment_count()) + " segments, " +
             std::to_string(graph.node_count()) + " nodes");

    const auto t1 = Clock::now();
    AnalyzeOptions opts;
    opts.chord_tol_rel = chord_tol;
    StressSolution sol = analyze(graph, opts);

    std::optional<ConfusionReport> confusion;
    if (with_confusion) {
        confusion = compare(graph, sol, jl_crit_from_materials(graph.materials()));
    }
    const double analyze_s = seconds_since(t1);
    log_info("analyzed " + std::to_string(sol.components.size()) + " components in " +
             shortest(analyze_s) + " s");

    std::string extra;
    append_kv(extra, "chord_tol", shortest(chord_tol));
    RunMeta meta = make_meta(with_confusion ? "compare" : "analyze", input, g, extra,
                             graph.materials());
    meta.timing = RunMeta::Timing{parse_s, 0.0, analyze_s, seconds_since(t0)};

    write_output(g.out_path, write_report(graph, sol, confusion ? &*confusion : nullptr,
                                          report_format_from_name(g.format), meta));
    return verdict_exit(sol);
}

int run_pg(const std::string& input, const std::string& geometry_path, const GlobalArgs& g,
           double dc_tol, double scale_to_ir_drop) {
    const auto t0 = Clock::now();
    apply_threads(g.threads);

    SpiceParseResult parsed = parse_spice_file(input);
    print_warnings(parsed.warnings);
    GeometryConfig geometry = parse_geometry_file(geometry_path);
    MaterialParams materials =
        g.materials_path.empty() ? default_cu() : parse_materials_file(g.materials_path);
    const double parse_s = seconds_since(t0);
    log_info("netlist: " + std::to_string(parsed.netlist.node_count()) + " nodes, " +
             std::to_string(parsed.netlist.resistors.size()) + " resistors");

    const auto t_dc = Clock::now();
    DcOptions dc_opts;
    dc_opts.tol = dc_tol;
    dc_opts.parallel = true;
    DcSolution dc = solve_dc(parsed.netlist, dc_opts);

    if (scale_to_ir_drop > 0.0) {
        // Worst component-internal spread defines the drop. Exact when all
        // pads share one supply level: there the drop scales linearly with
        // the injections.
        std::vector<int> root(parsed.netlist.node_count());
        for (std::size_t i = 0; i < root.size(); ++i) root[i] = static_cast<int>(i);
        const auto find = [&](int v) {
            while (root[static_cast<std::size_t>(v)] != v) {
                root[static_cast<std::size_t>(v)] =
                    root[static_cast<std::size_t>(root[static_cast<std::size_t>(v)])];
                v = root[static_cast<std::size_t>(v)];
            }
            return v;
        };
        for (const auto& r : parsed.netlist.resistors) {
            const int a = find(r.a), b = find(r.b);
            if (a != b) root[static_cast<std::size_t>(a)] = b;
        }
        std::unordered_map<int, std::pair<double, double>> span;  // root -> (min, max)
        for (std::size_t v = 0; v < parsed.netlist.node_count(); ++v) {
            const int r = find(static_cast<int>(v));
            auto [it, inserted] = span.try_emplace(r, dc.node_voltage[v], dc.node_voltage[v]);
            if (!inserted) {
                it->second.first = std::min(it->second.first, dc.node_voltage[v]);
                it->second.second = std::max(it->second.second, dc.node_voltage[v]);
            }
        }
        double drop = 0.0;
        for (const auto& [r, mm] : span) drop = std::max(drop, mm.second - mm.first);
        if (drop <= 0.0) throw SolverError("cannot scale: solved network has no IR drop");
        const double factor = scale_to_ir_drop / drop;
        for (auto& src : parsed.netlist.current_sources) src.amps *= factor;
        log_info("scaling injections by " + shortest(factor) + " for " +
                 shortest(scale_to_ir_drop) + " V drop");
        dc = solve_dc(parsed.netlist, dc_opts);
    }
    const double dc_s = seconds_since(t_dc);
    log_info("dc solve: " + std::to_string(dc.stats.iterations) + " iterations, residual " +
             shortest(dc.stats.relative_residual));

    const auto t1 = Clock::now();
    const std::vector<double> branch = branch_currents(parsed.netlist, dc.node_voltage);
    std::size_t vias = 0;
    InterconnectGraph graph = netlist_to_graph(parsed.netlist, branch, geometry, materials, &vias);
    log_info("em graph: " + std::to_string(graph.segment_count()) + " segments, " +
             std::to_string(vias) + " vias skipped");

    StressSolution sol = analyze(graph);
    ConfusionReport confusion = compare(graph, sol, jl_crit_from_materials(materials));
    const double analyze_s = seconds_since(t1);

    std::string extra;
    append_kv(extra, "geometry", geometry_path);
    append_kv(extra, "dc_tol", shortest(dc_tol));
    append_kv(extra, "scale_to_ir_drop", shortest(scale_to_ir_drop));
    RunMeta meta = make_meta("pg", input, g, extra, materials);
    meta.dc = dc.stats;
    meta.timing = RunMeta::Timing{parse_s, dc_s, analyze_s, seconds_since(t0)};

    write_output(g.out_path, write_report(graph, sol, &confusion,
                                          report_format_from_name(g.format), meta));
    return verdict_exit(sol);
}

int run_oracle(const std::string& input, const GlobalArgs& g, int cells, double dt,
               double oracle_tol, double max_err) {
    const auto t0 = Clock::now();
    apply_threads(g.threads);

    InterconnectGraph graph = parse_canonical_file(input);
    if (!g.materials_path.empty()) {
        graph = with_materials(graph, parse_materials_file(g.materials_path));
    }
    OracleVerification v = verify_against_engine(graph, cells, dt, oracle_tol);
    log_info("oracle: " + std::to_string(v.transient.steps) + " steps, max rel error " +
             shortest(v.max_rel_error));

    std::string extra;
    append_kv(extra, "cells", std::to_string(cells));
    append_kv(extra, "dt", shortest(dt));
    append_kv(extra, "oracle_tol", shortest(oracle_tol));
    append_kv(extra, "max_err", shortest(max_err));
    RunMeta meta = make_meta("oracle", input, g, extra, graph.materials());

    if (report_format_from_name(g.format) == ReportFormat::csv) {
        std::string out = "node_id,engine_Pa,oracle_Pa,rel_error\n";
        for (std::size_t n = 0; n < graph.node_count(); ++n) {
            out += graph.nodes()[n].id;
            out += ',';
            out += shortest(v.engine.node_stress[n]);
            out += ',';
            out += shortest(v.transient.node_stress[n]);
            out += ',';
            out += shortest(v.rel_error[n]);
            out += '\n';
        }
        write_output(g.out_path, out);
    } else {
        nlohmann::ordered_json j;
        j["tool"] = "emortal";
        j["command"] = "oracle";
        j["input"] = input;
        j["cells"] = cells;
        j["tolerance"] = oracle_tol;
        j["max_err"] = max_err;
        j["steps"] = v.transient.steps;
        j["simulated_seconds"] = v.transient.simulated_seconds;
        j["max_rel_error"] = v.max_rel_error;
        j["argmax_node"] =
            v.argmax_node >= 0 ? graph.nodes()[static_cast<std::size_t>(v.argmax_node)].id : "";
        j["pass"] = v.max_rel_error <= max_err;
        j["timing"] = {{"wall_s", v.transient.wall_seconds}, {"total_s", seconds_since(t0)}};
        write_output(g.out_path, j.dump(2) + "\n");
    }
    return v.max_rel_error <= max_err ? 0 : 2;
}

int run_gen(const GlobalArgs& g, const std::string& topology, int nodes, int rows, int cols,
            double pitch_um, double width_um, double height_um, double peak_jl) {
    apply_threads(g.threads);
    GenSpec spec;
    spec.topology = topology_from_name(topology);
    spec.seed = g.seed;
    spec.nodes = nodes;
    spec.rows = rows;
    spec.cols = cols;
    spec.pitch_um = pitch_um;
    spec.width_um = width_um;
    spec.height_um = height_um;
    spec.peak_jl_ratio = peak_jl;
    if (!g.materials_path.empty()) spec.materials = parse_materials_file(g.materials_path);

    log_info("generating " + topology + " with seed " + std::to_string(g.seed));
    const auto t0 = Clock::now();
    InterconnectGraph graph = generate(spec);
    log_info("generated " + std::to_string(graph.segment_count()) + " segments in " +
             shortest(seconds_since(t0)) + " s");
    write_output(g.out_path, serialize_canonical(graph));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"steady-state electromigration immortality analysis"};
    app.require_subcommand(1);

    GlobalArgs g;

    std::string analyze_input;
    double chord_tol = 1e-6;
    CLI::App* analyze_cmd =
        app.add_subcommand("analyze", "exact per-node stress verdict for a canonical file");
    analyze_cmd->add_option("input", analyze_input, "canonical interconnect file")->required();
    analyze_cmd->add_option("--chord-tol", chord_tol, "relative chord residual tolerance");
    add_global(analyze_cmd, g);

    std::string compare_input;
    double compare_chord_tol = 1e-6;
    CLI::App* compare_cmd = app.add_subcommand(
        "compare", "exact verdict plus classical per-segment comparison");
    compare_cmd->add_option("input", compare_input, "canonical interconnect file")->required();
    compare_cmd->add_option("--chord-tol", compare_chord_tol,
                            "relative chord residual tolerance");
    add_global(compare_cmd, g);

    std::string pg_input, pg_geometry;
    double dc_tol = 1e-10, scale_to_ir_drop = 0.0;
    CLI::App* pg_cmd =
        app.add_subcommand("pg", "power-grid netlist: DC solve, per-layer EM analysis");
    pg_cmd->add_option("input", pg_input, "SPICE-subset netlist")->required();
    pg_cmd->add_option("--geometry", pg_geometry, "per-layer wire geometry file")->required();
    pg_cmd->add_option("--dc-tol", dc_tol, "DC solver relative residual target");
    pg_cmd->add_option("--scale-to-ir-drop", scale_to_ir_drop,
                       "rescale injections for this worst-case IR drop (V)");
    add_global(pg_cmd, g);

    std::string oracle_input;
    int cells = 32;
    double dt = 0.0, oracle_tol = 1e-6, max_err = 0.01;
    CLI::App* oracle_cmd = app.add_subcommand(
        "oracle", "validate the closed form against transient integration");
    oracle_cmd->add_option("input", oracle_input, "canonical interconnect file")->required();
    oracle_cmd->add_option("--cells", cells, "finite-volume cells per segment");
    oracle_cmd->add_option("--dt", dt, "initial time step in seconds (0 = auto)");
    oracle_cmd->add_option("--oracle-tol", oracle_tol, "steady-state stop tolerance");
    oracle_cmd->add_option("--max-err", max_err, "pass threshold on max relative error");
    add_global(oracle_cmd, g);

    std::string topology = "grid-mesh";
    int nodes = 10, rows = 10, cols = 10;
    double pitch_um = 50.0, width_um = 1.0, height_um = 0.2, peak_jl = 1.6;
    CLI::App* gen_cmd =
        app.add_subcommand("gen", "emit a synthetic Kirchhoff-consistent instance");
    gen_cmd->add_option("--topology", topology, "line, random-tree, or grid-mesh");
    gen_cmd->add_option("--nodes", nodes, "node count for line/random-tree");
    gen_cmd->add_option("--rows", rows, "grid rows");
    gen_cmd->add_option("--cols", cols, "grid columns");
    gen_cmd->add_option("--pitch-um", pitch_um, "segment pitch in um");
    gen_cmd->add_option("--width-um", width_um, "wire width in um");
    gen_cmd->add_option("--height-um", height_um, "wire height in um");
    gen_cmd->add_option("--peak-jl", peak_jl,
                        "rescale so max |j|*l is this multiple of critical (0 = raw)");
    add_global(gen_cmd, g);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (analyze_cmd->parsed()) return run_analyze(analyze_input, g, chord_tol, false);
        if (compare_cmd->parsed()) return run_analyze(compare_input, g, compare_chord_tol, true);
        if (pg_cmd->parsed()) return run_pg(pg_input, pg_geometry, g, dc_tol, scale_to_ir_drop);
        if (oracle_cmd->parsed()) return run_oracle(oracle_input, g, cells, dt, oracle_tol,
                                                    max_err);
        if (gen_cmd->parsed()) {
            return run_gen(g, topology, nodes, rows, cols, pitch_um, width_um, height_um,
                           peak_jl);
        }
    } catch (const std::exception& e) {
        std::cerr << "emortal: error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
