#include "emortal/generator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_set>
#include <vector>

#include "emortal/blech.hpp"
#include "emortal/dc_solver.hpp"
#include "emortal/errors.hpp"

namespace emortal {

namespace {

constexpr double kUm = 1e-6;

// Uniform in [0, 1) from the top 53 bits; stable across platforms, unlike
// std::uniform_real_distribution.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

struct Edge {
    int a = 0, b = 0;
    double length = 0.0;  // m
};

std::vector<Edge> build_edges(const GenSpec& spec, std::mt19937_64& rng, int& node_count) {
    const double pitch = spec.pitch_um * kUm;
    std::vector<Edge> edges;
    switch (spec.topology) {
        case GenSpec::Topology::line: {
            node_count = spec.nodes;
            edges.reserve(static_cast<std::size_t>(node_count - 1));
            for (int i = 0; i + 1 < node_count; ++i) {
                edges.push_back({i, i + 1, pitch * (0.5 + unit(rng))});
            }
            break;
        }
        case GenSpec::Topology::random_tree: {
            node_count = spec.nodes;
            edges.reserve(static_cast<std::size_t>(node_count - 1));
            for (int i = 1; i < node_count; ++i) {
                const int parent = static_cast<int>(rng() % static_cast<std::uint64_t>(i));
                edges.push_back({parent, i, pitch * (0.5 + unit(rng))});
            }
            break;
        }
        case GenSpec::Topology::grid_mesh: {
            node_count = spec.rows * spec.cols;
            edges.reserve(static_cast<std::size_t>(spec.rows) * spec.cols * 2);
            for (int r = 0; r < spec.rows; ++r) {
                for (int c = 0; c < spec.cols; ++c) {
                    const int v = r * spec.cols + c;
                    if (c + 1 < spec.cols) edges.push_back({v, v + 1, pitch});
                    if (r + 1 < spec.rows) edges.push_back({v, v + spec.cols, pitch});
                }
            }
            break;
        }
    }
    return edges;
}

}  // namespace

GenSpec::Topology topology_from_name(const std::string& name) {
    if (name == "line") return GenSpec::Topology::line;
    if (name == "random-tree") return GenSpec::Topology::random_tree;
    if (name == "grid-mesh") return GenSpec::Topology::grid_mesh;
    throw ConfigError("unknown topology '" + name + "'; use line, random-tree, or grid-mesh");
}

InterconnectGraph generate(const GenSpec& spec) {
    if (spec.topology == GenSpec::Topology::grid_mesh) {
        if (spec.rows < 2 || spec.cols < 2) {
            throw ConfigError("grid-mesh needs rows and cols of at least 2");
        }
    } else if (spec.nodes < 2) {
        throw ConfigError("line and random-tree need at least 2 nodes");
    }
    if (spec.pitch_um <= 0.0 || spec.width_um <= 0.0 || spec.height_um <= 0.0) {
        throw ConfigError("pitch, width, and height must be positive");
    }
    if (spec.peak_jl_ratio < 0.0) throw ConfigError("peak jl ratio must be non-negative");
    spec.materials.validate();

    std::mt19937_64 rng(spec.seed);
    int node_count = 0;
    const std::vector<Edge> edges = build_edges(spec, rng, node_count);

    const double width = spec.width_um * kUm;
    const double height = spec.height_um * kUm;
    const double area = width * height;
    const double rho = spec.materials.resistivity;

    DcNetlist net;
    std::vector<int> dc_index(static_cast<std::size_t>(node_count));
    for (int v = 0; v < node_count; ++v) {
        dc_index[static_cast<std::size_t>(v)] = net.intern("n" + std::to_string(v));
    }
    net.grounds.push_back(dc_index[0]);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        net.resistors.push_back({"e" + std::to_string(e), dc_index[edges[e].a],
                                 dc_index[edges[e].b], rho * edges[e].length / area, "M1"});
    }

    // A handful of random sinks/sources against the node-0 ground. The exact
    // magnitudes do not matter: the field is rescaled against the critical
    // product below.
    // Clamped: a 2-node line has a single non-ground candidate.
    const int injections = std::min(node_count - 1, std::max(2, node_count / 50));
    std::unordered_set<int> used;
    for (int k = 0; k < injections; ++k) {
        int v;
        do {
            v = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(node_count - 1));
        } while (!used.insert(v).second);
        const double amps = (0.5 + unit(rng)) * ((rng() & 1) ? 1.0 : -1.0);
        net.current_sources.push_back({"i" + std::to_string(k), dc_index[0], dc_index[v], amps});
    }

    // Generation-grade tolerance. Branch currents derived from any voltage
    // vector are cycle-consistent; the residual only smears the injections.
    DcOptions opts;
    opts.tol = 1e-6;
    const DcSolution sol = solve_dc(net, opts);
    const std::vector<double> branch = branch_currents(net, sol.node_voltage);

    std::vector<double> j(edges.size(), 0.0);
    double max_jl = 0.0;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        j[e] = branch[e] / area;
        max_jl = std::max(max_jl, std::abs(j[e]) * edges[e].length);
    }
    if (spec.peak_jl_ratio > 0.0 && max_jl > 0.0) {
        const double scale =
            spec.peak_jl_ratio * jl_crit_from_materials(spec.materials) / max_jl;
        for (double& x : j) x *= scale;
    }

    GraphBuilder builder(spec.materials);
    for (int v = 0; v < node_count; ++v) builder.add_node("n" + std::to_string(v));
    for (std::size_t e = 0; e < edges.size(); ++e) {
        builder.add_segment("e" + std::to_string(e), "n" + std::to_string(edges[e].a),
                            "n" + std::to_string(edges[e].b), edges[e].length, width, height,
                            j[e]);
    }
    return std::move(builder).build();
}

}  // namespace emortal
