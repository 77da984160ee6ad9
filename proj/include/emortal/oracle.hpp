#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "emortal/engine.hpp"
#include "emortal/graph.hpp"
#include "emortal/materials.hpp"

namespace emortal {

/// Finite-volume layout of a graph: each segment becomes a run of uniform
/// cells, each node of degree >= 2 becomes one shared junction unknown, and
/// degree-1 nodes become zero-flux ghost faces.
struct DiscretizedGraph {
    struct Block {
        std::size_t first_cell = 0;  // index into the cell range of unknowns
        int cells = 0;
        double dx = 0.0;  // m
    };
    struct Port {
        int segment = -1;
        bool at_to_end = false;  // junction sits at the segment's `to` node
    };

    const InterconnectGraph* graph = nullptr;
    std::vector<Block> blocks;                    // per segment
    std::vector<int> junction_of_node;            // per node, -1 for termini
    std::vector<std::vector<Port>> junction_ports;
    std::size_t cell_count = 0;
    std::size_t ghost_faces = 0;  // zero-flux boundaries (one per terminus)

    std::size_t unknown_count() const { return cell_count + junction_ports.size(); }
};

/// Cells are capped at 10^4 total: this path exists to validate the
/// closed-form engine on desk-scale structures, not to scale.
DiscretizedGraph discretize(const InterconnectGraph& graph, int cells_per_segment);

struct TransientResult {
    std::vector<double> node_stress;         // Pa, per graph node
    std::vector<double> cell_stress;         // Pa, final interior profile
    std::vector<double> max_delta_history;   // Pa, per accepted step
    std::vector<double> mass_history;        // m^3 * Pa, should hold near 0
    std::size_t steps = 0;
    double simulated_seconds = 0.0;
    double wall_seconds = 0.0;
};

/// Backward-Euler integration from a stress-free start until the largest
/// per-step stress change falls to tol * beta * max|j*l|. dt0 <= 0 picks
/// 0.1 * (min dx)^2 / kappa; the step grows 1.5x after each accepted step.
/// Throws SolverError on NaN or when max_steps is exhausted. `trace`, when
/// given, receives one CSV row per step (step, time, dt, max dstress, mass).
TransientResult run_to_steady_state(const DiscretizedGraph& disc, const MaterialParams& materials,
                                    double dt0 = 0.0, double tol = 1e-6,
                                    std::ostream* trace = nullptr,
                                    std::size_t max_steps = 20000);

struct OracleVerification {
    std::vector<double> rel_error;  // per node, against per-component scale
    double max_rel_error = 0.0;
    int argmax_node = -1;
    TransientResult transient;
    StressSolution engine;
};

/// Runs both paths and reports per-node |oracle - engine| normalized by the
/// component's peak |engine| stress (absolute when a component is all-zero).
OracleVerification verify_against_engine(const InterconnectGraph& graph, int cells = 32,
                                         double dt0 = 0.0, double tol = 1e-6);

}  // namespace emortal
