#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "emortal/graph.hpp"

namespace emortal {

/// Resistor/current-source/voltage-source network. Node ids are interned to
/// dense indices on first use; element node fields hold those indices.
struct DcNetlist {
    struct Resistor {
        std::string name;
        int a = -1, b = -1;
        double ohms = 0.0;
        std::string layer;
    };
    /// SPICE orientation: conventional current `amps` flows from `from`
    /// through the source into `to`, i.e. it is injected at `to`.
    struct CurrentSource {
        std::string name;
        int from = -1, to = -1;
        double amps = 0.0;
    };
    /// Ideal source pinning one node to `volts` against ground.
    struct VoltageSource {
        std::string name;
        int node = -1;
        double volts = 0.0;
    };

    std::vector<std::string> node_ids;
    std::unordered_map<std::string, int> index;
    std::vector<Resistor> resistors;
    std::vector<CurrentSource> current_sources;
    std::vector<VoltageSource> voltage_sources;
    std::vector<int> grounds;

    int intern(const std::string& id);
    int node_index(const std::string& id) const;  // -1 when unknown
    std::size_t node_count() const { return node_ids.size(); }
};

struct DcOptions {
    double tol = 1e-10;        // relative residual target
    int max_iterations = 0;    // 0 = scale with problem size
    bool parallel = true;
    std::size_t dense_cutoff = 500;  // direct solve below this many unknowns
};

struct DcStats {
    std::size_t unknowns = 0;
    int iterations = 0;             // 0 for the dense path
    double relative_residual = 0.0;
    double kcl_max_rel = 0.0;       // worst node imbalance / local current scale
    bool used_dense = false;
};

struct DcSolution {
    std::vector<double> node_voltage;  // per interned node, fixed nodes included
    DcStats stats;
};

/// Nodal analysis: grounds and voltage sources are eliminated into the RHS,
/// the remaining SPD system is solved by Jacobi-preconditioned conjugate
/// gradients (dense elimination below dense_cutoff unknowns). Deterministic
/// for a fixed input regardless of thread count: reductions run over fixed
/// chunks merged in order.
///
/// Throws SolverError when a connected component has no ground or voltage
/// source, on conflicting sources, non-positive resistance, or
/// non-convergence.
DcSolution solve_dc(const DcNetlist& netlist, const DcOptions& opts = {});

/// Per-resistor current, signed in the element's (a, b) node order and
/// converted to the electron convention: returns (V_b - V_a)/R, the negated
/// conventional current, so downstream current densities feed the stress
/// model directly.
std::vector<double> branch_currents(const DcNetlist& netlist,
                                    const std::vector<double>& node_voltage);

}  // namespace emortal
