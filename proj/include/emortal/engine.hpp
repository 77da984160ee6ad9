#pragma once

#include <optional>
#include <string>
#include <vector>

#include "emortal/graph.hpp"

namespace emortal {

enum class Traversal { bfs, dfs };

struct AnalyzeOptions {
    Traversal traversal = Traversal::bfs;
    /// Relative chord-residual tolerance, scaled per component by
    /// beta * max |j*l|. Currents from an iterative DC solve are only
    /// approximately potential-derived, so this is not machine epsilon.
    double chord_tol_rel = 1e-6;
    /// When set, the component containing this node is rooted at it instead of
    /// at its default reference node.
    std::optional<int> root_override;
    bool check_chords = true;
    bool parallel = true;
};

/// One rooted tree per connected component plus the chord edges removed to
/// break cycles. Tree edges per component always count nodes-1; chords and
/// tree edges together cover every segment.
struct SpanningForest {
    struct Component {
        int root = -1;
        std::size_t first = 0;  // range [first, last) into `order`
        std::size_t last = 0;
        std::size_t segment_count = 0;  // tree edges + chords in this component
    };

    std::vector<int> parent;        // per node; -1 at roots
    std::vector<int> parent_edge;   // per node; segment index to parent, -1 at roots
    std::vector<int> component_of;  // per node
    std::vector<int> order;         // traversal order, grouped by component
    std::vector<Component> components;
    std::vector<int> chords;        // segment indices outside the forest
    std::vector<char> in_tree;      // per segment

    std::size_t tree_edge_count() const { return order.size() - components.size(); }
};

/// Signed sum of j*l along the unique tree path from the component's reference
/// node to each node. Zero at every reference node by construction.
struct BlechSums {
    std::vector<double> path_sum;  // A/m, per node
};

struct StressSolution {
    struct Component {
        int root = -1;
        std::size_t nodes = 0;
        std::size_t segments = 0;
        double area_volume = 0.0;  // sum of w*h*l, m^3
        double sigma_max = 0.0;    // Pa
        int argmax_node = -1;
        double sigma_min = 0.0;  // Pa (reported, not flagged; hillock side)
        int argmin_node = -1;
        double max_chord_residual = 0.0;  // Pa
        double chord_tolerance = 0.0;     // Pa
        bool immortal = false;
    };

    std::vector<double> node_stress;  // Pa, per node
    std::vector<int> component_of;    // per node
    std::vector<Component> components;
    std::vector<char> segment_mortal;      // per segment, set by verdict()
    std::vector<double> chord_residual;    // Pa, parallel to forest chords
    std::vector<int> chord_segment;        // segment index per chord
    double threshold = 0.0;                // Pa, critical - thermal
    bool verdict_applied = false;

    bool all_immortal() const {
        for (const Component& c : components)
            if (!c.immortal) return false;
        return true;
    }
};

/// Row of the running-sum trace for a two-segment line: state after each
/// traversal step. Sums follow the uniform-height convention (height factored
/// out of A and Q, so sigma^ref = beta*Q/A only when heights match).
struct TraceRow {
    std::string label;     // "init" or the traversed segment's id
    double area_sum;       // sum of w*l, m^2
    double blech_sum;      // A/m, at the distal node of the step
    double charge_sum;     // sum of w*(j*l^2/2 + B_proximal*l), A
};

/// Extracts the spanning forest. Deterministic for a given graph: components
/// are discovered in node-index order and each is rooted at its
/// lexicographically-smallest degree-1 node id, falling back to the smallest
/// node id when the component has no terminus.
SpanningForest spanning_forest(const InterconnectGraph& graph, const AnalyzeOptions& opts = {});

/// Single traversal over tree edges; O(|E|).
BlechSums blech_sums(const SpanningForest& forest, const InterconnectGraph& graph);

/// Closed-form per-node steady-state stress. Per component, accumulates
///   Q = sum w*h*(j*l^2/2 + B_from*l)   and   A = sum w*h*l
/// over every segment (chords included), sets sigma at the reference node to
/// beta*Q/A and propagates sigma_i = sigma_ref - beta*B_i. Taking B at the
/// reference-direction source endpoint with the raw signed j is the
/// orientation-free form of the path-directed sum and stays well defined for
/// chords whose endpoints sit at equal tree depth.
///
/// Throws ChordInconsistencyError when a chord's |sigma_to - sigma_from +
/// beta*j*l| exceeds the per-component tolerance (currents not derivable from
/// potentials) unless opts.check_chords is off.
StressSolution node_stresses(const SpanningForest& forest, const BlechSums& sums,
                             const InterconnectGraph& graph, const AnalyzeOptions& opts = {});

/// Flags components immortal when max node stress < critical - thermal and
/// segments mortal when either endpoint reaches the threshold.
StressSolution& verdict(StressSolution& solution, const InterconnectGraph& graph,
                        bool parallel = true);

/// spanning_forest + blech_sums + node_stresses + verdict in one call.
StressSolution analyze(const InterconnectGraph& graph, const AnalyzeOptions& opts = {});

/// Running sums for a 3-node path, one row per traversal step plus the
/// initialization row. Requires uniform segment height. Throws
/// std::invalid_argument on any other shape.
std::vector<TraceRow> table1_trace(const InterconnectGraph& graph);

}  // namespace emortal
