#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "emortal/materials.hpp"

namespace emortal {

struct Node {
    std::string id;
    std::string layer;
};

/// A wire segment between two nodes. The (from, to) pair fixes the reference
/// direction; current_density is signed in the electron-current convention,
/// positive when electrons flow from `from` to `to`.
struct Segment {
    std::string id;
    int from = -1;
    int to = -1;
    double length = 0.0;           // m
    double width = 0.0;            // m
    double height = 0.0;           // m
    double current_density = 0.0;  // A/m^2, electron convention
    std::string layer;
};

struct Violation {
    std::string code;     // e.g. "dangling-endpoint", "non-positive-length"
    std::string subject;  // offending node/segment id
    std::string message;
};

class InterconnectGraph;

/// Accumulates nodes and segments, then freezes them into an immutable graph.
class GraphBuilder {
public:
    explicit GraphBuilder(MaterialParams materials = default_cu());

    /// With auto-create off, a segment endpoint that was never declared through
    /// add_node is kept unresolved and surfaces as a dangling-endpoint
    /// violation; parsers use this to reject typos instead of inventing nodes.
    void set_auto_create_nodes(bool enabled) { auto_create_nodes_ = enabled; }

    /// Returns the node's index, creating it on first sight. A repeated id with
    /// a conflicting layer is recorded as a duplicate-id violation at build time.
    int add_node(const std::string& id, const std::string& layer = "M1");

    void add_segment(const std::string& id, const std::string& from, const std::string& to,
                     double length_m, double width_m, double height_m,
                     double current_density, const std::string& layer = "M1");

    void set_materials(const MaterialParams& m) { materials_ = m; }
    const MaterialParams& materials() const { return materials_; }

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t segment_count() const { return segments_.size(); }

    InterconnectGraph build() &&;

private:
    int resolve_endpoint(const std::string& id, const std::string& segment_id,
                         const std::string& layer);

    MaterialParams materials_;
    bool auto_create_nodes_ = true;
    std::vector<Node> nodes_;
    std::vector<Segment> segments_;
    std::unordered_map<std::string, int> node_index_;
    std::vector<Violation> deferred_violations_;
};

/// Immutable interconnect graph with CSR adjacency. Safe to share across
/// threads once built. Parallel segments between the same node pair are kept
/// (they close cycles); self-loops and dangling endpoints are reported by
/// validate() instead of being silently dropped.
class InterconnectGraph {
public:
    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<Segment>& segments() const { return segments_; }
    const MaterialParams& materials() const { return materials_; }

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t segment_count() const { return segments_.size(); }

    int node_index(const std::string& id) const;  // -1 when unknown

    int degree(int node) const {
        return static_cast<int>(adj_offset_[node + 1] - adj_offset_[node]);
    }
    /// Incident segment indices of `node`, in segment insertion order.
    std::span<const int> incident_segments(int node) const {
        return {adj_segment_.data() + adj_offset_[node],
                adj_offset_[node + 1] - adj_offset_[node]};
    }
    int opposite_end(int segment, int node) const {
        const Segment& s = segments_[segment];
        return s.from == node ? s.to : s.from;
    }

private:
    friend class GraphBuilder;
    friend std::vector<Violation> validate_graph(const InterconnectGraph&);
    InterconnectGraph() = default;
    void build_adjacency();

    MaterialParams materials_;
    std::vector<Node> nodes_;
    std::vector<Segment> segments_;
    std::unordered_map<std::string, int> node_index_;
    std::vector<std::size_t> adj_offset_;
    std::vector<int> adj_segment_;
    std::vector<Violation> deferred_violations_;
};

/// Reports every structural defect: dangling endpoints, self-loops,
/// non-positive geometry, non-finite current, isolated nodes, duplicate ids.
/// An empty result means the graph is analyzable.
std::vector<Violation> validate_graph(const InterconnectGraph& graph);

}  // namespace emortal
