#include "emortal/graph.hpp"

#include <cmath>
#include <unordered_set>
#include <utility>

namespace emortal {

GraphBuilder::GraphBuilder(MaterialParams materials) : materials_(materials) {}

int GraphBuilder::add_node(const std::string& id, const std::string& layer) {
    auto [it, inserted] = node_index_.try_emplace(id, static_cast<int>(nodes_.size()));
    if (inserted) {
        nodes_.push_back(Node{id, layer});
    } else if (nodes_[it->second].layer != layer) {
        deferred_violations_.push_back(
            {"duplicate-id", id, "node '" + id + "' declared twice with conflicting layers"});
    }
    return it->second;
}

int GraphBuilder::resolve_endpoint(const std::string& id, const std::string& segment_id,
                                   const std::string& layer) {
    auto it = node_index_.find(id);
    if (it != node_index_.end()) return it->second;
    if (auto_create_nodes_) return add_node(id, layer);
    deferred_violations_.push_back({"dangling-endpoint", segment_id,
                                    "segment '" + segment_id + "' references unknown node '" +
                                        id + "'"});
    return -1;
}

void GraphBuilder::add_segment(const std::string& id, const std::string& from,
                               const std::string& to, double length_m, double width_m,
                               double height_m, double current_density,
                               const std::string& layer) {
    Segment s;
    s.id = id;
    s.from = resolve_endpoint(from, id, layer);
    s.to = resolve_endpoint(to, id, layer);
    s.length = length_m;
    s.width = width_m;
    s.height = height_m;
    s.current_density = current_density;
    s.layer = layer;
    segments_.push_back(std::move(s));
}

InterconnectGraph GraphBuilder::build() && {
    InterconnectGraph g;
    g.materials_ = materials_;
    g.nodes_ = std::move(nodes_);
    g.segments_ = std::move(segments_);
    g.node_index_ = std::move(node_index_);
    g.deferred_violations_ = std::move(deferred_violations_);
    g.build_adjacency();
    return g;
}

void InterconnectGraph::build_adjacency() {
    adj_offset_.assign(nodes_.size() + 1, 0);
    for (const Segment& s : segments_) {
        if (s.from >= 0) ++adj_offset_[s.from + 1];
        if (s.to >= 0 && s.to != s.from) ++adj_offset_[s.to + 1];
    }
    for (std::size_t i = 1; i < adj_offset_.size(); ++i) adj_offset_[i] += adj_offset_[i - 1];
    adj_segment_.resize(adj_offset_.back());
    std::vector<std::size_t> cursor(adj_offset_.begin(), adj_offset_.end() - 1);
    for (int e = 0; e < static_cast<int>(segments_.size()); ++e) {
        const Segment& s = segments_[e];
        if (s.from >= 0) adj_segment_[cursor[s.from]++] = e;
        if (s.to >= 0 && s.to != s.from) adj_segment_[cursor[s.to]++] = e;
    }
}

int InterconnectGraph::node_index(const std::string& id) const {
    auto it = node_index_.find(id);
    return it == node_index_.end() ? -1 : it->second;
}

std::vector<Violation> validate_graph(const InterconnectGraph& graph) {
    std::vector<Violation> report = graph.deferred_violations_;
    if (graph.node_count() == 0) {
        report.push_back({"empty-graph", "", "graph has no nodes"});
        return report;
    }

    std::unordered_set<std::string> seen_segment_ids;
    seen_segment_ids.reserve(graph.segment_count());
    for (const Segment& s : graph.segments()) {
        if (!seen_segment_ids.insert(s.id).second) {
            report.push_back({"duplicate-id", s.id, "segment id '" + s.id + "' appears twice"});
        }
        if (s.from >= 0 && s.from == s.to) {
            report.push_back({"self-loop", s.id, "segment '" + s.id + "' connects a node to itself"});
        }
        if (!(s.length > 0.0) || !std::isfinite(s.length)) {
            report.push_back({"non-positive-length", s.id,
                              "segment '" + s.id + "' has non-positive length"});
        }
        if (!(s.width > 0.0) || !std::isfinite(s.width)) {
            report.push_back({"non-positive-width", s.id,
                              "segment '" + s.id + "' has non-positive width"});
        }
        if (!(s.height > 0.0) || !std::isfinite(s.height)) {
            report.push_back({"non-positive-height", s.id,
                              "segment '" + s.id + "' has non-positive height"});
        }
        if (!std::isfinite(s.current_density)) {
            report.push_back({"non-finite-current", s.id,
                              "segment '" + s.id + "' has non-finite current density"});
        }
    }
    for (std::size_t n = 0; n < graph.node_count(); ++n) {
        if (graph.degree(static_cast<int>(n)) == 0) {
            report.push_back({"isolated-node", graph.nodes()[n].id,
                              "node '" + graph.nodes()[n].id + "' has no incident segments"});
        }
    }
    return report;
}

}  // namespace emortal
