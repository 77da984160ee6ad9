#include "emortal/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "emortal/errors.hpp"

namespace emortal {

namespace {

/// Compensated accumulator; merge order is fixed by the caller so results do
/// not depend on thread count.
struct Neumaier {
    double sum = 0.0;
    double comp = 0.0;

    void add(double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    void merge(const Neumaier& other) {
        add(other.sum);
        add(other.comp);
    }
    double value() const { return sum + comp; }
};

constexpr std::size_t kChunk = 1 << 16;

/// Signed j*l of a tree edge walked from parent `s` to child: +j*l when the
/// reference direction leaves `s`, else -j*l.
double path_jl(const Segment& seg, int s) {
    const double jl = seg.current_density * seg.length;
    return seg.from == s ? jl : -jl;
}

}  // namespace

SpanningForest spanning_forest(const InterconnectGraph& graph, const AnalyzeOptions& opts) {
    const int v = static_cast<int>(graph.node_count());
    SpanningForest forest;
    forest.parent.assign(v, -1);
    forest.parent_edge.assign(v, -1);
    forest.component_of.assign(v, -1);
    forest.in_tree.assign(graph.segment_count(), 0);
    forest.order.reserve(v);

    std::vector<int> members;
    std::vector<int> frontier;
    std::vector<char> seen(v, 0);

    for (int start = 0; start < v; ++start) {
        if (forest.component_of[start] != -1) continue;
        const int comp = static_cast<int>(forest.components.size());

        // Pass 1: collect the component so the reference node can be chosen
        // before the tree is laid down.
        members.clear();
        frontier.clear();
        frontier.push_back(start);
        seen[start] = 1;
        while (!frontier.empty()) {
            const int n = frontier.back();
            frontier.pop_back();
            members.push_back(n);
            for (int e : graph.incident_segments(n)) {
                const int m = graph.opposite_end(e, n);
                if (m >= 0 && !seen[m]) {
                    seen[m] = 1;
                    frontier.push_back(m);
                }
            }
        }

        int root = -1;
        bool root_is_terminus = false;
        for (int n : members) {
            const bool terminus = graph.degree(n) == 1;
            if (root == -1 || (terminus && !root_is_terminus) ||
                (terminus == root_is_terminus && graph.nodes()[n].id < graph.nodes()[root].id)) {
                root = n;
                root_is_terminus = terminus;
            }
        }
        if (opts.root_override &&
            std::find(members.begin(), members.end(), *opts.root_override) != members.end()) {
            root = *opts.root_override;
        }

        // Pass 2: the actual traversal from the reference node. A queue gives
        // BFS; a stack gives an alternative spanning tree for invariance tests.
        SpanningForest::Component info;
        info.root = root;
        info.first = forest.order.size();
        std::vector<int>& work = frontier;
        work.clear();
        std::size_t head = 0;
        work.push_back(root);
        forest.component_of[root] = comp;
        while (head < work.size()) {
            int n;
            if (opts.traversal == Traversal::bfs) {
                n = work[head++];
            } else {
                n = work.back();
                work.pop_back();
            }
            forest.order.push_back(n);
            for (int e : graph.incident_segments(n)) {
                const int m = graph.opposite_end(e, n);
                if (m < 0 || forest.component_of[m] != -1) continue;
                forest.component_of[m] = comp;
                forest.parent[m] = n;
                forest.parent_edge[m] = e;
                forest.in_tree[e] = 1;
                work.push_back(m);
            }
        }
        info.last = forest.order.size();
        forest.components.push_back(info);
    }

    for (int e = 0; e < static_cast<int>(graph.segment_count()); ++e) {
        if (!forest.in_tree[e]) {
            forest.chords.push_back(e);
            const Segment& s = graph.segments()[e];
            if (s.from >= 0) {
                ++forest.components[forest.component_of[s.from]].segment_count;
            }
        }
    }
    for (auto& c : forest.components) c.segment_count += (c.last - c.first) - 1;
    return forest;
}

BlechSums blech_sums(const SpanningForest& forest, const InterconnectGraph& graph) {
    BlechSums sums;
    sums.path_sum.assign(graph.node_count(), 0.0);
    // `order` lists parents before children within a component, so one sweep
    // settles every node.
    for (int n : forest.order) {
        const int p = forest.parent[n];
        if (p < 0) continue;
        const Segment& seg = graph.segments()[forest.parent_edge[n]];
        sums.path_sum[n] = sums.path_sum[p] + path_jl(seg, p);
    }
    return sums;
}

namespace {

struct ChunkTask {
    int component;
    std::size_t begin;  // into comp-sorted segment list
    std::size_t end;
};

struct ChunkPartial {
    Neumaier q;
    Neumaier a;
    double max_abs_jl = 0.0;
};

}  // namespace

StressSolution node_stresses(const SpanningForest& forest, const BlechSums& sums,
                             const InterconnectGraph& graph, const AnalyzeOptions& opts) {
    const std::size_t v = graph.node_count();
    const std::size_t e = graph.segment_count();
    const std::size_t n_comp = forest.components.size();
    const double beta = graph.materials().beta();

    StressSolution sol;
    sol.node_stress.assign(v, 0.0);
    sol.component_of = forest.component_of;
    sol.components.resize(n_comp);
    sol.segment_mortal.assign(e, 0);

    // Segments sorted by component (counting sort), so chunked reductions can
    // walk contiguous ranges.
    std::vector<std::size_t> comp_seg_offset(n_comp + 1, 0);
    for (const Segment& s : graph.segments()) {
        if (s.from >= 0) ++comp_seg_offset[forest.component_of[s.from] + 1];
    }
    for (std::size_t c = 1; c <= n_comp; ++c) comp_seg_offset[c] += comp_seg_offset[c - 1];
    std::vector<int> comp_segments(comp_seg_offset.back());
    {
        std::vector<std::size_t> cursor(comp_seg_offset.begin(), comp_seg_offset.end() - 1);
        for (int i = 0; i < static_cast<int>(e); ++i) {
            const Segment& s = graph.segments()[i];
            if (s.from >= 0) comp_segments[cursor[forest.component_of[s.from]]++] = i;
        }
    }

    // Fixed-size chunks make the compensated sums independent of thread count:
    // partials are merged in chunk order regardless of which thread ran them.
    std::vector<ChunkTask> tasks;
    for (std::size_t c = 0; c < n_comp; ++c) {
        for (std::size_t b = comp_seg_offset[c]; b < comp_seg_offset[c + 1]; b += kChunk) {
            tasks.push_back({static_cast<int>(c), b,
                             std::min(b + kChunk, comp_seg_offset[c + 1])});
        }
    }
    std::vector<ChunkPartial> partials(tasks.size());

#pragma omp parallel for schedule(dynamic) if (opts.parallel)
    for (std::int64_t t = 0; t < static_cast<std::int64_t>(tasks.size()); ++t) {
        const ChunkTask& task = tasks[t];
        ChunkPartial p;
        for (std::size_t i = task.begin; i < task.end; ++i) {
            const Segment& seg = graph.segments()[comp_segments[i]];
            const double area = seg.width * seg.height;
            const double jl = seg.current_density * seg.length;
            p.q.add(area * (jl * seg.length * 0.5 + sums.path_sum[seg.from] * seg.length));
            p.a.add(area * seg.length);
            p.max_abs_jl = std::max(p.max_abs_jl, std::abs(jl));
        }
        partials[t] = p;
    }

    std::vector<double> sigma_ref(n_comp, 0.0);
    std::vector<double> max_abs_jl(n_comp, 0.0);
    {
        std::vector<Neumaier> q(n_comp), a(n_comp);
        for (std::size_t t = 0; t < tasks.size(); ++t) {
            const int c = tasks[t].component;
            q[c].merge(partials[t].q);
            a[c].merge(partials[t].a);
            max_abs_jl[c] = std::max(max_abs_jl[c], partials[t].max_abs_jl);
        }
        for (std::size_t c = 0; c < n_comp; ++c) {
            const double area_volume = a[c].value();
            sigma_ref[c] = area_volume > 0.0 ? beta * q[c].value() / area_volume : 0.0;
            sol.components[c].area_volume = area_volume;
        }
    }

#pragma omp parallel for schedule(static) if (opts.parallel)
    for (std::int64_t n = 0; n < static_cast<std::int64_t>(v); ++n) {
        const int c = forest.component_of[n];
        sol.node_stress[n] = sigma_ref[c] - beta * sums.path_sum[n];
    }

#pragma omp parallel for schedule(static) if (opts.parallel)
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(n_comp); ++c) {
        const SpanningForest::Component& fc = forest.components[c];
        StressSolution::Component& sc = sol.components[c];
        sc.root = fc.root;
        sc.nodes = fc.last - fc.first;
        sc.segments = fc.segment_count;
        int arg_max = forest.order[fc.first];
        int arg_min = arg_max;
        for (std::size_t i = fc.first; i < fc.last; ++i) {
            const int n = forest.order[i];
            if (sol.node_stress[n] > sol.node_stress[arg_max]) arg_max = n;
            if (sol.node_stress[n] < sol.node_stress[arg_min]) arg_min = n;
        }
        sc.sigma_max = sol.node_stress[arg_max];
        sc.argmax_node = arg_max;
        sc.sigma_min = sol.node_stress[arg_min];
        sc.argmin_node = arg_min;
        sc.chord_tolerance = opts.chord_tol_rel * beta * max_abs_jl[c];
    }

    sol.chord_segment = forest.chords;
    sol.chord_residual.assign(forest.chords.size(), 0.0);
#pragma omp parallel for schedule(static) if (opts.parallel)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(forest.chords.size()); ++i) {
        const Segment& seg = graph.segments()[forest.chords[i]];
        sol.chord_residual[i] = std::abs(sol.node_stress[seg.to] - sol.node_stress[seg.from] +
                                         beta * seg.current_density * seg.length);
    }

    int worst_chord = -1;
    double worst_excess = 0.0;
    for (std::size_t i = 0; i < forest.chords.size(); ++i) {
        const Segment& seg = graph.segments()[forest.chords[i]];
        StressSolution::Component& sc = sol.components[forest.component_of[seg.from]];
        sc.max_chord_residual = std::max(sc.max_chord_residual, sol.chord_residual[i]);
        const double excess = sol.chord_residual[i] - sc.chord_tolerance;
        if (excess > worst_excess) {
            worst_excess = excess;
            worst_chord = static_cast<int>(i);
        }
    }
    if (opts.check_chords && worst_chord >= 0) {
        const Segment& seg = graph.segments()[forest.chords[worst_chord]];
        const StressSolution::Component& sc = sol.components[forest.component_of[seg.from]];
        throw ChordInconsistencyError(
            "segment currents are not consistent with any node potential assignment: chord '" +
            seg.id + "' residual " + std::to_string(sol.chord_residual[worst_chord]) +
            " Pa exceeds tolerance " + std::to_string(sc.chord_tolerance) + " Pa");
    }
    return sol;
}

StressSolution& verdict(StressSolution& solution, const InterconnectGraph& graph, bool parallel) {
    const double threshold = graph.materials().stress_threshold();
    solution.threshold = threshold;
    for (auto& c : solution.components) c.immortal = c.sigma_max < threshold;
    const std::int64_t e = static_cast<std::int64_t>(graph.segment_count());
#pragma omp parallel for schedule(static) if (parallel)
    for (std::int64_t i = 0; i < e; ++i) {
        const Segment& seg = graph.segments()[i];
        const double peak =
            std::max(solution.node_stress[seg.from], solution.node_stress[seg.to]);
        solution.segment_mortal[i] = peak >= threshold ? 1 : 0;
    }
    solution.verdict_applied = true;
    return solution;
}

StressSolution analyze(const InterconnectGraph& graph, const AnalyzeOptions& opts) {
    const SpanningForest forest = spanning_forest(graph, opts);
    const BlechSums sums = blech_sums(forest, graph);
    StressSolution sol = node_stresses(forest, sums, graph, opts);
    verdict(sol, graph, opts.parallel);
    return sol;
}

std::vector<TraceRow> table1_trace(const InterconnectGraph& graph) {
    if (graph.node_count() != 3 || graph.segment_count() != 2) {
        throw std::invalid_argument("trace requires a 3-node, 2-segment path");
    }
    int reference = -1;
    for (int n = 0; n < 3; ++n) {
        const int d = graph.degree(n);
        if (d != 1 && d != 2) {
            throw std::invalid_argument("trace requires a simple path, found degree " +
                                        std::to_string(d));
        }
        if (d == 1 && (reference == -1 || graph.nodes()[n].id < graph.nodes()[reference].id)) {
            reference = n;
        }
    }
    if (reference == -1) throw std::invalid_argument("trace requires a simple path, found a cycle");
    if (graph.segments()[0].height != graph.segments()[1].height) {
        throw std::invalid_argument("trace requires uniform segment height");
    }

    std::vector<TraceRow> rows;
    rows.push_back({"init", 0.0, 0.0, 0.0});
    int at = reference;
    int previous_segment = -1;
    double area = 0.0, blech = 0.0, charge = 0.0;
    for (int step = 0; step < 2; ++step) {
        int edge = -1;
        for (int e : graph.incident_segments(at)) {
            if (e != previous_segment) edge = e;
        }
        const Segment& seg = graph.segments()[edge];
        const double jl_along = path_jl(seg, at);
        area += seg.width * seg.length;
        charge += seg.width * (jl_along * seg.length * 0.5 + blech * seg.length);
        blech += jl_along;
        rows.push_back({seg.id, area, blech, charge});
        at = graph.opposite_end(edge, at);
        previous_segment = edge;
    }
    return rows;
}

}  // namespace emortal
