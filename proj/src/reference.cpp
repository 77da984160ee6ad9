#include "emortal/reference.hpp"

#include <cmath>
#include <vector>

#include "emortal/errors.hpp"

namespace emortal::reference {

StressSolution analyze(const InterconnectGraph& graph, double chord_tol_rel) {
    const int v = static_cast<int>(graph.node_count());
    const double beta = graph.materials().beta();

    StressSolution sol;
    sol.node_stress.assign(v, 0.0);
    sol.component_of.assign(v, -1);
    sol.segment_mortal.assign(graph.segment_count(), 0);

    std::vector<double> path_sum(v, 0.0);
    std::vector<char> edge_in_tree(graph.segment_count(), 0);
    std::vector<int> queue;

    for (int start = 0; start < v; ++start) {
        if (sol.component_of[start] != -1) continue;
        const int comp = static_cast<int>(sol.components.size());
        StressSolution::Component info;
        info.root = start;

        queue.clear();
        queue.push_back(start);
        sol.component_of[start] = comp;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const int n = queue[head];
            ++info.nodes;
            for (int e : graph.incident_segments(n)) {
                const int m = graph.opposite_end(e, n);
                if (m < 0 || sol.component_of[m] != -1) continue;
                sol.component_of[m] = comp;
                edge_in_tree[e] = 1;
                const Segment& seg = graph.segments()[e];
                const double jl = seg.current_density * seg.length;
                path_sum[m] = path_sum[n] + (seg.from == n ? jl : -jl);
                queue.push_back(m);
            }
        }
        sol.components.push_back(info);
    }

    const std::size_t n_comp = sol.components.size();
    std::vector<double> q(n_comp, 0.0), a(n_comp, 0.0), max_jl(n_comp, 0.0);
    for (const Segment& seg : graph.segments()) {
        if (seg.from < 0) continue;
        const int c = sol.component_of[seg.from];
        const double area = seg.width * seg.height;
        const double jl = seg.current_density * seg.length;
        q[c] += area * (jl * seg.length * 0.5 + path_sum[seg.from] * seg.length);
        a[c] += area * seg.length;
        max_jl[c] = std::max(max_jl[c], std::abs(jl));
        ++sol.components[c].segments;
    }

    for (int n = 0; n < v; ++n) {
        const int c = sol.component_of[n];
        const double sigma_ref = a[c] > 0.0 ? beta * q[c] / a[c] : 0.0;
        sol.node_stress[n] = sigma_ref - beta * path_sum[n];
        StressSolution::Component& sc = sol.components[c];
        if (sc.argmax_node == -1 || sol.node_stress[n] > sc.sigma_max) {
            sc.sigma_max = sol.node_stress[n];
            sc.argmax_node = n;
        }
        if (sc.argmin_node == -1 || sol.node_stress[n] < sc.sigma_min) {
            sc.sigma_min = sol.node_stress[n];
            sc.argmin_node = n;
        }
    }
    for (std::size_t c = 0; c < n_comp; ++c) {
        sol.components[c].area_volume = a[c];
        sol.components[c].chord_tolerance = chord_tol_rel * beta * max_jl[c];
    }

    for (int e = 0; e < static_cast<int>(graph.segment_count()); ++e) {
        if (edge_in_tree[e]) continue;
        const Segment& seg = graph.segments()[e];
        if (seg.from < 0) continue;
        const double residual = std::abs(sol.node_stress[seg.to] - sol.node_stress[seg.from] +
                                         beta * seg.current_density * seg.length);
        sol.chord_segment.push_back(e);
        sol.chord_residual.push_back(residual);
        StressSolution::Component& sc = sol.components[sol.component_of[seg.from]];
        sc.max_chord_residual = std::max(sc.max_chord_residual, residual);
        if (residual > sc.chord_tolerance) {
            throw ChordInconsistencyError("chord '" + seg.id + "' residual " +
                                          std::to_string(residual) + " Pa exceeds tolerance " +
                                          std::to_string(sc.chord_tolerance) + " Pa");
        }
    }

    verdict(sol, graph, false);
    return sol;
}

}  // namespace emortal::reference
