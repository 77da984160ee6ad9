#pragma once

// Shared small instances. Dimensions in the builders are micrometers for
// readability; currents are A/m^2 in the electron convention.

#include <string>
#include <vector>

#include "emortal/graph.hpp"

namespace testsupport {

constexpr double um = 1e-6;

struct SegSpec {
    std::string id, from, to;
    double length_um, width_um, height_um, j;
};

inline emortal::InterconnectGraph make_graph(const std::vector<SegSpec>& segs,
                                             emortal::MaterialParams m = emortal::default_cu()) {
    emortal::GraphBuilder b(m);
    for (const SegSpec& s : segs) {
        b.add_segment(s.id, s.from, s.to, s.length_um * um, s.width_um * um, s.height_um * um,
                      s.j);
    }
    return std::move(b).build();
}

inline emortal::InterconnectGraph single_segment(double length_um, double j, double width_um = 1.0,
                                                 double height_um = 0.2) {
    return make_graph({{"s1", "v1", "v2", length_um, width_um, height_um, j}});
}

/// Two-segment line v1 - v2 - v3, both reference directions along the path.
inline emortal::InterconnectGraph two_segment_line(double l1_um, double l2_um, double j1, double j2,
                                                   double w1_um = 1.0, double w2_um = 1.0,
                                                   double height_um = 0.2) {
    return make_graph({{"s1", "v1", "v2", l1_um, w1_um, height_um, j1},
                       {"s2", "v2", "v3", l2_um, w2_um, height_um, j2}});
}

/// T of three 1 um wide segments meeting at c. Currents are the published
/// benchmark set; lengths are chosen here (the source figure gives only a
/// scale bar).
inline emortal::InterconnectGraph t_structure() {
    return make_graph({{"s1", "a", "c", 20, 1, 0.2, 6e10},
                       {"s2", "c", "b", 20, 1, 0.2, -4e10},
                       {"s3", "c", "d", 10, 1, 0.2, 3e10}});
}

/// Six-segment tree on seven nodes, same current set as the published tree
/// benchmark; topology and lengths chosen here.
inline emortal::InterconnectGraph tree_structure() {
    return make_graph({{"s1", "n1", "n2", 20, 1, 0.2, -1e10},
                       {"s2", "n2", "n3", 25, 1, 0.2, 5e10},
                       {"s3", "n3", "n4", 20, 1, 0.2, -4e10},
                       {"s4", "n2", "n5", 15, 1, 0.2, 2e10},
                       {"s5", "n5", "n6", 15, 1, 0.2, 4e10},
                       {"s6", "n3", "n7", 10, 1, 0.2, 2e10}});
}

/// Four-segment rectangular loop, reference directions around the cycle.
/// Signed so the cycle sum of j*l vanishes: 1*75 - 1.5*50 + 2*75 - 3*50 = 0.
inline emortal::InterconnectGraph mesh_structure() {
    return make_graph({{"s1", "m1", "m2", 75, 1, 0.2, 1e10},
                       {"s2", "m2", "m3", 50, 1, 0.2, -1.5e10},
                       {"s3", "m3", "m4", 75, 1, 0.2, 2e10},
                       {"s4", "m4", "m1", 50, 1, 0.2, -3e10}});
}

}  // namespace testsupport
