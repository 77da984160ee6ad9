#pragma once

#include <cstddef>
#include <vector>

#include "emortal/engine.hpp"
#include "emortal/graph.hpp"

namespace emortal {

/// Critical current-length product of the single-segment criterion,
/// 2*(critical - thermal)/beta. A lone segment is immortal exactly when
/// |j|*l stays at or below this.
double jl_crit_from_materials(const MaterialParams& materials);

/// The classical per-segment test: immortal iff |j|*l <= jl_crit. Ignores
/// everything the segment is connected to, which is where it goes wrong.
bool classic_blech(const Segment& segment, double jl_crit);

/// Per-segment agreement between the classical test and the exact verdict.
/// Positive means immortal: FP = classical immortal but exact mortal (missed
/// failure), FN = classical mortal but exact immortal (false alarm).
struct ConfusionReport {
    enum class Class : char { tp, tn, fp, fn };

    std::size_t tp = 0, tn = 0, fp = 0, fn = 0;
    double jl_crit = 0.0;  // A/m
    std::vector<Class> segment_class;

    std::size_t total() const { return tp + tn + fp + fn; }
    static const char* label(Class c);
};

ConfusionReport compare(const InterconnectGraph& graph, const StressSolution& exact,
                        double jl_crit);

}  // namespace emortal
