#pragma once

#include "emortal/engine.hpp"
#include "emortal/graph.hpp"

namespace emortal::reference {

/// Plain restatement of the closed-form stress solution: serial BFS rooted at
/// the lowest node index, uncompensated sums, no chunking. Kept as the
/// comparison baseline for the production kernels; also exercises reference
/// invariance, since it roots components differently than analyze() does.
StressSolution analyze(const InterconnectGraph& graph, double chord_tol_rel = 1e-6);

}  // namespace emortal::reference
