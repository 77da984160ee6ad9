#pragma once

#include <cstdint>
#include <string>

#include "emortal/graph.hpp"
#include "emortal/materials.hpp"

namespace emortal {

/// Recipe for a synthetic instance. Currents always come from a DC solve of
/// the same topology with randomly placed injections, so every instance is
/// Kirchhoff-consistent by construction, then get rescaled so the largest
/// |j|*l lands at peak_jl_ratio times the critical product.
struct GenSpec {
    enum class Topology { line, random_tree, grid_mesh };

    Topology topology = Topology::grid_mesh;
    std::uint64_t seed = 1;
    int nodes = 10;             // line / random_tree
    int rows = 10, cols = 10;   // grid_mesh
    double pitch_um = 50.0;
    double width_um = 1.0;
    double height_um = 0.2;
    double peak_jl_ratio = 1.6;  // 0 keeps the raw solved currents
    MaterialParams materials = default_cu();
};

GenSpec::Topology topology_from_name(const std::string& name);  // throws ConfigError

/// Deterministic in every field for a fixed spec, including across thread
/// counts, so repeated generation writes byte-identical files.
InterconnectGraph generate(const GenSpec& spec);

}  // namespace emortal
