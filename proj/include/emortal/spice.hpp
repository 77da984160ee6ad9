#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "emortal/dc_solver.hpp"
#include "emortal/graph.hpp"

namespace emortal {

struct SpiceParseResult {
    DcNetlist netlist;
    std::vector<std::string> warnings;  // skipped cards and merge notes, with line numbers
};

/// Parses the R/I/V subset used by public power-grid benchmarks:
///   R<name> <a> <b> <ohms>      I<name> <from> <to> <amps>      V<name> <n+> <n-> <volts>
/// `*` comments, SI value suffixes (k, meg, m, u, n, p, f, g, t), optional
/// `.end`. Node "0" is ground. Voltage sources must reference node 0 on one
/// side. Zero-ohm resistors are treated as shorts: their endpoints are merged
/// and the card is dropped (noted in warnings). Other dot-cards and element
/// types are skipped with a warning. Throws ParseError on malformed cards and
/// SemanticError when no resistors survive.
SpiceParseResult parse_spice_subset(std::string_view text);
SpiceParseResult parse_spice_file(const std::string& path);

/// Per-layer wire cross-sections for recovering geometry from resistance.
/// Layer "*" is the fallback for layers without their own entry.
struct GeometryConfig {
    struct Layer {
        double width = 0.0;   // m
        double height = 0.0;  // m
    };
    std::unordered_map<std::string, Layer> layers;
    double resistivity_override = 0.0;  // Ohm*m; 0 = use MaterialParams

    static GeometryConfig uniform(double width_m, double height_m);
    const Layer& lookup(const std::string& layer) const;  // throws ConfigError when absent
};

/// Parses "<layer> <width_um> <height_um>" lines plus an optional
/// "resistivity_ohm_m <value>" line; `#` comments.
GeometryConfig parse_geometry_config(std::string_view text);
GeometryConfig parse_geometry_file(const std::string& path);

/// A node's layer is its id up to the first '_' (benchmark convention
/// "n<layer>_<x>_<y>"); ids without '_' form their own layer.
std::string layer_of_node(const std::string& node_id);

/// Builds the EM graph from a solved netlist: one segment per same-layer
/// resistor with l = R*w*h/rho and j = I/(w*h), currents already in the
/// electron convention. Resistors crossing layers are vias; blocking barriers
/// stop atomic flux there, so they are skipped and the layers analyzed as
/// separate components. Returns the skipped via count through *vias_skipped
/// when non-null.
InterconnectGraph netlist_to_graph(const DcNetlist& netlist,
                                   const std::vector<double>& electron_currents,
                                   const GeometryConfig& geometry,
                                   const MaterialParams& materials,
                                   std::size_t* vias_skipped = nullptr);

}  // namespace emortal
