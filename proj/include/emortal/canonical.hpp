#pragma once

#include <string>
#include <string_view>

#include "emortal/graph.hpp"

namespace emortal {

/// Parses the canonical interconnect format:
///
///   # comment to end of line
///   current_convention electron|conventional   (optional, once, default electron)
///   MATERIALS                                  (optional section; Cu defaults)
///     resistivity_ohm_m 2.25e-8
///     ...
///   NODES                                      (optional; must precede SEGMENTS)
///     <node_id> [layer]
///   SEGMENTS
///     <segment_id> <from> <to> <length_um> <width_um> <height_um> <j_A_per_m2> [layer]
///
/// Current densities are stored in the electron convention; documents declared
/// `conventional` are negated on the way in. When a NODES section is present,
/// segment endpoints must be declared there; without one, endpoints are
/// created on first use.
///
/// Throws ParseError (with 1-based line/column) on malformed input and
/// SemanticError when the parsed graph fails validation.
InterconnectGraph parse_canonical(std::string_view text);
InterconnectGraph parse_canonical_file(const std::string& path);

/// Emits a document that parses back to this graph. Numbers are printed with
/// shortest round-trip formatting; micrometer fields are nudged to the exact
/// preimage of the stored meters so serialize/parse is idempotent.
std::string serialize_canonical(const InterconnectGraph& graph);

/// Parses a standalone materials override: the MATERIALS section body on its
/// own (an optional MATERIALS header line is tolerated). Unset keys keep the
/// Cu defaults. Throws ParseError/SemanticError like parse_canonical.
MaterialParams parse_materials(std::string_view text);
MaterialParams parse_materials_file(const std::string& path);

}  // namespace emortal
