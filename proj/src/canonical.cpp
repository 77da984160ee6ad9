#include "emortal/canonical.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include "emortal/errors.hpp"

namespace emortal {

namespace {

struct Token {
    std::string_view text;
    std::size_t column;  // 1-based
};

std::vector<Token> split_line(std::string_view line) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
            ++i;
            continue;
        }
        if (line[i] == '#') break;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r' &&
               line[j] != '#') {
            ++j;
        }
        tokens.push_back({line.substr(i, j - i), i + 1});
        i = j;
    }
    return tokens;
}

double parse_number(const Token& tok, std::size_t line_no) {
    double value = 0.0;
    const char* first = tok.text.data();
    const char* last = first + tok.text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        throw ParseError("expected a number, got '" + std::string(tok.text) + "'", line_no,
                         tok.column);
    }
    return value;
}

double* material_field(MaterialParams& m, std::string_view key) {
    if (key == "resistivity_ohm_m") return &m.resistivity;
    if (key == "atomic_volume_m3") return &m.atomic_volume;
    if (key == "effective_charge") return &m.effective_charge;
    if (key == "electron_charge_C") return &m.electron_charge;
    if (key == "bulk_modulus_Pa") return &m.bulk_modulus;
    if (key == "boltzmann_J_per_K") return &m.boltzmann;
    if (key == "temperature_K") return &m.temperature;
    if (key == "diffusion_prefactor_m2_per_s") return &m.diffusion_prefactor;
    if (key == "activation_energy_eV") return &m.activation_energy_ev;
    if (key == "critical_stress_Pa") return &m.critical_stress;
    if (key == "thermal_stress_Pa") return &m.thermal_stress;
    return nullptr;
}

enum class Section { none, materials, nodes, segments };

}  // namespace

InterconnectGraph parse_canonical(std::string_view text) {
    MaterialParams materials = default_cu();
    GraphBuilder builder;
    Section section = Section::none;
    bool saw_convention = false;
    bool saw_segments = false;
    bool conventional = false;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        const std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        const std::vector<Token> tok = split_line(line);
        if (tok.empty()) continue;
        const std::string_view head = tok[0].text;

        if (head == "MATERIALS" || head == "NODES" || head == "SEGMENTS") {
            if (tok.size() > 1) {
                throw ParseError("unexpected token after section header", line_no, tok[1].column);
            }
            if (head == "NODES") {
                if (saw_segments) {
                    throw ParseError("NODES section must precede SEGMENTS", line_no,
                                     tok[0].column);
                }
                builder.set_auto_create_nodes(false);
                section = Section::nodes;
            } else if (head == "SEGMENTS") {
                saw_segments = true;
                section = Section::segments;
            } else {
                section = Section::materials;
            }
            continue;
        }

        if (head == "current_convention") {
            if (section != Section::none || saw_convention) {
                throw ParseError("current_convention must appear once, before any section",
                                 line_no, tok[0].column);
            }
            if (tok.size() != 2 ||
                (tok[1].text != "electron" && tok[1].text != "conventional")) {
                throw ParseError("current_convention takes 'electron' or 'conventional'",
                                 line_no, tok.size() > 1 ? tok[1].column : tok[0].column);
            }
            conventional = tok[1].text == "conventional";
            saw_convention = true;
            continue;
        }

        switch (section) {
            case Section::none:
                throw ParseError("expected a section header, got '" + std::string(head) + "'",
                                 line_no, tok[0].column);
            case Section::materials: {
                if (tok.size() != 2) {
                    throw ParseError("material record takes 'key value'", line_no,
                                     tok[0].column);
                }
                double* field = material_field(materials, head);
                if (!field) {
                    throw ParseError("unknown material field '" + std::string(head) + "'",
                                     line_no, tok[0].column);
                }
                *field = parse_number(tok[1], line_no);
                break;
            }
            case Section::nodes: {
                if (tok.size() > 2) {
                    throw ParseError("node record takes 'id [layer]'", line_no, tok[2].column);
                }
                builder.add_node(std::string(head),
                                 tok.size() == 2 ? std::string(tok[1].text) : "M1");
                break;
            }
            case Section::segments: {
                if (tok.size() < 7 || tok.size() > 8) {
                    throw ParseError(
                        "segment record takes 'id from to length_um width_um height_um "
                        "j_A_per_m2 [layer]'",
                        line_no, tok[0].column);
                }
                const double length = parse_number(tok[3], line_no) * 1e-6;
                const double width = parse_number(tok[4], line_no) * 1e-6;
                const double height = parse_number(tok[5], line_no) * 1e-6;
                double j = parse_number(tok[6], line_no);
                if (conventional) j = -j;
                builder.add_segment(std::string(head), std::string(tok[1].text),
                                    std::string(tok[2].text), length, width, height, j,
                                    tok.size() == 8 ? std::string(tok[7].text) : "M1");
                break;
            }
        }
    }

    try {
        materials.validate();
    } catch (const std::invalid_argument& e) {
        throw SemanticError(e.what());
    }
    builder.set_materials(materials);
    InterconnectGraph graph = std::move(builder).build();

    const std::vector<Violation> report = validate_graph(graph);
    if (!report.empty()) {
        std::string message = "document describes an invalid graph:";
        for (const Violation& v : report) {
            message += "\n  [" + v.code + "] " + v.message;
        }
        throw SemanticError(message);
    }
    return graph;
}

InterconnectGraph parse_canonical_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open input file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_canonical(buf.str());
}

MaterialParams parse_materials(std::string_view text) {
    MaterialParams materials = default_cu();
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        const std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        const std::vector<Token> tok = split_line(line);
        if (tok.empty()) continue;
        if (tok[0].text == "MATERIALS") {
            if (tok.size() > 1) {
                throw ParseError("unexpected token after section header", line_no, tok[1].column);
            }
            continue;
        }
        if (tok.size() != 2) {
            throw ParseError("material record takes 'key value'", line_no, tok[0].column);
        }
        double* field = material_field(materials, tok[0].text);
        if (!field) {
            throw ParseError("unknown material field '" + std::string(tok[0].text) + "'",
                             line_no, tok[0].column);
        }
        *field = parse_number(tok[1], line_no);
    }
    try {
        materials.validate();
    } catch (const std::invalid_argument& e) {
        throw SemanticError(e.what());
    }
    return materials;
}

MaterialParams parse_materials_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open materials file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_materials(buf.str());
}

namespace {

std::string shortest(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    (void)ec;
    return std::string(buf, ptr);
}

/// Largest-precision micrometer value whose conversion back to meters is
/// bit-exact, found by nudging around the rounded quotient.
double exact_um(double meters) {
    double v = meters / 1e-6;
    if (v * 1e-6 == meters) return v;
    double up = v, down = v;
    for (int i = 0; i < 4; ++i) {
        up = std::nextafter(up, std::numeric_limits<double>::infinity());
        if (up * 1e-6 == meters) return up;
        down = std::nextafter(down, -std::numeric_limits<double>::infinity());
        if (down * 1e-6 == meters) return down;
    }
    return v;
}

}  // namespace

std::string serialize_canonical(const InterconnectGraph& graph) {
    const MaterialParams& m = graph.materials();
    std::string out;
    out += "current_convention electron\n\nMATERIALS\n";
    out += "resistivity_ohm_m " + shortest(m.resistivity) + "\n";
    out += "atomic_volume_m3 " + shortest(m.atomic_volume) + "\n";
    out += "effective_charge " + shortest(m.effective_charge) + "\n";
    out += "electron_charge_C " + shortest(m.electron_charge) + "\n";
    out += "bulk_modulus_Pa " + shortest(m.bulk_modulus) + "\n";
    out += "boltzmann_J_per_K " + shortest(m.boltzmann) + "\n";
    out += "temperature_K " + shortest(m.temperature) + "\n";
    out += "diffusion_prefactor_m2_per_s " + shortest(m.diffusion_prefactor) + "\n";
    out += "activation_energy_eV " + shortest(m.activation_energy_ev) + "\n";
    out += "critical_stress_Pa " + shortest(m.critical_stress) + "\n";
    out += "thermal_stress_Pa " + shortest(m.thermal_stress) + "\n";

    out += "\nNODES\n";
    for (const Node& n : graph.nodes()) {
        out += n.id + " " + n.layer + "\n";
    }
    out += "\nSEGMENTS\n";
    for (const Segment& s : graph.segments()) {
        out += s.id + " " + graph.nodes()[s.from].id + " " + graph.nodes()[s.to].id + " " +
               shortest(exact_um(s.length)) + " " + shortest(exact_um(s.width)) + " " +
               shortest(exact_um(s.height)) + " " + shortest(s.current_density) + " " + s.layer +
               "\n";
    }
    return out;
}

}  // namespace emortal
