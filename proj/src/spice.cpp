#include "emortal/spice.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "emortal/errors.hpp"

namespace emortal {

namespace {

struct Token {
    std::string_view text;
    std::size_t column;
};

std::vector<Token> split_line(std::string_view line, char comment) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        const char c = line[i];
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            continue;
        }
        if (c == comment) break;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r' &&
               line[j] != comment) {
            ++j;
        }
        tokens.push_back({line.substr(i, j - i), i + 1});
        i = j;
    }
    return tokens;
}

char lower(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

/// SPICE value: number with optional scale suffix; trailing unit letters are
/// ignored ("10kohm" is 1e4).
double spice_value(const Token& tok, std::size_t line_no) {
    double value = 0.0;
    const char* first = tok.text.data();
    const char* last = first + tok.text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr == first) {
        throw ParseError("expected a value, got '" + std::string(tok.text) + "'", line_no,
                         tok.column);
    }
    std::string suffix(ptr, last);
    std::transform(suffix.begin(), suffix.end(), suffix.begin(), lower);
    if (suffix.rfind("meg", 0) == 0) return value * 1e6;
    if (!suffix.empty()) {
        switch (suffix[0]) {
            case 't': return value * 1e12;
            case 'g': return value * 1e9;
            case 'k': return value * 1e3;
            case 'm': return value * 1e-3;
            case 'u': return value * 1e-6;
            case 'n': return value * 1e-9;
            case 'p': return value * 1e-12;
            case 'f': return value * 1e-15;
            default: break;  // unit noise like "ohm", "v", "a"
        }
    }
    return value;
}

struct RawCard {
    char kind;  // 'r', 'i', 'v'
    std::string name, a, b;
    double value;
};

struct UnionFind {
    std::vector<int> parent;
    void grow(std::size_t n) {
        const std::size_t old = parent.size();
        parent.resize(n);
        std::iota(parent.begin() + old, parent.end(), static_cast<int>(old));
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(b)] = find(a); }
};

}  // namespace

SpiceParseResult parse_spice_subset(std::string_view text) {
    std::vector<RawCard> cards;
    std::size_t short_count = 0;
    SpiceParseResult out;

    // File-order interning so a merged class keeps its first-seen id.
    std::unordered_map<std::string, int> seen;
    std::vector<std::string> names;
    UnionFind uf;
    auto touch = [&](const std::string& id) {
        auto [it, inserted] = seen.try_emplace(id, static_cast<int>(names.size()));
        if (inserted) {
            names.push_back(id);
            uf.grow(names.size());
        }
        return it->second;
    };

    std::size_t line_no = 0;
    std::size_t pos = 0;
    bool ended = false;
    while (pos <= text.size() && !ended) {
        const std::size_t eol = text.find('\n', pos);
        const std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        const std::vector<Token> tok = split_line(line, '*');
        if (tok.empty()) continue;
        const std::string_view head = tok[0].text;

        if (head[0] == '.') {
            std::string card(head);
            std::transform(card.begin(), card.end(), card.begin(), lower);
            if (card == ".end") {
                ended = true;
            } else {
                out.warnings.push_back("line " + std::to_string(line_no) + ": skipped card '" +
                                       std::string(head) + "'");
            }
            continue;
        }

        const char kind = lower(head[0]);
        if (kind != 'r' && kind != 'i' && kind != 'v') {
            out.warnings.push_back("line " + std::to_string(line_no) +
                                   ": skipped unsupported element '" + std::string(head) + "'");
            continue;
        }
        if (tok.size() < 4) {
            throw ParseError("element card takes 'name node node value'", line_no,
                             tok[0].column);
        }
        const double value = spice_value(tok[3], line_no);
        RawCard card{kind, std::string(head), std::string(tok[1].text), std::string(tok[2].text),
                     value};
        touch(card.a);
        touch(card.b);
        if (kind == 'r') {
            if (!std::isfinite(value) || value < 0.0) {
                throw ParseError("resistor '" + card.name + "' has negative resistance",
                                 line_no, tok[3].column);
            }
            if (value == 0.0) {
                uf.unite(seen.at(card.a), seen.at(card.b));
                ++short_count;
                continue;
            }
        }
        if (kind == 'v' && card.a != "0" && card.b != "0") {
            throw ParseError("voltage source '" + card.name + "' must reference node 0",
                             line_no, tok[0].column);
        }
        cards.push_back(std::move(card));
    }

    if (short_count > 0) {
        out.warnings.push_back("merged " + std::to_string(short_count) +
                               " zero-ohm resistors as shorts");
    }
    std::vector<int> rep(names.size(), -1);
    for (std::size_t i = 0; i < names.size(); ++i) {
        const int root = uf.find(static_cast<int>(i));
        if (rep[root] == -1) rep[root] = static_cast<int>(i);  // first seen wins
    }
    auto rep_of = [&](const std::string& id) -> const std::string& {
        return names[rep[uf.find(seen.at(id))]];
    };

    DcNetlist& net = out.netlist;
    for (const RawCard& c : cards) {
        const std::string& a = rep_of(c.a);
        const std::string& b = rep_of(c.b);
        switch (c.kind) {
            case 'r':
                if (a == b) {
                    out.warnings.push_back("dropped resistor '" + c.name +
                                           "' shorted at both ends");
                    break;
                }
                net.resistors.push_back(
                    {c.name, net.intern(a), net.intern(b), c.value, layer_of_node(a)});
                break;
            case 'i':
                net.current_sources.push_back({c.name, net.intern(a), net.intern(b), c.value});
                break;
            case 'v':
                if (b == "0") {
                    net.voltage_sources.push_back({c.name, net.intern(a), c.value});
                } else {
                    net.voltage_sources.push_back({c.name, net.intern(b), -c.value});
                }
                break;
            default: break;
        }
    }
    if (net.resistors.empty()) {
        throw SemanticError("empty netlist: no resistors parsed");
    }
    const int ground = net.node_index("0");
    if (ground >= 0) net.grounds.push_back(ground);
    return out;
}

SpiceParseResult parse_spice_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open netlist file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spice_subset(buf.str());
}

GeometryConfig GeometryConfig::uniform(double width_m, double height_m) {
    GeometryConfig g;
    g.layers["*"] = {width_m, height_m};
    return g;
}

const GeometryConfig::Layer& GeometryConfig::lookup(const std::string& layer) const {
    auto it = layers.find(layer);
    if (it == layers.end()) it = layers.find("*");
    if (it == layers.end()) {
        throw ConfigError("no geometry configured for layer '" + layer + "'");
    }
    return it->second;
}

GeometryConfig parse_geometry_config(std::string_view text) {
    GeometryConfig config;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        const std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        const std::vector<Token> tok = split_line(line, '#');
        if (tok.empty()) continue;
        if (tok[0].text == "resistivity_ohm_m") {
            if (tok.size() != 2) {
                throw ParseError("resistivity_ohm_m takes one value", line_no, tok[0].column);
            }
            config.resistivity_override = spice_value(tok[1], line_no);
            if (!(config.resistivity_override > 0.0)) {
                throw ConfigError("resistivity override must be positive");
            }
            continue;
        }
        if (tok.size() != 3) {
            throw ParseError("geometry record takes 'layer width_um height_um'", line_no,
                             tok[0].column);
        }
        const double w = spice_value(tok[1], line_no) * 1e-6;
        const double h = spice_value(tok[2], line_no) * 1e-6;
        if (!(w > 0.0) || !(h > 0.0)) {
            throw ConfigError("geometry for layer '" + std::string(tok[0].text) +
                              "' must be positive");
        }
        config.layers[std::string(tok[0].text)] = {w, h};
    }
    if (config.layers.empty()) throw ConfigError("geometry config declares no layers");
    return config;
}

GeometryConfig parse_geometry_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open geometry file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_geometry_config(buf.str());
}

std::string layer_of_node(const std::string& node_id) {
    const std::size_t cut = node_id.find('_');
    return cut == std::string::npos ? node_id : node_id.substr(0, cut);
}

InterconnectGraph netlist_to_graph(const DcNetlist& net,
                                   const std::vector<double>& electron_currents,
                                   const GeometryConfig& geometry,
                                   const MaterialParams& materials,
                                   std::size_t* vias_skipped) {
    if (electron_currents.size() != net.resistors.size()) {
        throw ConfigError("branch currents cover " + std::to_string(electron_currents.size()) +
                          " resistors, netlist has " + std::to_string(net.resistors.size()));
    }
    const double rho =
        geometry.resistivity_override > 0.0 ? geometry.resistivity_override : materials.resistivity;

    GraphBuilder builder(materials);
    std::size_t vias = 0;
    for (std::size_t i = 0; i < net.resistors.size(); ++i) {
        const auto& r = net.resistors[i];
        const std::string& a = net.node_ids[r.a];
        const std::string& b = net.node_ids[r.b];
        const std::string layer = layer_of_node(a);
        if (layer != layer_of_node(b)) {
            ++vias;  // blocking barrier: no atomic flux through vias
            continue;
        }
        const GeometryConfig::Layer& geom = geometry.lookup(layer);
        const double length = r.ohms * geom.width * geom.height / rho;
        if (!(length > 0.0) || !std::isfinite(length)) {
            throw ConfigError("recovered non-positive length for resistor '" + r.name + "'");
        }
        builder.add_node(a, layer);
        builder.add_node(b, layer);
        builder.add_segment(r.name, a, b, length, geom.width, geom.height,
                            electron_currents[i] / (geom.width * geom.height), layer);
    }
    if (vias_skipped) *vias_skipped = vias;
    return std::move(builder).build();
}

}  // namespace emortal
