#include "emortal/report.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "emortal/errors.hpp"

namespace emortal {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string shortest(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    (void)ec;
    return std::string(buf, ptr);
}

std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

ordered_json materials_json(const MaterialParams& m) {
    ordered_json j;
    j["resistivity_ohm_m"] = m.resistivity;
    j["atomic_volume_m3"] = m.atomic_volume;
    j["effective_charge"] = m.effective_charge;
    j["electron_charge_C"] = m.electron_charge;
    j["bulk_modulus_Pa"] = m.bulk_modulus;
    j["boltzmann_J_per_K"] = m.boltzmann;
    j["temperature_K"] = m.temperature;
    j["diffusion_prefactor_m2_per_s"] = m.diffusion_prefactor;
    j["activation_energy_eV"] = m.activation_energy_ev;
    j["critical_stress_Pa"] = m.critical_stress;
    j["thermal_stress_Pa"] = m.thermal_stress;
    j["beta_Pa_m_per_A"] = m.beta();
    j["kappa_m2_per_s"] = m.kappa();
    return j;
}

constexpr std::size_t kComponentRows = 32;

}  // namespace

std::uint64_t fnv1a(std::string_view data, std::uint64_t h) {
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

ReportFormat report_format_from_name(const std::string& name) {
    if (name == "json") return ReportFormat::json;
    if (name == "csv") return ReportFormat::csv;
    throw ConfigError("unknown report format '" + name + "'; use json or csv");
}

std::string nodes_csv(const InterconnectGraph& graph, const StressSolution& solution) {
    std::string out = "node_id,layer,component_id,stress_Pa,is_max_in_component\n";
    for (std::size_t v = 0; v < graph.node_count(); ++v) {
        const int comp = solution.component_of[v];
        const bool is_max =
            comp >= 0 &&
            solution.components[static_cast<std::size_t>(comp)].argmax_node ==
                static_cast<int>(v);
        out += graph.nodes()[v].id;
        out += ',';
        out += graph.nodes()[v].layer;
        out += ',';
        out += std::to_string(comp);
        out += ',';
        out += shortest(solution.node_stress[v]);
        out += ',';
        out += is_max ? '1' : '0';
        out += '\n';
    }
    return out;
}

std::string segments_csv(const InterconnectGraph& graph, const StressSolution& solution,
                         const ConfusionReport* confusion) {
    std::string out = "segment_id,from,to,jl_A_per_m,exact_mortal,blech_mortal,class\n";
    for (std::size_t e = 0; e < graph.segment_count(); ++e) {
        const Segment& s = graph.segments()[e];
        out += s.id;
        out += ',';
        out += graph.nodes()[static_cast<std::size_t>(s.from)].id;
        out += ',';
        out += graph.nodes()[static_cast<std::size_t>(s.to)].id;
        out += ',';
        out += shortest(s.current_density * s.length);
        out += ',';
        out += solution.segment_mortal[e] ? '1' : '0';
        out += ',';
        if (confusion) {
            out += classic_blech(s, confusion->jl_crit) ? '0' : '1';
            out += ',';
            out += ConfusionReport::label(confusion->segment_class[e]);
        } else {
            out += ',';
        }
        out += '\n';
    }
    return out;
}

std::string scatter_csv(const InterconnectGraph& graph, const ConfusionReport& confusion) {
    std::string out = "segment_id,abs_j_A_per_m2,length_m,class\n";
    for (std::size_t e = 0; e < graph.segment_count(); ++e) {
        const Segment& s = graph.segments()[e];
        out += s.id;
        out += ',';
        out += shortest(std::abs(s.current_density));
        out += ',';
        out += shortest(s.length);
        out += ',';
        out += ConfusionReport::label(confusion.segment_class[e]);
        out += '\n';
    }
    return out;
}

std::string write_report(const InterconnectGraph& graph, const StressSolution& solution,
                         const ConfusionReport* confusion, ReportFormat format,
                         const RunMeta& meta) {
    if (graph.node_count() == 0) {
        throw std::logic_error("write_report: empty graph; upstream should have failed");
    }
    if (solution.node_stress.size() != graph.node_count() ||
        solution.segment_mortal.size() != graph.segment_count()) {
        throw std::logic_error("write_report: solution does not match graph");
    }
    if (confusion && confusion->segment_class.size() != graph.segment_count()) {
        throw std::logic_error("write_report: comparison does not match graph");
    }

    if (format == ReportFormat::csv) {
        std::string out;
        out += "# emortal " + meta.command + " config=" + hex64(meta.config_hash) + "\n";
        out += "# nodes\n";
        out += nodes_csv(graph, solution);
        out += "# segments\n";
        out += segments_csv(graph, solution, confusion);
        if (confusion) {
            out += "# scatter\n";
            out += scatter_csv(graph, *confusion);
        }
        return out;
    }

    ordered_json j;
    j["tool"] = "emortal";
    j["command"] = meta.command;
    j["input"] = meta.input;
    j["config_hash"] = hex64(meta.config_hash);
    if (meta.seed) j["seed"] = *meta.seed;
    j["threads"] = meta.threads;
    j["materials"] = materials_json(graph.materials());

    j["graph"] = {{"nodes", graph.node_count()},
                  {"segments", graph.segment_count()},
                  {"components", solution.components.size()}};

    std::size_t mortal_segments = 0;
    for (char m : solution.segment_mortal) mortal_segments += m ? 1u : 0u;
    j["verdict"] = {{"threshold_Pa", solution.threshold},
                    {"all_immortal", solution.all_immortal()},
                    {"mortal_segments", mortal_segments}};

    // Worst components first; everything beyond kComponentRows is summarized
    // by graph.components and the full CSV tables.
    std::vector<std::size_t> order(solution.components.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& ca = solution.components[a];
        const auto& cb = solution.components[b];
        if (ca.sigma_max != cb.sigma_max) return ca.sigma_max > cb.sigma_max;
        return a < b;
    });
    ordered_json rows = ordered_json::array();
    for (std::size_t k = 0; k < order.size() && k < kComponentRows; ++k) {
        const auto& c = solution.components[order[k]];
        ordered_json row;
        row["root"] = graph.nodes()[static_cast<std::size_t>(c.root)].id;
        row["nodes"] = c.nodes;
        row["segments"] = c.segments;
        row["volume_m3"] = c.area_volume;
        row["sigma_max_Pa"] = c.sigma_max;
        row["argmax_node"] = graph.nodes()[static_cast<std::size_t>(c.argmax_node)].id;
        row["sigma_min_Pa"] = c.sigma_min;
        row["argmin_node"] = graph.nodes()[static_cast<std::size_t>(c.argmin_node)].id;
        row["max_chord_residual_Pa"] = c.max_chord_residual;
        row["immortal"] = c.immortal;
        rows.push_back(std::move(row));
    }
    j["components"] = std::move(rows);
    if (order.size() > kComponentRows) {
        j["components_omitted"] = order.size() - kComponentRows;
    }

    if (confusion) {
        j["confusion"] = {{"jl_crit_A_per_m", confusion->jl_crit},
                          {"tp", confusion->tp},
                          {"tn", confusion->tn},
                          {"fp", confusion->fp},
                          {"fn", confusion->fn}};
    }
    if (meta.dc) {
        j["dc_solver"] = {{"unknowns", meta.dc->unknowns},
                          {"iterations", meta.dc->iterations},
                          {"relative_residual", meta.dc->relative_residual},
                          {"kcl_max_rel", meta.dc->kcl_max_rel},
                          {"used_dense", meta.dc->used_dense}};
    }
    if (meta.timing) {
        j["timing"] = {{"parse_s", meta.timing->parse_s},
                       {"dc_s", meta.timing->dc_s},
                       {"analyze_s", meta.timing->analyze_s},
                       {"total_s", meta.timing->total_s}};
    }
    return j.dump(2) + "\n";
}

}  // namespace emortal
