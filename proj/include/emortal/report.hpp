#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "emortal/blech.hpp"
#include "emortal/dc_solver.hpp"
#include "emortal/engine.hpp"
#include "emortal/graph.hpp"

namespace emortal {

/// FNV-1a, used to stamp reports with a hash of everything that determined
/// the run (inputs, materials, options).
std::uint64_t fnv1a(std::string_view data, std::uint64_t h = 14695981039346656037ull);

enum class ReportFormat { json, csv };

ReportFormat report_format_from_name(const std::string& name);  // throws ConfigError

/// Run identity echoed into every report. Timing is optional and is the one
/// block exempt from byte-for-byte reproducibility.
struct RunMeta {
    std::string command;
    std::string input;
    std::uint64_t config_hash = 0;
    std::optional<std::uint64_t> seed;
    int threads = 1;
    std::optional<DcStats> dc;
    struct Timing {
        double parse_s = 0.0;
        double dc_s = 0.0;
        double analyze_s = 0.0;
        double total_s = 0.0;
    };
    std::optional<Timing> timing;
};

/// Deterministic, stable-ordered report. JSON carries the run header,
/// materials, verdicts, per-component summaries (the 32 worst), and the
/// confusion block when a comparison is supplied. CSV emits the node and
/// segment tables (plus the scatter table behind the comparison) in one
/// stream with `#`-headed block markers. Throws std::logic_error on an empty
/// graph: failures upstream must surface as errors, never as empty reports.
std::string write_report(const InterconnectGraph& graph, const StressSolution& solution,
                         const ConfusionReport* confusion, ReportFormat format,
                         const RunMeta& meta);

// Individual CSV tables.
std::string nodes_csv(const InterconnectGraph& graph, const StressSolution& solution);
std::string segments_csv(const InterconnectGraph& graph, const StressSolution& solution,
                         const ConfusionReport* confusion);
std::string scatter_csv(const InterconnectGraph& graph, const ConfusionReport& confusion);

}  // namespace emortal
