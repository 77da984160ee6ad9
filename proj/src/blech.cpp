#include "emortal/blech.hpp"

#include <cmath>
#include <stdexcept>

#include "emortal/errors.hpp"

namespace emortal {

double jl_crit_from_materials(const MaterialParams& materials) {
    materials.validate();
    return 2.0 * (materials.critical_stress - materials.thermal_stress) / materials.beta();
}

bool classic_blech(const Segment& segment, double jl_crit) {
    return std::abs(segment.current_density) * segment.length <= jl_crit;
}

const char* ConfusionReport::label(Class c) {
    switch (c) {
        case Class::tp: return "TP";
        case Class::tn: return "TN";
        case Class::fp: return "FP";
        case Class::fn: return "FN";
    }
    return "??";
}

ConfusionReport compare(const InterconnectGraph& graph, const StressSolution& exact,
                        double jl_crit) {
    if (!exact.verdict_applied) {
        throw std::logic_error("compare: stress solution has no verdict");
    }
    if (exact.segment_mortal.size() != graph.segments().size()) {
        throw std::logic_error("compare: solution does not match graph");
    }

    ConfusionReport report;
    report.jl_crit = jl_crit;
    report.segment_class.resize(graph.segments().size());

    for (std::size_t i = 0; i < graph.segments().size(); ++i) {
        const bool blech_immortal = classic_blech(graph.segments()[i], jl_crit);
        const bool exact_immortal = !exact.segment_mortal[i];
        ConfusionReport::Class c;
        if (blech_immortal && exact_immortal) {
            c = ConfusionReport::Class::tp;
            ++report.tp;
        } else if (!blech_immortal && !exact_immortal) {
            c = ConfusionReport::Class::tn;
            ++report.tn;
        } else if (blech_immortal) {
            c = ConfusionReport::Class::fp;
            ++report.fp;
        } else {
            c = ConfusionReport::Class::fn;
            ++report.fn;
        }
        report.segment_class[i] = c;
    }
    return report;
}

}  // namespace emortal
