#include "emortal/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "emortal/errors.hpp"

namespace emortal {

namespace {

constexpr std::size_t kMaxCells = 10000;

// One conductive face between unknowns L and R (R sits downstream in the
// segment's reference direction). Flux toward R is -g*(sR - sL) - c.
struct Face {
    int left = -1;
    int right = -1;
    double g = 0.0;     // kappa / gap, 1/s * m ... times area below
    double c = 0.0;     // kappa * beta * j, the wind drive
    double area = 0.0;  // w * h
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

DiscretizedGraph discretize(const InterconnectGraph& graph, int cells_per_segment) {
    if (cells_per_segment < 4) {
        throw ConfigError("oracle: cells_per_segment must be at least 4, got " +
                          std::to_string(cells_per_segment));
    }
    if (graph.segment_count() == 0) {
        throw ConfigError("oracle: graph has no segments");
    }
    const std::size_t total =
        static_cast<std::size_t>(cells_per_segment) * graph.segment_count();
    if (total > kMaxCells) {
        throw ConfigError("oracle: " + std::to_string(total) + " cells exceed the " +
                          std::to_string(kMaxCells) +
                          " cap; the oracle validates small structures only");
    }

    DiscretizedGraph disc;
    disc.graph = &graph;
    disc.blocks.resize(graph.segment_count());
    std::size_t next = 0;
    for (std::size_t i = 0; i < graph.segment_count(); ++i) {
        DiscretizedGraph::Block& b = disc.blocks[i];
        b.first_cell = next;
        b.cells = cells_per_segment;
        b.dx = graph.segments()[i].length / cells_per_segment;
        next += static_cast<std::size_t>(cells_per_segment);
    }
    disc.cell_count = next;

    disc.junction_of_node.assign(graph.node_count(), -1);
    for (std::size_t v = 0; v < graph.node_count(); ++v) {
        const int d = graph.degree(static_cast<int>(v));
        if (d >= 2) {
            disc.junction_of_node[v] = static_cast<int>(disc.junction_ports.size());
            auto& ports = disc.junction_ports.emplace_back();
            ports.reserve(static_cast<std::size_t>(d));
            for (int s : graph.incident_segments(static_cast<int>(v))) {
                ports.push_back({s, graph.segments()[s].to == static_cast<int>(v)});
            }
        } else {
            ++disc.ghost_faces;
        }
    }
    return disc;
}

TransientResult run_to_steady_state(const DiscretizedGraph& disc, const MaterialParams& materials,
                                    double dt0, double tol, std::ostream* trace,
                                    std::size_t max_steps) {
    const auto wall_start = std::chrono::steady_clock::now();
    materials.validate();
    if (tol <= 0.0) throw ConfigError("oracle: tolerance must be positive");
    if (max_steps == 0) throw ConfigError("oracle: max_steps must be positive");

    const InterconnectGraph& graph = *disc.graph;
    const double kappa = materials.kappa();
    const double beta = materials.beta();

    const std::size_t n_cells = disc.cell_count;
    const std::size_t n = disc.unknown_count();
    const auto junction_index = [&](int j) { return static_cast<int>(n_cells) + j; };

    // Faces and per-unknown volumes. Junction unknowns carry no volume; they
    // are algebraic flux-balance rows.
    std::vector<Face> faces;
    std::vector<double> volume(n, 0.0);
    double min_dx = std::numeric_limits<double>::infinity();
    double max_jl = 0.0;
    for (std::size_t i = 0; i < graph.segment_count(); ++i) {
        const Segment& s = graph.segments()[i];
        const DiscretizedGraph::Block& b = disc.blocks[i];
        const double area = s.width * s.height;
        const double c = kappa * beta * s.current_density;
        const int first = static_cast<int>(b.first_cell);
        const int last = first + b.cells - 1;
        min_dx = std::min(min_dx, b.dx);
        max_jl = std::max(max_jl, std::abs(s.current_density) * s.length);

        for (int k = first; k <= last; ++k) volume[static_cast<std::size_t>(k)] = area * b.dx;
        for (int k = first; k < last; ++k) {
            faces.push_back({k, k + 1, kappa / b.dx, c, area});
        }
        const int jf = disc.junction_of_node[static_cast<std::size_t>(s.from)];
        if (jf >= 0) faces.push_back({junction_index(jf), first, 2.0 * kappa / b.dx, c, area});
        const int jt = disc.junction_of_node[static_cast<std::size_t>(s.to)];
        if (jt >= 0) faces.push_back({last, junction_index(jt), 2.0 * kappa / b.dx, c, area});
    }

    // Threshold for "the profile stopped moving": a tol fraction of the
    // largest stress scale the drive can build.
    const double delta_stop = tol * beta * max_jl;

    // Constant part of the right-hand side (the wind terms).
    Eigen::VectorXd rhs_const = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    for (const Face& f : faces) {
        rhs_const[f.left] += f.area * f.c;
        rhs_const[f.right] -= f.area * f.c;
    }

    using SpMat = Eigen::SparseMatrix<double>;
    const auto assemble = [&](double dt) {
        std::vector<Eigen::Triplet<double>> trip;
        trip.reserve(faces.size() * 4 + n);
        for (std::size_t i = 0; i < n; ++i) {
            const double d = volume[i] / dt;  // 0 for junction rows
            trip.emplace_back(static_cast<int>(i), static_cast<int>(i), d);
        }
        for (const Face& f : faces) {
            const double ag = f.area * f.g;
            trip.emplace_back(f.left, f.left, ag);
            trip.emplace_back(f.left, f.right, -ag);
            trip.emplace_back(f.right, f.right, ag);
            trip.emplace_back(f.right, f.left, -ag);
        }
        SpMat m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        m.setFromTriplets(trip.begin(), trip.end());
        return m;
    };

    double dt = dt0 > 0.0 ? dt0 : 0.1 * min_dx * min_dx / kappa;

    Eigen::SparseLU<SpMat> lu;
    {
        SpMat pattern = assemble(dt);
        lu.analyzePattern(pattern);
        lu.factorize(pattern);
        if (lu.info() != Eigen::Success) {
            throw SolverError("oracle: initial factorization failed");
        }
    }

    TransientResult result;
    Eigen::VectorXd sigma = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    if (trace) *trace << "step,time_s,dt_s,max_dstress_Pa,total_mass\n";

    bool converged = false;
    for (std::size_t step = 1; step <= max_steps; ++step) {
        Eigen::VectorXd b = rhs_const;
        for (std::size_t i = 0; i < n_cells; ++i) {
            b[static_cast<Eigen::Index>(i)] += volume[i] / dt * sigma[static_cast<Eigen::Index>(i)];
        }
        Eigen::VectorXd next = lu.solve(b);
        if (lu.info() != Eigen::Success || next.hasNaN()) {
            throw SolverError("oracle: diverged at step " + std::to_string(step));
        }

        const double delta = (next - sigma).cwiseAbs().maxCoeff();
        sigma.swap(next);
        result.simulated_seconds += dt;
        result.steps = step;
        result.max_delta_history.push_back(delta);

        double mass = 0.0;
        for (std::size_t i = 0; i < n_cells; ++i) {
            mass += volume[i] * sigma[static_cast<Eigen::Index>(i)];
        }
        result.mass_history.push_back(mass);

        if (trace) {
            *trace << step << ',' << fmt(result.simulated_seconds) << ',' << fmt(dt) << ','
                   << fmt(delta) << ',' << fmt(mass) << '\n';
        }

        if (delta <= delta_stop) {
            converged = true;
            break;
        }

        dt *= 1.5;
        SpMat m = assemble(dt);
        lu.factorize(m);
        if (lu.info() != Eigen::Success) {
            throw SolverError("oracle: refactorization failed at step " + std::to_string(step));
        }
    }
    if (!converged) {
        throw SolverError("oracle: no steady state after " + std::to_string(result.steps) +
                          " steps; last max stress change " +
                          fmt(result.max_delta_history.back()) + " Pa");
    }

    result.cell_stress.assign(sigma.data(), sigma.data() + n_cells);

    // Node values: junctions are unknowns; termini extrapolate half a cell
    // along the zero-flux gradient dsigma/dx = -beta*j.
    result.node_stress.assign(graph.node_count(), 0.0);
    for (std::size_t v = 0; v < graph.node_count(); ++v) {
        const int j = disc.junction_of_node[v];
        if (j >= 0) {
            result.node_stress[v] = sigma[junction_index(j)];
            continue;
        }
        if (graph.degree(static_cast<int>(v)) == 0) continue;
        const int si = graph.incident_segments(static_cast<int>(v))[0];
        const Segment& s = graph.segments()[si];
        const DiscretizedGraph::Block& b = disc.blocks[static_cast<std::size_t>(si)];
        const double half = 0.5 * beta * s.current_density * b.dx;
        if (s.from == static_cast<int>(v)) {
            result.node_stress[v] = sigma[static_cast<Eigen::Index>(b.first_cell)] + half;
        } else {
            result.node_stress[v] =
                sigma[static_cast<Eigen::Index>(b.first_cell) + b.cells - 1] - half;
        }
    }

    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
    return result;
}

OracleVerification verify_against_engine(const InterconnectGraph& graph, int cells, double dt0,
                                         double tol) {
    OracleVerification out;
    out.engine = analyze(graph);
    out.transient = run_to_steady_state(discretize(graph, cells), graph.materials(), dt0, tol);

    out.rel_error.assign(graph.node_count(), 0.0);
    for (std::size_t v = 0; v < graph.node_count(); ++v) {
        const int comp = out.engine.component_of[v];
        if (comp < 0) continue;
        const auto& c = out.engine.components[static_cast<std::size_t>(comp)];
        double scale = std::max(std::abs(c.sigma_max), std::abs(c.sigma_min));
        if (scale == 0.0) scale = 1.0;
        const double err =
            std::abs(out.transient.node_stress[v] - out.engine.node_stress[v]) / scale;
        out.rel_error[v] = err;
        if (err > out.max_rel_error) {
            out.max_rel_error = err;
            out.argmax_node = static_cast<int>(v);
        }
    }
    return out;
}

}  // namespace emortal
