#include "emortal/dc_solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

#include "emortal/errors.hpp"

namespace emortal {

int DcNetlist::intern(const std::string& id) {
    auto [it, inserted] = index.try_emplace(id, static_cast<int>(node_ids.size()));
    if (inserted) node_ids.push_back(id);
    return it->second;
}

int DcNetlist::node_index(const std::string& id) const {
    auto it = index.find(id);
    return it == index.end() ? -1 : it->second;
}

namespace {

constexpr std::size_t kChunk = 1 << 15;

/// Dot product with a fixed chunk decomposition so the result does not depend
/// on the number of threads.
double det_dot(const std::vector<double>& a, const std::vector<double>& b, bool parallel) {
    const std::size_t n = a.size();
    const std::size_t chunks = (n + kChunk - 1) / kChunk;
    std::vector<double> partial(chunks, 0.0);
#pragma omp parallel for schedule(static) if (parallel)
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
        const std::size_t end = std::min(n, (c + 1) * kChunk);
        double s = 0.0;
        for (std::size_t i = c * kChunk; i < end; ++i) s += a[i] * b[i];
        partial[c] = s;
    }
    double s = 0.0;
    for (double p : partial) s += p;
    return s;
}

struct Csr {
    std::vector<std::size_t> offset;
    std::vector<int> col;
    std::vector<double> val;
    std::vector<double> diag;

    void matvec(const std::vector<double>& x, std::vector<double>& y, bool parallel) const {
        const std::int64_t n = static_cast<std::int64_t>(diag.size());
#pragma omp parallel for schedule(static) if (parallel)
        for (std::int64_t r = 0; r < n; ++r) {
            double s = diag[r] * x[r];
            for (std::size_t k = offset[r]; k < offset[r + 1]; ++k) s += val[k] * x[col[k]];
            y[r] = s;
        }
    }
};

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(b)] = find(a); }
};

}  // namespace

DcSolution solve_dc(const DcNetlist& net, const DcOptions& opts) {
    const std::size_t n = net.node_count();

    // Fixed potentials: grounds at 0, voltage sources at their value.
    constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> fixed(n, kUnset);
    for (int g : net.grounds) fixed[g] = 0.0;
    for (const auto& vs : net.voltage_sources) {
        if (!std::isnan(fixed[vs.node]) && fixed[vs.node] != vs.volts) {
            throw SolverError("conflicting potential at node '" + net.node_ids[vs.node] + "'");
        }
        fixed[vs.node] = vs.volts;
    }

    for (const auto& r : net.resistors) {
        if (!(r.ohms > 0.0) || !std::isfinite(r.ohms)) {
            throw SolverError("resistor '" + r.name + "' has non-positive resistance");
        }
    }

    // Every resistive component needs a fixed node; current sources do not
    // conduct, so a source feeding an unanchored component is singular too.
    UnionFind uf(n);
    for (const auto& r : net.resistors) uf.unite(r.a, r.b);
    {
        std::vector<char> anchored(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            if (!std::isnan(fixed[i])) anchored[uf.find(static_cast<int>(i))] = 1;
        }
        std::vector<char> loaded(n, 0);
        for (const auto& r : net.resistors) loaded[uf.find(r.a)] = 1;
        for (const auto& cs : net.current_sources) {
            loaded[uf.find(cs.from)] = 1;
            loaded[uf.find(cs.to)] = 1;
        }
        for (std::size_t i = 0; i < n; ++i) {
            const int root = uf.find(static_cast<int>(i));
            if (loaded[root] && !anchored[root]) {
                throw SolverError("floating component: no ground or voltage source reachable "
                                  "from node '" +
                                  net.node_ids[i] + "'");
            }
        }
    }

    std::vector<int> unknown_of(n, -1);
    std::vector<int> node_of;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::isnan(fixed[i])) {
            unknown_of[i] = static_cast<int>(node_of.size());
            node_of.push_back(static_cast<int>(i));
        }
    }
    const std::size_t m = node_of.size();

    std::vector<double> rhs(m, 0.0);
    for (const auto& cs : net.current_sources) {
        if (unknown_of[cs.to] >= 0) rhs[unknown_of[cs.to]] += cs.amps;
        if (unknown_of[cs.from] >= 0) rhs[unknown_of[cs.from]] -= cs.amps;
    }

    Csr a;
    a.diag.assign(m, 0.0);
    {
        std::vector<std::size_t> count(m, 0);
        for (const auto& r : net.resistors) {
            const int ua = unknown_of[r.a], ub = unknown_of[r.b];
            if (ua >= 0 && ub >= 0) {
                ++count[ua];
                ++count[ub];
            }
        }
        a.offset.assign(m + 1, 0);
        for (std::size_t i = 0; i < m; ++i) a.offset[i + 1] = a.offset[i] + count[i];
        a.col.assign(a.offset.back(), 0);
        a.val.assign(a.offset.back(), 0.0);
        std::vector<std::size_t> cursor(a.offset.begin(), a.offset.end() - 1);
        for (const auto& r : net.resistors) {
            const double g = 1.0 / r.ohms;
            const int ua = unknown_of[r.a], ub = unknown_of[r.b];
            if (ua >= 0) a.diag[ua] += g;
            if (ub >= 0) a.diag[ub] += g;
            if (ua >= 0 && ub >= 0) {
                a.col[cursor[ua]] = ub;
                a.val[cursor[ua]++] = -g;
                a.col[cursor[ub]] = ua;
                a.val[cursor[ub]++] = -g;
            } else if (ua >= 0) {
                rhs[ua] += g * fixed[r.b];
            } else if (ub >= 0) {
                rhs[ub] += g * fixed[r.a];
            }
        }
    }

    DcSolution out;
    out.stats.unknowns = m;
    std::vector<double> x(m, 0.0);
    const double b_norm = std::sqrt(det_dot(rhs, rhs, opts.parallel));

    if (m == 0 || b_norm == 0.0) {
        out.stats.relative_residual = 0.0;
    } else if (m < opts.dense_cutoff) {
        // Direct elimination on the dense mirror of the sparse system.
        std::vector<std::vector<double>> dense(m, std::vector<double>(m, 0.0));
        for (std::size_t r = 0; r < m; ++r) {
            dense[r][r] = a.diag[r];
            for (std::size_t k = a.offset[r]; k < a.offset[r + 1]; ++k) {
                dense[r][a.col[k]] += a.val[k];
            }
        }
        std::vector<double> b = rhs;
        for (std::size_t colm = 0; colm < m; ++colm) {
            std::size_t pivot = colm;
            for (std::size_t r = colm + 1; r < m; ++r) {
                if (std::abs(dense[r][colm]) > std::abs(dense[pivot][colm])) pivot = r;
            }
            if (std::abs(dense[pivot][colm]) < 1e-300) {
                throw SolverError("singular conductance matrix");
            }
            std::swap(dense[colm], dense[pivot]);
            std::swap(b[colm], b[pivot]);
            for (std::size_t r = colm + 1; r < m; ++r) {
                const double f = dense[r][colm] / dense[colm][colm];
                if (f == 0.0) continue;
                for (std::size_t c = colm; c < m; ++c) dense[r][c] -= f * dense[colm][c];
                b[r] -= f * b[colm];
            }
        }
        for (std::size_t i = m; i-- > 0;) {
            double s = b[i];
            for (std::size_t c = i + 1; c < m; ++c) s -= dense[i][c] * x[c];
            x[i] = s / dense[i][i];
        }
        out.stats.used_dense = true;
        std::vector<double> ax(m);
        a.matvec(x, ax, opts.parallel);
        double rr = 0.0;
        for (std::size_t i = 0; i < m; ++i) rr += (ax[i] - rhs[i]) * (ax[i] - rhs[i]);
        out.stats.relative_residual = std::sqrt(rr) / b_norm;
    } else {
        const int max_iter = opts.max_iterations > 0
                                 ? opts.max_iterations
                                 : std::max<int>(1000, 60 * static_cast<int>(std::sqrt(m)));
        std::vector<double> r = rhs, z(m), p(m), ap(m);
        for (std::size_t i = 0; i < m; ++i) z[i] = r[i] / a.diag[i];
        p = z;
        double rz = det_dot(r, z, opts.parallel);
        double res_rel = 1.0;
        int it = 0;
        for (; it < max_iter; ++it) {
            res_rel = std::sqrt(det_dot(r, r, opts.parallel)) / b_norm;
            if (res_rel <= opts.tol) break;
            a.matvec(p, ap, opts.parallel);
            const double alpha = rz / det_dot(p, ap, opts.parallel);
            for (std::size_t i = 0; i < m; ++i) x[i] += alpha * p[i];
            for (std::size_t i = 0; i < m; ++i) r[i] -= alpha * ap[i];
            for (std::size_t i = 0; i < m; ++i) z[i] = r[i] / a.diag[i];
            const double rz_new = det_dot(r, z, opts.parallel);
            const double beta = rz_new / rz;
            rz = rz_new;
            for (std::size_t i = 0; i < m; ++i) p[i] = z[i] + beta * p[i];
        }
        if (res_rel > opts.tol) {
            throw SolverError("conjugate gradients did not reach tolerance " +
                              std::to_string(opts.tol) + " after " + std::to_string(it) +
                              " iterations (residual " + std::to_string(res_rel) + ")");
        }
        out.stats.iterations = it;
        out.stats.relative_residual = res_rel;
    }

    out.node_voltage.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        out.node_voltage[i] = std::isnan(fixed[i]) ? x[unknown_of[i]] : fixed[i];
    }

    // KCL audit at every non-fixed node: conventional current into the node
    // from resistors plus source injections.
    {
        std::vector<double> net_flow(n, 0.0), scale(n, 0.0);
        for (const auto& r : net.resistors) {
            const double i_ab = (out.node_voltage[r.a] - out.node_voltage[r.b]) / r.ohms;
            net_flow[r.a] -= i_ab;
            net_flow[r.b] += i_ab;
            scale[r.a] += std::abs(i_ab);
            scale[r.b] += std::abs(i_ab);
        }
        for (const auto& cs : net.current_sources) {
            net_flow[cs.to] += cs.amps;
            net_flow[cs.from] -= cs.amps;
            scale[cs.to] += std::abs(cs.amps);
            scale[cs.from] += std::abs(cs.amps);
        }
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!std::isnan(fixed[i]) || scale[i] == 0.0) continue;
            worst = std::max(worst, std::abs(net_flow[i]) / scale[i]);
        }
        out.stats.kcl_max_rel = worst;
    }
    return out;
}

std::vector<double> branch_currents(const DcNetlist& net, const std::vector<double>& v) {
    std::vector<double> out(net.resistors.size(), 0.0);
    for (std::size_t i = 0; i < net.resistors.size(); ++i) {
        const auto& r = net.resistors[i];
        out[i] = (v[r.b] - v[r.a]) / r.ohms;
    }
    return out;
}

}  // namespace emortal
