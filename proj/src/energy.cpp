#include "petallab/energy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "petallab/oracles.hpp"
#include "petallab/rng.hpp"

namespace petallab {

namespace {

Complex diagonal_offset_point(const Panel& p, const KoenigsDomain& domain, FlowTime t) {
    const Complex cand = p.point + 0.25 * p.weight * p.normal;
    if (contains(domain, cand + t)) return cand;
    const Complex flipped = p.point - 0.25 * p.weight * p.normal;
    require(contains(domain, flipped + t),
            "green_matrix: self-energy offset point leaves the domain");
    return flipped;
}

std::vector<double> matvec(const GreenMatrix& G, const std::vector<double>& w) {
    std::vector<double> out(w.size(), 0.0);
    for (int i = 0; i < G.n; ++i) {
        double s = 0.0;
        for (int j = 0; j < G.n; ++j) s += G.at(i, j) * w[static_cast<size_t>(j)];
        out[static_cast<size_t>(i)] = s;
    }
    return out;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

std::vector<double> project_simplex(std::vector<double> v) {
    std::vector<double> u = v;
    std::sort(u.begin(), u.end(), std::greater<double>());
    double cum = 0.0, tau = 0.0;
    int rho = 0;
    for (size_t i = 0; i < u.size(); ++i) {
        cum += u[i];
        const double trial = (cum - 1.0) / static_cast<double>(i + 1);
        if (u[i] - trial > 0.0) {
            rho = static_cast<int>(i + 1);
            tau = trial;
        }
    }
    (void)rho;
    for (auto& x : v) x = std::max(0.0, x - tau);
    return v;
}

GreenMatrix green_matrix(const std::vector<Panel>& panels, const KoenigsDomain& domain,
                         FlowTime t, const WosConfig& cfg) {
    const int n = static_cast<int>(panels.size());
    require(n >= 2, "green_matrix: at least two panels required");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            require(panels[static_cast<size_t>(i)].point != panels[static_cast<size_t>(j)].point,
                    "green_matrix: panel nodes must be pairwise distinct");

    GreenMatrix G;
    G.n = n;
    G.g.assign(static_cast<size_t>(n) * n, 0.0);
    G.se.assign(static_cast<size_t>(n) * n, 0.0);

    const bool oracle =
        metric_oracle(domain, panels.front().point, panels.front().point, t).has_value();
    G.kernel_source = oracle ? "oracle" : "monte-carlo";

    if (oracle) {
        for (int i = 0; i < n; ++i) {
            const Panel& pi = panels[static_cast<size_t>(i)];
            for (int j = i + 1; j < n; ++j) {
                const double g =
                    metric_oracle(domain, pi.point, panels[static_cast<size_t>(j)].point, t)->green;
                G.g[static_cast<size_t>(i) * n + j] = g;
                G.g[static_cast<size_t>(j) * n + i] = g;
            }
            const Complex y = diagonal_offset_point(pi, domain, t);
            G.g[static_cast<size_t>(i) * n + i] = metric_oracle(domain, pi.point, y, t)->green;
        }
    } else {
        std::vector<double> raw(static_cast<size_t>(n) * n, 0.0);
        std::vector<double> raw_se(static_cast<size_t>(n) * n, 0.0);
        for (int i = 0; i < n; ++i) {
            const Panel& pi = panels[static_cast<size_t>(i)];
            std::vector<Complex> targets;
            targets.reserve(static_cast<size_t>(n));
            for (int j = 0; j < n; ++j)
                if (j != i) targets.push_back(panels[static_cast<size_t>(j)].point);
            targets.push_back(diagonal_offset_point(pi, domain, t));
            WosConfig row_cfg = cfg;
            row_cfg.seed = mix_seed(cfg.seed, 0x47524545ull, static_cast<uint64_t>(i));
            const GreenRow row = green_row_mc(pi.point, targets, domain, t, row_cfg);
            G.n_truncated += row.n_truncated;
            size_t k = 0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                raw[static_cast<size_t>(i) * n + j] = row.values[k];
                raw_se[static_cast<size_t>(i) * n + j] = row.std_errs[k];
                ++k;
            }
            G.g[static_cast<size_t>(i) * n + i] = row.values[k];
            G.se[static_cast<size_t>(i) * n + i] = row.std_errs[k];
        }
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const double g = 0.5 * (raw[static_cast<size_t>(i) * n + j] +
                                        raw[static_cast<size_t>(j) * n + i]);
                const double se = 0.5 * std::hypot(raw_se[static_cast<size_t>(i) * n + j],
                                                   raw_se[static_cast<size_t>(j) * n + i]);
                G.g[static_cast<size_t>(i) * n + j] = g;
                G.g[static_cast<size_t>(j) * n + i] = g;
                G.se[static_cast<size_t>(i) * n + j] = se;
                G.se[static_cast<size_t>(j) * n + i] = se;
            }
    }
    for (double v : G.g) require(std::isfinite(v), "green_matrix: non-finite kernel entry");
    return G;
}

namespace {

EquilibriumResult solve_equilibrium(const GreenMatrix& G, const std::vector<Panel>& panels) {
    const int n = G.n;
    EquilibriumResult out;
    out.kernel_source = G.kernel_source;
    out.nodes.reserve(static_cast<size_t>(n));
    for (const auto& p : panels) out.nodes.push_back(p.point);

    std::vector<double> w(static_cast<size_t>(n), 1.0 / n);
    double max_row = 0.0;
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += std::abs(G.at(i, j));
        max_row = std::max(max_row, s);
    }
    const double alpha = max_row > 0.0 ? 1.0 / (2.0 * max_row) : 1.0;

    constexpr int kMaxIter = 100000;
    constexpr int kWindow = 50;
    constexpr double kDecrease = 1e-10;
    std::vector<double> gw = matvec(G, w);
    double energy = dot(w, gw);
    double window_start_energy = energy;
    int since_window = 0;

    for (int iter = 0; iter < kMaxIter; ++iter) {
        out.iterations = iter + 1;
        std::vector<double> grad(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) grad[static_cast<size_t>(i)] = 2.0 * gw[static_cast<size_t>(i)];

        std::vector<double> trial(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i)
            trial[static_cast<size_t>(i)] = w[static_cast<size_t>(i)] - alpha * grad[static_cast<size_t>(i)];
        std::vector<double> y = project_simplex(std::move(trial));
        std::vector<double> d(static_cast<size_t>(n));
        double dnorm = 0.0;
        for (int i = 0; i < n; ++i) {
            d[static_cast<size_t>(i)] = y[static_cast<size_t>(i)] - w[static_cast<size_t>(i)];
            dnorm += std::abs(d[static_cast<size_t>(i)]);
        }

        const std::vector<double> gd_pg = matvec(G, d);
        double dgd = dot(d, gd_pg);
        double wgd = dot(w, gd_pg);

        // Frank-Wolfe fallback: toward the vertex of the smallest gradient.
        if (dnorm < 1e-15 || dgd <= 0.0) {
            int best = 0;
            for (int i = 1; i < n; ++i)
                if (grad[static_cast<size_t>(i)] < grad[static_cast<size_t>(best)]) best = i;
            for (int i = 0; i < n; ++i) d[static_cast<size_t>(i)] = -w[static_cast<size_t>(i)];
            d[static_cast<size_t>(best)] += 1.0;
            const std::vector<double> gd_fw = matvec(G, d);
            dgd = dot(d, gd_fw);
            wgd = dot(w, gd_fw);
        }

        double gamma;
        if (dgd > 0.0) {
            gamma = std::clamp(-wgd / dgd, 0.0, 1.0);
        } else {
            // Concave direction: endpoint comparison.
            gamma = (2.0 * wgd + dgd) < 0.0 ? 1.0 : 0.0;
        }
        if (gamma > 0.0) {
            for (int i = 0; i < n; ++i) w[static_cast<size_t>(i)] += gamma * d[static_cast<size_t>(i)];
            gw = matvec(G, w);
            energy = dot(w, gw);
        }

        if (++since_window >= kWindow) {
            if (window_start_energy - energy < kDecrease) {
                out.converged = true;
                break;
            }
            window_start_energy = energy;
            since_window = 0;
        }
    }
    if (!out.converged) out.flags = "nonconvergence";

    // Renormalize against drift and report the consistent energy.
    double sum = std::accumulate(w.begin(), w.end(), 0.0);
    for (auto& x : w) x /= sum;
    gw = matvec(G, w);
    out.energy = dot(w, gw);
    out.capacity = kTwoPi / out.energy;
    double var = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double c = w[static_cast<size_t>(i)] * w[static_cast<size_t>(j)] *
                             G.se[static_cast<size_t>(i) * n + j];
            var += c * c;
        }
    out.energy_std_err = std::sqrt(var);
    out.capacity_std_err = out.capacity * out.energy_std_err / out.energy;
    out.weights = std::move(w);
    require(out.energy > 0.0, "equilibrium: energy must be positive");
    if (G.n_truncated > 0) {
        if (!out.flags.empty()) out.flags += '|';
        out.flags += "truncation";
    }
    return out;
}

}  // namespace

EquilibriumResult equilibrium(const CompactSet& K, const KoenigsDomain& domain, FlowTime t, int m,
                              const WosConfig& cfg) {
    require(m >= 16, "equilibrium: m >= 16 boundary nodes required");
    const auto disc = discretize(K, m);
    require(disc.boundary_nodes.size() >= 2, "equilibrium: compact set carries no boundary panels");
    std::vector<Panel> panels;
    panels.reserve(disc.boundary_nodes.size());
    for (size_t i = 0; i < disc.boundary_nodes.size(); ++i)
        panels.push_back({disc.boundary_nodes[i], disc.boundary_weights[i], disc.boundary_normals[i]});
    const GreenMatrix G = green_matrix(panels, domain, t, cfg);
    return solve_equilibrium(G, panels);
}

EquilibriumResult condenser_capacity(const CompactSet& K, const KoenigsDomain& domain, FlowTime t,
                                     int m, const WosConfig& cfg) {
    return equilibrium(K, domain, t, m, cfg);
}

}  // namespace petallab
