#pragma once

#include <string>
#include <vector>

#include "petallab/compacts.hpp"
#include "petallab/domains.hpp"
#include "petallab/wos.hpp"

namespace petallab {

/// One boundary panel: node, arc weight and outward normal.
struct Panel {
    Complex point;
    double weight;
    Complex normal;
};

struct GreenMatrix {
    int n = 0;
    std::vector<double> g;    // row-major, symmetric
    std::vector<double> se;   // entrywise standard errors, 0 on the oracle path
    std::string kernel_source;
    long n_truncated = 0;

    double at(int i, int j) const { return g[static_cast<size_t>(i) * n + j]; }
};

/// Pairwise Green values of the translated domain over the panel nodes.
/// Off-diagonal entries come from the closed form when available and from
/// walk-on-spheres rows otherwise (then symmetrized as (G + G^T)/2).
/// Diagonal entries use the panel self-energy proxy g(x, x + (w/4) * normal).
GreenMatrix green_matrix(const std::vector<Panel>& panels, const KoenigsDomain& domain,
                         FlowTime t, const WosConfig& cfg);

struct EquilibriumResult {
    double energy = 0.0;     // V
    double capacity = 0.0;   // 2*pi / V
    double energy_std_err = 0.0;
    double capacity_std_err = 0.0;
    std::vector<double> weights;
    std::vector<Complex> nodes;
    std::string kernel_source;
    int iterations = 0;
    bool converged = false;
    std::string flags;
};

/// Minimizes w^T G w over the probability simplex by projected gradient with
/// exact line search and a Frank-Wolfe fallback; converged when the energy
/// decrease over 50 iterations drops below 1e-10, reported non-converged
/// after 1e5 iterations.
EquilibriumResult equilibrium(const CompactSet& K, const KoenigsDomain& domain, FlowTime t, int m,
                              const WosConfig& cfg);

/// Equilibrium plus the condenser reading Cap = 2*pi / V.
EquilibriumResult condenser_capacity(const CompactSet& K, const KoenigsDomain& domain, FlowTime t,
                                     int m, const WosConfig& cfg);

/// Euclidean projection onto the probability simplex.
std::vector<double> project_simplex(std::vector<double> v);

}  // namespace petallab
