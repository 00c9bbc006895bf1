#pragma once

#include <string>

#include "petallab/compacts.hpp"
#include "petallab/domains.hpp"
#include "petallab/wos.hpp"

namespace petallab {

struct AreaResult {
    double value = 0.0;
    long n_nodes = 0;
    double refinement_error = 0.0;  // |value(m) - value(m/2)|
    double std_err = 0.0;           // 0 on the closed-form path
    std::string density_source;     // "oracle" or "monte-carlo"
    std::string flags;
};

/// Hyperbolic area of K in the domain translated by -t: quadrature of the
/// squared density over the area nodes. Polyline pieces contribute zero.
/// The density comes from the closed form when the domain has one, otherwise
/// from robin_density_mc per node.
AreaResult hyp_area(const CompactSet& K, const KoenigsDomain& domain, FlowTime t, int m,
                    const WosConfig& cfg);

/// Quasi-hyperbolic density 1/dist(w, boundary) of the translated domain.
double quasi_density(Complex w, const KoenigsDomain& domain, FlowTime t);

/// Quasi-hyperbolic length of the straight segment [z, w], by Gauss-Legendre
/// quadrature of quasi_density. Upper bound for the quasi-hyperbolic
/// distance.
double quasi_distance_segment(Complex z, Complex w, const KoenigsDomain& domain, FlowTime t,
                              int nodes);

/// (1/4) log(1 + |z-w| / min(delta(z), delta(w))) with the boundary distances
/// of the translated domain. Lower bound for the hyperbolic distance.
double distance_lower_bound(Complex z, Complex w, const KoenigsDomain& domain, FlowTime t);

/// -log tanh of the distance lower bound. Upper bound for the Green value.
double green_upper_bound(Complex z, Complex w, const KoenigsDomain& domain, FlowTime t);

}  // namespace petallab
