#pragma once

#include <string>
#include <vector>

#include "petallab/compacts.hpp"
#include "petallab/domains.hpp"
#include "petallab/wos.hpp"

namespace petallab {

/// Pair geometry for the n-th diameter. Euclidean uses |a-b|; hyperbolic
/// uses tanh of the hyperbolic distance of the translated domain, from the
/// closed form when one exists and from a Monte Carlo pair cache otherwise.
struct FeketeMetric {
    enum class Kind { Euclidean, Hyperbolic };
    Kind kind = Kind::Euclidean;
    const KoenigsDomain* domain = nullptr;
    FlowTime t = 0.0;

    static FeketeMetric euclidean() { return {}; }
    static FeketeMetric hyperbolic(const KoenigsDomain& d, FlowTime t) {
        return {Kind::Hyperbolic, &d, t};
    }
};

struct FeketeConfig {
    int grid_m = 256;      // discretization count driving the candidate grid
    int n_restarts = 8;
    bool polish = true;    // continuous refinement on disk-piece points
    uint64_t seed = 1;     // restart shuffling
    WosConfig wos;         // Monte Carlo distances (slit/cusp domains)
};

struct FeketeResult {
    int n = 0;
    double diameter = 0.0;
    std::vector<Complex> tuple;
    int n_restarts = 0;
    double std_err = 0.0;          // propagated through the pair cache when MC
    std::string kernel_source;     // "euclidean" | "oracle" | "monte-carlo"
    std::string flags;
};

/// Multistart single-point-exchange ascent over the candidate grid, followed
/// by pattern-search polish on disk-piece interiors (closed-form metrics
/// only). Ties between equal products break to the lexicographically
/// smallest point list. Fewer than n distinct candidates yields diameter 0
/// with a "degenerate" flag.
FeketeResult n_diameter(const CompactSet& K, int n, const FeketeMetric& metric,
                        const FeketeConfig& cfg);

struct CaphResult {
    double value = 0.0;
    std::vector<double> sequence;  // d_2 .. d_{n_max}
    double std_err = 0.0;
    std::string kernel_source;
    std::string flags;
};

/// Hyperbolic capacity: computes d_{2,h}..d_{n_max,h} on a shared pair cache
/// and extrapolates the limit by least squares of log d_n on
/// {1, log n/(n-1), 1/(n-1)} (the leading Fekete corrections). Flags a
/// sequence that fails to be nonincreasing beyond tolerance.
CaphResult caph_estimate(const CompactSet& K, const KoenigsDomain& domain, FlowTime t, int n_max,
                         const FeketeConfig& cfg);

}  // namespace petallab
