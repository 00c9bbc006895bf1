#include "petallab/hypgeom.hpp"

#include <cmath>

#include "petallab/oracles.hpp"
#include "petallab/quadrature.hpp"
#include "petallab/rng.hpp"

namespace petallab {

namespace {

struct AreaPass {
    double value = 0.0;
    double var = 0.0;
    long nodes = 0;
    long truncated = 0;
};

AreaPass area_quadrature(const CompactSet& K, const KoenigsDomain& domain, FlowTime t, int m,
                         const WosConfig& cfg, bool use_oracle) {
    AreaPass pass;
    if (!K.has_area()) return pass;
    const auto disc = discretize(K, m);
    pass.nodes = static_cast<long>(disc.area_nodes.size());
    for (size_t i = 0; i < disc.area_nodes.size(); ++i) {
        const Complex x = disc.area_nodes[i];
        const double w = disc.area_weights[i];
        if (use_oracle) {
            pass.value += w * std::pow(*density_oracle(domain, x, t), 2);
        } else {
            WosConfig node_cfg = cfg;
            node_cfg.seed = mix_seed(cfg.seed, 0x41524541ull, i);
            const Estimate lam = robin_density_mc(x, domain, t, node_cfg);
            pass.value += w * lam.value * lam.value;
            // var(lambda^2) ~ (2 lambda sigma)^2
            const double s = 2.0 * lam.value * lam.std_err;
            pass.var += w * w * s * s;
            pass.truncated += lam.n_truncated;
        }
    }
    return pass;
}

}  // namespace

AreaResult hyp_area(const CompactSet& K, const KoenigsDomain& domain, FlowTime t, int m,
                    const WosConfig& cfg) {
    require(m >= 8, "hyp_area: m >= 8 required");
    AreaResult out;
    if (!K.has_area()) {
        // Polylines have zero area regardless of the metric.
        out.density_source = "exact-zero";
        return out;
    }
    const bool oracle = density_oracle(domain, K.disks().front().center, t).has_value();
    const auto fine = area_quadrature(K, domain, t, m, cfg, oracle);
    const auto coarse = area_quadrature(K, domain, t, std::max(8, m / 2), cfg, oracle);
    out.value = fine.value;
    out.n_nodes = fine.nodes;
    out.refinement_error = std::abs(fine.value - coarse.value);
    out.std_err = std::sqrt(fine.var);
    out.density_source = oracle ? "oracle" : "monte-carlo";
    if (!oracle && fine.truncated > 0) out.flags = "truncation";
    return out;
}

double quasi_density(Complex w, const KoenigsDomain& domain, FlowTime t) {
    return 1.0 / shifted_distance(domain, w, t);
}

double quasi_distance_segment(Complex z, Complex w, const KoenigsDomain& domain, FlowTime t,
                              int nodes) {
    require(nodes >= 2, "quasi_distance_segment: nodes >= 2 required");
    const auto rule = gauss_legendre(nodes, 0.0, 1.0);
    const Complex step = w - z;
    const double len = std::abs(step);
    double acc = 0.0;
    for (const auto& q : rule) acc += q.w * quasi_density(z + q.x * step, domain, t);
    return len * acc;
}

double distance_lower_bound(Complex z, Complex w, const KoenigsDomain& domain, FlowTime t) {
    require(z != w, "distance_lower_bound: z != w required");
    const double dz = shifted_distance(domain, z, t);
    const double dw = shifted_distance(domain, w, t);
    return 0.25 * std::log1p(std::abs(z - w) / std::min(dz, dw));
}

double green_upper_bound(Complex z, Complex w, const KoenigsDomain& domain, FlowTime t) {
    return green_from_distance(distance_lower_bound(z, w, domain, t));
}

}  // namespace petallab
