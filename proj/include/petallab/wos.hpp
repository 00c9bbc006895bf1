#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "petallab/compacts.hpp"
#include "petallab/domains.hpp"
#include "petallab/types.hpp"

namespace petallab {

struct WosConfig {
    double epsilon_shell = 1e-3;
    long max_steps = 10000;
    long n_walks = 100000;
    uint64_t seed = 0;

    void validate() const;
};

/// One Monte Carlo result. Flags (comma-free, '|'-joined) mark estimator
/// conditions: "truncation" when truncated walks exceed 1e-3 of the total,
/// "clamped" when a negative Green estimate was clamped to zero, "dinf" when
/// a distance transform hit the infinite sentinel.
struct Estimate {
    double value = 0.0;
    double std_err = 0.0;
    long n_samples = 0;
    long n_truncated = 0;
    uint64_t seed = 0;
    std::string flags;

    bool has_flag(const std::string& f) const;
    void add_flag(const std::string& f);
};

enum class Hit { Outer, Inner, Truncated };

struct ExitSample {
    Complex point;
    Hit hit;
    long steps;
};

/// Runs one walk from z: jumps to a uniform point of the largest centered
/// circle inside the domain (and outside K, when given) until the walk enters
/// the epsilon shell of either boundary, classifying by the smaller distance,
/// or until max_steps is reached. Deterministic given (cfg.seed, walk_index).
ExitSample wos_exit(Complex z, const KoenigsDomain& domain, const CompactSet* K,
                    const WosConfig& cfg, uint64_t walk_index);

/// Probability that the walk started at z + t is absorbed on K + t before the
/// outer boundary. Truncated walks count as outer hits; binomial standard
/// error.
Estimate harmonic_measure_mc(Complex z, const CompactSet& K, const KoenigsDomain& domain,
                             FlowTime t, const WosConfig& cfg);

/// Green value g(z, w) of the domain translated by -t, from the harmonic
/// decomposition g = E[log|exit - w|] - log|z - w|. Truncated walks are
/// discarded; negative estimates clamp to 0 with a flag.
Estimate green_mc(Complex z, Complex w, const KoenigsDomain& domain, FlowTime t,
                  const WosConfig& cfg);

/// Hyperbolic density via the conformal radius: exp(-E[log|exit - w|]).
Estimate robin_density_mc(Complex w, const KoenigsDomain& domain, FlowTime t,
                          const WosConfig& cfg);

/// Hyperbolic distance via d = artanh(exp(-g)) with delta-method error
/// propagation; reports an infinite sentinel when the Green estimate is
/// not positive.
Estimate hyp_distance_mc(Complex z, Complex w, const KoenigsDomain& domain, FlowTime t,
                         const WosConfig& cfg);

/// Green values from one source against many targets, reusing a single set of
/// exit samples. Backbone of Monte Carlo kernel assembly.
struct GreenRow {
    std::vector<double> values;    // clamped at 0
    std::vector<double> std_errs;
    std::vector<double> raw;       // unclamped
    long n_used = 0;
    long n_truncated = 0;
};
GreenRow green_row_mc(Complex source, const std::vector<Complex>& targets,
                      const KoenigsDomain& domain, FlowTime t, const WosConfig& cfg);

}  // namespace petallab
