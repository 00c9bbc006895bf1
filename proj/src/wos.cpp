#include "petallab/wos.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <cmath>
#include <functional>
#include <thread>

#include "petallab/rng.hpp"

namespace petallab {

namespace {

constexpr double kTruncationFlagRatio = 1e-3;

// Runs body(i) for i in [0, n) on worker threads. Each index writes only its
// own output slot, so the result does not depend on the schedule.
// PETALLAB_THREADS caps the worker count.
void parallel_walks(uint64_t n, const std::function<void(uint64_t)>& body) {
    unsigned hw = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("PETALLAB_THREADS")) {
        const long v = std::atol(env);
        if (v >= 1) hw = static_cast<unsigned>(v);
    }
    if (hw == 0) hw = 1;
    const unsigned workers = n < 4096 ? 1u : std::min<uint64_t>(hw, n);
    if (workers <= 1) {
        for (uint64_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<uint64_t> next{0};
    const uint64_t chunk = std::max<uint64_t>(256, n / (workers * 16));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const uint64_t begin = next.fetch_add(chunk);
                if (begin >= n) return;
                const uint64_t end = std::min(n, begin + chunk);
                for (uint64_t i = begin; i < end; ++i) body(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

struct MeanSd {
    double mean = 0.0;
    double sd = 0.0;
    long n = 0;
};

// Two-pass moments in fixed index order; NaN slots are skipped.
MeanSd reduce(const std::vector<double>& slots) {
    MeanSd out;
    double sum = 0.0;
    for (double v : slots) {
        if (std::isnan(v)) continue;
        sum += v;
        ++out.n;
    }
    if (out.n == 0) return out;
    out.mean = sum / out.n;
    double ss = 0.0;
    for (double v : slots) {
        if (std::isnan(v)) continue;
        const double d = v - out.mean;
        ss += d * d;
    }
    out.sd = out.n > 1 ? std::sqrt(ss / (out.n - 1)) : 0.0;
    return out;
}

void check_compact_inside(const CompactSet& K, const KoenigsDomain& domain,
                          const std::string& who) {
    const auto disc = discretize(K, 32);
    for (const auto& p : disc.boundary_nodes)
        require(contains(domain, p), who + ": compact set not inside the shifted domain");
    for (const auto& c : disc.candidates)
        require(contains(domain, c), who + ": compact set not inside the shifted domain");
}

}  // namespace

void WosConfig::validate() const {
    require(epsilon_shell > 0.0 && epsilon_shell <= 1e-1, "epsilon_shell must lie in (0, 1e-1]");
    require(max_steps > 0, "max_steps must be positive");
    require(n_walks >= 100, "n_walks >= 100 required");
}

bool Estimate::has_flag(const std::string& f) const {
    return flags.find(f) != std::string::npos;
}

void Estimate::add_flag(const std::string& f) {
    if (has_flag(f)) return;
    if (!flags.empty()) flags += '|';
    flags += f;
}

ExitSample wos_exit(Complex z, const KoenigsDomain& domain, const CompactSet* K,
                    const WosConfig& cfg, uint64_t walk_index) {
    Rng rng(cfg.seed, walk_index);
    Complex w = z;
    for (long step = 0; step < cfg.max_steps; ++step) {
        // A maximal jump can land a rounding error outside; that is an exit.
        const double d_out = contains(domain, w) ? distance_to_boundary(domain, w) : 0.0;
        const double d_in = K ? distance_to_set(*K, w) : std::numeric_limits<double>::infinity();
        const double r = std::min(d_out, d_in);
        if (r < cfg.epsilon_shell) return {w, d_in < d_out ? Hit::Inner : Hit::Outer, step};
        const double th = rng.next_angle();
        w += Complex{r * std::cos(th), r * std::sin(th)};
    }
    return {w, Hit::Truncated, cfg.max_steps};
}

Estimate harmonic_measure_mc(Complex z, const CompactSet& K, const KoenigsDomain& domain,
                             FlowTime t, const WosConfig& cfg) {
    cfg.validate();
    const Complex z0 = z + t;
    require(contains(domain, z0), "harmonic_measure_mc: z + t outside the domain");
    const CompactSet Kt = K.translated(t);
    check_compact_inside(Kt, domain, "harmonic_measure_mc");
    require(distance_to_set(Kt, z0) > cfg.epsilon_shell,
            "harmonic_measure_mc: start point inside the epsilon shell of K");

    std::vector<uint8_t> hits(static_cast<size_t>(cfg.n_walks));
    parallel_walks(static_cast<uint64_t>(cfg.n_walks), [&](uint64_t i) {
        hits[i] = static_cast<uint8_t>(wos_exit(z0, domain, &Kt, cfg, i).hit);
    });

    long inner = 0, truncated = 0;
    for (uint8_t h : hits) {
        inner += h == static_cast<uint8_t>(Hit::Inner);
        truncated += h == static_cast<uint8_t>(Hit::Truncated);
    }
    Estimate est;
    est.n_samples = cfg.n_walks;
    est.n_truncated = truncated;
    est.seed = cfg.seed;
    est.value = static_cast<double>(inner) / cfg.n_walks;
    est.std_err = std::sqrt(est.value * (1.0 - est.value) / cfg.n_walks);
    if (truncated > kTruncationFlagRatio * cfg.n_walks) est.add_flag("truncation");
    return est;
}

Estimate green_mc(Complex z, Complex w, const KoenigsDomain& domain, FlowTime t,
                  const WosConfig& cfg) {
    cfg.validate();
    require(z != w, "green_mc: z != w required");
    const Complex z0 = z + t, w0 = w + t;
    require(contains(domain, z0) && contains(domain, w0),
            "green_mc: points outside the shifted domain");

    std::vector<double> slots(static_cast<size_t>(cfg.n_walks));
    parallel_walks(static_cast<uint64_t>(cfg.n_walks), [&](uint64_t i) {
        const auto s = wos_exit(z0, domain, nullptr, cfg, i);
        slots[i] = s.hit == Hit::Truncated ? std::numeric_limits<double>::quiet_NaN()
                                           : std::log(std::abs(s.point - w0));
    });

    const auto ms = reduce(slots);
    Estimate est;
    est.n_samples = cfg.n_walks;
    est.n_truncated = cfg.n_walks - ms.n;
    est.seed = cfg.seed;
    if (ms.n == 0) {
        est.value = 0.0;
        est.add_flag("truncation");
        est.add_flag("no-samples");
        return est;
    }
    est.value = ms.mean - std::log(std::abs(z0 - w0));
    est.std_err = ms.sd / std::sqrt(static_cast<double>(ms.n));
    if (est.value < 0.0) {
        est.value = 0.0;
        est.add_flag("clamped");
    }
    if (est.n_truncated > kTruncationFlagRatio * cfg.n_walks) est.add_flag("truncation");
    return est;
}

Estimate robin_density_mc(Complex w, const KoenigsDomain& domain, FlowTime t,
                          const WosConfig& cfg) {
    cfg.validate();
    const Complex w0 = w + t;
    require(contains(domain, w0), "robin_density_mc: point outside the shifted domain");

    std::vector<double> slots(static_cast<size_t>(cfg.n_walks));
    parallel_walks(static_cast<uint64_t>(cfg.n_walks), [&](uint64_t i) {
        const auto s = wos_exit(w0, domain, nullptr, cfg, i);
        slots[i] = s.hit == Hit::Truncated ? std::numeric_limits<double>::quiet_NaN()
                                           : std::log(std::abs(s.point - w0));
    });

    const auto ms = reduce(slots);
    Estimate est;
    est.n_samples = cfg.n_walks;
    est.n_truncated = cfg.n_walks - ms.n;
    est.seed = cfg.seed;
    if (ms.n == 0) {
        est.add_flag("truncation");
        est.add_flag("no-samples");
        return est;
    }
    est.value = std::exp(-ms.mean);
    est.std_err = est.value * ms.sd / std::sqrt(static_cast<double>(ms.n));
    if (est.n_truncated > kTruncationFlagRatio * cfg.n_walks) est.add_flag("truncation");
    return est;
}

Estimate hyp_distance_mc(Complex z, Complex w, const KoenigsDomain& domain, FlowTime t,
                         const WosConfig& cfg) {
    Estimate g = green_mc(z, w, domain, t, cfg);
    Estimate est;
    est.n_samples = g.n_samples;
    est.n_truncated = g.n_truncated;
    est.seed = g.seed;
    est.flags = g.flags;
    if (g.value <= 0.0 || g.has_flag("clamped")) {
        est.value = std::numeric_limits<double>::infinity();
        est.std_err = std::numeric_limits<double>::infinity();
        est.add_flag("dinf");
        return est;
    }
    est.value = distance_from_green(g.value);
    // |dd/dg| = 1 / (2 sinh g)
    est.std_err = g.std_err / (2.0 * std::sinh(g.value));
    return est;
}

GreenRow green_row_mc(Complex source, const std::vector<Complex>& targets,
                      const KoenigsDomain& domain, FlowTime t, const WosConfig& cfg) {
    cfg.validate();
    const Complex z0 = source + t;
    require(contains(domain, z0), "green_row_mc: source outside the shifted domain");

    std::vector<Complex> exits(static_cast<size_t>(cfg.n_walks));
    std::vector<uint8_t> ok(static_cast<size_t>(cfg.n_walks));
    parallel_walks(static_cast<uint64_t>(cfg.n_walks), [&](uint64_t i) {
        const auto s = wos_exit(z0, domain, nullptr, cfg, i);
        exits[i] = s.point;
        ok[i] = s.hit != Hit::Truncated;
    });

    GreenRow row;
    row.values.resize(targets.size());
    row.std_errs.resize(targets.size());
    row.raw.resize(targets.size());
    for (size_t j = 0; j < targets.size(); ++j) {
        const Complex w0 = targets[j] + t;
        require(contains(domain, w0), "green_row_mc: target outside the shifted domain");
        double sum = 0.0;
        long n = 0;
        for (size_t i = 0; i < exits.size(); ++i) {
            if (!ok[i]) continue;
            sum += std::log(std::abs(exits[i] - w0));
            ++n;
        }
        row.n_used = n;
        row.n_truncated = cfg.n_walks - n;
        if (n == 0) {
            row.values[j] = row.raw[j] = 0.0;
            row.std_errs[j] = std::numeric_limits<double>::infinity();
            continue;
        }
        const double mean = sum / n;
        double ss = 0.0;
        for (size_t i = 0; i < exits.size(); ++i) {
            if (!ok[i]) continue;
            const double d = std::log(std::abs(exits[i] - w0)) - mean;
            ss += d * d;
        }
        const double sd = n > 1 ? std::sqrt(ss / (n - 1)) : 0.0;
        row.raw[j] = mean - std::log(std::abs(z0 - w0));
        row.values[j] = std::max(0.0, row.raw[j]);
        row.std_errs[j] = sd / std::sqrt(static_cast<double>(n));
    }
    return row;
}

}  // namespace petallab
