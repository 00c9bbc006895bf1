#include "petallab/fekete.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "petallab/oracles.hpp"
#include "petallab/rng.hpp"

namespace petallab {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool lex_less(Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

// log of the pair value: log|a-b| (euclidean) or log tanh d = -g (hyperbolic).
struct PairCache {
    std::vector<Complex> points;
    std::vector<double> logval;   // row-major over points
    std::vector<double> se;       // std err of -log tanh d entries (MC only)
    bool continuous = false;      // closed-form metric available for polish
    std::string kernel_source;
    long n_truncated = 0;

    double at(size_t i, size_t j) const { return logval[i * points.size() + j]; }
    double se_at(size_t i, size_t j) const { return se.empty() ? 0.0 : se[i * points.size() + j]; }
};

double continuous_logval(const FeketeMetric& metric, Complex a, Complex b) {
    if (a == b) return kNegInf;
    if (metric.kind == FeketeMetric::Kind::Euclidean) return std::log(std::abs(a - b));
    return -metric_oracle(*metric.domain, a, b, metric.t)->green;
}

PairCache build_cache(std::vector<Complex> candidates, const FeketeMetric& metric,
                      const FeketeConfig& cfg) {
    PairCache cache;
    std::sort(candidates.begin(), candidates.end(), lex_less);
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    cache.points = std::move(candidates);
    const size_t c = cache.points.size();
    cache.logval.assign(c * c, kNegInf);

    const bool oracle = metric.kind == FeketeMetric::Kind::Euclidean ||
                        metric_oracle(*metric.domain, cache.points.front(), cache.points.front(),
                                      metric.t)
                            .has_value();
    if (oracle) {
        cache.continuous = true;
        cache.kernel_source =
            metric.kind == FeketeMetric::Kind::Euclidean ? "euclidean" : "oracle";
        for (size_t i = 0; i < c; ++i)
            for (size_t j = i + 1; j < c; ++j) {
                const double v = continuous_logval(metric, cache.points[i], cache.points[j]);
                cache.logval[i * c + j] = v;
                cache.logval[j * c + i] = v;
            }
        return cache;
    }

    // Monte Carlo pair distances: one exit-sample row per candidate, then
    // g symmetrized as (g_ij + g_ji)/2 and log tanh d = -g.
    cache.kernel_source = "monte-carlo";
    cache.se.assign(c * c, 0.0);
    std::vector<double> g(c * c, 0.0), gse(c * c, 0.0);
    for (size_t i = 0; i < c; ++i) {
        std::vector<Complex> targets;
        targets.reserve(c - 1);
        for (size_t j = 0; j < c; ++j)
            if (j != i) targets.push_back(cache.points[j]);
        WosConfig row_cfg = cfg.wos;
        row_cfg.seed = mix_seed(cfg.wos.seed, 0x46454b45ull, i);
        const GreenRow row = green_row_mc(cache.points[i], targets, *metric.domain, metric.t,
                                          row_cfg);
        cache.n_truncated += row.n_truncated;
        size_t k = 0;
        for (size_t j = 0; j < c; ++j) {
            if (j == i) continue;
            g[i * c + j] = row.values[k];
            gse[i * c + j] = row.std_errs[k];
            ++k;
        }
    }
    for (size_t i = 0; i < c; ++i)
        for (size_t j = i + 1; j < c; ++j) {
            const double gv = 0.5 * (g[i * c + j] + g[j * c + i]);
            const double se = 0.5 * std::hypot(gse[i * c + j], gse[j * c + i]);
            cache.logval[i * c + j] = cache.logval[j * c + i] = -gv;
            cache.se[i * c + j] = cache.se[j * c + i] = se;
        }
    return cache;
}

double tuple_logsum(const PairCache& cache, const std::vector<size_t>& tuple) {
    double s = 0.0;
    for (size_t a = 0; a < tuple.size(); ++a)
        for (size_t b = a + 1; b < tuple.size(); ++b) s += cache.at(tuple[a], tuple[b]);
    return s;
}

// Single-point exchange ascent until no replacement improves the log-sum.
void exchange_ascent(const PairCache& cache, std::vector<size_t>& tuple) {
    const size_t c = cache.points.size();
    bool improved = true;
    while (improved) {
        improved = false;
        for (size_t pos = 0; pos < tuple.size(); ++pos) {
            double cur = 0.0;
            for (size_t b = 0; b < tuple.size(); ++b)
                if (b != pos) cur += cache.at(tuple[pos], tuple[b]);
            size_t best = tuple[pos];
            double best_gain = 0.0;
            for (size_t cand = 0; cand < c; ++cand) {
                bool used = false;
                for (size_t b = 0; b < tuple.size(); ++b)
                    if (tuple[b] == cand) used = true;
                if (used) continue;
                double alt = 0.0;
                for (size_t b = 0; b < tuple.size(); ++b)
                    if (b != pos) alt += cache.at(cand, tuple[b]);
                if (alt - cur > best_gain + 1e-15) {
                    best_gain = alt - cur;
                    best = cand;
                }
            }
            if (best != tuple[pos]) {
                tuple[pos] = best;
                improved = true;
            }
        }
    }
}

// Pattern-search refinement of points lying on disk pieces; other points stay
// on the grid. Requires a continuous metric.
void polish_tuple(const CompactSet& K, const FeketeMetric& metric, std::vector<Complex>& pts) {
    auto owner_disk = [&](Complex p) -> const DiskPiece* {
        for (const auto& d : K.disks())
            if (std::abs(p - d.center) <= d.radius * (1.0 + 1e-12) + 1e-12) return &d;
        return nullptr;
    };
    auto objective = [&](Complex p, size_t pos) {
        double s = 0.0;
        for (size_t b = 0; b < pts.size(); ++b)
            if (b != pos) s += continuous_logval(metric, p, pts[b]);
        return s;
    };
    double scale = 0.0;
    for (const auto& d : K.disks()) scale = std::max(scale, d.radius);
    if (scale == 0.0) return;
    double step = scale / 4.0;
    const Complex dirs[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    while (step > 1e-11 * scale) {
        bool any = false;
        for (size_t pos = 0; pos < pts.size(); ++pos) {
            const DiskPiece* disk = owner_disk(pts[pos]);
            if (!disk) continue;
            double cur = objective(pts[pos], pos);
            for (const auto& dir : dirs) {
                Complex trial = pts[pos] + step * dir;
                const double r = std::abs(trial - disk->center);
                if (r > disk->radius) trial = disk->center + (trial - disk->center) * (disk->radius / r);
                const double val = objective(trial, pos);
                if (val > cur + 1e-15) {
                    pts[pos] = trial;
                    cur = val;
                    any = true;
                }
            }
        }
        if (!any) step *= 0.5;
    }
}

double product_from_logsum(double logsum, int n) {
    return std::exp(2.0 * logsum / (double(n) * (n - 1)));
}

FeketeResult run_diameter(const PairCache& cache, const CompactSet& K, int n,
                          const FeketeMetric& metric, const FeketeConfig& cfg) {
    FeketeResult out;
    out.n = n;
    out.kernel_source = cache.kernel_source;
    const size_t c = cache.points.size();
    if (static_cast<size_t>(n) > c) {
        out.flags = "degenerate";
        return out;
    }

    const int restarts = std::max(cfg.n_restarts, 8);
    out.n_restarts = restarts;
    std::vector<size_t> best_tuple;
    double best_sum = kNegInf;
    for (int r = 0; r < restarts; ++r) {
        std::vector<size_t> tuple(static_cast<size_t>(n));
        Rng rng(mix_seed(cfg.seed, 0x52535452ull, static_cast<uint64_t>(r)));
        // sample n distinct indices
        std::vector<size_t> pool(c);
        for (size_t i = 0; i < c; ++i) pool[i] = i;
        for (int k = 0; k < n; ++k) {
            const size_t pick = k + static_cast<size_t>(rng.next_unit() * (c - k));
            std::swap(pool[k], pool[std::min(pick, c - 1)]);
            tuple[static_cast<size_t>(k)] = pool[k];
        }
        exchange_ascent(cache, tuple);
        const double s = tuple_logsum(cache, tuple);
        if (s > best_sum + 1e-15) {
            best_sum = s;
            best_tuple = tuple;
        } else if (std::abs(s - best_sum) <= 1e-15 && !best_tuple.empty()) {
            auto pts_a = best_tuple, pts_b = tuple;
            std::sort(pts_a.begin(), pts_a.end());
            std::sort(pts_b.begin(), pts_b.end());
            if (pts_b < pts_a) best_tuple = tuple;
        }
    }

    std::vector<Complex> pts;
    pts.reserve(best_tuple.size());
    for (size_t idx : best_tuple) pts.push_back(cache.points[idx]);
    std::sort(pts.begin(), pts.end(), lex_less);

    double se_sum2 = 0.0;
    for (size_t a = 0; a < best_tuple.size(); ++a)
        for (size_t b = a + 1; b < best_tuple.size(); ++b) {
            const double se = cache.se_at(best_tuple[a], best_tuple[b]);
            se_sum2 += se * se;
        }

    if (cfg.polish && cache.continuous && !K.disks().empty()) polish_tuple(K, metric, pts);

    double logsum = 0.0;
    for (size_t a = 0; a < pts.size(); ++a)
        for (size_t b = a + 1; b < pts.size(); ++b) {
            const double v = cache.continuous
                                 ? continuous_logval(metric, pts[a], pts[b])
                                 : cache.at(best_tuple[a], best_tuple[b]);
            logsum += v;
        }

    out.tuple = pts;
    if (logsum == kNegInf) {
        out.diameter = 0.0;
        out.flags = "degenerate";
        return out;
    }
    out.diameter = product_from_logsum(logsum, n);
    out.std_err = out.diameter * (2.0 / (double(n) * (n - 1))) * std::sqrt(se_sum2);
    if (cache.n_truncated > 0) out.flags = "truncation";
    return out;
}

}  // namespace

FeketeResult n_diameter(const CompactSet& K, int n, const FeketeMetric& metric,
                        const FeketeConfig& cfg) {
    require(n >= 2, "n_diameter: n >= 2 required");
    const int grid = std::max(cfg.grid_m, 4 * n);
    const auto disc = discretize(K, std::max(8, grid));
    const PairCache cache = build_cache(disc.candidates, metric, cfg);
    return run_diameter(cache, K, n, metric, cfg);
}

CaphResult caph_estimate(const CompactSet& K, const KoenigsDomain& domain, FlowTime t, int n_max,
                         const FeketeConfig& cfg) {
    require(n_max >= 6, "caph_estimate: n_max >= 6 required");
    const FeketeMetric metric = FeketeMetric::hyperbolic(domain, t);
    const int grid = std::max(cfg.grid_m, 4 * n_max);
    const auto disc = discretize(K, std::max(8, grid));
    const PairCache cache = build_cache(disc.candidates, metric, cfg);

    CaphResult out;
    out.kernel_source = cache.kernel_source;
    std::vector<double> se;
    for (int n = 2; n <= n_max; ++n) {
        const FeketeResult r = run_diameter(cache, K, n, metric, cfg);
        out.sequence.push_back(r.diameter);
        se.push_back(r.std_err);
        if (!r.flags.empty() && r.flags != "truncation") out.flags = r.flags;
    }
    for (size_t i = 0; i + 1 < out.sequence.size(); ++i) {
        const double tol = 1e-9 + 3.0 * (se[i] + se[i + 1]);
        if (out.sequence[i + 1] > out.sequence[i] + tol) {
            if (out.flags.find("nonmonotone") == std::string::npos) {
                if (!out.flags.empty()) out.flags += '|';
                out.flags += "nonmonotone";
            }
        }
    }
    if (!out.sequence.empty() && out.sequence.back() <= 0.0) {
        out.value = 0.0;
        return out;
    }

    // Least squares of log d_n on {1, log n/(n-1), 1/(n-1)}; the intercept is
    // the extrapolated log-limit.
    double ata[3][3] = {};
    double atb[3] = {};
    for (size_t k = 0; k < out.sequence.size(); ++k) {
        const double n = static_cast<double>(k + 2);
        const double basis[3] = {1.0, std::log(n) / (n - 1.0), 1.0 / (n - 1.0)};
        const double y = std::log(out.sequence[k]);
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) ata[i][j] += basis[i] * basis[j];
            atb[i] += basis[i] * y;
        }
    }
    // Gaussian elimination with partial pivoting on the 3x3 system.
    int perm[3] = {0, 1, 2};
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(ata[perm[r]][col]) > std::abs(ata[perm[piv]][col])) piv = r;
        std::swap(perm[col], perm[piv]);
        for (int r = col + 1; r < 3; ++r) {
            const double f = ata[perm[r]][col] / ata[perm[col]][col];
            for (int cc = col; cc < 3; ++cc) ata[perm[r]][cc] -= f * ata[perm[col]][cc];
            atb[perm[r]] -= f * atb[perm[col]];
        }
    }
    double coef[3];
    for (int r = 2; r >= 0; --r) {
        double s = atb[perm[r]];
        for (int cc = r + 1; cc < 3; ++cc) s -= ata[perm[r]][cc] * coef[cc];
        coef[r] = s / ata[perm[r]][r];
    }
    out.value = std::exp(coef[0]);
    double se2 = 0.0;
    for (double s : se) se2 += s * s;
    out.std_err = out.sequence.empty() ? 0.0 : std::sqrt(se2 / out.sequence.size());
    return out;
}

}  // namespace petallab
