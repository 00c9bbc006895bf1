#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "petallab/fekete.hpp"
#include "petallab/oracles.hpp"
#include "petallab/rng.hpp"

using namespace petallab;

namespace {

FeketeConfig quick(int grid, int restarts = 8, bool polish = true) {
    FeketeConfig cfg;
    cfg.grid_m = grid;
    cfg.n_restarts = restarts;
    cfg.polish = polish;
    cfg.seed = 12345;
    cfg.wos.n_walks = 4000;
    cfg.wos.seed = 54321;
    return cfg;
}

double pair_logval(const FeketeMetric& metric, Complex a, Complex b) {
    if (metric.kind == FeketeMetric::Kind::Euclidean) return std::log(std::abs(a - b));
    return -metric_oracle(*metric.domain, a, b, metric.t)->green;
}

// Exhaustive enumeration over the candidate grid: the independent optimum.
double brute_force_diameter(const CompactSet& K, int n, const FeketeMetric& metric, int grid) {
    auto cands = discretize(K, grid).candidates;
    std::sort(cands.begin(), cands.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    const size_t c = cands.size();
    std::vector<size_t> idx(static_cast<size_t>(n));
    double best = -std::numeric_limits<double>::infinity();
    // odometer over increasing index tuples
    for (size_t i = 0; i < static_cast<size_t>(n); ++i) idx[i] = i;
    for (;;) {
        double s = 0.0;
        for (size_t a = 0; a < idx.size(); ++a)
            for (size_t b = a + 1; b < idx.size(); ++b)
                s += pair_logval(metric, cands[idx[a]], cands[idx[b]]);
        best = std::max(best, s);
        // next combination
        int pos = n - 1;
        while (pos >= 0 && idx[static_cast<size_t>(pos)] == c - static_cast<size_t>(n - pos))
            --pos;
        if (pos < 0) break;
        ++idx[static_cast<size_t>(pos)];
        for (size_t i = static_cast<size_t>(pos) + 1; i < idx.size(); ++i) idx[i] = idx[i - 1] + 1;
    }
    return std::exp(2.0 * best / (double(n) * (n - 1)));
}

}  // namespace

TEST_CASE("euclidean 3-diameter of a segment matches brute force exactly") {
    const CompactSet K({}, {{{Complex{-1.0, 0.0}, Complex{1.0, 0.0}}}});
    const auto metric = FeketeMetric::euclidean();
    for (int n : {2, 3, 4}) {
        const auto cfg = quick(16, 8, false);
        const FeketeResult got = n_diameter(K, n, metric, cfg);
        const double want = brute_force_diameter(K, n, metric, 16);
        CHECK(got.diameter == doctest::Approx(want).epsilon(1e-12));
    }
    // with the endpoints and midpoint on the grid, d_3 attains 2^{1/3}
    const FeketeResult d3 = n_diameter(K, 3, metric, quick(16, 8, false));
    CHECK(d3.diameter == doctest::Approx(std::cbrt(2.0)).epsilon(1e-12));
    REQUIRE(d3.tuple.size() == 3);
    CHECK(d3.tuple.front() == Complex{-1.0, 0.0});
    CHECK(d3.tuple.back() == Complex{1.0, 0.0});
    CHECK(std::abs(d3.tuple[1]) < 1e-12);
}

TEST_CASE("hyperbolic 2-diameter of segment and disk in the unit disk") {
    const auto disk = KoenigsDomain::unit_disk();
    const auto metric = FeketeMetric::hyperbolic(disk, 0.0);
    const CompactSet seg({}, {{{Complex{-0.5, 0.0}, Complex{0.5, 0.0}}}});
    const FeketeResult a = n_diameter(seg, 2, metric, quick(64));
    CHECK(a.diameter == doctest::Approx(0.8).epsilon(1e-9));

    const CompactSet plate({{Complex{0.0, 0.0}, 0.5}}, {});
    const FeketeResult b = n_diameter(plate, 2, metric, quick(128));
    CHECK(b.diameter == doctest::Approx(0.8).epsilon(1e-6));
}

TEST_CASE("hyperbolic diameters match brute force on slit-free grids") {
    const auto strip = KoenigsDomain::horizontal_strip(0.0, kPi);
    const auto metric = FeketeMetric::hyperbolic(strip, -3.0);
    const CompactSet K({}, {{{Complex{2.0, 1.0}, Complex{4.0, 2.0}}}});
    for (int n : {2, 3, 4}) {
        const FeketeResult got = n_diameter(K, n, metric, quick(20, 8, false));
        const double want = brute_force_diameter(K, n, metric, 20);
        CHECK(got.diameter == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("diameters decrease in n and the optimizer beats random tuples") {
    const auto disk = KoenigsDomain::unit_disk();
    const auto metric = FeketeMetric::hyperbolic(disk, 0.0);
    const CompactSet plate({{Complex{0.0, 0.0}, 0.5}}, {});
    const auto cfg = quick(192);
    std::vector<double> seq;
    for (int n = 2; n <= 7; ++n) seq.push_back(n_diameter(plate, n, metric, cfg).diameter);
    for (size_t i = 0; i + 1 < seq.size(); ++i) CHECK(seq[i + 1] <= seq[i] + 1e-9);
    CHECK(seq.front() == doctest::Approx(0.8).epsilon(1e-6));

    // optimizer sanity: better than 1000 random tuples
    const int n = 5;
    const FeketeResult best = n_diameter(plate, n, metric, cfg);
    const auto cands = discretize(plate, 192).candidates;
    Rng rng(777);
    double best_random = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<Complex> tuple;
        for (int k = 0; k < n; ++k)
            tuple.push_back(cands[static_cast<size_t>(rng.next_unit() * cands.size())]);
        double s = 0.0;
        bool ok = true;
        for (int a = 0; a < n && ok; ++a)
            for (int b = a + 1; b < n; ++b) {
                if (tuple[a] == tuple[b]) {
                    ok = false;
                    break;
                }
                s += pair_logval(metric, tuple[a], tuple[b]);
            }
        if (ok) best_random = std::max(best_random, std::exp(2.0 * s / (n * (n - 1.0))));
    }
    CHECK(best.diameter >= best_random - 1e-12);
}

TEST_CASE("diameter equals the product formula on the returned tuple") {
    const auto strip = KoenigsDomain::horizontal_strip(0.0, kPi);
    const auto metric = FeketeMetric::hyperbolic(strip, 0.0);
    const CompactSet K({{Complex{3.0, kPi / 2.0}, 0.3}}, {});
    const FeketeResult r = n_diameter(K, 4, metric, quick(96));
    double s = 0.0;
    for (size_t a = 0; a < r.tuple.size(); ++a)
        for (size_t b = a + 1; b < r.tuple.size(); ++b)
            s += pair_logval(metric, r.tuple[a], r.tuple[b]);
    CHECK(r.diameter == doctest::Approx(std::exp(2.0 * s / 12.0)).epsilon(1e-12));
}

TEST_CASE("degenerate inputs produce a flagged zero") {
    // two isolated points cannot host a 3-tuple of distinct candidates
    const CompactSet points({}, {{{Complex{-0.5, 0.0}, Complex{-0.5, 0.0}}},
                                 {{Complex{0.5, 0.0}, Complex{0.5, 0.0}}}});
    const FeketeResult r =
        n_diameter(points, 3, FeketeMetric::hyperbolic(KoenigsDomain::unit_disk(), 0.0), quick(8));
    CHECK(r.diameter == 0.0);
    CHECK(r.flags == "degenerate");
}

TEST_CASE("backward flow only raises the hyperbolic diameter") {
    const auto slit = KoenigsDomain::slit_strip(kTwoPi, {{kPi, 0.0}});
    const CompactSet K({{Complex{3.0, kPi / 2.0}, 0.3}}, {});
    FeketeConfig cfg = quick(40);
    cfg.wos.n_walks = 6000;
    const FeketeResult now = n_diameter(K, 4, FeketeMetric::hyperbolic(slit, 0.0), cfg);
    const FeketeResult deep = n_diameter(K, 4, FeketeMetric::hyperbolic(slit, -30.0), cfg);
    CHECK(now.kernel_source == "monte-carlo");
    CHECK(deep.diameter >= now.diameter - 3.0 * std::hypot(now.std_err, deep.std_err));
}

TEST_CASE("caph extrapolation recovers the concentric value") {
    const auto disk = KoenigsDomain::unit_disk();
    const CompactSet plate({{Complex{0.0, 0.0}, 0.5}}, {});
    const CaphResult r = caph_estimate(plate, disk, 0.0, 10, quick(256, 8));
    REQUIRE(r.sequence.size() == 9);
    CHECK(r.sequence.front() == doctest::Approx(0.8).epsilon(1e-5));
    for (size_t i = 0; i + 1 < r.sequence.size(); ++i)
        CHECK(r.sequence[i + 1] <= r.sequence[i] + 1e-9);
    CHECK(r.value == doctest::Approx(0.5).epsilon(0.02));

    // closed-form sequence oracle: d_n = r n^{1/(n-1)} ((1-r^2)/(1-r^{2n}))^{1/(n-1)}
    for (size_t k = 0; k < r.sequence.size(); ++k) {
        const double n = static_cast<double>(k + 2);
        const double want = 0.5 * std::pow(n, 1.0 / (n - 1.0)) *
                            std::pow(0.75 / (1.0 - std::pow(0.25, n)), 1.0 / (n - 1.0));
        CHECK(r.sequence[k] == doctest::Approx(want).epsilon(5e-3));
    }
}

TEST_CASE("caph flags repeated-point degeneracies as zero") {
    const CompactSet points({}, {{{Complex{-0.5, 0.0}, Complex{-0.5, 0.0}}},
                                 {{Complex{0.5, 0.0}, Complex{0.5, 0.0}}}});
    const CaphResult r =
        caph_estimate(points, KoenigsDomain::unit_disk(), 0.0, 6, quick(8));
    CHECK(r.value == 0.0);
    CHECK(r.flags.find("degenerate") != std::string::npos);
}
