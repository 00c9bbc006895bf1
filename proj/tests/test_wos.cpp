#include <doctest.h>

#include <cmath>

#include "petallab/oracles.hpp"
#include "petallab/wos.hpp"

using namespace petallab;

namespace {

WosConfig quick(long walks, uint64_t seed) {
    WosConfig cfg;
    cfg.n_walks = walks;
    cfg.seed = seed;
    return cfg;
}

void check_within(const Estimate& e, double truth, double nsigma, double floor = 5e-3) {
    const double tol = std::max(nsigma * e.std_err, floor);
    CHECK(std::abs(e.value - truth) <= tol);
}

}  // namespace

TEST_CASE("exit samples land in the epsilon shell and are reproducible") {
    const auto disk = KoenigsDomain::unit_disk();
    const WosConfig cfg = quick(100, 42);
    for (uint64_t i = 0; i < 50; ++i) {
        const auto s = wos_exit({0.0, 0.0}, disk, nullptr, cfg, i);
        REQUIRE(s.hit == Hit::Outer);
        CHECK(1.0 - std::abs(s.point) <= cfg.epsilon_shell);
        const auto again = wos_exit({0.0, 0.0}, disk, nullptr, cfg, i);
        CHECK(s.point == again.point);  // bit-identical replay
        CHECK(s.steps == again.steps);
    }
}

TEST_CASE("inner-hit frequency matches the concentric oracle") {
    const auto disk = KoenigsDomain::unit_disk();
    const CompactSet K({{Complex{0.0, 0.0}, 0.5}}, {});
    const Estimate e = harmonic_measure_mc({0.8, 0.0}, K, disk, 0.0, quick(20000, 7));
    check_within(e, disk_concentric(0.8, 0.5).first, 3.0, 0.0);
    CHECK(e.value >= 0.0);
    CHECK(e.value <= 1.0);
    CHECK(e.std_err <= 0.5 / std::sqrt(20000.0));
    CHECK(e.n_samples == 20000);
}

TEST_CASE("harmonic measure is reflection symmetric in the strip") {
    const auto strip = KoenigsDomain::horizontal_strip(0.0, kPi);
    const CompactSet K({{Complex{0.0, kPi / 2.0}, 0.2}}, {});
    const CompactSet K_ref = K;  // the disk is its own reflection about the midline
    const Estimate a = harmonic_measure_mc({3.0, kPi / 2.0}, K, strip, 0.0, quick(20000, 11));
    const Estimate b = harmonic_measure_mc({3.0, kPi / 2.0}, K_ref, strip, 0.0, quick(20000, 12));
    CHECK(std::abs(a.value - b.value) <= 2.0 * std::hypot(a.std_err, b.std_err));
}

TEST_CASE("green estimates agree with disk and half-plane closed forms") {
    const Estimate g_disk =
        green_mc({0.5, 0.0}, {0.0, 0.0}, KoenigsDomain::unit_disk(), 0.0, quick(20000, 3));
    check_within(g_disk, std::log(2.0), 3.0);

    const Estimate g_half = green_mc({0.0, 1.0}, {0.0, 2.0}, KoenigsDomain::upper_half_plane(),
                                     0.0, quick(20000, 4));
    check_within(g_half, std::log(3.0), 3.0);

    // symmetry within 3 sigma
    const Estimate g_swap = green_mc({0.0, 2.0}, {0.0, 1.0}, KoenigsDomain::upper_half_plane(),
                                     0.0, quick(20000, 5));
    CHECK(std::abs(g_half.value - g_swap.value) <=
          3.0 * std::hypot(g_half.std_err, g_swap.std_err) + 5e-3);
}

TEST_CASE("robin density matches the conformal radius") {
    check_within(robin_density_mc({0.0, 0.0}, KoenigsDomain::unit_disk(), 0.0, quick(20000, 21)),
                 1.0, 3.0);
    check_within(robin_density_mc({0.0, 1.0}, KoenigsDomain::upper_half_plane(), 0.0,
                                  quick(20000, 22)),
                 0.5, 3.0);
    check_within(robin_density_mc({0.0, kPi / 2.0}, KoenigsDomain::horizontal_strip(0.0, kPi),
                                  0.0, quick(20000, 23)),
                 0.5, 3.0);
}

TEST_CASE("hyperbolic distance transform") {
    const Estimate d = hyp_distance_mc({0.5, 0.0}, {0.0, 0.0}, KoenigsDomain::unit_disk(), 0.0,
                                       quick(20000, 31));
    check_within(d, std::atanh(0.5), 3.0, 2e-2);
    const Estimate dh = hyp_distance_mc({0.0, 1.0}, {0.0, 2.0},
                                        KoenigsDomain::upper_half_plane(), 0.0, quick(20000, 32));
    check_within(dh, std::atanh(1.0 / 3.0), 3.0, 2e-2);
    const Estimate ds = hyp_distance_mc({0.0, kPi / 2.0}, {1.0, kPi / 2.0},
                                        KoenigsDomain::horizontal_strip(0.0, kPi), 0.0,
                                        quick(20000, 33));
    check_within(ds, 0.5, 3.0, 2e-2);
}

TEST_CASE("determinism: same seed gives bit-identical estimates") {
    const auto strip = KoenigsDomain::horizontal_strip(0.0, kPi);
    const CompactSet K({{Complex{3.0, kPi / 2.0}, 0.3}}, {});
    const Estimate a = harmonic_measure_mc({5.0, kPi / 2.0}, K, strip, -2.0, quick(5000, 77));
    const Estimate b = harmonic_measure_mc({5.0, kPi / 2.0}, K, strip, -2.0, quick(5000, 77));
    CHECK(a.value == b.value);
    CHECK(a.std_err == b.std_err);
    CHECK(a.n_truncated == b.n_truncated);
    const Estimate c = harmonic_measure_mc({5.0, kPi / 2.0}, K, strip, -2.0, quick(5000, 78));
    CHECK(a.value != c.value);  // different stream actually moves
}

TEST_CASE("backward flow raises the domain value toward the petal limit") {
    // In the slit model the t = 0 domain is larger around the plate than the
    // deep-backward domain, so the harmonic measure decreases along the sweep.
    const auto slit = KoenigsDomain::slit_strip(kTwoPi, {{kPi, 0.0}});
    const CompactSet K({{Complex{3.0, kPi / 2.0}, 0.3}}, {});
    const Estimate now = harmonic_measure_mc({5.0, kPi / 2.0}, K, slit, 0.0, quick(20000, 41));
    const Estimate deep = harmonic_measure_mc({5.0, kPi / 2.0}, K, slit, -30.0, quick(20000, 42));
    CHECK(now.value - deep.value > 2.0 * std::hypot(now.std_err, deep.std_err));
}

TEST_CASE("removing a slit enlarges the domain and raises the measure") {
    const auto slit = KoenigsDomain::slit_strip(kTwoPi, {{kPi, 0.0}});
    const auto plain = KoenigsDomain::horizontal_strip(0.0, kTwoPi);
    const CompactSet K({{Complex{-3.0, kPi / 2.0}, 0.3}}, {});
    const Estimate a = harmonic_measure_mc({-1.0, kPi / 2.0}, K, slit, 0.0, quick(20000, 51));
    const Estimate b = harmonic_measure_mc({-1.0, kPi / 2.0}, K, plain, 0.0, quick(20000, 52));
    CHECK(b.value - a.value >= -2.0 * std::hypot(a.std_err, b.std_err));
}

TEST_CASE("density estimate sits in the Koebe band") {
    const auto slit = KoenigsDomain::slit_strip(kTwoPi, {{kPi, 0.0}});
    for (double t : {0.0, -6.0}) {
        const Complex w{4.0, kPi / 2.0};
        const Estimate lam = robin_density_mc(w, slit, t, quick(20000, 61));
        const double delta = shifted_distance(slit, w, t);
        CHECK(lam.value >= 1.0 / (4.0 * delta) - 3.0 * lam.std_err);
        CHECK(lam.value <= 1.0 / delta + 3.0 * lam.std_err);
    }
}

TEST_CASE("precondition failures throw") {
    const auto disk = KoenigsDomain::unit_disk();
    const CompactSet K({{Complex{0.0, 0.0}, 0.5}}, {});
    CHECK_THROWS_AS(harmonic_measure_mc({2.0, 0.0}, K, disk, 0.0, quick(1000, 1)),
                    PreconditionError);
    CHECK_THROWS_AS(green_mc({0.5, 0.0}, {0.5, 0.0}, disk, 0.0, quick(1000, 1)),
                    PreconditionError);
    WosConfig bad = quick(10, 1);
    CHECK_THROWS_AS(harmonic_measure_mc({0.8, 0.0}, K, disk, 0.0, bad), PreconditionError);
    bad = quick(1000, 1);
    bad.epsilon_shell = 0.5;
    CHECK_THROWS_AS(harmonic_measure_mc({0.8, 0.0}, K, disk, 0.0, bad), PreconditionError);
}
