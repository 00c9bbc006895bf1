#include <doctest.h>

#include <cmath>
#include <numeric>

#include "petallab/energy.hpp"
#include "petallab/fekete.hpp"
#include "petallab/oracles.hpp"

using namespace petallab;

namespace {

WosConfig quick(long walks, uint64_t seed) {
    WosConfig cfg;
    cfg.n_walks = walks;
    cfg.seed = seed;
    return cfg;
}

std::vector<Panel> panels_of(const CompactSet& K, int m) {
    const auto disc = discretize(K, m);
    std::vector<Panel> panels;
    for (size_t i = 0; i < disc.boundary_nodes.size(); ++i)
        panels.push_back({disc.boundary_nodes[i], disc.boundary_weights[i],
                          disc.boundary_normals[i]});
    return panels;
}

}  // namespace

TEST_CASE("simplex projection") {
    const auto p = project_simplex({0.4, 0.4, 0.4});
    CHECK(std::accumulate(p.begin(), p.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    for (double x : p) CHECK(x == doctest::Approx(1.0 / 3.0));
    const auto q = project_simplex({2.0, -1.0, 0.0});
    CHECK(q[0] == doctest::Approx(1.0));
    CHECK(q[1] == 0.0);
    CHECK(q[2] == 0.0);
}

TEST_CASE("oracle kernel entries and symmetry") {
    const std::vector<Panel> two = {{{-0.5, 0.0}, 0.1, {-1.0, 0.0}}, {{0.5, 0.0}, 0.1, {1.0, 0.0}}};
    const GreenMatrix G = green_matrix(two, KoenigsDomain::unit_disk(), 0.0, quick(1000, 1));
    CHECK(G.kernel_source == "oracle");
    CHECK(G.at(0, 1) == doctest::Approx(std::log(1.25)).epsilon(1e-12));
    CHECK(G.at(0, 1) == G.at(1, 0));
    CHECK(G.at(0, 0) > G.at(0, 1));  // self energy dominates

    // far-apart strip nodes: the kernel decays to zero
    const std::vector<Panel> far = {{{0.0, kPi / 2.0}, 0.1, {0.0, 1.0}},
                                    {{40.0, kPi / 2.0}, 0.1, {0.0, 1.0}}};
    const GreenMatrix Gf =
        green_matrix(far, KoenigsDomain::horizontal_strip(0.0, kPi), 0.0, quick(1000, 1));
    CHECK(Gf.at(0, 1) < 1e-12);
}

TEST_CASE("monte carlo kernel is symmetric and matches the oracle kernel") {
    const CompactSet K({{Complex{3.0, kPi / 2.0}, 0.3}}, {});
    const auto panels = panels_of(K, 16);
    // strip with the slit far away: effectively the plain strip
    const auto far_slit = KoenigsDomain::slit_strip(kPi, {{kPi / 2.0, -2000.0}});
    const auto strip = KoenigsDomain::horizontal_strip(0.0, kPi);
    const GreenMatrix mc = green_matrix(panels, far_slit, 0.0, quick(4000, 9));
    const GreenMatrix exact = green_matrix(panels, strip, 0.0, quick(1000, 1));
    CHECK(mc.kernel_source == "monte-carlo");
    for (int i = 0; i < mc.n; ++i)
        for (int j = 0; j < mc.n; ++j) {
            CHECK(mc.at(i, j) == mc.at(j, i));
            if (i != j) {
                const double se = mc.se[static_cast<size_t>(i) * mc.n + j];
                CHECK(std::abs(mc.at(i, j) - exact.at(i, j)) <= std::max(3.0 * se, 0.5 * se + 0.05));
            }
        }
}

TEST_CASE("equilibrium of the centered plate reproduces log 2") {
    const CompactSet K({{Complex{0.0, 0.0}, 0.5}}, {});
    const EquilibriumResult e = equilibrium(K, KoenigsDomain::unit_disk(), 0.0, 64, quick(1000, 1));
    CHECK(e.converged);
    CHECK(e.kernel_source == "oracle");
    CHECK(e.energy == doctest::Approx(std::log(2.0)).epsilon(0.02));
    CHECK(e.capacity == doctest::Approx(kTwoPi / std::log(2.0)).epsilon(0.02));
    const double sum = std::accumulate(e.weights.begin(), e.weights.end(), 0.0);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    for (double w : e.weights) {
        CHECK(w >= 0.0);
        CHECK(w == doctest::Approx(1.0 / 64.0).epsilon(1e-3));
    }
    // refinement self-consistency: the quarter-arc offset proxy converges
    // like log(pi/2)/m, so the doubling step sits just above half a percent
    const EquilibriumResult refined =
        equilibrium(K, KoenigsDomain::unit_disk(), 0.0, 128, quick(1000, 1));
    CHECK(std::abs(refined.energy - e.energy) < 0.01 * e.energy);
    CHECK(refined.energy == doctest::Approx(std::log(2.0)).epsilon(0.01));
}

TEST_CASE("capacity is invariant under flow inside a pure strip") {
    const CompactSet K({{Complex{3.0, kPi / 2.0}, 0.2}}, {});
    const auto strip = KoenigsDomain::horizontal_strip(0.0, kPi);
    const EquilibriumResult a = condenser_capacity(K, strip, 0.0, 32, quick(1000, 1));
    const EquilibriumResult b = condenser_capacity(K, strip, -17.0, 32, quick(1000, 1));
    CHECK(a.capacity == b.capacity);  // translation cancels analytically
}

TEST_CASE("subordination: the slit lowers the kernel and raises capacity") {
    const CompactSet K({{Complex{2.0, kPi / 2.0}, 0.25}}, {});
    const auto strip = KoenigsDomain::horizontal_strip(0.0, kPi);
    const auto slit_outer = KoenigsDomain::slit_strip(kTwoPi, {{kPi, 4.0}});
    // Plate sits in the lower petal; the slit-strip domain contains the strip.
    const auto panels = panels_of(K, 16);
    const GreenMatrix inner = green_matrix(panels, strip, 0.0, quick(1000, 1));
    const GreenMatrix outer = green_matrix(panels, slit_outer, 0.0, quick(20000, 31));
    for (int i = 0; i < inner.n; ++i)
        for (int j = 0; j < inner.n; ++j) {
            if (i == j) continue;
            const double se = outer.se[static_cast<size_t>(i) * outer.n + j];
            CHECK(inner.at(i, j) <= outer.at(i, j) + 3.0 * se + 0.02);
        }
    const EquilibriumResult cap_small = equilibrium(K, strip, 0.0, 24, quick(1000, 1));
    const EquilibriumResult cap_large = equilibrium(K, slit_outer, 0.0, 24, quick(20000, 32));
    CHECK(cap_small.capacity >= cap_large.capacity - 3.0 * cap_large.capacity_std_err - 0.05);
}

TEST_CASE("capacity rises backward in time and stays below the petal value") {
    const auto slit = KoenigsDomain::slit_strip(kTwoPi, {{kPi, 0.0}});
    const auto strip = KoenigsDomain::horizontal_strip(0.0, kPi);
    const CompactSet K({{Complex{3.0, kPi / 2.0}, 0.3}}, {});
    const EquilibriumResult now = condenser_capacity(K, slit, 0.0, 24, quick(8000, 41));
    const EquilibriumResult deep = condenser_capacity(K, slit, -20.0, 24, quick(8000, 42));
    const EquilibriumResult petal = condenser_capacity(K, strip, 0.0, 24, quick(1000, 1));
    const double se = 3.0 * std::hypot(now.capacity_std_err, deep.capacity_std_err);
    CHECK(deep.capacity - now.capacity > -se);
    CHECK(now.capacity <= petal.capacity + 3.0 * now.capacity_std_err + 0.05 * petal.capacity);
    CHECK(deep.capacity <= petal.capacity + 3.0 * deep.capacity_std_err + 0.05 * petal.capacity);
}

TEST_CASE("transfinite diameter ties to the equilibrium energy") {
    const CompactSet K({{Complex{0.0, 0.0}, 0.5}}, {});
    const auto disk = KoenigsDomain::unit_disk();
    const EquilibriumResult e = equilibrium(K, disk, 0.0, 64, quick(1000, 1));
    FeketeConfig fc;
    fc.grid_m = 256;
    fc.seed = 4242;
    const CaphResult caph = caph_estimate(K, disk, 0.0, 10, fc);
    CHECK(caph.value == doctest::Approx(std::exp(-e.energy)).epsilon(0.02));
}

TEST_CASE("validation failures") {
    const CompactSet K({{Complex{0.0, 0.0}, 0.5}}, {});
    CHECK_THROWS_AS(equilibrium(K, KoenigsDomain::unit_disk(), 0.0, 8, quick(1000, 1)),
                    PreconditionError);
    const std::vector<Panel> dup = {{{0.0, 0.0}, 0.1, {1.0, 0.0}}, {{0.0, 0.0}, 0.1, {1.0, 0.0}}};
    CHECK_THROWS_AS(green_matrix(dup, KoenigsDomain::unit_disk(), 0.0, quick(1000, 1)),
                    PreconditionError);
}
