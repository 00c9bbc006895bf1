#include <doctest.h>

#include <cmath>

#include "petallab/domains.hpp"
#include "petallab/rng.hpp"

using namespace petallab;

namespace {

KoenigsDomain default_slit_strip() {
    return KoenigsDomain::slit_strip(kTwoPi, {{kPi, 0.0}});
}

// Independent distance oracle: min distance over densely sampled boundary
// points of the line/slit shapes.
double sampled_boundary_distance(const KoenigsDomain& dom, Complex w, long samples) {
    const double span = 15.0;
    double best = std::numeric_limits<double>::infinity();
    auto scan_line = [&](double y, double x_lo, double x_hi) {
        for (long i = 0; i <= samples; ++i) {
            const double x = x_lo + (x_hi - x_lo) * i / samples;
            best = std::min(best, std::abs(w - Complex{x, y}));
        }
    };
    switch (dom.shape()) {
        case Shape::UpperHalfPlane:
            scan_line(0.0, w.real() - span, w.real() + span);
            break;
        case Shape::HorizontalStrip:
            scan_line(dom.strip_y0(), w.real() - span, w.real() + span);
            scan_line(dom.strip_y1(), w.real() - span, w.real() + span);
            break;
        case Shape::SlitStrip:
            scan_line(0.0, w.real() - span, w.real() + span);
            scan_line(dom.strip_y1(), w.real() - span, w.real() + span);
            for (const auto& s : dom.slits()) scan_line(s.height, s.tip - 2.0 * span, s.tip);
            break;
        case Shape::SlitHalfPlane:
            scan_line(0.0, w.real() - span, w.real() + span);
            for (const auto& s : dom.slits()) scan_line(s.height, s.tip - 2.0 * span, s.tip);
            break;
        default:
            FAIL("sampled oracle only covers line/slit shapes");
    }
    return best;
}

// Independent cusp-distance oracle: dense scan of the boundary curve.
double scanned_cusp_distance(Complex w) {
    double best = std::numeric_limits<double>::infinity();
    for (long i = 0; i <= 4000000; ++i) {
        const double s = -40.0 + 45.0 * i / 4000000.0;
        best = std::min(best, std::abs(w - Complex{s, -std::exp(s)}));
    }
    return best;
}

}  // namespace

TEST_CASE("containment of catalog shapes") {
    const auto slit = default_slit_strip();
    CHECK(contains(slit, {1.0, kPi / 2.0}));
    CHECK_FALSE(contains(slit, {-1.0, kPi}));       // on the removed half-line
    CHECK(contains(slit, {1.0, kPi}));              // right of the tip
    CHECK_FALSE(contains(slit, {0.5, 0.0}));        // on the lower edge
    CHECK_FALSE(contains(slit, {0.5, kTwoPi}));

    const auto cusp = KoenigsDomain::exp_cusp();
    CHECK(contains(cusp, {-3.0, 0.0}));             // 0 > -e^{-3}
    CHECK(contains(cusp, {0.0, 0.0}));
    CHECK_FALSE(contains(cusp, {0.0, -1.0}));       // on the curve at s = 0
    CHECK(contains(cusp, {2.0, -5.0}));             // -5 > -e^2

    const auto disk = KoenigsDomain::unit_disk();
    CHECK(contains(disk, {0.5, 0.0}));
    CHECK_FALSE(contains(disk, {1.0, 0.0}));
}

TEST_CASE("slit and strip distances are exact plane geometry") {
    const auto slit = default_slit_strip();
    const Complex w{1.0, 2.5};
    CHECK(distance_to_boundary(slit, w) ==
          doctest::Approx(std::sqrt(1.0 + (kPi - 2.5) * (kPi - 2.5))).epsilon(1e-12));

    const auto strip = KoenigsDomain::horizontal_strip(0.0, kPi);
    CHECK(distance_to_boundary(strip, {7.3, kPi / 2.0}) == doctest::Approx(kPi / 2.0));

    CHECK_THROWS_AS(distance_to_boundary(slit, {-1.0, kPi}), PreconditionError);
}

TEST_CASE("shifted distance equals distance at the translated point") {
    const auto slit = default_slit_strip();
    const Complex w{1.0, 2.5};
    // (-4, 2.5) sits under the slit overhang
    CHECK(shifted_distance(slit, w, -5.0) == doctest::Approx(kPi - 2.5).epsilon(1e-12));
    CHECK(shifted_distance(slit, w, 0.0) == doctest::Approx(distance_to_boundary(slit, w)));

    const auto cusp = KoenigsDomain::exp_cusp();
    const double d = shifted_distance(cusp, {0.0, 0.0}, -4.0);
    CHECK(d == doctest::Approx(std::exp(-4.0)).epsilon(2e-3));
}

TEST_CASE("cusp distance matches a dense boundary scan") {
    const auto cusp = KoenigsDomain::exp_cusp();
    for (const Complex w : {Complex{-2.0, 0.0}, Complex{0.3, 0.7}, Complex{1.0, -0.5}}) {
        const double got = distance_to_boundary(cusp, w);
        const double want = scanned_cusp_distance(w);
        CHECK(got == doctest::Approx(want).epsilon(1e-6));
    }
    // frozen value from the scan oracle
    CHECK(distance_to_boundary(cusp, {-2.0, 0.0}) == doctest::Approx(0.1341339).epsilon(1e-5));
}

TEST_CASE("distance agrees with the sampled-boundary oracle on line shapes") {
    Rng rng(20240901);
    const auto shapes = {KoenigsDomain::upper_half_plane(),
                         KoenigsDomain::horizontal_strip(0.0, kPi), default_slit_strip(),
                         KoenigsDomain::slit_half_plane({{1.0, 0.0}})};
    for (const auto& dom : shapes) {
        int tested = 0;
        while (tested < 25) {
            const Complex w{-6.0 + 12.0 * rng.next_unit(), -1.0 + 8.0 * rng.next_unit()};
            if (!contains(dom, w)) continue;
            ++tested;
            const double got = distance_to_boundary(dom, w);
            const double want = sampled_boundary_distance(dom, w, 1000000);
            CHECK(std::abs(got - want) < 1e-6);
        }
    }
}

TEST_CASE("positive-direction convexity holds on sampled points") {
    Rng rng(7);
    const auto shapes = {KoenigsDomain::upper_half_plane(),
                         KoenigsDomain::horizontal_strip(-1.0, 2.0), default_slit_strip(),
                         KoenigsDomain::slit_half_plane({{0.5, -2.0}, {2.0, 3.0}}),
                         KoenigsDomain::exp_cusp()};
    for (const auto& dom : shapes) {
        CHECK(dom.convex_in_positive_direction());
        int tested = 0;
        while (tested < 1000) {
            const Complex w{-8.0 + 16.0 * rng.next_unit(), -4.0 + 10.0 * rng.next_unit()};
            if (!contains(dom, w)) continue;
            ++tested;
            const double s = 12.0 * rng.next_unit();
            CHECK(contains(dom, w + s));
        }
    }
    CHECK_FALSE(KoenigsDomain::unit_disk().convex_in_positive_direction());
    CHECK_FALSE(contains(KoenigsDomain::unit_disk(), Complex{0.9, 0.0} + 0.5));
}

TEST_CASE("shifted distance is nonincreasing as t decreases") {
    const auto slit = default_slit_strip();
    const Complex w{3.0, kPi / 2.0};
    double prev = shifted_distance(slit, w, 0.0);
    for (double t = -1.0; t >= -20.0; t -= 1.0) {
        const double cur = shifted_distance(slit, w, t);
        CHECK(cur <= prev + 1e-12);
        prev = cur;
    }
}

TEST_CASE("petal enumeration") {
    const auto slit = default_slit_strip();
    const auto ps = petals(slit);
    REQUIRE(ps.size() == 2);
    CHECK(ps[0].kind == Petal::Kind::HyperbolicStrip);
    CHECK(ps[0].y0 == 0.0);
    CHECK(ps[0].y1 == kPi);
    CHECK(ps[1].y0 == kPi);
    CHECK(ps[1].y1 == kTwoPi);

    const auto shp = petals(KoenigsDomain::slit_half_plane({{1.0, 0.0}}));
    REQUIRE(shp.size() == 2);
    CHECK(shp[0].kind == Petal::Kind::HyperbolicStrip);
    CHECK(shp[1].kind == Petal::Kind::ParabolicHalfPlane);
    CHECK(shp[1].y0 == 1.0);

    const auto cusp = petals(KoenigsDomain::exp_cusp());
    REQUIRE(cusp.size() == 1);
    CHECK(cusp[0].kind == Petal::Kind::DegenerateLine);
    CHECK(cusp[0].y0 == 0.0);

    CHECK(petals(KoenigsDomain::unit_disk()).empty());
    REQUIRE(petals(KoenigsDomain::horizontal_strip(0.0, 1.0)).size() == 1);
}

TEST_CASE("petals are maximal: the widened region leaves the domain") {
    const double eps = 1e-6;
    const auto slit = default_slit_strip();
    for (const auto& p : petals(slit)) {
        // interior grid stays inside
        for (int i = 1; i < 8; ++i) {
            const double y = p.y0 + (p.y1 - p.y0) * i / 8.0;
            for (double x : {-7.0, 0.0, 5.0}) CHECK(contains(slit, {x, y}));
        }
        // the eps-widened strip (y0-eps, y1+eps) contains complement points:
        // the edge ordinates at Re = -1 lie on the outer boundary or a slit
        CHECK_FALSE(contains(slit, {-1.0, p.y0}));
        CHECK_FALSE(contains(slit, {-1.0, p.y1}));
    }
    // degenerate line: the widened band reaches below the cusp boundary
    const auto cusp = KoenigsDomain::exp_cusp();
    const double x_deep = std::log(eps / 2.0) - 1.0;
    CHECK_FALSE(contains(cusp, {x_deep, -eps / 2.0}));
    CHECK(contains(cusp, {x_deep, 0.0}));
}

TEST_CASE("domain constructors validate parameters") {
    CHECK_THROWS_AS(KoenigsDomain::horizontal_strip(1.0, 1.0), PreconditionError);
    CHECK_THROWS_AS(KoenigsDomain::slit_strip(-1.0, {{0.5, 0.0}}), PreconditionError);
    CHECK_THROWS_AS(KoenigsDomain::slit_strip(2.0, {{2.5, 0.0}}), PreconditionError);
    CHECK_THROWS_AS(KoenigsDomain::slit_strip(2.0, {{1.0, 0.0}, {1.0, 3.0}}), PreconditionError);
    CHECK_THROWS_AS(KoenigsDomain::slit_half_plane({{-0.5, 0.0}}), PreconditionError);
}
