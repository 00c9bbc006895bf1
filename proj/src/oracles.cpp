#include "petallab/oracles.hpp"

#include <cmath>

namespace petallab {

namespace {

MetricTriple triple_from_distance(double density, double d) {
    return {density, d, green_from_distance(d)};
}

// Half-plane distance in the curvature -4 normalization:
//   d = (1/2) * acosh(1 + |z-w|^2 / (2 Im z Im w)).
double halfplane_distance(double dx, double yz, double yw) {
    const double dy = yz - yw;
    const double q = (dx * dx + dy * dy) / (2.0 * yz * yw);
    return 0.5 * std::acosh(1.0 + q);
}

}  // namespace

MetricTriple disk_metrics(Complex z, Complex w) {
    require(std::abs(z) < 1.0 && std::abs(w) < 1.0, "disk_metrics: points must lie in |z| < 1");
    const double density = 1.0 / (1.0 - std::norm(z));
    if (z == w) return {density, 0.0, std::numeric_limits<double>::infinity()};
    const double ratio = std::abs((z - w) / (1.0 - std::conj(z) * w));
    return triple_from_distance(density, std::atanh(ratio));
}

MetricTriple halfplane_metrics(Complex z, Complex w) {
    require(z.imag() > 0.0 && w.imag() > 0.0, "halfplane_metrics: points must lie in Im > 0");
    const double density = 1.0 / (2.0 * z.imag());
    if (z == w) return {density, 0.0, std::numeric_limits<double>::infinity()};
    const double d = halfplane_distance(z.real() - w.real(), z.imag(), w.imag());
    return triple_from_distance(density, d);
}

MetricTriple strip_metrics(Complex z, Complex w, double y0, double y1) {
    require(y0 < y1, "strip_metrics: y0 < y1 required");
    require(z.imag() > y0 && z.imag() < y1 && w.imag() > y0 && w.imag() < y1,
            "strip_metrics: points must lie in the open strip");
    const double scale = kPi / (y1 - y0);
    const double bz = scale * (z.imag() - y0);
    const double bw = scale * (w.imag() - y0);
    const double density = scale / (2.0 * std::sin(bz));
    if (z == w) return {density, 0.0, std::numeric_limits<double>::infinity()};
    // Image points under exp(scale * (. - i*y0)) have
    //   |z'-w'|^2 / (2 Im z' Im w') = (cosh(da) - cos(bz-bw)) / (sin bz sin bw),
    // a function of the coordinate differences only.
    const double da = scale * (z.real() - w.real());
    const double q = (std::cosh(da) - std::cos(bz - bw)) / (std::sin(bz) * std::sin(bw));
    return triple_from_distance(density, 0.5 * std::acosh(1.0 + q));
}

double strip_harmonic_measure(Complex z, double y0, double y1, StripSide side) {
    require(y0 < y1, "strip_harmonic_measure: y0 < y1 required");
    require(z.imag() > y0 && z.imag() < y1, "strip_harmonic_measure: point outside strip");
    const double upper = (z.imag() - y0) / (y1 - y0);
    return side == StripSide::Upper ? upper : 1.0 - upper;
}

std::pair<double, double> disk_concentric(double z_abs, double r) {
    require(r > 0.0 && r < z_abs && z_abs < 1.0, "disk_concentric: need 0 < r < |z| < 1");
    const double omega = std::log(z_abs) / std::log(r);
    const double capacity = kTwoPi / std::log(1.0 / r);
    return {omega, capacity};
}

double halfplane_segment_measure(Complex z, double a, double b) {
    require(z.imag() > 0.0, "halfplane_segment_measure: point must lie in Im > 0");
    require(a < b, "halfplane_segment_measure: a < b required");
    return std::arg((b - z) / (a - z)) / kPi;
}

std::optional<MetricTriple> metric_oracle(const KoenigsDomain& domain, Complex z, Complex w,
                                          FlowTime t) {
    switch (domain.shape()) {
        case Shape::UnitDisk:
            return disk_metrics(z + t, w + t);
        case Shape::UpperHalfPlane: {
            require(z.imag() > 0.0 && w.imag() > 0.0, "metric_oracle: points must lie in Im > 0");
            const double density = 1.0 / (2.0 * z.imag());
            if (z == w) return MetricTriple{density, 0.0, std::numeric_limits<double>::infinity()};
            const double d = halfplane_distance(z.real() - w.real(), z.imag(), w.imag());
            return triple_from_distance(density, d);
        }
        case Shape::HorizontalStrip:
            return strip_metrics(z, w, domain.strip_y0(), domain.strip_y1());
        default:
            return std::nullopt;
    }
}

std::optional<double> density_oracle(const KoenigsDomain& domain, Complex z, FlowTime t) {
    switch (domain.shape()) {
        case Shape::UnitDisk: {
            const Complex zt = z + t;
            require(std::abs(zt) < 1.0, "density_oracle: point outside disk");
            return 1.0 / (1.0 - std::norm(zt));
        }
        case Shape::UpperHalfPlane:
            require(z.imag() > 0.0, "density_oracle: point outside half-plane");
            return 1.0 / (2.0 * z.imag());
        case Shape::HorizontalStrip: {
            const double y0 = domain.strip_y0(), y1 = domain.strip_y1();
            require(z.imag() > y0 && z.imag() < y1, "density_oracle: point outside strip");
            const double scale = kPi / (y1 - y0);
            return scale / (2.0 * std::sin(scale * (z.imag() - y0)));
        }
        default:
            return std::nullopt;
    }
}

}  // namespace petallab
