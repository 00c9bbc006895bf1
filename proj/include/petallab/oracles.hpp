#pragma once

#include <optional>
#include <utility>

#include "petallab/domains.hpp"
#include "petallab/types.hpp"

namespace petallab {

/// Hyperbolic density at the first argument, hyperbolic distance and Green
/// value of a point pair. green == -log(tanh(distance)) by construction;
/// coincident points carry distance 0 and green = +inf.
struct MetricTriple {
    double density;
    double distance;
    double green;
};

/// Unit disk: density 1/(1-|z|^2), tanh d = |(z-w)/(1-conj(z)w)|.
MetricTriple disk_metrics(Complex z, Complex w);

/// Upper half-plane {Im > 0}: density 1/(2 Im z), tanh d = |z-w|/|z-conj(w)|.
MetricTriple halfplane_metrics(Complex z, Complex w);

/// Horizontal strip {y0 < Im < y1} via the exponential map to the half-plane.
/// Evaluated in translation-reduced form (only Re z - Re w and the imaginary
/// parts enter), so horizontal translation of both points is an exact no-op.
MetricTriple strip_metrics(Complex z, Complex w, double y0, double y1);

enum class StripSide { Upper, Lower };

/// Harmonic measure of one boundary line of a strip: linear in Im z.
double strip_harmonic_measure(Complex z, double y0, double y1, StripSide side);

/// Concentric condenser in the unit disk: harmonic measure of {|w| <= r} seen
/// from |z| = z_abs, and the capacity 2*pi/log(1/r).
std::pair<double, double> disk_concentric(double z_abs, double r);

/// Harmonic measure of a boundary segment [a, b] of the real axis seen from
/// z in the upper half-plane: subtended angle over pi.
double halfplane_segment_measure(Complex z, double a, double b);

/// Closed-form metric triple for shifted queries against catalog domains that
/// have one (disk, half-plane, strip); empty for slit/cusp shapes. For strip
/// and half-plane the flow parameter cancels analytically, which keeps
/// group-fixture sweeps bit-identical across t.
std::optional<MetricTriple> metric_oracle(const KoenigsDomain& domain, Complex z, Complex w,
                                          FlowTime t);

/// Density-only variant of the above.
std::optional<double> density_oracle(const KoenigsDomain& domain, Complex z, FlowTime t);

}  // namespace petallab
