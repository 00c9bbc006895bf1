#include "petallab/domains.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace petallab {

namespace {

void validate_slits(const std::vector<Slit>& slits, double lo, double hi) {
    for (const auto& s : slits) {
        require(std::isfinite(s.height) && std::isfinite(s.tip), "slit parameters must be finite");
        require(s.height > lo && s.height < hi, "slit ordinate must be strictly interior");
    }
    for (size_t i = 0; i < slits.size(); ++i)
        for (size_t j = i + 1; j < slits.size(); ++j)
            require(slits[i].height != slits[j].height, "slit ordinates must be distinct");
}

// Distance from w to the half-line {Im = h, Re <= tip}.
double slit_distance(const Slit& s, Complex w) {
    if (w.real() <= s.tip) return std::abs(w.imag() - s.height);
    return std::hypot(w.real() - s.tip, w.imag() - s.height);
}

bool on_slit(const Slit& s, Complex w) {
    return w.imag() == s.height && w.real() <= s.tip;
}

// Squared distance from w to the cusp boundary point s - i*e^s.
double cusp_sqdist(Complex w, double s) {
    const double es = std::exp(s);
    const double dx = w.real() - s;
    const double dy = w.imag() + es;
    return dx * dx + dy * dy;
}

// Distance from w to the curve s -> s - i*e^s: coarse scan to bracket the
// minimizer, then golden-section refinement to 1e-10 relative tolerance.
// For Im w >= -2*sqrt(2) the squared distance is unimodal in s; the scan
// guards the remaining cases.
double cusp_distance(Complex w) {
    const double x = w.real();
    const double hi = std::max(x, std::log1p(std::abs(w.imag()))) + 2.0;
    const double lo = std::min(x, 0.0) - 40.0 - std::abs(w.imag());
    const int kScan = 512;
    double best_s = x, best_f = cusp_sqdist(w, x);
    for (int i = 0; i <= kScan; ++i) {
        const double s = lo + (hi - lo) * i / kScan;
        const double f = cusp_sqdist(w, s);
        if (f < best_f) {
            best_f = f;
            best_s = s;
        }
    }
    const double step = (hi - lo) / kScan;
    double a = best_s - step, b = best_s + step;
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = cusp_sqdist(w, c), fd = cusp_sqdist(w, d);
    for (int iter = 0; iter < 200 && (b - a) > 1e-13 * (1.0 + std::abs(best_s)); ++iter) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = cusp_sqdist(w, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = cusp_sqdist(w, d);
        }
    }
    return std::sqrt(std::min(fc, fd));
}

}  // namespace

KoenigsDomain KoenigsDomain::unit_disk() {
    KoenigsDomain d;
    d.shape_ = Shape::UnitDisk;
    return d;
}

KoenigsDomain KoenigsDomain::upper_half_plane() {
    KoenigsDomain d;
    d.shape_ = Shape::UpperHalfPlane;
    return d;
}

KoenigsDomain KoenigsDomain::horizontal_strip(double y0, double y1) {
    require(std::isfinite(y0) && std::isfinite(y1) && y0 < y1, "strip requires y0 < y1");
    KoenigsDomain d;
    d.shape_ = Shape::HorizontalStrip;
    d.y0_ = y0;
    d.y1_ = y1;
    return d;
}

KoenigsDomain KoenigsDomain::slit_strip(double height, std::vector<Slit> slits) {
    require(std::isfinite(height) && height > 0.0, "slit strip requires height > 0");
    require(!slits.empty(), "slit strip requires at least one slit");
    validate_slits(slits, 0.0, height);
    std::sort(slits.begin(), slits.end(),
              [](const Slit& a, const Slit& b) { return a.height < b.height; });
    KoenigsDomain d;
    d.shape_ = Shape::SlitStrip;
    d.y0_ = 0.0;
    d.y1_ = height;
    d.slits_ = std::move(slits);
    return d;
}

KoenigsDomain KoenigsDomain::slit_half_plane(std::vector<Slit> slits) {
    require(!slits.empty(), "slit half-plane requires at least one slit");
    validate_slits(slits, 0.0, std::numeric_limits<double>::infinity());
    std::sort(slits.begin(), slits.end(),
              [](const Slit& a, const Slit& b) { return a.height < b.height; });
    KoenigsDomain d;
    d.shape_ = Shape::SlitHalfPlane;
    d.slits_ = std::move(slits);
    return d;
}

KoenigsDomain KoenigsDomain::exp_cusp() {
    KoenigsDomain d;
    d.shape_ = Shape::ExpCusp;
    return d;
}

std::string KoenigsDomain::describe() const {
    std::ostringstream os;
    switch (shape_) {
        case Shape::UnitDisk:
            os << "unit-disk";
            break;
        case Shape::UpperHalfPlane:
            os << "half-plane";
            break;
        case Shape::HorizontalStrip:
            os << "strip(" << y0_ << "," << y1_ << ")";
            break;
        case Shape::SlitStrip:
            os << "slit-strip(h=" << y1_ << ", " << slits_.size() << " slit(s))";
            break;
        case Shape::SlitHalfPlane:
            os << "slit-half-plane(" << slits_.size() << " slit(s))";
            break;
        case Shape::ExpCusp:
            os << "exp-cusp";
            break;
    }
    return os.str();
}

bool contains(const KoenigsDomain& domain, Complex w) {
    if (!is_finite(w)) return false;
    switch (domain.shape()) {
        case Shape::UnitDisk:
            return std::abs(w) < 1.0;
        case Shape::UpperHalfPlane:
            return w.imag() > 0.0;
        case Shape::HorizontalStrip:
            return w.imag() > domain.strip_y0() && w.imag() < domain.strip_y1();
        case Shape::SlitStrip: {
            if (w.imag() <= 0.0 || w.imag() >= domain.strip_y1()) return false;
            for (const auto& s : domain.slits())
                if (on_slit(s, w)) return false;
            return true;
        }
        case Shape::SlitHalfPlane: {
            if (w.imag() <= 0.0) return false;
            for (const auto& s : domain.slits())
                if (on_slit(s, w)) return false;
            return true;
        }
        case Shape::ExpCusp:
            return w.imag() > -std::exp(w.real());
    }
    return false;
}

double distance_to_boundary(const KoenigsDomain& domain, Complex w) {
    require(contains(domain, w), "distance_to_boundary: point outside " + domain.describe());
    switch (domain.shape()) {
        case Shape::UnitDisk:
            return 1.0 - std::abs(w);
        case Shape::UpperHalfPlane:
            return w.imag();
        case Shape::HorizontalStrip:
            return std::min(w.imag() - domain.strip_y0(), domain.strip_y1() - w.imag());
        case Shape::SlitStrip: {
            double d = std::min(w.imag(), domain.strip_y1() - w.imag());
            for (const auto& s : domain.slits()) d = std::min(d, slit_distance(s, w));
            return d;
        }
        case Shape::SlitHalfPlane: {
            double d = w.imag();
            for (const auto& s : domain.slits()) d = std::min(d, slit_distance(s, w));
            return d;
        }
        case Shape::ExpCusp:
            return cusp_distance(w);
    }
    return 0.0;
}

double shifted_distance(const KoenigsDomain& domain, Complex w, FlowTime t) {
    return distance_to_boundary(domain, w + t);
}

bool Petal::contains_point(Complex w) const {
    switch (kind) {
        case Kind::HyperbolicStrip:
            return w.imag() > y0 && w.imag() < y1;
        case Kind::ParabolicHalfPlane:
            return w.imag() > y0;
        case Kind::DegenerateLine:
            return w.imag() == y0;
    }
    return false;
}

std::string Petal::describe() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::HyperbolicStrip:
            os << "strip-petal(" << y0 << "," << y1 << ")";
            break;
        case Kind::ParabolicHalfPlane:
            os << "half-plane-petal(" << y0 << ")";
            break;
        case Kind::DegenerateLine:
            os << "degenerate-line(" << y0 << ")";
            break;
    }
    return os.str();
}

std::vector<Petal> petals(const KoenigsDomain& domain) {
    std::vector<Petal> out;
    switch (domain.shape()) {
        case Shape::UnitDisk:
            break;
        case Shape::UpperHalfPlane:
            out.push_back({Petal::Kind::ParabolicHalfPlane, 0.0, 0.0});
            break;
        case Shape::HorizontalStrip:
            out.push_back({Petal::Kind::HyperbolicStrip, domain.strip_y0(), domain.strip_y1()});
            break;
        case Shape::SlitStrip: {
            double lo = 0.0;
            for (const auto& s : domain.slits()) {
                out.push_back({Petal::Kind::HyperbolicStrip, lo, s.height});
                lo = s.height;
            }
            out.push_back({Petal::Kind::HyperbolicStrip, lo, domain.strip_y1()});
            break;
        }
        case Shape::SlitHalfPlane: {
            double lo = 0.0;
            for (const auto& s : domain.slits()) {
                out.push_back({Petal::Kind::HyperbolicStrip, lo, s.height});
                lo = s.height;
            }
            out.push_back({Petal::Kind::ParabolicHalfPlane, lo, 0.0});
            break;
        }
        case Shape::ExpCusp:
            out.push_back({Petal::Kind::DegenerateLine, 0.0, 0.0});
            break;
    }
    return out;
}

}  // namespace petallab
