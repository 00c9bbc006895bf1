#include "petallab/compacts.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace petallab {

double PolylinePiece::length() const {
    double len = 0.0;
    for (size_t i = 1; i < vertices.size(); ++i) len += std::abs(vertices[i] - vertices[i - 1]);
    return len;
}

CompactSet::CompactSet(std::vector<DiskPiece> disks, std::vector<PolylinePiece> polylines)
    : disks_(std::move(disks)), polylines_(std::move(polylines)) {
    require(!disks_.empty() || !polylines_.empty(), "compact set needs at least one piece");
    for (const auto& d : disks_) {
        require(is_finite(d.center) && std::isfinite(d.radius) && d.radius > 0.0,
                "disk piece requires finite center and radius > 0");
    }
    for (const auto& p : polylines_) {
        require(p.vertices.size() >= 2, "polyline piece requires >= 2 vertices");
        for (const auto& v : p.vertices) require(is_finite(v), "polyline vertex must be finite");
    }
}

double CompactSet::boundary_length() const {
    double len = 0.0;
    for (const auto& d : disks_) len += kTwoPi * d.radius;
    for (const auto& p : polylines_) len += p.length();
    return len;
}

double CompactSet::area() const {
    double a = 0.0;
    for (const auto& d : disks_) a += kPi * d.radius * d.radius;
    return a;
}

CompactSet CompactSet::translated(Complex offset) const {
    std::vector<DiskPiece> ds = disks_;
    std::vector<PolylinePiece> ps = polylines_;
    for (auto& d : ds) d.center += offset;
    for (auto& p : ps)
        for (auto& v : p.vertices) v += offset;
    return CompactSet(std::move(ds), std::move(ps));
}

namespace {

double segment_distance(Complex a, Complex b, Complex w) {
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(w - a);
    double s = ((w.real() - a.real()) * ab.real() + (w.imag() - a.imag()) * ab.imag()) / len2;
    s = std::clamp(s, 0.0, 1.0);
    return std::abs(w - (a + s * ab));
}

}  // namespace

double distance_to_set(const CompactSet& K, Complex w) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& disk : K.disks()) d = std::min(d, std::max(0.0, std::abs(w - disk.center) - disk.radius));
    for (const auto& poly : K.polylines())
        for (size_t i = 1; i < poly.vertices.size(); ++i)
            d = std::min(d, segment_distance(poly.vertices[i - 1], poly.vertices[i], w));
    return d;
}

namespace {

// Largest-remainder split of m into parts proportional to lengths, at least
// one node per piece of positive length.
std::vector<int> allocate_nodes(const std::vector<double>& lengths, int m) {
    const double total = std::accumulate(lengths.begin(), lengths.end(), 0.0);
    std::vector<int> counts(lengths.size(), 0);
    if (total <= 0.0) return counts;
    std::vector<std::pair<double, size_t>> rema;
    int used = 0;
    for (size_t i = 0; i < lengths.size(); ++i) {
        if (lengths[i] <= 0.0) continue;
        const double share = m * lengths[i] / total;
        counts[i] = std::max(1, static_cast<int>(std::floor(share)));
        used += counts[i];
        rema.push_back({share - std::floor(share), i});
    }
    std::sort(rema.begin(), rema.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    for (size_t k = 0; used < m && k < rema.size(); ++k, ++used) ++counts[rema[k].second];
    while (used > m) {  // trim from the smallest remainder, never below 1
        for (auto it = rema.rbegin(); it != rema.rend() && used > m; ++it) {
            if (counts[it->second] > 1) {
                --counts[it->second];
                --used;
            }
        }
        break;
    }
    return counts;
}

void disk_boundary(const DiskPiece& d, int count, Discretization& out) {
    const double w = kTwoPi * d.radius / count;
    for (int j = 0; j < count; ++j) {
        const double th = kTwoPi * j / count;
        const Complex n{std::cos(th), std::sin(th)};
        out.boundary_nodes.push_back(d.center + d.radius * n);
        out.boundary_weights.push_back(w);
        out.boundary_normals.push_back(n);
    }
}

void polyline_boundary(const PolylinePiece& p, int count, Discretization& out) {
    const double total = p.length();
    if (total <= 0.0) return;
    const double panel = total / count;
    size_t seg = 1;
    double seg_start = 0.0;
    double seg_len = std::abs(p.vertices[1] - p.vertices[0]);
    for (int j = 0; j < count; ++j) {
        const double s = (j + 0.5) * panel;
        while (s > seg_start + seg_len && seg + 1 < p.vertices.size()) {
            seg_start += seg_len;
            ++seg;
            seg_len = std::abs(p.vertices[seg] - p.vertices[seg - 1]);
        }
        const Complex a = p.vertices[seg - 1], b = p.vertices[seg];
        const double frac = seg_len > 0.0 ? (s - seg_start) / seg_len : 0.0;
        const Complex tangent = seg_len > 0.0 ? (b - a) / seg_len : Complex{1.0, 0.0};
        out.boundary_nodes.push_back(a + frac * (b - a));
        out.boundary_weights.push_back(panel);
        out.boundary_normals.push_back(Complex{0.0, 1.0} * tangent);
    }
}

void disk_area(const DiskPiece& d, int budget, Discretization& out) {
    // Linear in the budget per axis so that doubling m quarters the
    // midpoint-rule error.
    const int n_r = std::max(2, budget / 8);
    const int n_th = n_r;
    const double w = kPi * d.radius * d.radius / (n_r * n_th);
    for (int k = 0; k < n_r; ++k) {
        const double r = d.radius * std::sqrt((k + 0.5) / n_r);
        for (int j = 0; j < n_th; ++j) {
            const double th = kTwoPi * (j + 0.5) / n_th;
            out.area_nodes.push_back(d.center + Complex{r * std::cos(th), r * std::sin(th)});
            out.area_weights.push_back(w);
        }
    }
}

}  // namespace

Discretization discretize(const CompactSet& K, int m) {
    require(m >= 8, "discretize: m >= 8 required");
    Discretization out;

    std::vector<double> lengths;
    for (const auto& d : K.disks()) lengths.push_back(kTwoPi * d.radius);
    for (const auto& p : K.polylines()) lengths.push_back(p.length());
    const auto counts = allocate_nodes(lengths, m);

    size_t idx = 0;
    for (const auto& d : K.disks()) disk_boundary(d, std::max(counts[idx++], 3), out);
    for (const auto& p : K.polylines()) polyline_boundary(p, counts[idx++], out);

    idx = 0;
    for (const auto& d : K.disks()) disk_area(d, std::max(counts[idx++], 4), out);

    // Candidate grid: quadrature nodes plus endpoint-inclusive polyline grids
    // and disk interiors (center + polar rings).
    out.candidates = out.boundary_nodes;
    idx = 0;
    for (const auto& d : K.disks()) {
        const int count = std::max(counts[idx++], 3);
        out.candidates.push_back(d.center);
        const int n_r = std::max(1, count / 32);
        for (int k = 0; k < n_r; ++k) {
            const double r = d.radius * (k + 0.5) / n_r;
            const int n_th = std::max(8, count / 8);
            for (int j = 0; j < n_th; ++j) {
                const double th = kTwoPi * j / n_th;
                out.candidates.push_back(d.center + Complex{r * std::cos(th), r * std::sin(th)});
            }
        }
    }
    for (const auto& p : K.polylines()) {
        const int count = counts[idx++];
        for (const auto& v : p.vertices) out.candidates.push_back(v);
        const double total = p.length();
        if (total <= 0.0 || count < 1) continue;
        // arc-length linspace including both endpoints
        for (int j = 0; j <= count; ++j) {
            const double s = total * j / count;
            double acc = 0.0;
            for (size_t i = 1; i < p.vertices.size(); ++i) {
                const double seg = std::abs(p.vertices[i] - p.vertices[i - 1]);
                if (acc + seg >= s || i + 1 == p.vertices.size()) {
                    const double frac = seg > 0.0 ? std::clamp((s - acc) / seg, 0.0, 1.0) : 0.0;
                    out.candidates.push_back(p.vertices[i - 1] + frac * (p.vertices[i] - p.vertices[i - 1]));
                    break;
                }
                acc += seg;
            }
        }
    }
    return out;
}

}  // namespace petallab
