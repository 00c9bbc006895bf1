#pragma once

#include <string>
#include <vector>

#include "petallab/types.hpp"

namespace petallab {

/// Removed half-line {Im w = height, Re w <= tip}.
struct Slit {
    double height;
    double tip;
};

enum class Shape {
    UnitDisk,
    UpperHalfPlane,
    HorizontalStrip,
    SlitStrip,
    SlitHalfPlane,
    ExpCusp,
};

/// A planar simply connected domain from the closed catalog, given by exact
/// containment and distance-to-boundary queries. All semigroup dynamics are
/// realized as horizontal translation of queries against a fixed domain.
/// Immutable after construction.
class KoenigsDomain {
  public:
    static KoenigsDomain unit_disk();
    static KoenigsDomain upper_half_plane();
    static KoenigsDomain horizontal_strip(double y0, double y1);
    static KoenigsDomain slit_strip(double height, std::vector<Slit> slits);
    static KoenigsDomain slit_half_plane(std::vector<Slit> slits);
    static KoenigsDomain exp_cusp();

    Shape shape() const { return shape_; }
    double strip_y0() const { return y0_; }
    double strip_y1() const { return y1_; }
    /// Slits sorted by increasing height.
    const std::vector<Slit>& slits() const { return slits_; }

    /// True for every shape whose points may be pushed arbitrarily far in the
    /// positive direction without leaving the domain. The unit disk is the
    /// one catalog member without this property; it serves as the reference
    /// geometry for the closed-form oracles and the condenser plate.
    bool convex_in_positive_direction() const { return shape_ != Shape::UnitDisk; }

    std::string describe() const;

  private:
    KoenigsDomain() = default;
    Shape shape_ = Shape::UnitDisk;
    double y0_ = 0.0;
    double y1_ = 0.0;
    std::vector<Slit> slits_;
};

/// Membership test; points exactly on a boundary curve or slit are outside.
bool contains(const KoenigsDomain& domain, Complex w);

/// Euclidean distance to the boundary. Exact for line/slit shapes; the cusp
/// boundary is minimized numerically to 1e-10 relative tolerance.
/// Rejects points outside the domain.
double distance_to_boundary(const KoenigsDomain& domain, Complex w);

/// Distance to the boundary of the domain translated by -t, i.e. the distance
/// seen by the point w + t in the base domain.
double shifted_distance(const KoenigsDomain& domain, Complex w, FlowTime t);

/// A maximal horizontal strip, half-plane or invariant line inside a domain.
struct Petal {
    enum class Kind { HyperbolicStrip, ParabolicHalfPlane, DegenerateLine };
    Kind kind;
    double y0 = 0.0;
    double y1 = 0.0;  // meaningful for HyperbolicStrip only

    bool contains_point(Complex w) const;
    std::string describe() const;
};

/// Enumerates the maximal petals of a catalog domain. The unit disk holds no
/// horizontal strip or half-plane and yields an empty list.
std::vector<Petal> petals(const KoenigsDomain& domain);

}  // namespace petallab
