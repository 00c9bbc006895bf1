#pragma once

#include <vector>

#include "petallab/types.hpp"

namespace petallab {

/// A compact plate: union of closed disks and polylines. Zero-length
/// polylines are tolerated as isolated points so that degenerate Fekete
/// inputs can be expressed; they carry no quadrature weight.
struct DiskPiece {
    Complex center;
    double radius;
};

struct PolylinePiece {
    std::vector<Complex> vertices;
    double length() const;
};

class CompactSet {
  public:
    CompactSet(std::vector<DiskPiece> disks, std::vector<PolylinePiece> polylines);

    const std::vector<DiskPiece>& disks() const { return disks_; }
    const std::vector<PolylinePiece>& polylines() const { return polylines_; }

    bool has_area() const { return !disks_.empty(); }
    double boundary_length() const;
    double area() const;

    CompactSet translated(Complex offset) const;

  private:
    std::vector<DiskPiece> disks_;
    std::vector<PolylinePiece> polylines_;
};

/// Euclidean distance to the set (0 on the set). Exact per piece.
double distance_to_set(const CompactSet& K, Complex w);

/// Quadrature and candidate structure for one compact set.
///   boundary nodes: midpoint-rule panels, arc weights summing to the total
///     boundary length; normals point out of the owning piece.
///   area nodes: polar product rule over disk pieces, weights summing to the
///     total area; empty for polylines.
///   candidates: boundary nodes plus vertex/endpoint-inclusive grids and a
///     polar interior grid of each disk.
struct Discretization {
    std::vector<Complex> boundary_nodes;
    std::vector<double> boundary_weights;
    std::vector<Complex> boundary_normals;
    std::vector<Complex> area_nodes;
    std::vector<double> area_weights;
    std::vector<Complex> candidates;
};

/// Splits m boundary nodes across pieces proportionally to arc length.
/// Requires m >= 8.
Discretization discretize(const CompactSet& K, int m);

}  // namespace petallab
