#pragma once

#include <vector>

namespace petallab {

struct QuadNode {
    double x;
    double w;
};

/// Gauss-Legendre nodes/weights on [-1, 1], computed by Newton iteration on
/// the Legendre recurrence.
std::vector<QuadNode> gauss_legendre(int n);

/// Same rule mapped to [a, b].
std::vector<QuadNode> gauss_legendre(int n, double a, double b);

}  // namespace petallab
