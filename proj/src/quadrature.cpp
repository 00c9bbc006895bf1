#include "petallab/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "petallab/types.hpp"

namespace petallab {

std::vector<QuadNode> gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1 required");
    std::vector<QuadNode> nodes(static_cast<size_t>(n));
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Chebyshev-based initial guess, then Newton on P_n.
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[static_cast<size_t>(i)] = {-x, w};
        nodes[static_cast<size_t>(n - 1 - i)] = {x, w};
    }
    return nodes;
}

std::vector<QuadNode> gauss_legendre(int n, double a, double b) {
    auto nodes = gauss_legendre(n);
    const double mid = 0.5 * (a + b);
    const double hal = 0.5 * (b - a);
    for (auto& q : nodes) {
        q.x = mid + hal * q.x;
        q.w *= hal;
    }
    return nodes;
}

}  // namespace petallab
