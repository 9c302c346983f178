#include "spikelab/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "spikelab/errors.hpp"

namespace spikelab {

QuadratureRule gauss_legendre(int m, double a, double b)
{
    if (m < 1)
        throw DomainError("gauss_legendre needs at least one node");
    QuadratureRule rule;
    rule.nodes.resize(static_cast<std::size_t>(m));
    rule.weights.resize(static_cast<std::size_t>(m));
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (int i = 0; i < (m + 1) / 2; ++i) {
        long double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
        long double dp = 0.0L;
        for (int iter = 0; iter < 100; ++iter) {
            long double p0 = 1.0L, p1 = x;
            for (int k = 2; k <= m; ++k) {
                const long double p2 = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = m * (x * p1 - p0) / (x * x - 1.0L);
            const long double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-19L)
                break;
        }
        {
            long double p0 = 1.0L, p1 = x;
            for (int k = 2; k <= m; ++k) {
                const long double p2 = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = m * (x * p1 - p0) / (x * x - 1.0L);
        }
        const long double w = 2.0L / ((1.0L - x * x) * dp * dp);
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(m - 1 - i);
        rule.nodes[lo] = static_cast<double>(mid - half * x);
        rule.nodes[hi] = static_cast<double>(mid + half * x);
        rule.weights[lo] = static_cast<double>(half * w);
        rule.weights[hi] = static_cast<double>(half * w);
    }
    return rule;
}

}  // namespace spikelab
