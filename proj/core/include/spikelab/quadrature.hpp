#pragma once

#include <vector>

namespace spikelab {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// m-point Gauss-Legendre rule on [a, b] (Newton iteration on P_m).
QuadratureRule gauss_legendre(int m, double a = -1.0, double b = 1.0);

}  // namespace spikelab
