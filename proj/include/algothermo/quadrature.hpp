#pragma once

#include <vector>

namespace algothermo {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Legendre rule with `count` nodes mapped onto [lo, hi], nodes
// ascending. Throws std::domain_error for count < 1.
QuadratureRule gauss_legendre(int count, double lo = 0.0, double hi = 1.0);

}  // namespace algothermo
