#pragma once

#include <vector>

namespace prolate {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// q-point Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(int q);

// Composite rule: `panels` equal panels on [a, b], q Gauss points each.
QuadratureRule composite_gauss_legendre(double a, double b, int panels, int q);

}  // namespace prolate
