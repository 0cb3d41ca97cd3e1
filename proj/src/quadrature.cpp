#include "prolate_lab/quadrature.hpp"

#include <cmath>

#include "prolate_lab/error.hpp"
#include "prolate_lab/specfun.hpp"

namespace prolate {

QuadratureRule gauss_legendre(int q) {
    if (q < 1) throw Error(ErrorKind::InvalidArgument, "quadrature order must be positive");
    if (q == 1) return {{0.0}, {2.0}};
    QuadratureRule r;
    r.nodes.resize(q);
    r.weights.resize(q);
    for (int i = 0; i < (q + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (q + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= q; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = q * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // recompute the derivative at the converged node
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= q; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = q * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.nodes[i] = -x;
        r.nodes[q - 1 - i] = x;
        r.weights[i] = w;
        r.weights[q - 1 - i] = w;
    }
    return r;
}

QuadratureRule composite_gauss_legendre(double a, double b, int panels, int q) {
    if (panels < 1) throw Error(ErrorKind::InvalidArgument, "need at least one panel");
    const QuadratureRule base = gauss_legendre(q);
    QuadratureRule r;
    r.nodes.reserve(std::size_t(panels) * q);
    r.weights.reserve(std::size_t(panels) * q);
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        for (int i = 0; i < q; ++i) {
            r.nodes.push_back(mid + 0.5 * h * base.nodes[i]);
            r.weights.push_back(0.5 * h * base.weights[i]);
        }
    }
    return r;
}

}  // namespace prolate
