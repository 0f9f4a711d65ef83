// quadrature.hpp — Gauss–Legendre rules used for the coherent-state integrals.

#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace gcs {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// n-point Gauss–Legendre rule on [lo, hi], nodes ascending.
// Newton iteration on the Legendre recurrence.
inline QuadratureRule gauss_legendre(int n, double lo, double hi) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
    if (!(lo < hi)) throw std::invalid_argument("gauss_legendre: empty interval");

    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);

    const double eps = 1e-15;
    const double xm = 0.5 * (hi + lo);
    const double xl = 0.5 * (hi - lo);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double z1, pp;
        do {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            z1 = z;
            z = z1 - p1 / pp;
        } while (std::abs(z - z1) > eps);
        rule.nodes[i] = xm - xl * z;
        rule.nodes[n - 1 - i] = xm + xl * z;
        rule.weights[i] = 2.0 * xl / ((1.0 - z * z) * pp * pp);
        rule.weights[n - 1 - i] = rule.weights[i];
    }
    return rule;
}

}  // namespace gcs
