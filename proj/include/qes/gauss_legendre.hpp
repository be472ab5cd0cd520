#pragma once

#include <vector>

namespace qes {

/// n-point Gauss-Legendre rule on [-1, 1], nodes ascending.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    /// Barycentric weights for interpolation through the nodes.
    std::vector<double> barycentric;
};

GaussRule gauss_legendre(int n);

/// Rule mapped to [a, b].
GaussRule gauss_legendre(int n, double a, double b);

/// Polynomial interpolant through (nodes, values) evaluated at x.
template <class T>
T barycentric_eval(const GaussRule& r, const std::vector<T>& values, double x)
{
    T num{};
    double den = 0.0;
    for (std::size_t j = 0; j < r.nodes.size(); ++j) {
        const double d = x - r.nodes[j];
        if (d == 0.0)
            return values[j];
        const double c = r.barycentric[j] / d;
        num += c * values[j];
        den += c;
    }
    return num / den;
}

} // namespace qes
