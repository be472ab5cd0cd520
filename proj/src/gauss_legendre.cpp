#include "qes/gauss_legendre.hpp"

#include "qes/potentials.hpp"

#include <boost/math/special_functions/legendre.hpp>

#include <algorithm>
#include <cmath>

namespace qes {

GaussRule gauss_legendre(int n)
{
    if (n < 1)
        throw Error("gauss_legendre: need at least one node");
    // Boost returns the nonnegative zeros in ascending order.
    const std::vector<double> half = boost::math::legendre_p_zeros<double>(n);
    std::vector<double> x;
    for (auto it = half.rbegin(); it != half.rend(); ++it)
        if (*it != 0.0)
            x.push_back(-*it);
    x.insert(x.end(), half.begin(), half.end());

    GaussRule r;
    r.nodes = x;
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double dp = boost::math::legendre_p_prime(n, x[j]);
        const double w = 2.0 / ((1.0 - x[j] * x[j]) * dp * dp);
        r.weights.push_back(w);
        // Legendre nodes: (-1)^j sqrt((1 - x_j^2) w_j) up to a common factor.
        r.barycentric.push_back((j % 2 ? -1.0 : 1.0) * std::sqrt((1.0 - x[j] * x[j]) * w));
    }
    return r;
}

GaussRule gauss_legendre(int n, double a, double b)
{
    GaussRule r = gauss_legendre(n);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (b + a);
    for (auto& x : r.nodes)
        x = mid + half * x;
    for (auto& w : r.weights)
        w *= half;
    return r;
}

} // namespace qes
