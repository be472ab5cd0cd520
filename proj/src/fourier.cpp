#include "qes/fourier.hpp"

#include <boost/math/quadrature/ooura_fourier_integrals.hpp>
#include <boost/math/quadrature/sinh_sinh.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

namespace qes {

namespace {

constexpr double kPi = std::numbers::pi;

// (-i)^n
Complex minus_i_pow(int n)
{
    switch (n % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
    }
}

double factorial(int n)
{
    double f = 1.0;
    for (int i = 2; i <= n; ++i)
        f *= i;
    return f;
}

// Transform of the Plus base at shifted wavenumber kappa.
Complex plus_transform(const HalfLineFactor& g, double kappa)
{
    if (kappa <= 0.0)
        return 0.0;
    const double kl = kappa * g.scale;
    const double magnitude = 2.0 * kPi * g.scale * std::pow(kl, g.order) * std::exp(-kl) / factorial(g.order);
    // -2 pi i L (-i)^n (KL)^n e^{-KL} / n!
    return Complex(0.0, -1.0) * minus_i_pow(g.order) * magnitude;
}

const boost::math::quadrature::ooura_fourier_sin<double>& sine_rule()
{
    // Node tables only; integrate() is never called, so concurrent reads are safe.
    static const boost::math::quadrature::ooura_fourier_sin<double> rule(1e-10, 8);
    return rule;
}

// Zero-frequency transform: plain integral over the line.
QuadratureResult zero_frequency_integral(const HalfLineFactor& g, double tol)
{
    boost::math::quadrature::sinh_sinh<double> rule;
    double err_re = 0.0;
    double err_im = 0.0;
    const double goal = std::max(tol, 1e-14);
    const double re = rule.integrate([&](double x) { return g(x).real(); }, goal, &err_re);
    const double im = rule.integrate([&](double x) { return g(x).imag(); }, goal, &err_im);
    return {{re, im}, (std::abs(re) + std::abs(im)) * goal + err_re + err_im};
}

} // namespace

double l1_norm(const HalfLineFactor& g)
{
    // L * sqrt(pi) * Gamma(n/2) / Gamma((n+1)/2)
    return g.scale * std::sqrt(kPi) * std::tgamma(0.5 * g.order) / std::tgamma(0.5 * (g.order + 1));
}

double transform_peak(const HalfLineFactor& g)
{
    const double n = g.order;
    return 2.0 * kPi * g.scale * std::pow(n, n) * std::exp(-n) / factorial(g.order);
}

Complex ft1d_closed(const Factor1D& f, double k)
{
    if (!f.transformable())
        throw Error("non-transformable factor: constant factors have no function-valued transform");
    const HalfLineFactor& g = *f.base();
    const double kappa = k - f.phase();
    if (g.side == HalfLine::Plus)
        return plus_transform(g, kappa);
    return std::conj(plus_transform(g, -kappa));
}

QuadratureResult ft1d_numeric(const Factor1D& f, double k, double tol)
{
    if (!(tol > 0.0))
        throw Error("ft1d_numeric: tolerance must be positive");
    if (!f.transformable())
        throw Error("non-transformable factor: constant factors have no function-valued transform");
    const HalfLineFactor& g = *f.base();
    const double kappa = k - f.phase();
    const double omega = std::abs(kappa);
    const double goal = tol * l1_norm(g);

    if (omega * g.scale < 1e-12)
        return zero_frequency_integral(g, goal);

    const double sign = kappa < 0.0 ? -1.0 : 1.0;
    const double inv_omega = 1.0 / omega;
    auto integrand = [&](double x) {
        const Complex odd = g(x) - g(-x);
        const Complex even_slope = g.derivative(x) - g.derivative(-x);
        return -even_slope * inv_omega - Complex(0.0, sign) * odd;
    };

    const auto& rule = sine_rule();
    const auto& big = rule.big_nodes();
    const auto& big_w = rule.weights_for_big_nodes();
    const auto& little = rule.little_nodes();
    const auto& little_w = rule.weights_for_little_nodes();

    Complex previous;
    double change = kInf;
    for (std::size_t level = 1; level < big.size(); ++level) {
        Complex sum = 0.0;
        for (std::size_t j = 0; j < big[level].size(); ++j)
            sum += integrand(big[level][j] * inv_omega) * big_w[level][j];
        for (std::size_t j = 0; j < little[level].size(); ++j)
            sum += integrand(little[level][j] * inv_omega) * little_w[level][j];
        const Complex current = sum * inv_omega;
        if (level > 1) {
            change = std::abs(current - previous);
            if (change <= goal)
                return {current, change};
        }
        previous = current;
    }
    std::ostringstream msg;
    msg << "ft1d_numeric did not converge at K=" << k << " (achieved error estimate " << change
        << ", goal " << goal << ")";
    throw Error(msg.str());
}

Complex ft2d(const Potential& v, double kx, double ky)
{
    Complex sum = 0.0;
    for (const auto& t : v.terms()) {
        const Complex fy = ft1d_closed(t.y, ky);
        if (fy == Complex(0.0) && t.x.transformable())
            continue;
        sum += t.coupling * ft1d_closed(t.x, kx) * fy;
    }
    return sum;
}

Complex partial_ft_x(const Potential& v, double kx, double y)
{
    Complex sum = 0.0;
    for (const auto& t : v.terms())
        sum += t.coupling * ft1d_closed(t.x, kx) * t.y(y);
    return sum;
}

Complex partial_ft_y(const Potential& v, double x, double ky)
{
    Complex sum = 0.0;
    for (const auto& t : v.terms())
        sum += t.coupling * t.x(x) * ft1d_closed(t.y, ky);
    return sum;
}

Complex ft2d_numeric(const Potential& v, double kx, double ky, double tol)
{
    Complex sum = 0.0;
    for (const auto& t : v.terms())
        sum += t.coupling * ft1d_numeric(t.x, kx, tol).value * ft1d_numeric(t.y, ky, tol).value;
    return sum;
}

Complex partial_ft_x_numeric(const Potential& v, double kx, double y, double tol)
{
    Complex sum = 0.0;
    for (const auto& t : v.terms())
        sum += t.coupling * ft1d_numeric(t.x, kx, tol).value * t.y(y);
    return sum;
}

Complex partial_ft_y_numeric(const Potential& v, double x, double ky, double tol)
{
    Complex sum = 0.0;
    for (const auto& t : v.terms())
        sum += t.coupling * t.x(x) * ft1d_numeric(t.y, ky, tol).value;
    return sum;
}

} // namespace qes
