#include "qes/optics.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

namespace qes {

namespace {

void check_profile(const PermittivityProfile& p)
{
    if (!(p.a > 0.0) || !(p.b > 0.0))
        throw Error("permittivity profile: a and b must be positive");
    if (!(p.eps_inf_rel > 0.0))
        throw Error("permittivity profile: eps_inf must be positive");
}

double axis(double lo, double hi, int n, int i)
{
    return n == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * i / (n - 1);
}

} // namespace

Complex PermittivityProfile::operator()(double x, double y) const
{
    const Complex d = Complex(x / a, -1.0) * Complex(y / b, 1.0);
    return 1.0 + z * std::exp(Complex(0.0, alpha * (y - x))) / (d * d);
}

Potential PermittivityProfile::perturbation() const
{
    check_profile(*this);
    return Potential({{z, Factor1D::minus(a, 1, -alpha), Factor1D::plus(b, 1, alpha)}});
}

PermittivityProfile example_permittivity(Complex z, double a, double b, double alpha)
{
    PermittivityProfile p{z, a, b, alpha, 1.0};
    check_profile(p);
    return p;
}

Potential potential_from_permittivity(const PermittivityProfile& prof, double k)
{
    if (!(k > 0.0))
        throw Error("potential_from_permittivity: k must be positive");
    return prof.perturbation().scaled(-k * k);
}

Complex permittivity_from_potential(const Potential& v, double k, double x, double y)
{
    return 1.0 - v(x, y) / (k * k);
}

Scatterer dispersive_scatterer(const PermittivityProfile& prof)
{
    check_profile(prof);
    return Scatterer([prof](double k) { return potential_from_permittivity(prof, k); });
}

WaveParams wave_params(double k, double eps0, double eps_inf, double c)
{
    if (!(k > 0.0) || !(eps0 > 0.0) || !(eps_inf > 0.0) || !(c > 0.0))
        throw Error("wave_params: all arguments must be positive");
    return {std::sqrt(eps0 / eps_inf) * c * k, 2.0 * std::numbers::pi / k};
}

void export_profile(std::ostream& os, const PermittivityProfile& prof, const ProfileGrid& g)
{
    check_profile(prof);
    if (g.nx < 1 || g.ny < 1)
        throw Error("export_profile: grid needs at least one point per axis");
    if ((g.nx > 1 && !(g.x_max > g.x_min)) || (g.ny > 1 && !(g.y_max > g.y_min)))
        throw Error("export_profile: degenerate grid extent");
    std::ostringstream buf;
    buf.precision(17);
    buf << "x,y,re_eps,im_eps\n";
    for (int j = 0; j < g.ny; ++j) {
        const double y = axis(g.y_min, g.y_max, g.ny, j);
        for (int i = 0; i < g.nx; ++i) {
            const double x = axis(g.x_min, g.x_max, g.nx, i);
            const Complex e = prof(x, y);
            buf << x << ',' << y << ',' << e.real() << ',' << e.imag() << '\n';
        }
    }
    os << buf.str();
}

} // namespace qes
