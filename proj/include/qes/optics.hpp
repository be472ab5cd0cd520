#pragma once

#include "qes/born.hpp"
#include "qes/potentials.hpp"

#include <iosfwd>

namespace qes {

/// eps^(x, y) = 1 + z exp(i alpha (y - x)) / [(x/a - i)(y/b + i)]^2, relative
/// to eps_inf.  eps_inf_rel is eps_inf / eps_0.
struct PermittivityProfile {
    Complex z{1.0, 0.0};
    double a = 1.0;
    double b = 1.0;
    double alpha = 1.0;
    double eps_inf_rel = 1.0;

    Complex operator()(double x, double y) const;
    /// The k-independent perturbation eps^ - 1 as a separable term.
    Potential perturbation() const;
};

PermittivityProfile example_permittivity(Complex z, double a, double b, double alpha);

/// v = k^2 (1 - eps^) = -k^2 * perturbation.
Potential potential_from_permittivity(const PermittivityProfile& prof, double k);

/// eps^ = 1 - v / k^2 at a point; the inverse map.
Complex permittivity_from_potential(const Potential& v, double k, double x, double y);

/// Scatterer whose potential follows k.
Scatterer dispersive_scatterer(const PermittivityProfile& prof);

struct WaveParams {
    double omega = 0.0;
    double lambda = 0.0;
};

/// omega = sqrt(eps0 / eps_inf) c k, lambda = 2 pi / k.
WaveParams wave_params(double k, double eps0, double eps_inf, double c);

struct ProfileGrid {
    double x_min = -1.0;
    double x_max = 1.0;
    int nx = 1;
    double y_min = -1.0;
    double y_max = 1.0;
    int ny = 1;
};

/// CSV x,y,re_eps,im_eps, y outer.  A 1-point axis sits at the midpoint of its range.
void export_profile(std::ostream& os, const PermittivityProfile& prof, const ProfileGrid& grid);

} // namespace qes
