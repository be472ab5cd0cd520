#pragma once

#include "qes/potentials.hpp"

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace qes {

enum class Side { Left, Right };

struct IncidenceSpec {
    Side side = Side::Left;
    double theta0 = 0.0;
    double k = 1.0;
};

/// Left needs cos(theta0) in (0, 1], right needs cos(theta0) in [-1, 0).
void validate(const IncidenceSpec& inc);

/// -vv(k(cos t - cos t0), k(sin t - sin t0)) / (2 sqrt(2 pi)), closed-form transforms.
Complex born_amplitude(const Potential& v, const IncidenceSpec& inc, double theta);

/// Same formula with every transform taken by quadrature.
Complex born_amplitude_numeric(const Potential& v, const IncidenceSpec& inc, double theta, double tol);

/// X(xi, zeta) = zeta exp(-xi zeta) for zeta > 0, else 0.
double x_profile(double xi, double zeta);

struct ExampleParams {
    Complex z{1.0, 0.0};
    double a = 1.0;
    double b = 1.0;
    double alpha = 1.0;
};

/// pi sqrt(2 pi) z a^2 b^2 k^4 X(ak, c) X(bk, s) for the single-term medium
/// 1 + z exp(i alpha (y - x)) / [(x/a - i)(y/b + i)]^2.
Complex closed_form_example(const ExampleParams& p, const IncidenceSpec& inc, double theta);

/// A potential, or a k-dependent one (dispersive media).
class Scatterer {
public:
    Scatterer() = default;
    Scatterer(Potential v);
    explicit Scatterer(std::function<Potential(double)> at_k);

    Potential at(double k) const;
    bool dispersive() const { return static_cast<bool>(at_k_); }

private:
    Potential fixed_;
    std::function<Potential(double)> at_k_;
};

enum class Method { BornClosed, BornQuad, Oracle };
std::string to_string(Method m);

struct AmplitudeRow {
    double k = 0.0;
    double theta0 = 0.0;
    double theta = 0.0;
    Complex f;
    Method method = Method::BornClosed;
};

struct AmplitudeTable {
    std::vector<AmplitudeRow> rows;
};

/// born_amplitude over k_list x theta_grid, k outer.
AmplitudeTable sweep(const Scatterer& s, Side side, double theta0, const std::vector<double>& k_list,
                     const std::vector<double>& theta_grid);

/// Header k,lambda,theta0,theta,re_f,im_f,abs2_f,method; 17 significant digits.
void write_csv(std::ostream& os, const AmplitudeTable& table);

} // namespace qes
