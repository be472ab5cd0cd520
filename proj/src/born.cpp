#include "qes/born.hpp"

#include "qes/fourier.hpp"
#include "parallel.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

namespace qes {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2Pi = std::sqrt(2.0 * kPi);

struct Transfer {
    double kx;
    double ky;
};

Transfer momentum_transfer(const IncidenceSpec& inc, double theta)
{
    return {inc.k * (std::cos(theta) - std::cos(inc.theta0)), inc.k * (std::sin(theta) - std::sin(inc.theta0))};
}

} // namespace

void validate(const IncidenceSpec& inc)
{
    if (!(inc.k > 0.0) || !std::isfinite(inc.k))
        throw Error("incidence: wavenumber must be positive");
    const double c = std::cos(inc.theta0);
    if (inc.side == Side::Left && !(c > 0.0))
        throw Error("incidence: left incidence needs cos(theta0) > 0");
    if (inc.side == Side::Right && !(c < 0.0))
        throw Error("incidence: right incidence needs cos(theta0) < 0");
}

Complex born_amplitude(const Potential& v, const IncidenceSpec& inc, double theta)
{
    validate(inc);
    const Transfer q = momentum_transfer(inc, theta);
    return -ft2d(v, q.kx, q.ky) / (2.0 * kSqrt2Pi);
}

Complex born_amplitude_numeric(const Potential& v, const IncidenceSpec& inc, double theta, double tol)
{
    validate(inc);
    const Transfer q = momentum_transfer(inc, theta);
    return -ft2d_numeric(v, q.kx, q.ky, tol) / (2.0 * kSqrt2Pi);
}

double x_profile(double xi, double zeta)
{
    return zeta > 0.0 ? zeta * std::exp(-xi * zeta) : 0.0;
}

Complex closed_form_example(const ExampleParams& p, const IncidenceSpec& inc, double theta)
{
    if (!(p.a > 0.0) || !(p.b > 0.0))
        throw Error("closed_form_example: a and b must be positive");
    const double k = inc.k;
    const double c = std::cos(inc.theta0) - std::cos(theta) - p.alpha / k;
    const double s = std::sin(theta) - std::sin(inc.theta0) - p.alpha / k;
    const double xc = x_profile(p.a * k, c);
    const double xs = x_profile(p.b * k, s);
    if (xc == 0.0 || xs == 0.0)
        return 0.0;
    const double k2 = k * k;
    return kPi * kSqrt2Pi * p.z * (p.a * p.a * p.b * p.b * k2 * k2) * xc * xs;
}

Scatterer::Scatterer(Potential v) : fixed_(std::move(v)) {}

Scatterer::Scatterer(std::function<Potential(double)> at_k) : at_k_(std::move(at_k)) {}

Potential Scatterer::at(double k) const
{
    return at_k_ ? at_k_(k) : fixed_;
}

std::string to_string(Method m)
{
    switch (m) {
    case Method::BornClosed: return "born_closed";
    case Method::BornQuad: return "born_quad";
    case Method::Oracle: return "oracle";
    }
    return "unknown";
}

AmplitudeTable sweep(const Scatterer& s, Side side, double theta0, const std::vector<double>& k_list,
                     const std::vector<double>& theta_grid)
{
    if (k_list.empty() || theta_grid.empty())
        throw Error("sweep: empty grid");
    for (double k : k_list)
        validate({side, theta0, k});

    std::vector<Potential> potentials;
    for (double k : k_list)
        potentials.push_back(s.at(k));

    AmplitudeTable t;
    t.rows.resize(k_list.size() * theta_grid.size());
    const long nt = static_cast<long>(theta_grid.size());
    const long total = static_cast<long>(t.rows.size());
    detail::parallel_for(total, [&](long r) {
        const std::size_t i = r / nt;
        const std::size_t j = r % nt;
        const IncidenceSpec inc{side, theta0, k_list[i]};
        t.rows[r] = {k_list[i], theta0, theta_grid[j], born_amplitude(potentials[i], inc, theta_grid[j]),
                     Method::BornClosed};
    });
    return t;
}

void write_csv(std::ostream& os, const AmplitudeTable& table)
{
    std::ostringstream buf;
    buf.precision(17);
    buf << "k,lambda,theta0,theta,re_f,im_f,abs2_f,method\n";
    for (const auto& r : table.rows)
        buf << r.k << ',' << 2.0 * kPi / r.k << ',' << r.theta0 << ',' << r.theta << ',' << r.f.real() << ','
            << r.f.imag() << ',' << std::norm(r.f) << ',' << to_string(r.method) << '\n';
    os << buf.str();
}

} // namespace qes
