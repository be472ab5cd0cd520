#include "qes/potentials.hpp"

#include <cmath>
#include <utility>

namespace qes {

namespace {

constexpr Complex kI{0.0, 1.0};

void check_factor_params(double scale, int order)
{
    if (!(scale > 0.0) || !std::isfinite(scale))
        throw Error("half-line factor scale must be positive, got " + std::to_string(scale));
    if (order < 1)
        throw Error("half-line factor order must be >= 1, got " + std::to_string(order));
}

// z^{-m} by repeated multiplication; std::pow with an int promotes to exp/log.
Complex inverse_power(Complex z, int m)
{
    Complex r = z;
    for (int i = 1; i < m; ++i)
        r *= z;
    return 1.0 / r;
}

} // namespace

Complex HalfLineFactor::operator()(double x) const
{
    const double u = x / scale;
    const Complex base = side == HalfLine::Plus ? Complex(u, 1.0) : Complex(u, -1.0);
    return inverse_power(base, order + 1);
}

Complex HalfLineFactor::derivative(double x) const
{
    const double u = x / scale;
    const Complex base = side == HalfLine::Plus ? Complex(u, 1.0) : Complex(u, -1.0);
    return -double(order + 1) / scale * inverse_power(base, order + 2);
}

bool Band::contains(double k) const
{
    const bool above_lo = lo_closed ? k >= lo : k > lo;
    const bool below_hi = hi_closed ? k <= hi : k < hi;
    return above_lo && below_hi;
}

bool Support::misses(const Band& band) const
{
    switch (kind) {
    case Kind::Above:
        return edge >= band.hi;
    case Kind::Below:
        return edge <= band.lo;
    case Kind::Point:
        return !band.contains(edge);
    }
    return false;
}

bool Support::meets(const Band& band) const
{
    switch (kind) {
    case Kind::Above:
        return edge < band.hi && band.lo < band.hi;
    case Kind::Below:
        return edge > band.lo && band.lo < band.hi;
    case Kind::Point:
        return band.contains(edge);
    }
    return false;
}

Factor1D Factor1D::constant(double phase)
{
    Factor1D f;
    f.phase_ = phase;
    return f;
}

Factor1D Factor1D::half_line(HalfLineFactor base, double phase)
{
    check_factor_params(base.scale, base.order);
    Factor1D f;
    f.base_ = base;
    f.phase_ = phase;
    return f;
}

Factor1D Factor1D::plus(double scale, int order, double phase)
{
    return half_line({scale, order, HalfLine::Plus}, phase);
}

Factor1D Factor1D::minus(double scale, int order, double phase)
{
    return half_line({scale, order, HalfLine::Minus}, phase);
}

Factor1D Factor1D::shifted(double dphase) const
{
    Factor1D f = *this;
    f.phase_ += dphase;
    return f;
}

Support Factor1D::support() const
{
    if (!base_)
        return {Support::Kind::Point, phase_};
    return {base_->side == HalfLine::Plus ? Support::Kind::Above : Support::Kind::Below, phase_};
}

Complex Factor1D::operator()(double x) const
{
    const Complex wave = phase_ == 0.0 ? Complex(1.0) : std::exp(kI * (phase_ * x));
    return base_ ? (*base_)(x)*wave : wave;
}

Potential::Potential(std::vector<SeparableTerm> terms)
{
    terms_.reserve(terms.size());
    for (auto& t : terms)
        if (t.coupling != Complex(0.0))
            terms_.push_back(std::move(t));
}

Complex Potential::operator()(double x, double y) const
{
    Complex sum = 0.0;
    for (const auto& t : terms_)
        sum += t.coupling * t.x(x) * t.y(y);
    return sum;
}

Potential Potential::operator+(const Potential& other) const
{
    std::vector<SeparableTerm> all = terms_;
    all.insert(all.end(), other.terms_.begin(), other.terms_.end());
    return Potential(std::move(all));
}

Potential Potential::scaled(Complex factor) const
{
    std::vector<SeparableTerm> out = terms_;
    for (auto& t : out)
        t.coupling *= factor;
    return Potential(std::move(out));
}

Potential Potential::modulated(double kx, double ky) const
{
    std::vector<SeparableTerm> out = terms_;
    for (auto& t : out) {
        t.x = t.x.shifted(kx);
        t.y = t.y.shifted(ky);
    }
    return Potential(std::move(out));
}

Complex eval_potential(const Potential& v, double x, double y)
{
    return v(x, y);
}

Potential build_w(Ingredient side, Complex z, double lx, int nx, double ly, int ny)
{
    if (z == Complex(0.0))
        throw Error("w ingredient coupling must be nonzero");
    const Factor1D xf = side == Ingredient::Minus ? Factor1D::minus(lx, nx) : Factor1D::plus(lx, nx);
    return Potential({{z, xf, Factor1D::plus(ly, ny)}});
}

namespace {

// w_- needs x-transform zero for Kx >= 0, w_+ for Kx <= 0; both need the
// y-transform zero for Ky <= 0.
void check_ingredient(const Potential& w, Ingredient side)
{
    const Band x_band = side == Ingredient::Minus ? Band{0.0, kInf, true, false}
                                                  : Band{-kInf, 0.0, false, true};
    const Band y_band{-kInf, 0.0, false, true};
    for (const auto& t : w.terms()) {
        if (!t.x.support().misses(x_band) || !t.y.support().misses(y_band))
            throw Error(std::string("ingredient support violation: w_") +
                        (side == Ingredient::Minus ? "-" : "+") +
                        " does not have the required half-line transforms");
    }
}

} // namespace

Potential build_vl(const Potential& w_minus, const Potential& w_plus, double alpha, Gamma gamma)
{
    check_ingredient(w_minus, Ingredient::Minus);
    check_ingredient(w_plus, Ingredient::Plus);
    Potential out = w_plus.modulated(alpha, alpha);
    if (gamma == Gamma::One)
        out = w_minus.modulated(-2.0 * alpha, alpha) + out;
    return out;
}

Potential build_vr(const Potential& w_minus, const Potential& w_plus, double alpha, Gamma gamma)
{
    check_ingredient(w_minus, Ingredient::Minus);
    check_ingredient(w_plus, Ingredient::Plus);
    Potential out = w_minus.modulated(-alpha, alpha);
    if (gamma == Gamma::One)
        out = out + w_plus.modulated(2.0 * alpha, alpha);
    return out;
}

} // namespace qes
