#pragma once

#include <complex>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qes {

using Complex = std::complex<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Raised for violated preconditions and failed numerical procedures.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class HalfLine { Plus, Minus };

/// g(x) = (x/L + i)^{-(n+1)} (Plus) or its complex conjugate (Minus).
///
/// The transform of the Plus factor is supported on K > 0 and the transform
/// of the Minus factor on K < 0; both vanish continuously at K = 0 for n >= 1.
struct HalfLineFactor {
    double scale = 1.0;
    int order = 1;
    HalfLine side = HalfLine::Plus;

    Complex operator()(double x) const;
    Complex derivative(double x) const;
};

/// Closed or open band of wavenumbers used in support arithmetic.
struct Band {
    double lo = -kInf;
    double hi = kInf;
    bool lo_closed = true;
    bool hi_closed = true;

    bool contains(double k) const;
};

/// Support of the 1D transform of a factor.  Half-lines are open at their
/// edge; a constant factor transforms to a delta at its phase.
struct Support {
    enum class Kind { Above, Below, Point };
    Kind kind = Kind::Point;
    double edge = 0.0;

    /// True when the transform vanishes on the whole band.
    bool misses(const Band& band) const;
    /// True when the transform is nonzero on a subset of the band.
    bool meets(const Band& band) const;
};

/// base(x) * exp(i*phase*x), where base is a half-line factor or the constant 1.
class Factor1D {
public:
    Factor1D() = default;

    static Factor1D constant(double phase = 0.0);
    static Factor1D half_line(HalfLineFactor base, double phase = 0.0);
    static Factor1D plus(double scale, int order, double phase = 0.0);
    static Factor1D minus(double scale, int order, double phase = 0.0);

    bool transformable() const { return base_.has_value(); }
    const std::optional<HalfLineFactor>& base() const { return base_; }
    double phase() const { return phase_; }

    Factor1D shifted(double dphase) const;
    Support support() const;
    Complex operator()(double x) const;

private:
    std::optional<HalfLineFactor> base_;
    double phase_ = 0.0;
};

struct SeparableTerm {
    Complex coupling;
    Factor1D x;
    Factor1D y;
};

/// v(x, y) = sum_t z_t * X_t(x) * Y_t(y).  Immutable; terms with zero
/// coupling are dropped on construction.
class Potential {
public:
    Potential() = default;
    explicit Potential(std::vector<SeparableTerm> terms);

    const std::vector<SeparableTerm>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    Complex operator()(double x, double y) const;

    Potential operator+(const Potential& other) const;
    Potential scaled(Complex factor) const;
    /// Multiplies by exp(i*(kx*x + ky*y)).
    Potential modulated(double kx, double ky) const;

private:
    std::vector<SeparableTerm> terms_;
};

Complex eval_potential(const Potential& v, double x, double y);

enum class Ingredient { Minus, Plus };
enum class Gamma { Zero = 0, One = 1 };

/// w_-(x,y) = z gbar(x) g(y) and w_+(x,y) = z g(x) g(y).
Potential build_w(Ingredient side, Complex z, double lx, int nx, double ly, int ny);

/// exp(i a y) [gamma exp(-2i a x) w_- + exp(i a x) w_+]
Potential build_vl(const Potential& w_minus, const Potential& w_plus, double alpha, Gamma gamma);
/// exp(i a y) [exp(-i a x) w_- + gamma exp(2i a x) w_+]
Potential build_vr(const Potential& w_minus, const Potential& w_plus, double alpha, Gamma gamma);

} // namespace qes
