#pragma once

#include "qes/born.hpp"
#include "qes/support.hpp"

namespace qes {

/// phi_k = 2 asin(alpha / (sqrt 2 k)), defined on alpha/sqrt2 < k <= alpha.
double angular_window(double alpha, double k);

enum class InvisibleSide { LeftInvisible, RightInvisible, Bidirectional, None };
std::string to_string(InvisibleSide s);

struct InvisibilityVerdict {
    double k_lo = 0.0; ///< band (k_lo, k_hi]
    double k_hi = 0.0;
    InvisibleSide side = InvisibleSide::None;
    bool unidirectional = false;
    SupportCertificate evidence;
};

InvisibilityVerdict classify(const Potential& v, double alpha);
/// Same mapping from an existing certificate.
InvisibilityVerdict classify(const SupportCertificate& cert);

struct AngleInterval {
    double lo = 0.0;
    double hi = 0.0;
    bool lo_closed = false;
    bool hi_closed = false;

    bool contains(double a) const;
};

/// Necessary conditions for f != 0 under incidence from `incidence`, on a
/// potential invisible from the other side.  Left: theta0 in (-pi/2, 0),
/// theta in [pi/2, pi), theta - theta0 in (phi, 2pi - phi).  Right: theta0 in
/// (pi, 3pi/2], theta in (0, pi/2], theta0 - theta in (phi, 2pi - phi).
struct VisibleWindows {
    Side incidence = Side::Left;
    double alpha = 0.0;
    double k = 0.0;
    AngleInterval theta0;
    AngleInterval theta;
    AngleInterval relative;

    /// Angles are reduced to the ranges used above before testing.
    bool contains(double theta0, double theta) const;
};

VisibleWindows visible_windows(Side incidence, double alpha, double k);

/// True when a nonzero amplitude at (k, theta0, theta) is allowed: k inside
/// the unidirectional band and the angles inside the windows.
bool allowed_nonzero(Side incidence, double alpha, double k, double theta0, double theta);

struct VerifySampling {
    int n_k = 25;
    int n_theta0 = 16;
    int n_theta = 256;
};

struct VerifyReport {
    InvisibilityVerdict verdict;
    double invisible_max_abs_f = 0.0;      ///< (a) over the invisible side
    double visible_inside_max_abs_f = 0.0; ///< (b) inside the windows
    double visible_outside_max_abs_f = 0.0; ///< (c) outside the windows
    double peak_abs_f = 0.0;
    bool visible_positive = false; ///< (b)^2 > 1e-12 peak^2
    long samples = 0;
};

/// Born amplitudes on k_i = alpha (i + 1) / n_k, i < n_k, and on midpoint
/// grids of incidence angles per side and a uniform theta grid on [0, 2pi).
VerifyReport verify(const Scatterer& s, double alpha, const VerifySampling& sampling = {});

} // namespace qes
