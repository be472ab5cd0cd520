#pragma once

#include "qes/potentials.hpp"

namespace qes {

struct SupportCertificate {
    double alpha = 0.0;
    bool cond_y_halfline = false; ///< transform in y vanishes for Ky <= alpha
    bool cond_x_left = false;     ///< transform in x vanishes on [-2a, a)
    bool cond_x_right = false;    ///< transform in x vanishes on (-a, 2a]
    bool nonvanish_left_band = false;  ///< nonzero somewhere on [-2a, -a]
    bool nonvanish_right_band = false; ///< nonzero somewhere on [a, 2a]
    /// Largest sampled |partial transform| over the bands flagged as zero,
    /// relative to sum_t |z_t| * (L1 norm of the transformed factor).
    double numeric_residual = 0.0;
};

Band y_suppressed_band(double alpha);
Band x_left_band(double alpha);
Band x_right_band(double alpha);
Band x_left_visible_band(double alpha);
Band x_right_visible_band(double alpha);

/// Flags from support arithmetic only; numeric_residual is left at 0.
SupportCertificate analyze_support(const Potential& v, double alpha);

/// analyze_support plus a quadrature cross-check with `samples` wavenumbers
/// per zero band; the other coordinate runs over a decade-spanning grid.
SupportCertificate certify_support(const Potential& v, double alpha, int samples, double tol = 1e-10);

} // namespace qes
