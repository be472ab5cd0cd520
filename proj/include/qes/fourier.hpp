#pragma once

#include "qes/potentials.hpp"

namespace qes {

/// Convention for every transform in this library:
///     F(K) = integral dx exp(-i K x) f(x).

/// Closed-form transform of a half-line factor, obtained by closing the
/// contour around the single pole at x = -iL (Plus) or x = +iL (Minus):
///     G(K) = -2 pi i L (-i K L)^n exp(-K L) / n!   for K > 0, else 0,
/// with the Minus transform equal to conj(G(-K)) and the phase shifting K.
Complex ft1d_closed(const Factor1D& f, double k);

struct QuadratureResult {
    Complex value;
    double error = 0.0; ///< absolute error estimate
};

/// Independent quadrature of the defining integral.
///
/// The cosine half is integrated by parts into a sine transform of the
/// derivative, so both halves run on the same double-exponential (Ooura-Mori)
/// node set.  The rule covers the full line, so no truncation tail enters.
/// `tol` is an absolute tolerance relative to the L1 norm of the factor.
/// Throws when the level sequence has not settled within the node budget.
QuadratureResult ft1d_numeric(const Factor1D& f, double k, double tol);

/// Upper bound for |ft1d(f, K)| over all K: the L1 norm of the base factor.
double l1_norm(const HalfLineFactor& g);

/// Largest |ft1d_closed| over K, attained at K - phase = +-n/L.
double transform_peak(const HalfLineFactor& g);

Complex ft2d(const Potential& v, double kx, double ky);
Complex partial_ft_x(const Potential& v, double kx, double y);
Complex partial_ft_y(const Potential& v, double x, double ky);

/// Same quantities with every 1D transform taken by quadrature.
Complex ft2d_numeric(const Potential& v, double kx, double ky, double tol);
Complex partial_ft_x_numeric(const Potential& v, double kx, double y, double tol);
Complex partial_ft_y_numeric(const Potential& v, double x, double ky, double tol);

} // namespace qes
