#pragma once

#include "qes/potentials.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace fixtures {

inline constexpr double kPi = std::numbers::pi;
// 2 pi / 0.5 um
inline constexpr double kAlpha = 4.0 * kPi;

inline qes::Potential w_minus() { return qes::build_w(qes::Ingredient::Minus, 1.0, 1.0, 1, 1.0, 1); }
inline qes::Potential w_plus() { return qes::build_w(qes::Ingredient::Plus, 1.0, 0.7, 2, 1.3, 1); }

inline qes::Potential v_r(double alpha = kAlpha)
{
    return qes::build_vr(w_minus(), w_plus(), alpha, qes::Gamma::One);
}

inline qes::Potential v_l(double alpha = kAlpha)
{
    return qes::build_vl(w_minus(), w_plus(), alpha, qes::Gamma::One);
}

struct RandomFamily {
    qes::Potential v;
    bool right = false; // built with build_vr
};

// L in [0.5, 2], n in {1, 2}, |z| in [1, 2] with random phase.  Both
// ingredients are kept (gamma = 1): with gamma = 0 a single ingredient is
// left and the second-order term above the band is much weaker.
inline RandomFamily random_family(std::mt19937_64& rng, double alpha = kAlpha)
{
    std::uniform_real_distribution<double> len(0.5, 2.0), mag(1.0, 2.0), phase(0.0, 2.0 * kPi);
    std::uniform_int_distribution<int> order(1, 2), coin(0, 1);
    auto w = [&](qes::Ingredient side) {
        // Draws are sequenced so the fleet does not depend on argument evaluation order.
        const double m = mag(rng);
        const double ph = phase(rng);
        const double lx = len(rng);
        const int nx = order(rng);
        const double ly = len(rng);
        const int ny = order(rng);
        return qes::build_w(side, std::polar(m, ph), lx, nx, ly, ny);
    };
    const qes::Potential wm = w(qes::Ingredient::Minus);
    const qes::Potential wp = w(qes::Ingredient::Plus);
    const qes::Gamma g = qes::Gamma::One;
    if (coin(rng))
        return {qes::build_vr(wm, wp, alpha, g), true};
    return {qes::build_vl(wm, wp, alpha, g), false};
}

} // namespace fixtures
