#include "qes/invisibility.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qes {

namespace {

constexpr double kPi = std::numbers::pi;

// Reduce into [lo, lo + 2 pi).
double wrap(double a, double lo)
{
    double r = std::fmod(a - lo, 2.0 * kPi);
    if (r < 0.0)
        r += 2.0 * kPi;
    return lo + r;
}

bool in_band(double alpha, double k)
{
    return k > alpha / std::sqrt(2.0) && k <= alpha;
}

} // namespace

double angular_window(double alpha, double k)
{
    if (!in_band(alpha, k))
        throw Error("outside unidirectional band: need alpha/sqrt(2) < k <= alpha");
    return 2.0 * std::asin(std::min(1.0, alpha / (std::sqrt(2.0) * k)));
}

std::string to_string(InvisibleSide s)
{
    switch (s) {
    case InvisibleSide::LeftInvisible: return "LEFT_INVISIBLE";
    case InvisibleSide::RightInvisible: return "RIGHT_INVISIBLE";
    case InvisibleSide::Bidirectional: return "BIDIRECTIONAL";
    case InvisibleSide::None: return "NONE";
    }
    return "NONE";
}

InvisibilityVerdict classify(const SupportCertificate& c)
{
    InvisibilityVerdict v;
    v.evidence = c;
    v.k_lo = 0.0;
    v.k_hi = c.alpha;
    if (!c.cond_y_halfline)
        return v;
    if (c.cond_x_left && c.cond_x_right) {
        v.side = InvisibleSide::Bidirectional;
    } else if (c.cond_x_right) {
        v.side = InvisibleSide::RightInvisible;
        v.unidirectional = c.nonvanish_left_band;
    } else if (c.cond_x_left) {
        v.side = InvisibleSide::LeftInvisible;
        v.unidirectional = c.nonvanish_right_band;
    }
    if (v.unidirectional)
        v.k_lo = c.alpha / std::sqrt(2.0);
    return v;
}

InvisibilityVerdict classify(const Potential& v, double alpha)
{
    return classify(analyze_support(v, alpha));
}

bool AngleInterval::contains(double a) const
{
    const bool above = lo_closed ? a >= lo : a > lo;
    const bool below = hi_closed ? a <= hi : a < hi;
    return above && below;
}

VisibleWindows visible_windows(Side incidence, double alpha, double k)
{
    const double phi = angular_window(alpha, k);
    VisibleWindows w;
    w.incidence = incidence;
    w.alpha = alpha;
    w.k = k;
    w.relative = {phi, 2.0 * kPi - phi, false, false};
    if (incidence == Side::Left) {
        w.theta0 = {-0.5 * kPi, 0.0, false, false};
        w.theta = {0.5 * kPi, kPi, true, false};
    } else {
        w.theta0 = {kPi, 1.5 * kPi, false, true};
        w.theta = {0.0, 0.5 * kPi, false, true};
    }
    return w;
}

bool VisibleWindows::contains(double theta0_in, double theta_in) const
{
    const double th = wrap(theta_in, 0.0);
    if (incidence == Side::Left) {
        const double t0 = wrap(theta0_in, -kPi);
        return theta0.contains(t0) && theta.contains(th) && relative.contains(th - t0);
    }
    const double t0 = wrap(theta0_in, 0.0);
    return theta0.contains(t0) && theta.contains(th) && relative.contains(t0 - th);
}

bool allowed_nonzero(Side incidence, double alpha, double k, double theta0, double theta)
{
    if (!in_band(alpha, k))
        return false;
    return visible_windows(incidence, alpha, k).contains(theta0, theta);
}

VerifyReport verify(const Scatterer& s, double alpha, const VerifySampling& sampling)
{
    if (sampling.n_k < 1 || sampling.n_theta0 < 1 || sampling.n_theta < 1)
        throw Error("verify: sampling counts must be positive");
    VerifyReport r;
    r.verdict = classify(s.at(alpha), alpha);
    if (r.verdict.side == InvisibleSide::None)
        throw Error("verify: potential has no certified invisible side");

    // Visible incidence is the side opposite the invisible one; a
    // bidirectional potential is probed from the left.
    const Side visible = r.verdict.side == InvisibleSide::LeftInvisible ? Side::Right : Side::Left;
    const bool both_invisible = r.verdict.side == InvisibleSide::Bidirectional;

    std::vector<double> ks;
    std::vector<Potential> vs;
    for (int i = 0; i < sampling.n_k; ++i) {
        ks.push_back(alpha * (i + 1) / sampling.n_k);
        vs.push_back(s.at(ks.back()));
    }
    auto theta0_of = [&](Side side, int j) {
        const double base = side == Side::Left ? -0.5 * kPi : 0.5 * kPi;
        return base + kPi * (j + 0.5) / sampling.n_theta0;
    };

    struct Acc {
        double invisible = 0.0, inside = 0.0, outside = 0.0;
    };
    const long rows = static_cast<long>(ks.size()) * sampling.n_theta0;
    std::vector<Acc> acc(rows);
    detail::parallel_for(rows, [&](long r_idx) {
        const int i = static_cast<int>(r_idx / sampling.n_theta0);
        const int j = static_cast<int>(r_idx % sampling.n_theta0);
        Acc a;
        for (Side side : {Side::Left, Side::Right}) {
            const IncidenceSpec inc{side, theta0_of(side, j), ks[i]};
            for (int m = 0; m < sampling.n_theta; ++m) {
                const double th = 2.0 * kPi * m / sampling.n_theta;
                const double f = std::abs(born_amplitude(vs[i], inc, th));
                if (side != visible || both_invisible)
                    a.invisible = std::max(a.invisible, f);
                else if (allowed_nonzero(side, alpha, ks[i], inc.theta0, th))
                    a.inside = std::max(a.inside, f);
                else
                    a.outside = std::max(a.outside, f);
            }
        }
        acc[r_idx] = a;
    });
    for (const auto& a : acc) {
        r.invisible_max_abs_f = std::max(r.invisible_max_abs_f, a.invisible);
        r.visible_inside_max_abs_f = std::max(r.visible_inside_max_abs_f, a.inside);
        r.visible_outside_max_abs_f = std::max(r.visible_outside_max_abs_f, a.outside);
    }
    if (both_invisible)
        r.visible_inside_max_abs_f = 0.0;
    r.peak_abs_f = std::max({r.invisible_max_abs_f, r.visible_inside_max_abs_f, r.visible_outside_max_abs_f});
    r.visible_positive = r.peak_abs_f > 0.0 &&
                         r.visible_inside_max_abs_f * r.visible_inside_max_abs_f > 1e-12 * r.peak_abs_f * r.peak_abs_f;
    r.samples = rows * 2 * sampling.n_theta;
    return r;
}

} // namespace qes
