#include "qes/support.hpp"

#include "qes/fourier.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cmath>

namespace qes {

Band y_suppressed_band(double alpha) { return {-kInf, alpha, false, true}; }
Band x_left_band(double alpha) { return {-2.0 * alpha, alpha, true, false}; }
Band x_right_band(double alpha) { return {-alpha, 2.0 * alpha, false, true}; }
Band x_left_visible_band(double alpha) { return {-2.0 * alpha, -alpha, true, true}; }
Band x_right_visible_band(double alpha) { return {alpha, 2.0 * alpha, true, true}; }

namespace {

bool all_miss(const Potential& v, const Band& band, bool along_x)
{
    return std::all_of(v.terms().begin(), v.terms().end(), [&](const SeparableTerm& t) {
        return (along_x ? t.x : t.y).support().misses(band);
    });
}

bool any_meets(const Potential& v, const Band& band)
{
    return std::any_of(v.terms().begin(), v.terms().end(),
                       [&](const SeparableTerm& t) { return t.x.support().meets(band); });
}

// 0, +-10^{-2..3} in units of the largest factor scale.
std::vector<double> decade_grid(const Potential& v)
{
    double scale = 0.0;
    for (const auto& t : v.terms()) {
        if (t.x.base()) scale = std::max(scale, t.x.base()->scale);
        if (t.y.base()) scale = std::max(scale, t.y.base()->scale);
    }
    if (scale == 0.0) scale = 1.0;
    std::vector<double> out{0.0};
    for (int e = -2; e <= 3; ++e) {
        out.push_back(scale * std::pow(10.0, e));
        out.push_back(-scale * std::pow(10.0, e));
    }
    return out;
}

std::vector<double> band_samples(const Band& band, double alpha, int samples)
{
    // Unbounded bands are sampled over a stretch of 4 alpha below the edge.
    const double lo = std::isfinite(band.lo) ? band.lo : band.hi - 4.0 * alpha;
    const double hi = band.hi;
    std::vector<double> ks;
    for (int i = 0; i < samples; ++i)
        ks.push_back(samples == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * i / (samples - 1));
    // Drop the open endpoint; it is never part of the claim.
    ks.erase(std::remove_if(ks.begin(), ks.end(), [&](double k) { return !band.contains(k); }), ks.end());
    return ks;
}

// max over K in band and s on the decade grid of |sum_t z_t F_t(K) S_t(s)|,
// normalized by sum_t |z_t| l1(F_t).  Terms with a constant factor in the
// transformed direction are skipped; their transform is a point mass.
double band_residual(const Potential& v, const Band& band, double alpha, int samples, bool along_x, double tol)
{
    double scale = 0.0;
    for (const auto& t : v.terms()) {
        const Factor1D& f = along_x ? t.x : t.y;
        if (f.transformable())
            scale += std::abs(t.coupling) * l1_norm(*f.base());
    }
    if (scale == 0.0)
        return 0.0;
    const auto others = decade_grid(v);
    const auto ks = band_samples(band, alpha, samples);
    std::vector<double> worst(ks.size(), 0.0);
    detail::parallel_for(static_cast<long>(ks.size()), [&](long i) {
        std::vector<Complex> sums(others.size(), 0.0);
        for (const auto& t : v.terms()) {
            const Factor1D& f = along_x ? t.x : t.y;
            const Factor1D& g = along_x ? t.y : t.x;
            if (!f.transformable())
                continue;
            const Complex ft = t.coupling * ft1d_numeric(f, ks[i], tol).value;
            for (std::size_t j = 0; j < others.size(); ++j)
                sums[j] += ft * g(others[j]);
        }
        for (const auto& s : sums)
            worst[i] = std::max(worst[i], std::abs(s));
    });
    double r = 0.0;
    for (double w : worst)
        r = std::max(r, w);
    return r / scale;
}

} // namespace

SupportCertificate analyze_support(const Potential& v, double alpha)
{
    if (!(alpha > 0.0))
        throw Error("certify_support: alpha must be positive");
    SupportCertificate c;
    c.alpha = alpha;
    c.cond_y_halfline = all_miss(v, y_suppressed_band(alpha), false);
    c.cond_x_left = all_miss(v, x_left_band(alpha), true);
    c.cond_x_right = all_miss(v, x_right_band(alpha), true);
    c.nonvanish_left_band = any_meets(v, x_left_visible_band(alpha));
    c.nonvanish_right_band = any_meets(v, x_right_visible_band(alpha));
    return c;
}

SupportCertificate certify_support(const Potential& v, double alpha, int samples, double tol)
{
    if (samples < 1)
        throw Error("certify_support: samples must be >= 1");
    SupportCertificate c = analyze_support(v, alpha);
    double r = 0.0;
    if (c.cond_y_halfline)
        r = std::max(r, band_residual(v, y_suppressed_band(alpha), alpha, samples, false, tol));
    if (c.cond_x_left)
        r = std::max(r, band_residual(v, x_left_band(alpha), alpha, samples, true, tol));
    if (c.cond_x_right)
        r = std::max(r, band_residual(v, x_right_band(alpha), alpha, samples, true, tol));
    c.numeric_residual = r;
    return c;
}

} // namespace qes
